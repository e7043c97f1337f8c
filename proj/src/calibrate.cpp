#include "contain/calibrate.hpp"

#include <future>

#include "contain/policies.hpp"
#include "contain/zoo.hpp"

namespace contain {

namespace {

int64_t pow6(int64_t h) { return h * h * h * h * h * h; }

Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

struct Run {
    GraphKind kind;
    int64_t h;
    std::string container;
    uint64_t seed;
};

std::vector<Run> zoo_runs(const CalibrateOptions& opt) {
    std::vector<Run> runs;
    for (GraphKind k : {GraphKind::EighthPlane, GraphKind::DirectedHalfPlane})
        for (int64_t h : opt.hs)
            for (const auto& z : zoo_names()) {
                int seeds = z == "random" ? opt.random_seeds : 1;
                for (int s = 0; s < seeds; ++s) runs.push_back({k, h, z, static_cast<uint64_t>(s + 1)});
            }
    return runs;
}

}  // namespace

bool within_spreading_bound(const Rational& k, int64_t spreading, int64_t h) {
    return static_cast<__int128>(spreading) * k.den <= static_cast<__int128>(k.num) * pow6(h);
}

bool within_front_bound(const Rational& k, int64_t b_pruned, int64_t h, int64_t t, int64_t b0) {
    // b' <= k (h^6 + 2t/h + b0)  <=>  b' h k.den <= k.num (h^7 + 2t + b0 h)
    __int128 lhs = static_cast<__int128>(b_pruned) * h * k.den;
    __int128 rhs = static_cast<__int128>(k.num) * (static_cast<__int128>(pow6(h)) * h + 2 * t + b0 * h);
    return lhs <= rhs;
}

json calibrate(const CalibrateOptions& opt) {
    const std::vector<Run> runs = zoo_runs(opt);
    struct Seen {
        Rational ks{0}, kb{0};
        int64_t max_spreading = 0, max_pruned = 0;
    };
    std::vector<std::future<Seen>> jobs;
    for (const Run& r : runs)
        jobs.push_back(std::async(std::launch::async, [r, &opt] {
            GameConfig cfg;
            cfg.kind = r.kind;
            cfg.q = Rational(1);
            cfg.h_schedule = HSchedule::constant(r.h);
            cfg.horizon = opt.turns;
            cfg.seed = r.seed;
            Seen s;
            const int64_t b0 = static_cast<int64_t>(cfg.initial_occupied.size());
            run_named(cfg, r.container, "paper", {}, [&](const TurnRecord& rec) {
                const auto& m = rec.metrics;
                int64_t sp = m.at("spreading").get<int64_t>(), bp = m.at("b_pruned").get<int64_t>();
                s.max_spreading = std::max(s.max_spreading, sp);
                s.max_pruned = std::max(s.max_pruned, bp);
                s.ks = max_of(s.ks, Rational(sp, pow6(r.h)));
                s.kb = max_of(s.kb, Rational(bp * r.h, pow6(r.h) * r.h + 2 * rec.t + b0 * r.h));
            });
            return s;
        }));
    Rational k{0};
    json per = json::array();
    for (size_t i = 0; i < runs.size(); ++i) {
        Seen s = jobs[i].get();
        k = max_of(k, max_of(s.ks, s.kb));
        per.push_back({{"kind", to_string(runs[i].kind)},
                       {"h", runs[i].h},
                       {"container", runs[i].container},
                       {"seed", runs[i].seed},
                       {"max_spreading", s.max_spreading},
                       {"max_pruned", s.max_pruned},
                       {"k_spreading", s.ks.str()},
                       {"k_front", s.kb.str()}});
    }
    json out{{"K_cal", k.str()}, {"K_cal_value", k.to_double()}, {"turns", opt.turns}, {"runs", per}};

    if (opt.plane) {
        // unbounded plane runs; C2 is the least integer covering every turn's play
        std::vector<std::future<std::vector<std::pair<int64_t, int64_t>>>> pj;
        std::vector<std::string> names = zoo_names();
        for (const auto& z : names)
            pj.push_back(std::async(std::launch::async, [z, &opt] {
                GameConfig cfg;
                cfg.kind = GraphKind::Plane;
                cfg.q = Rational(3);
                cfg.h_schedule = HSchedule::constant(1);
                cfg.horizon = opt.plane_turns;
                cfg.seed = 1;
                std::vector<std::pair<int64_t, int64_t>> played;
                run_named(cfg, z, "paper", {}, [&](const TurnRecord& rec) {
                    played.push_back({rec.t, static_cast<int64_t>(rec.occupied_cells.size())});
                });
                return played;
            }));
        int64_t c2 = 1;
        json plane = json::array();
        for (size_t i = 0; i < names.size(); ++i) {
            auto played = pj[i].get();
            int64_t peak = 0;
            for (auto [t, n] : played) {
                peak = std::max(peak, n);
                while (SpreadSpec::power(Rational(c2), Rational(6, 7)).budget(t) < n) ++c2;
            }
            plane.push_back({{"container", names[i]}, {"max_played", peak}});
        }
        out["C2"] = c2;
        out["plane_turns"] = opt.plane_turns;
        out["plane_runs"] = plane;
    }
    return out;
}

}  // namespace contain
