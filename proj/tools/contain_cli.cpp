// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "contain/capi.h"

using json = nlohmann::json;

namespace {

#ifndef CONTAIN_DATA_DIR
#define CONTAIN_DATA_DIR "data"
#endif

// owns a string handed out by the library
struct Owned {
    char* p = nullptr;
    ~Owned() { contain_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

int fail(int rc) {
    std::cerr << "error (" << contain_status_name(rc) << "): " << contain_last_error() << "\n";
    return 2;
}

// "C*t^(6/7)" names the calibrated constant; substitute it
std::string resolve_g(std::string g, const std::string& c_value, const std::string& constants) {
    auto pos = g.find("C*");
    if (pos == std::string::npos) return g;
    std::string c = c_value;
    if (c.empty()) {
        std::ifstream in(constants);
        if (!in) throw std::runtime_error("g uses C: pass --C or a --constants file with C2 (" + constants + ")");
        json j = json::parse(in);
        c = std::to_string(j.at("C2").get<long long>());
    }
    return g.replace(pos, 1, c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Containment games on lattices: run, check and serve"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "play one game and write its trace");
    run->set_help_flag("--help", "print this help");  // -h is the segment width
    std::string graph = "eighth", q = "1", h = "4", g = "inf", spreader = "paper", container = "null";
    std::string trace_out, config_file, c_value, fault, mode;
    std::string constants = std::string(CONTAIN_DATA_DIR) + "/calibration.json";
    long long turns = 1000, seed = 0, stall = -1;
    bool as_json = false;
    run->add_option("--graph", graph, "eighth, half or plane")->capture_default_str();
    run->add_option("--q", q, "Container rate, e.g. 1 or 3/2")->capture_default_str();
    run->add_option("--h", h, "segment width schedule: 4, const:4 or dyadic:3")->capture_default_str();
    run->add_option("--g", g, "Spreader budget: inf, 7, 0.15*sqrt(t), C*t^(6/7)")->capture_default_str();
    run->add_option("--C", c_value, "value for C in --g");
    run->add_option("--constants", constants, "calibration file supplying C2")->capture_default_str();
    run->add_option("--spreader", spreader)->capture_default_str();
    run->add_option("--container", container)->capture_default_str();
    run->add_option("--turns", turns)->capture_default_str();
    run->add_option("--seed", seed)->capture_default_str();
    run->add_option("--stall-window", stall, "consecutive idle turns that end the game");
    run->add_option("--mode", mode, "front or accumulate");
    run->add_option("--config", config_file, "JSON GameConfig; flags given explicitly override it");
    run->add_option("--trace", trace_out, "write the JSONL trace here");
    run->add_option("--inject-fault", fault, "turn:segment:field:delta, perturbs the paper Spreader's ledger");
    run->add_flag("--json", as_json, "print the summary as JSON");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check traces; exit 0 iff clean");
    std::vector<std::string> traces;
    std::string suites;
    verify->add_option("traces", traces)->required();
    verify->add_option("--suites", suites, "comma list of recorded,legality,claims,oracle (default all)");

    // ---- render ----
    auto* render = app.add_subcommand("render", "draw trace frames");
    std::string render_trace, format = "ascii", render_out;
    long long from = 0, to = -1, x0 = 0, width = 100;
    bool has_x0 = false;
    render->add_option("trace", render_trace)->required();
    render->add_option("--format", format)->check(CLI::IsMember({"ascii", "svg"}))->capture_default_str();
    render->add_option("--from", from)->capture_default_str();
    render->add_option("--to", to, "last turn, default the end");
    render->add_option("--x0", x0, "left edge (pan)")->each([&](const std::string&) { has_x0 = true; });
    render->add_option("--width", width, "ascii column cap")->capture_default_str();
    render->add_option("--out", render_out);

    // ---- replay ----
    auto* replay = app.add_subcommand("replay", "re-run a trace's deletions; exit 0 iff the hash matches");
    std::string replay_trace, replay_out;
    replay->add_option("trace", replay_trace)->required();
    replay->add_option("--out", replay_out, "write the replayed trace");

    // ---- calibrate ----
    auto* cal = app.add_subcommand("calibrate", "measure K_cal and C2 against the zoo");
    long long cal_turns = 2000, plane_turns = 500;
    std::string cal_out;
    cal->add_option("--turns", cal_turns)->capture_default_str();
    cal->add_option("--plane-turns", plane_turns)->capture_default_str();
    cal->add_option("--out", cal_out);

    // ---- plan ----
    auto* plan = app.add_subcommand("plan", "print a sieve or plane-reduction plan");
    std::string plan_kind = "eighth", plan_c = "0.15";
    long long r0 = 1;
    plan->add_option("--graph", plan_kind)->check(CLI::IsMember({"eighth", "plane"}))->capture_default_str();
    plan->add_option("--c", plan_c)->capture_default_str();
    plan->add_option("--r0", r0)->capture_default_str();

    // ---- serve ----
    auto* serve = app.add_subcommand("serve", "HTTP JSON game service");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            json cfg = json::object();
            if (!config_file.empty()) {
                std::ifstream in(config_file);
                if (!in) throw std::runtime_error("cannot open " + config_file);
                cfg = json::parse(in);
            }
            auto set = [&](const char* flag, const char* key, const json& v) {
                if (config_file.empty() || run->count(flag)) cfg[key] = v;
            };
            set("--graph", "kind", graph);
            set("--q", "q", q);
            set("--h", "h", h);
            set("--g", "g", resolve_g(g, c_value, constants));
            set("--turns", "horizon", turns);
            set("--seed", "seed", seed);
            if (stall >= 0) cfg["stall_window"] = stall;
            if (!mode.empty()) cfg["mode"] = mode;
            json spec{{"config", cfg}, {"container", container}, {"spreader", spreader}};
            if (!fault.empty()) {
                char field[32] = {0};
                long long t = 0, seg = 0, delta = 0;
                if (std::sscanf(fault.c_str(), "%lld:%lld:%31[a-z]:%lld", &t, &seg, field, &delta) != 4)
                    throw std::runtime_error("--inject-fault wants turn:segment:field:delta");
                spec["fault"] = {{"turn", t}, {"segment", seg}, {"field", field}, {"delta", delta}};
            }
            Owned out;
            int rc = contain_run(spec.dump().c_str(), trace_out.empty() ? nullptr : trace_out.c_str(), &out.p);
            if (rc) return fail(rc);
            json s = json::parse(out.str());
            if (as_json) {
                std::cout << s.dump(2) << "\n";
                return 0;
            }
            const json& o = s["outcome"];
            std::cout << "outcome: " << o["status"].get<std::string>() << " at turn " << o["turn"];
            if (!o["reason"].get<std::string>().empty()) std::cout << " (" << o["reason"].get<std::string>() << ")";
            std::cout << "\nturns: " << s["turns"] << "  deleted: " << s["deleted"] << "  occupied: " << s["occupied"]
                      << "\n";
            const json& m = s["metrics"];
            if (m.contains("phi"))
                std::cout << "final Phi: " << m["phi"] << "  f: " << m["f"] << "  d: " << m["d"] << "  potential: "
                          << m["pot"] << "  |B'|: " << m["b_pruned"] << "\n";
            if (m.contains("rho")) std::cout << "final rho: " << m["rho"] << "  collisions: " << m["collisions"] << "\n";
            std::cout << "violations: " << s["violations"];
            for (auto& [k, v] : s["violations_by_check"].items()) std::cout << "  " << k << "=" << v;
            std::cout << "\nsha256: " << s["hash"].get<std::string>() << "\n";
            if (!trace_out.empty()) std::cout << "trace: " << trace_out << "\n";
            return 0;
        }
        if (*verify) {
            bool clean = true;
            for (const auto& t : traces) {
                Owned out;
                int rc = contain_verify(t.c_str(), suites.empty() ? nullptr : suites.c_str(), &out.p);
                if (rc) return fail(rc);
                json r = json::parse(out.str());
                std::cout << t << ": " << (r["clean"].get<bool>() ? "clean" : "VIOLATIONS") << " (" << r["turns"]
                          << " turns";
                for (auto& [k, v] : r["checked"].items()) std::cout << ", " << k << " " << v;
                std::cout << ")\n";
                std::map<std::string, int> seen;
                for (const auto& v : r["violations"]) {
                    if (seen[v["check"].get<std::string>()]++ >= 3) continue;
                    std::cout << "  " << v["check"].get<std::string>() << " at t=" << v["turn"];
                    if (!v["where"].get<std::string>().empty()) std::cout << " " << v["where"].get<std::string>();
                    std::cout << " lhs=" << v["lhs"] << " rhs=" << v["rhs"];
                    if (!v["detail"].get<std::string>().empty()) std::cout << " " << v["detail"].get<std::string>();
                    std::cout << "\n";
                }
                for (auto& [k, n] : seen)
                    if (n > 3) std::cout << "  " << k << ": " << n << " in total\n";
                clean = clean && r["clean"].get<bool>();
            }
            return clean ? 0 : 1;
        }
        if (*render) {
            json o{{"format", format}, {"from", from}, {"to", to}, {"width", width}};
            if (has_x0) o["x0"] = x0;
            Owned out;
            int rc = contain_render(render_trace.c_str(), o.dump().c_str(), &out.p);
            if (rc) return fail(rc);
            if (render_out.empty()) std::cout << out.str();
            else std::ofstream(render_out) << out.str();
            return 0;
        }
        if (*replay) {
            Owned out;
            int rc = contain_replay(replay_trace.c_str(), replay_out.empty() ? nullptr : replay_out.c_str(), &out.p);
            if (rc) return fail(rc);
            json r = json::parse(out.str());
            std::cout << (r["identical"].get<bool>() ? "identical" : "DIFFERENT") << "\n"
                      << "original: " << r["original"].get<std::string>() << "\n"
                      << "replayed: " << r["hash"].get<std::string>() << "\n";
            return r["identical"].get<bool>() ? 0 : 1;
        }
        if (*cal) {
            json o{{"turns", cal_turns}, {"plane_turns", plane_turns}};
            Owned out;
            int rc = contain_calibrate(o.dump().c_str(), &out.p);
            if (rc) return fail(rc);
            if (cal_out.empty()) std::cout << out.str() << "\n";
            else std::ofstream(cal_out) << out.str() << "\n";
            return 0;
        }
        if (*plan) {
            Owned out;
            int rc = contain_plan(plan_kind.c_str(), plan_c.c_str(), r0, &out.p);
            if (rc) return fail(rc);
            std::cout << out.str() << "\n";
            return 0;
        }
        if (*serve) {
            int rc = contain_serve(host.c_str(), port);
            return rc ? fail(rc) : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
