#include "contain/trace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "contain/paths.hpp"
#include "contain/policies.hpp"
#include "contain/simple_policies.hpp"

namespace contain {

namespace {

Status status_from(const std::string& s) {
    for (Status v : {Status::Running, Status::ContainerWin, Status::SpreaderSurvivedHorizon})
        if (s == to_string(v)) return v;
    throw GameError("TraceParse", "unknown status '" + s + "'");
}

int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

GameError parse_error(size_t line, const std::string& what) {
    return GameError("TraceParse", "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Trace read_trace_lines(const std::vector<std::string>& lines) {
    Trace tr;
    TraceSink sink;
    bool closed = false;
    size_t n = 0;
    for (const std::string& raw : lines) {
        ++n;
        if (raw.empty() || raw == "\r") continue;
        json j;
        try {
            j = json::parse(raw);
        } catch (const json::parse_error& e) {
            throw parse_error(n, e.what());
        }
        if (!j.is_object() || !j.contains("type")) throw parse_error(n, "expected an object with a type");
        std::string type = j.at("type").is_string() ? j.at("type").get<std::string>() : "";
        try {
            if (n == 1 || tr.header.is_null()) {
                if (type != "header") throw parse_error(n, "first line must be the header");
                tr.header = j;
                tr.config = GameConfig::from_json(j.at("config"));
                tr.container = j.value("container", "");
                tr.spreader = j.value("spreader", "");
            } else if (closed) {
                throw parse_error(n, "line after the outcome");
            } else if (type == "turn") {
                tr.records.push_back(TurnRecord::from_json(j));
            } else if (type == "outcome") {
                Outcome o;
                o.status = status_from(j.at("status").get<std::string>());
                o.turn = j.at("turn").get<int64_t>();
                o.reason = j.value("reason", "");
                tr.outcome = o;
                closed = true;
            } else {
                throw parse_error(n, "unknown line type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw parse_error(n, e.what());
        } catch (const GameError& e) {
            if (e.code() == "TraceParse") throw;
            throw parse_error(n, e.code() + ": " + e.what());
        }
        sink.line(j);
    }
    if (tr.header.is_null()) throw GameError("TraceParse", "empty trace");
    tr.hash = sink.hex_digest();
    return tr;
}

Trace read_trace(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string s; std::getline(in, s);) lines.push_back(std::move(s));
    return read_trace_lines(lines);
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GameError("NotFound", "cannot open " + path);
    return read_trace(in);
}

// ---- verify ----

std::set<std::string> VerifyReport::names() const {
    std::set<std::string> s;
    for (const auto& v : violations) s.insert(v.check);
    return s;
}

json VerifyReport::to_json() const {
    json vs = json::array();
    for (const auto& v : violations) vs.push_back(v.to_json());
    return {{"clean", clean()}, {"turns", turns}, {"checked", checked}, {"violations", vs}};
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"recorded", "legality", "claims", "oracle"};
    return s;
}

namespace {

void check_legality(const Trace& tr, VerifyReport& rep) {
    NullContainer c;
    GreedySpreader s;
    GameConfig cfg = tr.config;
    Engine e(cfg, c, s);
    int64_t expect = 1;
    for (const auto& r : tr.records) {
        ++rep.checked["legality"];
        if (r.t != expect) {
            rep.violations.push_back({"turn_sequence", r.t, "", r.t, expect, "turns must be consecutive"});
            return;
        }
        ++expect;
        try {
            e.step_with(r.deleted_cells, r.occupied_cells);
        } catch (const GameError& err) {
            rep.violations.push_back({err.code(), r.t, "", 0, 0, err.what()});
            return;
        }
    }
    if (tr.outcome) {
        ++rep.checked["legality"];
        int64_t last = tr.records.empty() ? 0 : tr.records.back().t;
        if (tr.outcome->turn != last)
            rep.violations.push_back({"outcome_turn", tr.outcome->turn, "", tr.outcome->turn, last, ""});
        if (tr.outcome->status == Status::SpreaderSurvivedHorizon && last != cfg.horizon)
            rep.violations.push_back({"outcome_turn", last, "", last, cfg.horizon, "survival before the horizon"});
    }
}

void check_claims(const Trace& tr, VerifyReport& rep) {
    const GameConfig& cfg = tr.config;
    const int64_t f0 = static_cast<int64_t>(cfg.initial_counted.size());
    const json* prev = nullptr;
    int64_t prev_rho = 0;
    for (const auto& r : tr.records) {
        const json& m = r.metrics;
        if (m.contains("pot") && m.contains("b") && m.contains("f")) {
            ++rep.checked["claims"];
            const int64_t need = cfg.kind == GraphKind::DirectedHalfPlane ? 2 : 1;
            if (prev && prev->at("b").get<int64_t>() > 0) {
                int64_t dp = m.at("pot").get<int64_t>() - prev->at("pot").get<int64_t>();
                if (dp < need) rep.violations.push_back({"potential_growth", r.t, "trace", dp, need, "recomputed"});
            }
            int64_t cap = cfg.q.floor_times(r.t) + f0;
            if (m.at("f").get<int64_t>() > cap)
                rep.violations.push_back({"counted_total_le_qt", r.t, "trace", m.at("f").get<int64_t>(), cap, "recomputed"});
            prev = &m;
        }
        if (m.contains("rho") && cfg.kind == GraphKind::Plane) {
            ++rep.checked["claims"];
            int64_t rho = m.at("rho").get<int64_t>();
            if (cfg.q <= Rational(3) && rho - prev_rho < 3)
                rep.violations.push_back({"radius_growth", r.t, "trace", rho - prev_rho, 3, "recomputed"});
            prev_rho = rho;
            if (m.value("collisions", int64_t{0}) != 0)
                rep.violations.push_back({"play_area_disjoint", r.t, "trace", m.at("collisions").get<int64_t>(), 0, ""});
        }
    }
}

void check_oracle(const Trace& tr, VerifyReport& rep) {
    const GameConfig& cfg = tr.config;
    if (cfg.kind == GraphKind::Plane || cfg.mode != Mode::Front || tr.records.empty()) return;
    const size_t every = std::max<size_t>(1, tr.records.size() / 40);
    DeletionIndex del;
    for (const Cell& c : cfg.initial_deleted) del.add(c);
    for (size_t i = 0; i < tr.records.size(); ++i) {
        const auto& r = tr.records[i];
        for (const Cell& c : r.deleted_cells) del.add(c);
        if (i % every || r.occupied_cells.empty() || r.occupied_cells.size() > 400) continue;
        const int64_t y = cfg.initial_occupied.front().y + r.t;
        std::vector<int64_t> xs;
        for (const Cell& c : r.occupied_cells)
            if (c.y == y) xs.push_back(c.x);
        if (xs.empty()) continue;
        const int64_t h = cfg.h_schedule.h(r.t);
        for (int64_t ell : {int64_t{1}, h, 2 * h}) {
            ++rep.checked["oracle"];
            int64_t greedy = greedy_sweep(del, y, xs, ell, true).count;
            int64_t flow = flow_count(del, y, xs, ell, Sided::One);
            if (greedy != flow) rep.violations.push_back({"oracle_dispath_flow", r.t, "ell=" + std::to_string(ell), greedy, flow, ""});
        }
    }
}

}  // namespace

VerifyReport verify_trace(const Trace& tr, const std::set<std::string>& suites) {
    VerifyReport rep;
    rep.turns = static_cast<int64_t>(tr.records.size());
    for (const auto& s : suites)
        if (std::find(verify_suites().begin(), verify_suites().end(), s) == verify_suites().end())
            throw GameError("InvalidConfig", "unknown suite '" + s + "'");
    if (suites.count("recorded"))
        for (const auto& r : tr.records) {
            ++rep.checked["recorded"];
            rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
        }
    if (suites.count("legality")) check_legality(tr, rep);
    if (suites.count("claims")) check_claims(tr, rep);
    if (suites.count("oracle")) check_oracle(tr, rep);
    return rep;
}

// ---- replay ----

ReplayContainer::ReplayContainer(const Trace& tr) : label_(tr.container) {
    for (const auto& r : tr.records) script_[r.t] = r.deleted_cells;
}

void ReplayContainer::start(const GameConfig& cfg, const GameState& s) {
    try {
        shadow_ = make_container(label_, cfg);
        shadow_->start(cfg, s);
    } catch (const GameError&) {
        shadow_.reset();
    }
}

std::vector<Cell> ReplayContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    if (shadow_) shadow_->move(cfg, s, budget);
    auto it = script_.find(s.t + 1);
    return it == script_.end() ? std::vector<Cell>{} : it->second;
}

void ReplayContainer::observe(const TurnRecord& rec) {
    if (shadow_) shadow_->observe(rec);
}

std::vector<Violation> ReplayContainer::violations() { return shadow_ ? shadow_->violations() : std::vector<Violation>{}; }

std::optional<Box> ReplayContainer::enclosure() const { return shadow_ ? shadow_->enclosure() : std::nullopt; }

SpreaderMove ScriptedSpreader::move(const GameConfig&, const GameState& s, const std::vector<Cell>&, int64_t) {
    auto it = script_.find(s.t);
    return {it == script_.end() ? std::vector<Cell>{} : it->second, false};
}

ReplayResult replay_trace(const Trace& tr) {
    ReplayContainer c(tr);
    std::unique_ptr<SpreaderPolicy> s;
    try {
        s = make_spreader(tr.spreader, tr.config);
    } catch (const GameError&) {
        std::map<int64_t, std::vector<Cell>> script;
        for (const auto& r : tr.records) script[r.t] = r.occupied_cells;
        s = std::make_unique<ScriptedSpreader>(std::move(script), tr.spreader);
    }
    TraceSink sink;
    sink.keep_records(true);
    Engine e(tr.config, c, *s, &sink);
    const int64_t n = static_cast<int64_t>(tr.records.size());
    while (e.state().status == Status::Running && e.state().t < n) e.step();
    ReplayResult out;
    out.outcome = e.outcome();
    out.hash = sink.hex_digest();
    out.identical = out.hash == tr.hash;
    out.lines = sink.lines();
    return out;
}

// ---- render ----

namespace {

struct Frame {
    int64_t t = 0;
    CellSet current, earlier, deleted;
};

std::vector<Frame> frames(const Trace& tr, const RenderOptions& opt) {
    const int64_t last = tr.records.empty() ? 0 : tr.records.back().t;
    const int64_t to = opt.to < 0 ? last : opt.to;
    if (opt.from < 0 || opt.from > to || to > last)
        throw GameError("RangeError", "turn range [" + std::to_string(opt.from) + ", " + std::to_string(to) +
                                          "] outside the trace (0.." + std::to_string(last) + ")");
    const bool acc = tr.config.mode == Mode::Accumulate;
    Frame f;
    f.current = CellSet(tr.config.initial_occupied.begin(), tr.config.initial_occupied.end());
    f.deleted = CellSet(tr.config.initial_deleted.begin(), tr.config.initial_deleted.end());
    std::vector<Frame> out;
    if (opt.from == 0 && (!opt.last_only || to == 0)) out.push_back(f);
    for (const auto& r : tr.records) {
        if (r.t > to) break;
        for (const Cell& c : r.deleted_cells) f.deleted.insert(c);
        if (acc) f.earlier.insert(f.current.begin(), f.current.end());
        f.current = CellSet(r.occupied_cells.begin(), r.occupied_cells.end());
        f.t = r.t;
        if (r.t >= opt.from && (!opt.last_only || r.t == to)) out.push_back(f);
    }
    return out;
}

Box fit(const Frame& f) {
    Box b{0, 0, 0, 0};
    bool any = false;
    for (const CellSet* s : {&f.current, &f.earlier, &f.deleted})
        for (const Cell& c : *s) {
            if (!any) b = {c.x, c.y, c.x, c.y}, any = true;
            b.x0 = std::min(b.x0, c.x), b.x1 = std::max(b.x1, c.x);
            b.y0 = std::min(b.y0, c.y), b.y1 = std::max(b.y1, c.y);
        }
    return b;
}

int64_t boundary_h(const Trace& tr, int64_t t) {
    return tr.config.kind == GraphKind::Plane ? 0 : tr.config.h_schedule.h(std::max<int64_t>(t, 1));
}

}  // namespace

std::string render_ascii(const Trace& tr, const RenderOptions& opt) {
    std::ostringstream os;
    for (const Frame& f : frames(tr, opt)) {
        Box b = fit(f);
        // front mode: only the rows near the front matter
        if (tr.config.mode == Mode::Front && tr.config.kind != GraphKind::Plane) b.y0 = std::max(b.y0, f.t - 1);
        b.y1 = std::min(b.y1, b.y0 + 39);
        if (opt.x0) b.x0 = *opt.x0;
        b.x1 = std::min(b.x1, b.x0 + opt.width - 1);
        const int64_t h = boundary_h(tr, f.t);
        os << "t=" << f.t << " x=[" << b.x0 << "," << b.x1 << "] y=[" << b.y0 << "," << b.y1 << "]\n";
        for (int64_t y = b.y1; y >= b.y0; --y) {
            std::string row;
            for (int64_t x = b.x0; x <= b.x1; ++x) {
                Cell c{x, y};
                char g = '.';
                if (f.deleted.count(c)) g = 'X';
                else if (f.current.count(c)) g = '#';
                else if (f.earlier.count(c)) g = 'o';
                else if (h > 0 && floor_mod(x, h) == 0) g = '|';
                row.push_back(g);
            }
            os << row << '\n';
        }
    }
    return os.str();
}

std::string render_svg(const Trace& tr, const RenderOptions& opt) {
    RenderOptions o = opt;
    o.last_only = true;
    auto fs = frames(tr, o);
    const Frame& f = fs.back();
    Box b = fit(f);
    b.x0 -= 1, b.y0 -= 1, b.x1 += 1, b.y1 += 1;
    const int64_t s = 10, W = (b.x1 - b.x0 + 1) * s, H = (b.y1 - b.y0 + 1) * s;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n"
       << "<title>turn " << f.t << "</title>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    auto cell = [&](Cell c, const char* fill) {
        os << "<rect x=\"" << (c.x - b.x0) * s << "\" y=\"" << (b.y1 - c.y) * s << "\" width=\"" << s
           << "\" height=\"" << s << "\" fill=\"" << fill << "\"/>\n";
    };
    for (const Cell& c : sorted_cells(f.earlier)) cell(c, "#f4a261");
    for (const Cell& c : sorted_cells(f.current)) cell(c, "#d62828");
    for (const Cell& c : sorted_cells(f.deleted)) cell(c, "#222222");
    const int64_t h = boundary_h(tr, f.t);
    if (h > 0)
        for (int64_t x = b.x0; x <= b.x1; ++x)
            if (floor_mod(x, h) == 0)
                os << "<line x1=\"" << (x - b.x0) * s << "\" y1=\"0\" x2=\"" << (x - b.x0) * s << "\" y2=\"" << H
                   << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace contain
