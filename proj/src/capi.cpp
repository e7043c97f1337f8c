#include "contain/capi.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "contain/calibrate.hpp"
#include "contain/policies.hpp"
#include "contain/service.hpp"
#include "contain/sieve.hpp"
#include "contain/trace.hpp"

using namespace contain;

struct contain_game {
    std::unique_ptr<Session> session;
};

namespace {

thread_local std::string last_error;

int status_of(const std::string& code) {
    if (code == "InvalidConfig" || code == "ScheduleViolation" || code == "DomainViolation" || code == "CapExceeded" ||
        code == "Overflow" || code == "QueryUnbounded" || code == "FrameError")
        return CONTAIN_E_INVALID_CONFIG;
    if (code == "UnknownPolicy") return CONTAIN_E_UNKNOWN_POLICY;
    if (code == "IllegalMove" || code == "ContainerIllegalMove" || code == "SpreaderIllegalMove")
        return CONTAIN_E_ILLEGAL_MOVE;
    if (code == "BudgetExceeded") return CONTAIN_E_BUDGET;
    if (code == "Conflict" || code == "GameOver") return CONTAIN_E_CONFLICT;
    if (code == "TraceParse" || code == "ParseError" || code == "BadRequest") return CONTAIN_E_PARSE;
    if (code == "NotFound") return CONTAIN_E_NOT_FOUND;
    if (code == "Unwinnable") return CONTAIN_E_UNWINNABLE;
    if (code == "RangeError") return CONTAIN_E_RANGE;
    if (code == "IO") return CONTAIN_E_IO;
    if (code == "Argument") return CONTAIN_E_ARGUMENT;
    return CONTAIN_E_INTERNAL;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// runs fn, mapping exceptions to status codes and recording the message
template <class F>
int guard(F&& fn) {
    try {
        last_error.clear();
        fn();
        return CONTAIN_OK;
    } catch (const MoveRejected& e) {
        json cells = json::array();
        for (const auto& c : e.cells()) cells.push_back(c.to_json());
        last_error = json{{"error", e.code()}, {"message", e.what()}, {"rejected", cells}}.dump();
        return CONTAIN_E_ILLEGAL_MOVE;
    } catch (const GameError& e) {
        last_error = e.code() + ": " + e.what();
        return status_of(e.code());
    } catch (const json::exception& e) {
        last_error = std::string("ParseError: ") + e.what();
        return CONTAIN_E_PARSE;
    } catch (const std::exception& e) {
        last_error = std::string("Internal: ") + e.what();
        return CONTAIN_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) throw GameError("Argument", std::string(what) + " is null");
}

std::set<std::string> suites_from(const char* csv) {
    std::set<std::string> out;
    if (!csv || !*csv) return {verify_suites().begin(), verify_suites().end()};
    std::istringstream in(csv);
    for (std::string s; std::getline(in, s, ',');)
        if (!s.empty()) out.insert(s);
    return out;
}

}  // namespace

extern "C" {

const char* contain_version(void) { return "1.0.0"; }

const char* contain_status_name(int s) {
    switch (s) {
        case CONTAIN_OK: return "ok";
        case CONTAIN_E_ARGUMENT: return "argument";
        case CONTAIN_E_INVALID_CONFIG: return "invalid_config";
        case CONTAIN_E_UNKNOWN_POLICY: return "unknown_policy";
        case CONTAIN_E_ILLEGAL_MOVE: return "illegal_move";
        case CONTAIN_E_BUDGET: return "budget_exceeded";
        case CONTAIN_E_CONFLICT: return "conflict";
        case CONTAIN_E_PARSE: return "parse";
        case CONTAIN_E_NOT_FOUND: return "not_found";
        case CONTAIN_E_UNWINNABLE: return "unwinnable";
        case CONTAIN_E_RANGE: return "range";
        case CONTAIN_E_IO: return "io";
        default: return "internal";
    }
}

const char* contain_last_error(void) { return last_error.c_str(); }

void contain_string_free(char* s) { std::free(s); }

int contain_game_new(const char* config_json, const char* role, const char* container, const char* spreader,
                     contain_game** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        GameConfig cfg = GameConfig::from_json(config_json ? json::parse(config_json) : json::object());
        auto g = std::make_unique<contain_game>();
        g->session = std::make_unique<Session>(cfg, role_from_string(role ? role : "observer"),
                                               container ? container : "null", spreader ? spreader : "paper");
        *out = g.release();
    });
}

void contain_game_free(contain_game* g) { delete g; }

int contain_game_move(contain_game* g, const char* cells_json, char** record_json) {
    return guard([&] {
        need(g, "game");
        need(cells_json, "cells");
        json rec = g->session->move(cells_from_json(json::parse(cells_json)));
        if (record_json) *record_json = dup(rec.dump());
    });
}

int contain_game_step(contain_game* g, char** record_json) {
    return guard([&] {
        need(g, "game");
        json rec = g->session->engine_step();
        if (record_json) *record_json = dup(rec.dump());
    });
}

int contain_game_state(contain_game* g, const char* viewport_json, char** state_json) {
    return guard([&] {
        need(g, "game");
        need(state_json, "out");
        std::optional<Box> v;
        if (viewport_json) {
            json j = json::parse(viewport_json);
            if (!j.is_null()) {
                auto a = j.get<std::vector<int64_t>>();
                if (a.size() != 4) throw GameError("InvalidConfig", "viewport is [x0,y0,x1,y1]");
                v = Box{a[0], a[1], a[2], a[3]};
            }
        }
        *state_json = dup(g->session->state(v).dump());
    });
}

int contain_game_trace(contain_game* g, char** jsonl) {
    return guard([&] {
        need(g, "game");
        need(jsonl, "out");
        *jsonl = dup(g->session->trace());
    });
}

int contain_game_hash(contain_game* g, char** hex) {
    return guard([&] {
        need(g, "game");
        need(hex, "out");
        *hex = dup(g->session->hash());
    });
}

int contain_run(const char* spec_json, const char* trace_path, char** summary_json) {
    return guard([&] {
        need(spec_json, "spec");
        json spec = json::parse(spec_json);
        GameConfig cfg = GameConfig::from_json(spec.value("config", json::object()));
        std::string container = spec.value("container", "null"), spreader = spec.value("spreader", "paper");
        std::optional<LedgerFault> fault;
        if (spec.contains("fault")) {
            const json& f = spec["fault"];
            LedgerFault lf;
            lf.turn = f.at("turn").get<int64_t>();
            lf.segment = f.value("segment", int64_t{0});
            lf.delta = f.value("delta", int64_t{1});
            std::string field = f.value("field", "phi");
            if (field == "phi") lf.field = LedgerFault::Field::Phi;
            else if (field == "debt") lf.field = LedgerFault::Field::Debt;
            else if (field == "counted") lf.field = LedgerFault::Field::Counted;
            else throw GameError("InvalidConfig", "fault field is phi, debt or counted");
            fault = lf;
        }
        std::ofstream file;
        if (trace_path) {
            file.open(trace_path);
            if (!file) throw GameError("IO", std::string("cannot write ") + trace_path);
        }
        int64_t deleted = 0, occupied = 0;
        std::map<std::string, int64_t> checks;
        json first_violation;
        auto writer = [&](const std::string& l) { file << l; };
        auto res = run_named(cfg, container, spreader,
                             trace_path ? std::function<void(const std::string&)>(writer) : nullptr,
                             [&](const TurnRecord& r) {
                                 deleted += static_cast<int64_t>(r.deleted_cells.size());
                                 occupied += static_cast<int64_t>(r.occupied_cells.size());
                                 for (const auto& v : r.violations) {
                                     if (first_violation.is_null()) first_violation = v.to_json();
                                     ++checks[v.check];
                                 }
                             },
                             fault);
        json s{{"outcome", res.outcome.to_json()},
               {"hash", res.hash},
               {"turns", res.turns},
               {"violations", res.violations},
               {"violations_by_check", checks},
               {"deleted", deleted},
               {"occupied", occupied},
               {"metrics", res.last_metrics},
               {"container", container},
               {"spreader", spreader}};
        if (!first_violation.is_null()) s["first_violation"] = first_violation;
        if (summary_json) *summary_json = dup(s.dump());
    });
}

int contain_verify(const char* trace_path, const char* suites_csv, char** report_json) {
    return guard([&] {
        need(trace_path, "trace");
        need(report_json, "out");
        Trace tr = read_trace_file(trace_path);
        *report_json = dup(verify_trace(tr, suites_from(suites_csv)).to_json().dump());
    });
}

int contain_replay(const char* trace_path, const char* out_path, char** result_json) {
    return guard([&] {
        need(trace_path, "trace");
        Trace tr = read_trace_file(trace_path);
        auto r = replay_trace(tr);
        if (out_path) {
            std::ofstream f(out_path);
            if (!f) throw GameError("IO", std::string("cannot write ") + out_path);
            for (const auto& l : r.lines) f << l;
        }
        json j{{"hash", r.hash}, {"original", tr.hash}, {"identical", r.identical}, {"outcome", r.outcome.to_json()}};
        if (result_json) *result_json = dup(j.dump());
    });
}

int contain_render(const char* trace_path, const char* options_json, char** out) {
    return guard([&] {
        need(trace_path, "trace");
        need(out, "out");
        json o = options_json ? json::parse(options_json) : json::object();
        RenderOptions ro;
        ro.from = o.value("from", int64_t{0});
        ro.to = o.value("to", int64_t{-1});
        ro.width = o.value("width", int64_t{100});
        if (o.contains("x0") && !o["x0"].is_null()) ro.x0 = o["x0"].get<int64_t>();
        Trace tr = read_trace_file(trace_path);
        std::string fmt = o.value("format", "ascii");
        if (fmt == "ascii") *out = dup(render_ascii(tr, ro));
        else if (fmt == "svg") *out = dup(render_svg(tr, ro));
        else throw GameError("InvalidConfig", "format must be ascii or svg");
    });
}

int contain_calibrate(const char* options_json, char** constants_json) {
    return guard([&] {
        need(constants_json, "out");
        json o = options_json ? json::parse(options_json) : json::object();
        CalibrateOptions c;
        c.turns = o.value("turns", c.turns);
        c.plane_turns = o.value("plane_turns", c.plane_turns);
        c.random_seeds = o.value("random_seeds", c.random_seeds);
        c.plane = o.value("plane", c.plane);
        if (o.contains("hs")) c.hs = o["hs"].get<std::vector<int64_t>>();
        *constants_json = dup(calibrate(c).dump(2));
    });
}

int contain_plan(const char* kind, const char* c, int64_t r0, char** plan_json) {
    return guard([&] {
        need(kind, "kind");
        need(c, "c");
        need(plan_json, "out");
        Rational cc = parse_rational(c);
        std::string k = kind;
        if (k == "eighth") *plan_json = dup(plan_sieve(cc, r0).to_json().dump(2));
        else if (k == "plane") *plan_json = dup(plan_reduction(cc, r0).to_json().dump(2));
        else throw GameError("InvalidConfig", "kind must be eighth or plane");
    });
}

int contain_serve(const char* host, int port) {
    return guard([&] {
        Service svc;
        int bound = svc.bind(host ? host : "127.0.0.1", port);
        if (bound < 0) throw GameError("IO", "cannot bind port " + std::to_string(port));
        std::printf("listening on %s:%d\n", host ? host : "127.0.0.1", bound);
        std::fflush(stdout);
        svc.serve();
    });
}

}  // extern "C"
