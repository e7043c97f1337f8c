#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "contain/paper_spreader.hpp"
#include "contain/policies.hpp"
#include "contain/trace.hpp"

using namespace contain;

namespace {

GameConfig eighth(int64_t turns, int64_t h = 4) {
    GameConfig c;
    c.kind = GraphKind::EighthPlane;
    c.q = Rational(1);
    c.h_schedule = HSchedule::constant(h);
    c.horizon = turns;
    return c;
}

std::vector<std::string> record(const GameConfig& cfg, const std::string& container, const std::string& spreader,
                                RunResult* res = nullptr) {
    std::vector<std::string> lines;
    auto r = run_named(cfg, container, spreader, [&](const std::string& s) { lines.push_back(s.substr(0, s.size() - 1)); });
    if (res) *res = r;
    return lines;
}

}  // namespace

TEST(Trace, HashOfParsedLinesMatchesTheRun) {
    RunResult r;
    auto lines = record(eighth(120), "disruptor", "paper", &r);
    Trace tr = read_trace_lines(lines);
    EXPECT_EQ(tr.hash, r.hash);
    EXPECT_EQ(tr.records.size(), 120u);
    ASSERT_TRUE(tr.outcome);
    EXPECT_EQ(tr.outcome->status, Status::SpreaderSurvivedHorizon);
    EXPECT_EQ(tr.container, "disruptor");
}

TEST(Trace, DirectDumpMatchesTheJsonTree) {
    TurnRecord r;
    r.t = 7;
    r.deleted_cells = {{-3, 12}, {0, -1}};
    r.occupied_cells = {{5, 6}};
    r.metrics = {{"phi", 3}, {"b", 2}, {"note", "a\"b"}};
    r.violations.push_back({"potential_growth", 7, "seg 2", 1, 2, "x"});
    EXPECT_EQ(r.dump(), r.to_json().dump());
    TurnRecord empty;
    EXPECT_EQ(empty.dump(), empty.to_json().dump());
    // and on every record of a faulted run
    GameConfig cfg = eighth(80);
    LedgerFault f;
    f.turn = 20;
    f.delta = -2;
    run_named(cfg, "disruptor", "paper", {}, [](const TurnRecord& rec) { EXPECT_EQ(rec.dump(), rec.to_json().dump()); }, f);
}

TEST(Trace, SameSeedSameHash) {
    GameConfig cfg = eighth(150);
    cfg.seed = 99;
    RunResult a, b, c;
    record(cfg, "random", "paper", &a);
    record(cfg, "random", "paper", &b);
    cfg.seed = 100;
    record(cfg, "random", "paper", &c);
    EXPECT_EQ(a.hash, b.hash);
    EXPECT_NE(a.hash, c.hash);
}

TEST(Trace, ParseErrorsNameTheLine) {
    auto lines = record(eighth(5), "null", "paper");
    lines[3] = "{\"type\": \"turn\", \"t\": ";
    try {
        read_trace_lines(lines);
        FAIL();
    } catch (const GameError& e) {
        EXPECT_EQ(e.code(), "TraceParse");
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_trace_lines({"{\"type\":\"turn\",\"t\":1}"}), GameError);
}

TEST(Replay, ReproducesTheHash) {
    struct Case {
        GameConfig cfg;
        std::string c, s;
    };
    GameConfig plane;
    plane.kind = GraphKind::Plane;
    plane.q = Rational(3);
    plane.h_schedule = HSchedule::constant(1);
    plane.horizon = 60;
    plane.seed = 5;
    GameConfig sieve = eighth(400);
    sieve.g = parse_spread("0.15*sqrt(t)");
    GameConfig half = eighth(150);
    half.kind = GraphKind::DirectedHalfPlane;
    for (const auto& k : std::vector<Case>{{eighth(200), "disruptor", "paper"},
                                           {half, "left_wall", "paper"},
                                           {plane, "random", "paper"},
                                           {sieve, "sieve", "greedy"}}) {
        RunResult r;
        Trace tr = read_trace_lines(record(k.cfg, k.c, k.s, &r));
        auto rep = replay_trace(tr);
        EXPECT_TRUE(rep.identical) << k.c << " " << k.s;
        EXPECT_EQ(rep.outcome.status, r.outcome.status);
        EXPECT_EQ(rep.outcome.turn, r.outcome.turn);
    }
}

TEST(Replay, SieveWinSurvivesTheReplay) {
    GameConfig cfg = eighth(400);
    cfg.g = parse_spread("0.15*sqrt(t)");
    RunResult r;
    Trace tr = read_trace_lines(record(cfg, "sieve", "greedy", &r));
    EXPECT_EQ(r.outcome.status, Status::ContainerWin);
    EXPECT_EQ(r.outcome.turn, 226);
    EXPECT_EQ(replay_trace(tr).outcome.reason, r.outcome.reason);
}

TEST(Verify, CleanRunIsClean) {
    GameConfig half = eighth(300);
    half.kind = GraphKind::DirectedHalfPlane;
    for (const auto& cfg : {eighth(300), half}) {
        Trace tr = read_trace_lines(record(cfg, "disruptor", "paper"));
        auto rep = verify_trace(tr, {verify_suites().begin(), verify_suites().end()});
        EXPECT_TRUE(rep.clean()) << rep.to_json().dump();
        EXPECT_GT(rep.checked["oracle"], 0);
        EXPECT_EQ(rep.checked["claims"], 300);
    }
}

TEST(Verify, LedgerFaultIsNamed) {
    GameConfig cfg = eighth(60);
    PaperSpreader s;
    s.set_fault({30, 0, LedgerFault::Field::Phi, -5});
    auto c = make_container("null", cfg);
    std::vector<std::string> lines;
    TraceSink sink;
    sink.write_to([&](const std::string& l) { lines.push_back(l.substr(0, l.size() - 1)); });
    Engine e(cfg, *c, s, &sink);
    e.run();
    auto rep = verify_trace(read_trace_lines(lines), {"recorded"});
    ASSERT_FALSE(rep.clean());
    EXPECT_EQ(rep.violations.front().turn, 30);
    EXPECT_FALSE(rep.violations.front().check.empty());
}

TEST(Verify, TamperedPotentialIsNamed) {
    auto lines = record(eighth(50), "greedy_front", "paper");
    json j = json::parse(lines[21]);
    j["metrics"]["pot"] = j["metrics"]["pot"].get<int64_t>() - 10;
    lines[21] = j.dump();
    auto rep = verify_trace(read_trace_lines(lines), {"claims"});
    ASSERT_EQ(rep.names().count("potential_growth"), 1u) << rep.to_json().dump();
    EXPECT_EQ(rep.violations.front().turn, 21);
}

TEST(Verify, TamperedMoveIsNamed) {
    auto lines = record(eighth(50), "null", "paper");
    json j = json::parse(lines[10]);
    // delete a cell the fire occupied on the previous turn
    json prev = json::parse(lines[9]);
    j["deleted"] = json::array({prev["occupied"][0]});
    lines[10] = j.dump();
    auto rep = verify_trace(read_trace_lines(lines), {"legality"});
    ASSERT_FALSE(rep.clean());
    EXPECT_EQ(rep.violations.front().check, "ContainerIllegalMove");
    EXPECT_EQ(rep.violations.front().turn, 10);
}

TEST(Render, TurnZeroShowsOnlyTheSeed) {
    Trace tr = read_trace_lines(record(eighth(10), "null", "paper"));
    RenderOptions o;
    o.to = 0;
    std::string s = render_ascii(tr, o);
    EXPECT_NE(s.find("t=0"), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '#'), 1);
    EXPECT_EQ(std::count(s.begin(), s.end(), 'X'), 0);
    o.to = 11;
    EXPECT_THROW(render_ascii(tr, o), GameError);
}

TEST(Render, FramesShowDeletionsAndSegmentRules) {
    Trace tr = read_trace_lines(record(eighth(12), "disruptor", "paper"));
    RenderOptions o;
    o.from = 12;
    std::string s = render_ascii(tr, o);
    EXPECT_NE(s.find('X'), std::string::npos);
    EXPECT_NE(s.find('|'), std::string::npos);
    EXPECT_NE(s.find('#'), std::string::npos);
}

TEST(Render, SvgIsWellFormedXml) {
    GameConfig cfg = eighth(300);
    cfg.g = parse_spread("0.15*sqrt(t)");
    Trace tr = read_trace_lines(record(cfg, "sieve", "greedy"));
    std::istringstream in(render_svg(tr, {}));
    boost::property_tree::ptree pt;
    ASSERT_NO_THROW(boost::property_tree::read_xml(in, pt));
    EXPECT_EQ(pt.get_child("svg").size() > 3, true);
}

TEST(Policies, UnknownNamesAreRejected) {
    GameConfig cfg = eighth(10);
    try {
        make_spreader("nope", cfg);
        FAIL();
    } catch (const GameError& e) {
        EXPECT_EQ(e.code(), "UnknownPolicy");
    }
    EXPECT_THROW(make_container("nope", cfg), GameError);
    for (const auto& n : container_names())
        if (n != "sieve") EXPECT_NO_THROW(make_container(n, cfg));
}
