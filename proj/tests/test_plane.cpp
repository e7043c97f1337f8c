#include <gtest/gtest.h>

#include "contain/engine.hpp"
#include "contain/plane_spreader.hpp"
#include "contain/simple_policies.hpp"
#include "contain/zoo.hpp"

using namespace contain;

namespace {

GameConfig plane(int64_t horizon) {
    GameConfig c;
    c.kind = GraphKind::Plane;
    c.q = Rational(3);
    c.h_schedule = HSchedule::constant(1);
    c.horizon = horizon;
    return c;
}

std::vector<Ignition> at_turn(const PlaneSpreader& s, int64_t t) {
    std::vector<Ignition> out;
    for (const auto& g : s.ignitions())
        if (g.t == t) out.push_back(g);
    return out;
}

}  // namespace

TEST(PlaneInit, TwoCellSeeds) {
    NullContainer c;
    PlaneSpreader s;
    Engine e(plane(5), c, s);
    auto rec = e.step();
    ASSERT_EQ(at_turn(s, 1).size(), 4u);
    for (const auto& g : at_turn(s, 1)) EXPECT_EQ(g.live, 2);
    EXPECT_EQ(rec.occupied_cells.size(), 8u);  // the eight neighbours of the origin
    EXPECT_TRUE(rec.violations.empty());
}

TEST(PlaneInit, DeletedSeedIsCounted) {
    ScriptedContainer c({{1, {theta(0)}}});
    PlaneSpreader s;
    Engine e(plane(5), c, s);
    e.step();
    auto g = at_turn(s, 1);
    EXPECT_EQ(g[0].live, 1);
    EXPECT_EQ(s.fronts()[0].f, 1);
    EXPECT_EQ(s.fronts()[0].pot(), 2);
    EXPECT_TRUE(s.violations().empty());
}

TEST(PlaneInit, FrontKilledAtStartIsInactive) {
    ScriptedContainer c({{1, {theta(2), theta_diag(2)}}});
    PlaneSpreader s;
    Engine e(plane(5), c, s);
    e.step();
    EXPECT_FALSE(s.fronts()[2].active);
    EXPECT_TRUE(s.fronts()[0].active);
}

TEST(PlaneRadii, UnobstructedSpreadAdvancesEveryFront) {
    NullContainer c;
    PlaneSpreader s;
    Engine e(plane(5), c, s);
    e.step();
    e.step();
    for (const auto& f : s.fronts()) EXPECT_EQ(f.rho, 2);
}

TEST(PlaneRadii, MatchFullHistoryScan) {
    // radius per direction: least r >= 0 with no earlier occupied cell on the line
    for (const std::string name : {"random", "focus", "left_wall"}) {
        GameConfig cfg = plane(40);
        cfg.seed = 7;
        auto c = make_zoo_container(name);
        PlaneSpreader s;
        Engine e(cfg, *c, s);
        std::vector<Cell> hist{{0, 0}};
        while (e.state().status == Status::Running) {
            auto rec = e.step();
            for (int i = 0; i < 4; ++i) {
                int64_t r = 0;
                for (bool hit = true; hit; ++r) {
                    hit = false;
                    for (const Cell& h : hist)
                        if (h.x * theta(i).x + h.y * theta(i).y == r) hit = true;
                    if (!hit) break;
                }
                ASSERT_EQ(s.fronts()[static_cast<size_t>(i)].rho, r) << name << " t=" << rec.t << " dir " << i;
            }
            hist.insert(hist.end(), rec.occupied_cells.begin(), rec.occupied_cells.end());
        }
    }
}

TEST(PlaneReignition, SingleNeighbourCellGivesTwoSeeds) {
    // front 0 dies at turn 1; front 3's corner cell (-1,1) sits on its line
    ScriptedContainer c({{1, {theta(0), theta_diag(0)}}});
    PlaneSpreader s;
    Engine e(plane(10), c, s);
    e.step();
    EXPECT_FALSE(s.fronts()[0].active);
    e.step();
    auto g = at_turn(s, 2);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].dir, 0);
    EXPECT_EQ(g[0].seed, 2);
    EXPECT_TRUE(s.fronts()[0].active);
    EXPECT_EQ(s.fronts()[0].rho, 2);
    EXPECT_TRUE(s.violations().empty());
}

TEST(PlaneReignition, UntouchedLineDoesNothing) {
    // also remove front 3's upper seed: nothing reaches the first line at turn 1
    ScriptedContainer c({{1, {theta(0), theta_diag(0), theta_diag(3)}}});
    PlaneSpreader s;
    Engine e(plane(10), c, s);
    e.step();
    e.step();
    EXPECT_TRUE(at_turn(s, 2).empty());
    EXPECT_EQ(s.fronts()[0].rho, 1);
    e.step();
    // by turn 2 fronts 1 and 3 both reach y=1, each giving two seeds
    auto g = at_turn(s, 3);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].seed, 4);
    EXPECT_TRUE(s.violations().empty());
}

TEST(PlaneReignition, SeedsComeInPairs) {
    GameConfig cfg = plane(300);
    FocusContainer c;
    PlaneSpreader s;
    Engine e(cfg, c, s);
    e.run();
    int later = 0;
    for (const auto& g : s.ignitions()) {
        if (g.t == 1) continue;
        ++later;
        EXPECT_TRUE(g.seed == 2 || g.seed == 4) << "t=" << g.t << " seed=" << g.seed;
    }
    EXPECT_GT(later, 0);
}

TEST(PlaneZoo, ClaimsHoldAndAreasStayDisjoint) {
    std::vector<std::string> names = zoo_names();
    for (const auto& name : names) {
        GameConfig cfg = plane(200);
        cfg.seed = 11;
        auto c = make_zoo_container(name);
        PlaneSpreader s;
        Engine e(cfg, *c, s);
        int64_t prev_rho = 0;
        while (e.state().status == Status::Running) {
            auto rec = e.step();
            ASSERT_TRUE(rec.violations.empty()) << name << " " << rec.violations[0].to_json().dump();
            ASSERT_GE(s.rho_sum() - prev_rho, 3) << name << " t=" << rec.t;
            prev_rho = s.rho_sum();
        }
        EXPECT_EQ(e.outcome().status, Status::SpreaderSurvivedHorizon) << name;
        EXPECT_EQ(s.metrics()["collisions"], 0) << name;
    }
}

TEST(PlaneZoo, FaultInFrontLedgerIsReported) {
    GameConfig cfg = plane(30);
    NullContainer c;
    PlaneSpreader s;
    s.set_fault(1, {12, 0, LedgerFault::Field::Phi, 3});
    Engine e(cfg, c, s);
    std::vector<Violation> all;
    while (e.state().status == Status::Running) {
        auto rec = e.step();
        all.insert(all.end(), rec.violations.begin(), rec.violations.end());
    }
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(all.front().turn, 12);
    EXPECT_EQ(all.front().where.rfind("front1", 0), 0u) << all.front().where;
}
