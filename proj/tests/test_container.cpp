#include <gtest/gtest.h>

#include <cmath>

#include "contain/engine.hpp"
#include "contain/sieve.hpp"
#include "contain/simple_policies.hpp"

using namespace contain;

namespace {

const Rational kC(3, 20);

GameConfig eighth_sieve(int64_t horizon = 400) {
    GameConfig c;
    c.kind = GraphKind::EighthPlane;
    c.mode = Mode::Accumulate;
    c.g = SpreadSpec::power(kC, Rational(1, 2));
    c.horizon = horizon;
    c.stall_window = horizon + 1;  // zero-budget turns early on are not a stall
    return c;
}

GameConfig plane_reduction(int64_t horizon, SpreadSpec g = SpreadSpec::power(kC, Rational(1, 2))) {
    GameConfig c;
    c.kind = GraphKind::Plane;
    c.mode = Mode::Accumulate;
    c.q = Rational(3);
    c.g = g;
    c.horizon = horizon;
    c.stall_window = horizon + 1;
    return c;
}

// smallness condition in its original shape, evaluated in long double
bool small_enough_oracle(double c, int64_t r0, int64_t H, double hbar) {
    long double sq = std::sqrt(static_cast<long double>(H)), hb = hbar;
    long double rhs = hb / (3 * (1 + hb * hb)) - r0 / (2 * sq * (1 + hb * hb));
    return c <= rhs + 1e-15L;
}

int64_t undeleted_on_row(const GameState& s, int64_t H) {
    int64_t n = 0;
    for (int64_t x = 0; x <= H; ++x) n += !s.deleted.count({x, H});
    return n;
}

}  // namespace

TEST(SievePlanner, LeastFeasiblePlanForPointOneFive) {
    SievePlan p = plan_sieve(kC, 1);
    EXPECT_EQ(p.hbar, Rational(1));
    EXPECT_EQ(p.H, 225);
    EXPECT_EQ(p.h, 14);
    EXPECT_EQ(p.X(), (std::vector<int64_t>{0, 15, 30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 180, 195, 210}));
    EXPECT_EQ(p.p2(), 210);
    EXPECT_EQ(p.p3(), 223);
    EXPECT_TRUE(p.check().empty());
    // substitution into the condition, and minimality over perfect squares with h >= r0
    EXPECT_TRUE(small_enough_oracle(0.15, 1, 225, 1.0));
    for (int64_t k = 2; k < 15; ++k) EXPECT_FALSE(small_enough_oracle(0.15, 1, k * k, 1.0)) << k;
}

TEST(SievePlanner, PlansMeetBothForms) {
    // the condition as stated, and the |D cap X| bound it is meant to imply
    for (Rational c : {Rational(1, 100), Rational(1, 10), kC, Rational(4, 25), Rational(33, 200)})
        for (int64_t r0 : {1, 2, 5, 40}) {
            SievePlan p = plan_sieve(c, r0);
            EXPECT_TRUE(p.check().empty()) << c.str() << " " << r0;
            const long double k = static_cast<long double>(p.k());
            EXPECT_TRUE(small_enough_oracle(c.to_double(), r0, p.H, 1.0));
            long double bound = c.to_double() * k * (2 + 2 * k / p.H + 3 * k * k / p.H);
            EXPECT_LE(std::floor(bound), static_cast<long double>(p.h - p.r0)) << c.str() << " " << r0;
        }
}

TEST(SievePlanner, SixthIsUnwinnable) {
    for (Rational c : {Rational(1, 6), Rational(1, 5), Rational(1)}) {
        try {
            plan_sieve(c, 1);
            FAIL() << c.str();
        } catch (const GameError& e) {
            EXPECT_EQ(e.code(), "Unwinnable");
        }
    }
    try {
        plan_sieve(Rational(0), 1);
        FAIL();
    } catch (const GameError& e) {
        EXPECT_EQ(e.code(), "InvalidConfig");
    }
    try {
        plan_sieve(kC, 1, 0, 100);
        FAIL();
    } catch (const GameError& e) {
        EXPECT_EQ(e.code(), "CapExceeded");
    }
}

TEST(SievePlanner, TinyCDegeneratesInOrder) {
    SievePlan p = plan_sieve(Rational(1, 1000), 1);
    EXPECT_EQ(p.k(), 2);
    EXPECT_EQ(p.H, 4);
    EXPECT_LE(p.p2(), p.p3());
    EXPECT_LE(p.p3(), p.H);
    EXPECT_TRUE(p.check().empty());
}

TEST(SievePlanner, LateStartFoldsTheClockIntoC) {
    for (int64_t offset : {5, 500, 50000}) {
        SievePlan p = plan_sieve(kC, 14, offset);
        EXPECT_TRUE(p.check().empty()) << offset;
        double ceff = 0.15 * std::sqrt(static_cast<double>(p.H + offset) / static_cast<double>(p.H));
        EXPECT_NEAR(p.c_eff, ceff, 1e-12);
        EXPECT_TRUE(small_enough_oracle(ceff, 14, p.H, 1.0));
        int64_t k = p.k() - 1;
        EXPECT_FALSE(small_enough_oracle(0.15 * std::sqrt(double(k * k + offset) / double(k * k)), 14, k * k, 1.0));
    }
}

TEST(SievePlanner, PlanRoundTripsThroughJson) {
    SievePlan p = plan_sieve(kC, 1);
    SievePlan q = SievePlan::from_json(p.to_json());
    EXPECT_EQ(q.to_json(), p.to_json());
}

TEST(SievePolicy, PhaseOneGoesLeftToRight) {
    SieveContainer c;
    GreedySpreader s;
    Engine e(eighth_sieve(), c, s);
    auto r1 = e.step();
    EXPECT_EQ(r1.deleted_cells, (std::vector<Cell>{{1, 225}}));  // 0 is a sieve column
    auto r2 = e.step();
    EXPECT_EQ(r2.deleted_cells, (std::vector<Cell>{{2, 225}}));
    // at sieve time H - (h + r0), i.e. after engine turn 211, h + r0 cells remain
    while (e.state().t < 211) e.step();
    EXPECT_EQ(undeleted_on_row(e.state(), 225), 15);
}

TEST(SievePolicy, WinsAgainstGreedyAndRandom) {
    const int64_t H = 225;
    for (int seed = -1; seed < 20; ++seed) {
        GameConfig cfg = eighth_sieve();
        cfg.seed = static_cast<uint64_t>(seed + 1);
        SieveContainer c;
        std::unique_ptr<SpreaderPolicy> s;
        if (seed < 0) s = std::make_unique<GreedySpreader>();
        else s = std::make_unique<RandomSpreader>();
        Engine e(cfg, c, *s);
        int64_t row_done = -1;
        while (e.state().status == Status::Running) {
            auto rec = e.step();
            ASSERT_TRUE(rec.violations.empty()) << rec.violations[0].to_json().dump();
            for (const Cell& x : rec.occupied_cells) ASSERT_LT(x.y, H) << seed;
            if (row_done < 0 && undeleted_on_row(e.state(), H) == 0) row_done = rec.t;
        }
        EXPECT_EQ(e.outcome().status, Status::ContainerWin) << seed;
        EXPECT_EQ(e.outcome().reason, "enclosed");
        // sieve time H is engine turn H + 1
        EXPECT_EQ(row_done, H + 1);
        ASSERT_TRUE(c.row().danger().has_value());
        const auto& d = *c.row().danger();
        EXPECT_LE(d.segments, c.plan().max_segments());
        EXPECT_LE(static_cast<int64_t>(d.u.size()), c.plan().max_length());
        EXPECT_LE(d.in_x, c.plan().h - c.plan().r0);
    }
}

TEST(SievePolicy, DangerZoneMatchesBruteForce) {
    // a hand-sized row and a Spreader far over budget, so the fire is near the
    // row when phase 2 starts
    SievePlan p = sieve_with_k(kC, 1, 6);
    GameConfig cfg = eighth_sieve(60);
    cfg.g = SpreadSpec::constant(2);
    SieveContainer c(p);
    GreedySpreader s;
    Engine e(cfg, c, s);
    bool assumption = false;
    CellSet fire_at_p2;
    while (e.state().status == Status::Running) {
        if (e.state().t == p.p2()) fire_at_p2 = e.state().occupied_all;
        auto rec = e.step();
        for (const auto& v : rec.violations) assumption |= v.check == "spreader_budget_assumption";
    }
    EXPECT_TRUE(assumption);
    ASSERT_TRUE(c.row().danger().has_value());
    EXPECT_EQ(c.row().danger()->t, p.p2() + 1);
    std::vector<int64_t> brute;
    for (int64_t u = 0; u <= p.H; ++u) {
        bool near = false;
        for (const Cell& f : fire_at_p2) near |= std::max(std::llabs(u - f.x), std::llabs(p.H - f.y)) <= p.k();
        if (near) brute.push_back(u);
    }
    EXPECT_FALSE(brute.empty());
    EXPECT_EQ(c.row().danger()->u, brute);
}

TEST(SievePolicy, RefusesTheReductionKind) {
    GameConfig cfg = eighth_sieve();
    cfg.kind = GraphKind::DirectedHalfPlane;
    SieveContainer c;
    GreedySpreader s;
    EXPECT_THROW(Engine(cfg, c, s), GameError);
}

TEST(Enclosure, GapInTheRingIsNotAWin) {
    struct Claim : ContainerPolicy {
        std::string name() const override { return "claim"; }
        std::vector<Cell> move(const GameConfig&, const GameState& s, int64_t) override {
            // ring of the box [-3, 3]^2 minus (3, 0), one cell a turn
            static const std::vector<Cell> ring = [] {
                std::vector<Cell> r;
                for (int64_t i = -3; i <= 3; ++i) r.insert(r.end(), {{i, -3}, {i, 3}, {-3, i}, {3, i}});
                std::sort(r.begin(), r.end(), row_major_less);
                r.erase(std::unique(r.begin(), r.end()), r.end());
                std::erase(r, Cell{3, 0});
                return r;
            }();
            size_t i = static_cast<size_t>(s.t);
            return i < ring.size() ? std::vector<Cell>{ring[i]} : std::vector<Cell>{};
        }
        std::optional<Box> enclosure() const override { return Box{-3, -3, 3, 3}; }
    } c;
    GameConfig cfg = plane_reduction(40, SpreadSpec::constant(0));
    cfg.q = Rational(1);
    FrontierSpreader s;
    Engine e(cfg, c, s);
    e.run();
    EXPECT_EQ(e.outcome().status, Status::SpreaderSurvivedHorizon);
}

TEST(ReductionPlanner, ComputedRadiiForPointOneFive) {
    ReductionPlan p = plan_reduction(kC, 2);
    EXPECT_TRUE(p.check().empty());
    EXPECT_EQ(p.r1, 7);
    EXPECT_EQ(p.T1, 5);
    EXPECT_EQ(p.east.r0, 2 + 5 + 7);
    EXPECT_EQ(p.r2, p.east.H - p.r1);
    EXPECT_EQ(p.r3, p.west.H - p.r1);
    EXPECT_EQ(p.r4, p.r0 + p.E4);
    // the west wall is sized for a fire that already spans the east sieve:
    // the whole strategy needs far more turns than can be simulated
    EXPECT_GT(p.E4, 100'000'000'000);
}

TEST(Reduction, StepOneUsesEveryDeletionOnTheNorthRow) {
    ReductionPlan p = plan_reduction(kC, 2);
    ReductionContainer c(p);
    FrontierSpreader s;
    GameConfig cfg = plane_reduction(p.T1 + 3);
    cfg.initial_occupied = {{0, 0}, {2, -2}};
    Engine e(cfg, c, s);
    for (int64_t t = 1; t <= p.T1; ++t) {
        auto rec = e.step();
        EXPECT_EQ(static_cast<int64_t>(rec.deleted_cells.size()), std::min<int64_t>(3, 2 * p.r1 + 1 - 3 * (t - 1)));
        for (const Cell& d : rec.deleted_cells) {
            EXPECT_EQ(d.y, p.r1);
            EXPECT_LE(std::llabs(d.x), p.r1);
        }
    }
    for (int64_t x = -p.r1; x <= p.r1; ++x) EXPECT_TRUE(e.state().deleted.count({x, p.r1}));
}

namespace {

// a hand-sized plan fails its own danger-zone bounds by design; walls and
// the budget assumption are still checked
bool wall_or_budget(const std::vector<Violation>& v) {
    for (const auto& x : v)
        if (x.check.rfind("danger_zone", 0) != 0) return true;
    return false;
}

}  // namespace

TEST(Reduction, HandSizedPlanClosesTheRectangle) {
    // sieve sizes picked by hand: the plan is too small for the guarantee
    // (check() says so) but the step mechanics run end to end
    ReductionPlan p = reduction_with_k(kC, 1, 10, 111);
    EXPECT_FALSE(p.check().empty());
    ReductionContainer c(p);
    FrontierSpreader s;
    Engine e(plane_reduction(p.E4 + 10, SpreadSpec::constant(0)), c, s);
    while (e.state().status == Status::Running) {
        auto rec = e.step();
        ASSERT_LE(rec.deleted_cells.size(), 3u);
        ASSERT_FALSE(wall_or_budget(rec.violations)) << rec.violations[0].to_json().dump();
    }
    EXPECT_EQ(e.outcome().status, Status::ContainerWin);
    EXPECT_EQ(e.outcome().reason, "enclosed");
    EXPECT_EQ(e.outcome().turn, p.E4);
    Box r = p.rectangle();
    for (int64_t x = r.x0; x <= r.x1; ++x) ASSERT_TRUE(e.state().deleted.count({x, r.y0}) && e.state().deleted.count({x, r.y1}));
    for (int64_t y = r.y0; y <= r.y1; ++y) ASSERT_TRUE(e.state().deleted.count({r.x0, y}) && e.state().deleted.count({r.x1, y}));
}

TEST(Reduction, HandSizedPlanHoldsAgainstFrontierSpreaders) {
    ReductionPlan p = reduction_with_k(kC, 1, 10, 111);
    for (auto pref : {FrontierSpreader::Prefer::Outward, FrontierSpreader::Prefer::Up, FrontierSpreader::Prefer::Random}) {
        ReductionContainer c(p);
        FrontierSpreader s(pref);
        GameConfig cfg = plane_reduction(p.E4 + 10);
        cfg.seed = 9;
        cfg.initial_occupied = {{0, 0}, {1, 1}};
        Engine e(cfg, c, s);
        while (e.state().status == Status::Running) {
            auto rec = e.step();
            ASSERT_FALSE(wall_or_budget(rec.violations)) << s.name() << " " << rec.violations[0].to_json().dump();
        }
        EXPECT_EQ(e.outcome().status, Status::ContainerWin) << s.name();
        EXPECT_TRUE(e.state().occupied_box.strictly_inside(p.rectangle())) << s.name();
    }
}

TEST(Reduction, ComputedPlanHoldsThroughTheEastSieve) {
    ReductionPlan p = plan_reduction(kC, 2);
    ReductionContainer c(p);
    FrontierSpreader s(FrontierSpreader::Prefer::Up);
    GameConfig cfg = plane_reduction(p.E2 + 20);
    cfg.initial_occupied = {{0, 0}, {-2, 2}};
    Engine e(cfg, c, s);
    while (e.state().status == Status::Running) {
        auto rec = e.step();
        ASSERT_TRUE(rec.violations.empty()) << rec.violations[0].to_json().dump();
    }
    EXPECT_TRUE(c.east().complete());
    for (int64_t y = -p.r2; y <= p.r1; ++y) ASSERT_TRUE(e.state().deleted.count({p.r2, y})) << y;
    EXPECT_LT(e.state().occupied_box.y1, p.r1);
    EXPECT_LT(e.state().occupied_box.x1, p.r2);
}
