#include <gtest/gtest.h>

#include <random>

#include "contain/lattice.hpp"
#include "contain/rational.hpp"
#include "contain/segments.hpp"

using namespace contain;

TEST(Lattice, SpreadTargetsEighthOrigin) {
    auto v = spread_targets(GraphKind::EighthPlane, {{0, 0}}, false);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], (Cell{0, 1}));
    EXPECT_EQ(v[1], (Cell{1, 1}));
}

TEST(Lattice, SpreadTargetsHalfApex) {
    auto v = spread_targets(GraphKind::DirectedHalfPlane, {{0, 0}}, true);
    std::vector<Cell> want{{-1, 1}, {0, 1}, {1, 1}};
    EXPECT_EQ(v, want);
}

TEST(Lattice, SpreadTargetsOnlyMinGetsNorthWest) {
    auto v = spread_targets(GraphKind::DirectedHalfPlane, {{2, 5}, {7, 5}}, true);
    std::vector<Cell> want{{1, 6}, {2, 6}, {3, 6}, {7, 6}, {8, 6}};
    EXPECT_EQ(v, want);
}

TEST(Lattice, SpreadTargetsRejectsOffDomain) {
    EXPECT_THROW(spread_targets(GraphKind::EighthPlane, {{3, 1}}, false), GameError);
    EXPECT_THROW(spread_targets(GraphKind::EighthPlane, {{0, 1}, {0, 2}}, false), GameError);
}

TEST(Lattice, FrameExamples) {
    EXPECT_EQ(FrontFrame(0, 0).map({3, 2}), (Cell{3, 2}));
    EXPECT_EQ(FrontFrame(1, 5).map({0, 0}), (Cell{5, 0}));
    EXPECT_EQ(FrontFrame(2, 4).map({1, 1}), (Cell{-1, -5}));
    EXPECT_EQ(FrontFrame(6, 4).dir, 2);
    EXPECT_THROW(FrontFrame(0, 3).unmap({0, 0}), GameError);
}

TEST(Lattice, FrameIsAnIsometryAndPreservesDirectedEdges) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int64_t> co(-50, 50);
    for (int k = 0; k < 500; ++k) {
        FrontFrame f(static_cast<int>(rng() % 4), co(rng) + 50);
        Cell a{co(rng), co(rng) + 60}, b{co(rng), co(rng) + 60};
        Cell pa = f.map(a), pb = f.map(b);
        EXPECT_EQ(f.unmap(pa), a);
        int64_t d0 = std::max(std::llabs(a.x - b.x), std::llabs(a.y - b.y));
        int64_t d1 = std::max(std::llabs(pa.x - pb.x), std::llabs(pa.y - pb.y));
        EXPECT_EQ(d0, d1);
        for (int dx = -1; dx <= 1; ++dx)
            EXPECT_TRUE(has_edge(GraphKind::Plane, pa, f.map({a.x + dx, a.y + 1})));
    }
}

TEST(Lattice, SpreadTargetsStayInDomainProperty) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        int64_t y = static_cast<int64_t>(rng() % 30);
        std::vector<Cell> front;
        for (int i = 0; i < 5; ++i) front.push_back({static_cast<int64_t>(rng() % (y + 1)), y});
        for (auto kind : {GraphKind::EighthPlane, GraphKind::DirectedHalfPlane}) {
            auto out = spread_targets(kind, front, kind == GraphKind::DirectedHalfPlane);
            for (auto& c : out) EXPECT_TRUE(in_domain(kind, c));
            CellSet uniq(front.begin(), front.end());
            EXPECT_LE(out.size(), 2 * uniq.size() + 1);
        }
    }
}

TEST(Budget, ContainerBudgetExamples) {
    EXPECT_EQ(container_budget(Rational(3), 5, false, 0), 3);
    EXPECT_EQ(container_budget(Rational(1, 2), 1, false, 0), 0);
    EXPECT_EQ(container_budget(Rational(1, 2), 2, false, 0), 1);
    std::vector<int64_t> got;
    for (int t = 1; t <= 4; ++t) got.push_back(container_budget(Rational(3, 2), t, false, 0));
    EXPECT_EQ(got, (std::vector<int64_t>{1, 2, 1, 2}));
    EXPECT_EQ(container_budget(Rational(3, 2), 4, true, 2), 4);
}

TEST(Budget, RationalInvariants) {
    Rational r(6, -4);
    EXPECT_EQ(r.num, -3);
    EXPECT_EQ(r.den, 2);
    EXPECT_THROW(Rational(1, 0), GameError);
    EXPECT_EQ(parse_rational("0.15"), Rational(3, 20));
    EXPECT_EQ(parse_rational("6/7"), Rational(6, 7));
    EXPECT_THROW(parse_rational("1/0"), GameError);
}

TEST(Budget, PowerLawIsExact) {
    SpreadSpec s = parse_spread("0.15*sqrt(t)");
    // floor(0.15 sqrt(t)) first reaches 1 at t = 45 (0.15^2 * 45 = 1.0125)
    EXPECT_EQ(s.budget(44), 0);
    EXPECT_EQ(s.budget(45), 1);
    // 0.15^2 * 400 = 9 exactly, so t = 400 hits 3 on the nose
    EXPECT_EQ(s.budget(400), 3);
    EXPECT_EQ(s.budget(399), 2);
    SpreadSpec p = parse_spread("2*t^(6/7)");
    // 2 * 128^(6/7) = 2 * 64 = 128
    EXPECT_EQ(p.budget(128), 128);
    EXPECT_EQ(p.budget(127), 127);
    EXPECT_EQ(parse_spread("inf").kind, SpreadSpec::Kind::Unbounded);
    EXPECT_EQ(parse_spread("3").budget(10), 3);
}

TEST(Segments, SegmentOf) {
    EXPECT_EQ(segment_of(4, 7).lo(), 4);
    EXPECT_EQ(segment_of(4, -1).lo(), -4);
    EXPECT_EQ(segment_of(4, -1).hi(), -1);
    auto s = segment_of(8, 7);
    EXPECT_EQ(s.lo(), 0);
    auto ch = children_of(s);
    EXPECT_EQ(ch[0].lo(), 0);
    EXPECT_EQ(ch[1].lo(), 4);
    EXPECT_EQ(ch[1].hi(), 7);
}

TEST(Segments, PartitionProperty) {
    for (int64_t h : {1, 2, 3, 4, 8})
        for (int64_t x = -40; x <= 40; ++x) {
            auto s = segment_of(h, x);
            EXPECT_LE(s.lo(), x);
            EXPECT_GE(s.hi(), x);
            EXPECT_EQ(s.hi() - s.lo() + 1, h);
        }
}

TEST(Segments, HValues) {
    EXPECT_EQ(H_of(Rational(1), 4), 64);
    EXPECT_EQ(H_of(Rational(3), 2), 144);
    EXPECT_EQ(H_of(Rational(1, 2), 3), 9);
    auto c = HSchedule::constant(4);
    for (int t = 0; t < 300; t += 7) {
        EXPECT_EQ(Htilde_of(c, Rational(1), t), 64);
        EXPECT_EQ(htilde_of(c, t), 4);
    }
}

TEST(Segments, DyadicScheduleAndTildes) {
    auto s = HSchedule::dyadic(3);
    EXPECT_EQ(s.h(0), s.h(1));
    EXPECT_EQ(s.h(1), 2);
    // 3 t^(1/7) >= 4 first at t = 8, >= 8 first at t = 959
    EXPECT_EQ(s.h(7), 2);
    EXPECT_EQ(s.h(8), 4);
    EXPECT_EQ(s.h(958), 4);
    EXPECT_EQ(s.h(959), 8);
    EXPECT_EQ(s.next_doubling(8, 100000), 959);
    for (int64_t t = 1; t < 20000; ++t) {
        int64_t r = s.h(t) / s.h(t - 1);
        EXPECT_TRUE(r == 1 || r == 2);
        if (r != 1 && r != 2) break;
    }
    // just before the doubling at 959: h=4, H=64, so t+H crosses it
    EXPECT_EQ(Htilde_of(s, Rational(1), 959 - 10), 64 + 4);
    EXPECT_EQ(htilde_of(s, 957), 8);
    EXPECT_EQ(htilde_of(s, 900), 4);
}

TEST(Segments, ValidateSchedule) {
    EXPECT_TRUE(validate_schedule(HSchedule::constant(4), Rational(1), 100000).empty());
    EXPECT_TRUE(validate_schedule(HSchedule::dyadic(3), Rational(1), 100000).empty());
    // large C crowds the doublings: 64 -> 128 at t=128, next at 16384, inside 2H = 131072
    EXPECT_FALSE(validate_schedule(HSchedule::dyadic(64), Rational(1), 100000).empty());
}
