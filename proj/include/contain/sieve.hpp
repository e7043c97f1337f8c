#pragma once

#include <functional>

#include "contain/engine.hpp"

namespace contain {

// Parameters of the single-row Container strategy against g(t) = floor(c sqrt t).
// Row L_H = [0, H] x {H}; X holds k = h + r0 survivors spaced H/k apart.
// offset > 0 marks a sieve started late (inside the plane reduction): the
// Spreader budget then runs on the absolute clock, folded into c_eff.
struct SievePlan {
    Rational c{0};
    int64_t r0 = 1;
    Rational hbar{1};
    int64_t H = 0;
    int64_t h = 0;
    int64_t offset = 0;
    double c_eff = 0;

    int64_t k() const { return h + r0; }
    int64_t spacing() const { return H / k(); }
    bool in_x(int64_t u) const { return u >= 0 && u % spacing() == 0 && u / spacing() < k(); }
    std::vector<int64_t> X() const;
    // phase starts in sieve time: H - (h + r0), H - 2 r0; the last phase ends at H
    int64_t p2() const { return H - k(); }
    int64_t p3() const { return H - 2 * r0; }

    // danger-zone bounds at the start of phase 2
    int64_t max_segments() const;
    int64_t max_length() const;

    // violated invariants, empty when the plan is sound
    std::vector<std::string> check() const;
    json to_json() const;
    static SievePlan from_json(const json& j);
};

// Least feasible plan with hbar = 1 (the maximiser of hbar / (3 (1 + hbar^2))).
// Throws GameError: Unwinnable for c >= 1/6, CapExceeded when H would pass cap_H.
SievePlan plan_sieve(Rational c, int64_t r0, int64_t offset = 0, int64_t cap_H = 1'000'000'000'000'000);

// A plan with k = h + r0 given, for hand-built instances; check() reports what it breaks.
SievePlan sieve_with_k(Rational c, int64_t r0, int64_t k, int64_t offset = 0);

// Danger zone of a sieve row at one moment.
struct DangerZone {
    int64_t t = 0;           // engine turn the zone was taken at
    std::vector<int64_t> u;  // sorted wall positions
    int64_t segments = 0;
    int64_t in_x = 0;
    int64_t undeleted = 0;
    json to_json() const;
};

// The three-phase sieve on one wall, in a local frame where the wall is
// {(u, H) : 0 <= u <= H}. Engine turn `start` is sieve time 0.
class LineSieve {
public:
    using Map = std::function<Cell(Cell)>;
    LineSieve(SievePlan plan, int64_t start, Map to_plane, Map to_local, std::string label);

    // up to n deletions for engine turn T (state after turn T-1)
    std::vector<Cell> take(const GameConfig& cfg, const GameState& s, int64_t T, int64_t n,
                           std::vector<Violation>& out);
    int phase(int64_t T) const;  // 1..3, 4 once past H
    bool complete() const { return left_ == 0; }
    int64_t left() const { return left_; }
    int64_t start() const { return start_; }
    int64_t end() const { return start_ + plan_.H; }  // last engine turn
    const SievePlan& plan() const { return plan_; }
    const std::optional<DangerZone>& danger() const { return danger_; }
    // local coordinates of a plane cell, and whether it sits on or past the wall
    bool crossed(Cell plane) const;
    Cell wall(int64_t u) const { return to_plane_({u, plan_.H}); }

private:
    void enter_phase2(const GameConfig& cfg, const GameState& s, int64_t T, std::vector<Violation>& out);
    bool gone(const GameState& s, int64_t u) const { return s.deleted.count(wall(u)) != 0; }

    SievePlan plan_;
    int64_t start_;
    Map to_plane_, to_local_;
    std::string label_;
    int64_t cursor_ = 0;        // phase 1: every non-X cell left of it is deleted
    int64_t left_ = 0;          // wall cells not yet deleted
    std::vector<int64_t> rest_;  // phase 2 onwards, in deletion order
    size_t next_ = 0;
    std::optional<DangerZone> danger_;
};

// Eighth-plane sieve as a Container policy.
class SieveContainer : public ContainerPolicy {
public:
    explicit SieveContainer(std::optional<SievePlan> plan = std::nullopt) : plan_(std::move(plan)) {}
    std::string name() const override { return "sieve"; }
    void start(const GameConfig& cfg, const GameState& s) override;
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
    void observe(const TurnRecord& rec) override;
    std::vector<Violation> violations() override;
    json describe() const override;
    std::optional<Box> enclosure() const override;

    const SievePlan& plan() const { return *plan_; }
    const LineSieve& row() const { return *sieve_; }

private:
    std::optional<SievePlan> plan_;
    std::optional<LineSieve> sieve_;
    std::vector<Violation> pending_;
};

// Radii and step boundaries of the four-wall plane strategy (q = 3).
// Step 1 ends at T1, step 2 at E2, step 3 at E3, step 4 at E4 (engine turns).
struct ReductionPlan {
    Rational c{0};
    int64_t r0 = 0, r1 = 0, r2 = 0, r3 = 0, r4 = 0;
    int64_t T1 = 0, E2 = 0, E3 = 0, E4 = 0;
    SievePlan east, west;

    Box rectangle() const { return {-r3, -r4, r2, r1}; }
    std::vector<std::string> check() const;
    json to_json() const;
};

// r1 from the seed radius, r2 and r3 from sieve plans run on the absolute
// clock, r4 from the turn count of the last step.
ReductionPlan plan_reduction(Rational c, int64_t r0);
// The same accounting with the two sieve sizes fixed by hand (k = sqrt H).
ReductionPlan reduction_with_k(Rational c, int64_t r0, int64_t k_east, int64_t k_west);

class ReductionContainer : public ContainerPolicy {
public:
    explicit ReductionContainer(std::optional<ReductionPlan> plan = std::nullopt) : plan_(std::move(plan)) {}
    std::string name() const override { return "sieve"; }
    void start(const GameConfig& cfg, const GameState& s) override;
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
    void observe(const TurnRecord& rec) override;
    std::vector<Violation> violations() override;
    json describe() const override;
    std::optional<Box> enclosure() const override;

    const ReductionPlan& plan() const { return *plan_; }
    int step_at(int64_t T) const;  // 1..4, 5 when finished
    const LineSieve& east() const { return *east_; }
    const LineSieve& west() const { return *west_; }

private:
    // the maintenance lines: north row extended west then the west wall
    // prolonged south, and the mirror image on the east side
    std::optional<Cell> west_line(int64_t T) const;
    std::optional<Cell> east_line(int64_t T) const;

    std::optional<ReductionPlan> plan_;
    std::optional<LineSieve> east_, west_;
    std::vector<Violation> pending_;
    bool closed_ = false;
};

// "sieve" on the eighth plane, the reduction on the plane; c from cfg.g
std::unique_ptr<ContainerPolicy> make_sieve_container(const GameConfig& cfg);
// c of g(t) = floor(c sqrt t), or InvalidConfig
Rational sqrt_coefficient(const SpreadSpec& g);
// seed radius: the least r0 >= 1 with the initial set in [0, r0]^2 (eighth) or [-r0, r0]^2 (plane)
int64_t seed_radius(const GameConfig& cfg);

}  // namespace contain
