#pragma once

#include <array>
#include <memory>
#include <unordered_map>

#include "contain/engine.hpp"
#include "contain/ledger.hpp"
#include "contain/strategy.hpp"

namespace contain {

// One half-plane game embedded in the plane, rotated towards dir and based
// at radius rho0 from the origin; local row v is plane turn t0 + v.
struct FrontGame {
    int64_t id = 0;
    int dir = 0;
    int64_t rho0 = 0, t0 = 0;
    std::unique_ptr<HalfGame> game;
    std::unique_ptr<Ledger> ledger;

    Cell to_plane(Cell local, Cell origin) const;
    Cell to_local(Cell plane, Cell origin) const;
};

struct FrontStatus {
    bool active = false;
    int64_t rho = 0;
    int64_t phi = 0, d = 0, f = 0, b = 0, played = 0;  // f cumulative over all games on the front
    int64_t pot() const { return phi + d + f; }
};

struct Ignition {
    int64_t t = 0;
    int dir = 0;
    int64_t seed = 0;  // |O|
    int64_t live = 0;  // |O minus deletions|
};

// Four-front strategy on the plane: a half-plane game per cardinal direction,
// re-ignited from the adjacent fronts once extinguished.
class PlaneSpreader : public SpreaderPolicy {
public:
    std::string name() const override { return "paper"; }
    void start(const GameConfig& cfg, const GameState& s) override;
    SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                      int64_t budget) override;
    json metrics() override;
    std::vector<Violation> violations() override;

    const std::array<FrontStatus, 4>& fronts() const { return st_; }
    const FrontGame* game(int i) const { return games_[static_cast<size_t>(i)].get(); }
    int64_t games_created() const { return next_id_; }
    const std::vector<Ignition>& ignitions() const { return ignitions_; }
    int64_t interned() const { return static_cast<int64_t>(owner_.size()); }
    int64_t rho_sum() const;
    // testing hook: fault for the first game on front dir, in that game's time
    void set_fault(int dir, LedgerFault f) { fault_dir_ = dir, fault_ = f; }
    // radius from the running extremes, for comparison with a full scan
    int64_t extreme(int i) const { return hist_max_[static_cast<size_t>(i)]; }

private:
    void create(int i, int64_t t, const GameState& s, const std::vector<Cell>& seed);
    void intern(const FrontGame& g, const std::vector<Cell>& plane_cells, int64_t t);
    void check_plane(int64_t t, const std::array<FrontStatus, 4>& prev, int64_t played);

    Cell origin_;
    StrategyParams params_;
    std::array<std::unique_ptr<FrontGame>, 4> games_;
    std::array<FrontStatus, 4> st_;
    std::array<int64_t, 4> f_done_{};   // counted by terminated games
    std::array<int64_t, 4> hist_max_{};  // max of <c, theta^i> over played cells so far
    std::array<std::vector<Cell>, 4> played_;  // last turn's cells per front
    std::unordered_map<Cell, int64_t, CellHash> owner_;  // play-area interning
    int64_t next_id_ = 0;
    int64_t collisions_ = 0;
    int64_t rho0_sum_ = 0;
    std::vector<Violation> pending_;
    std::vector<Ignition> ignitions_;
    int fault_dir_ = -1;
    LedgerFault fault_;
};

}  // namespace contain
