#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "contain/engine.hpp"
#include "contain/strategy.hpp"

namespace contain {

// Accounting of one segment. prev_* hold the merged values of turn t-1.
struct LedgerRow {
    int64_t f = 0, phi = 0, r = 0, d = 0, b = 0, ell = 0, prepot = 0;
    int64_t debt_born = -1;        // first turn of the current debt streak
    int64_t max_row = -kNever;     // highest row among counted cells
    int64_t df = 0, dtilde = 0;    // this turn
    int64_t prev_f = 0, prev_phi = 0, prev_r = 0, prev_d = 0, prev_b = 0, prev_ell = 0, prev_prepot = 0;
    bool chi = true, prev_chi = true;
    int64_t tau = 1, prev_tau = 1, pivot = kNoPivot;
    std::vector<std::array<int64_t, 3>> kids;  // previous pivots as (lo, hi, pivot)
    int64_t pot() const { return prepot + d; }
};

struct LedgerTotals {
    int64_t t = 0, h = 0;
    int64_t phi = 0, f = 0, d = 0, prepot = 0, pot = 0, b = 0, b_pruned = 0;
    int64_t spreading = 0;  // pruned cells in spreading segments
    int64_t simulative = 0, dis = 0, debt_segments = 0;
    json to_json() const;
};

// Testing hook: perturbs one field of one segment after the turn's update.
struct LedgerFault {
    int64_t turn = -1;
    int64_t segment = 0;
    enum class Field { Phi, Debt, Counted } field = Field::Phi;
    int64_t delta = 1;
};

// Recomputes the strategy's accounting (counted deletions, range, simulated
// fire, debt, potential) from its observable state and checks the invariant
// suite every turn. Shares no bookkeeping with the strategy beyond chi, the
// pivots and the fronts.
class Ledger {
public:
    // counted0: deletions counted at time 0 (per segment by column);
    // deleted0: size of the initial deleted set
    Ledger(const HalfGame& g, const std::vector<Cell>& counted0, int64_t deleted0, std::string label = "");

    std::vector<Violation> observe(const HalfGame& g);

    const LedgerTotals& totals() const { return tot_; }
    const LedgerTotals& prev_totals() const { return prev_tot_; }
    int64_t seg_base() const { return base_; }
    const std::deque<LedgerRow>& rows() const { return rows_; }
    json rows_json() const;
    void set_fault(LedgerFault f) { fault_ = f; }
    // counted deletions as local cells (test support)
    const CellSet& counted() const { return counted_; }
    // cells counted during the last observed turn
    const std::vector<Cell>& fresh_counted() const { return fresh_; }
    int64_t hist_min() const { return hist_min_; }
    int64_t hist_max() const { return hist_max_; }

private:
    LedgerRow* row(int64_t k);
    void merge_rows();
    void extend(int64_t klo, int64_t khi);
    // cells of S x {t+ell} reachable from the given row-t cells by one-sided
    // paths inside the box [lo, hi] x [t, t+ell]
    int64_t range_of(int64_t lo, int64_t hi, const std::vector<int64_t>& cells, int64_t ell) const;
    void violate(std::vector<Violation>& out, const char* check, const std::string& where, int64_t lhs, int64_t rhs,
                 std::string detail = "");
    std::string seg_name(int64_t k) const;

    std::string label_;
    HalfVariant variant_;
    Rational q_;
    int64_t t_ = 0, h_ = 1, deleted0_ = 0;
    DeletionIndex del_;
    CellSet counted_;
    std::vector<Cell> fresh_;
    int64_t base_ = 0;
    std::deque<LedgerRow> rows_;
    LedgerTotals tot_, prev_tot_;
    LedgerFault fault_;
    // range of columns of all fronts before the current turn
    int64_t hist_min_ = kNever, hist_max_ = -kNever;
    int64_t max_counted_row_ = -kNever;

    // side-mass obligations for sampled simulative segments
    struct SideMass {
        int64_t t0, lo, hi, Ht;
    };
    std::vector<SideMass> side_;
};

}  // namespace contain
