#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "contain/board.hpp"
#include "contain/paths.hpp"
#include "contain/rational.hpp"
#include "contain/segments.hpp"

namespace contain {

enum class HalfVariant { Eighth, Half };

inline constexpr int64_t kNoPivot = kNever;

struct SegState {
    int64_t tau = 1;  // consolidation timer
    int64_t pivot = kNoPivot;
    bool chi() const { return tau > 0; }
};

struct StrategyParams {
    HalfVariant variant = HalfVariant::Eighth;
    Rational q{1};
    HSchedule schedule;
};

// Spreader strategy on one directed (eighth or half) plane game, in local
// coordinates: the front B_t lives on row t. Keeps the virtual front B and
// the pruned front B' that is actually played.
class HalfGame {
public:
    HalfGame(StrategyParams p, std::vector<int64_t> b0, const std::vector<Cell>& deleted0 = {});

    // Container's deletions for turn t+1 (local cells), then advance to t+1.
    void step(const std::vector<Cell>& new_deleted);

    const StrategyParams& params() const { return p_; }
    int64_t t() const { return t_; }
    int64_t h() const { return h_; }
    int64_t h_prev() const { return h_prev_; }
    bool doubled() const { return h_ != h_prev_; }
    int64_t Htilde() const { return Ht_; }
    int64_t H() const { return H_of(p_.q, h_); }

    const std::vector<int64_t>& front() const { return b_; }            // B_t
    const std::vector<int64_t>& prev_front() const { return b_prev_; }  // B_{t-1}
    const std::vector<int64_t>& provisional() const { return bhat_; }   // B^_t
    const std::vector<int64_t>& pruned() const { return bp_; }          // B'_t
    const std::vector<int64_t>& disrupted() const { return dis_; }      // segment indices
    const std::vector<Cell>& last_deletions() const { return last_del_; }
    const DeletionIndex& deletions() const { return del_; }

    // window of tracked segments [seg_base, seg_base + size); segments
    // outside it are empty and spreading
    int64_t seg_base() const { return base_; }
    const std::deque<SegState>& segments() const { return segs_; }
    const SegState* seg(int64_t index) const;
    // merged chi_{t-1} per current segment index (valid for the window)
    bool prev_chi(int64_t index) const;

    // cheaper infinite-interval thresholds used for the timers
    int64_t left_inf_col() const { return cL_; }
    int64_t right_inf_col() const { return cR_; }

private:
    void merge_at_doubling();
    void build_provisional();
    void extend_window(int64_t xlo, int64_t xhi);
    void update_timers();
    void update_pivots_and_front();
    void prune();

    StrategyParams p_;
    int64_t t_ = 0, h_ = 1, h_prev_ = 1, Ht_ = 1, ht_ = 1;
    DeletionIndex del_;
    std::vector<Cell> last_del_;
    std::vector<int64_t> b_, b_prev_, bhat_, bp_, bp_prev_, dis_;
    int64_t base_ = 0;
    std::deque<SegState> segs_;
    // aligned with segs_: merged chi_{t-1}, and the previous pivots of the
    // children as (lo, hi, pivot) (the segment itself between doublings)
    std::deque<char> prev_chi_;
    std::deque<std::vector<std::array<int64_t, 3>>> kids_;
    int64_t cL_ = kNever, cR_ = -kNever;
};

// Candidates that might become the leftmost front cell within 3H turns:
// the leftmost cell plus every cell whose two-sided path length L (capped
// at 3H) has fewer than 2qL^2+2L+1 cells of at least that length to its
// left. A superset of the exact set under pure spreading.
std::vector<int64_t> leftmost_candidates(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front,
                                         int64_t cap, const Rational& q);

}  // namespace contain
