#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contain/board.hpp"

namespace contain {

enum class Sided { One, Two };

// Front cells on row t (columns) admitting a path of `ell` undeleted cells
// starting at (x,t). Row-by-row DP downward from row t+ell-1 over the
// sparse set of cells whose best path falls short of the remaining rows.
std::vector<int64_t> reachable_starts(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs,
                                      int64_t ell, Sided sided);

// Length of the longest path (in cells) from each (x,t), capped at `cap`.
std::vector<int64_t> path_lengths(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs,
                                  int64_t cap, Sided sided);

bool column_clear(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell);

// one-sided path of `ell` cells from (x,t) whose columns stay within [x, xmax]
bool has_path_within(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell, int64_t xmax);

struct SweepResult {
    int64_t count = 0;
    std::optional<int64_t> stop_column;  // start column of the path that hit the threshold
    std::vector<std::vector<int64_t>> witness;  // columns per row, when requested
};

// Greedy maximum set of disjoint one-sided (t,ell)-paths. Sources are the
// given columns; left_to_right processes them ascending and hugs left,
// otherwise descending and hugging right (the mirror under x -> y - x).
// Stops once `stop` paths are found (stop <= 0: no threshold).
SweepResult greedy_sweep(const DeletionIndex& del, int64_t t, std::vector<int64_t> xs, int64_t ell,
                         bool left_to_right, int64_t stop = 0, bool want_witness = false);

// Unit vertex capacity max-flow; exact for both path families on any finite source set.
int64_t flow_count(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs, int64_t ell, Sided sided);

struct DisjointPathCount {
    int64_t count = 0;
    std::vector<std::vector<int64_t>> witness;
};

// Region [lo, hi] of start columns (use kNever / -kNever for half-infinite ends).
DisjointPathCount dispath(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front_sorted,
                          int64_t lo, int64_t hi, int64_t ell, Sided sided, int64_t stop = 0,
                          bool want_witness = false);

// Missing bounds are stored as -kNever / kNever, so containment reads the
// half-infinite interval literally.
struct AlertInterval {
    int64_t lo = -kNever;  // inclusive
    int64_t hi = kNever;   // inclusive
    bool infinite() const { return lo == -kNever || hi == kNever; }
    bool contains(int64_t a, int64_t b) const { return lo <= a && b <= hi; }
};

// [max{x in hZ : p^ell([x, minS)) >= ell}, min{x in hZ : p^{2ell}((maxS, x)) >= 2ell}]
AlertInterval alert_interval(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front_sorted,
                             int64_t seg_lo, int64_t seg_hi, int64_t h, int64_t ell);

// Exhaustive oracle used by tests: DFS over all paths.
bool brute_has_path(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell, Sided sided);

}  // namespace contain
