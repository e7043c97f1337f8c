#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "contain/lattice.hpp"

namespace contain {

inline constexpr int64_t kNever = std::numeric_limits<int64_t>::max() / 4;

// Per-lane bitsets over rows y >= 0. A lane is a column (x) or a diagonal (y - x).
class LaneBits {
public:
    void set(int64_t lane, int64_t y);
    bool test(int64_t lane, int64_t y) const;
    // first set row >= y, or kNever
    int64_t next_set(int64_t lane, int64_t y) const;
    // largest clear row in [lo, y], or lo - 1
    int64_t prev_clear(int64_t lane, int64_t y, int64_t lo) const;

private:
    std::unordered_map<int64_t, std::vector<uint64_t>> lanes_;
};

// Deleted cells of one game, indexed three ways: membership, by row, by lane.
class DeletionIndex {
public:
    bool add(Cell c);  // false if already present
    bool contains(Cell c) const { return set_.count(c) != 0; }
    size_t size() const { return set_.size(); }

    // sorted columns of deleted cells on row y (empty if none)
    const std::vector<int64_t>& row(int64_t y) const;
    // deleted columns on row y within [lo, hi]
    std::pair<const int64_t*, const int64_t*> row_range(int64_t y, int64_t lo, int64_t hi) const;

    int64_t next_in_column(int64_t x, int64_t y) const { return cols_.next_set(x, y); }
    int64_t next_in_diagonal(int64_t d, int64_t y) const { return diags_.next_set(d, y); }
    int64_t prev_clear_in_column(int64_t x, int64_t y, int64_t lo) const { return cols_.prev_clear(x, y, lo); }
    int64_t prev_clear_in_diagonal(int64_t d, int64_t y, int64_t lo) const { return diags_.prev_clear(d, y, lo); }

    const CellSet& cells() const { return set_; }

private:
    CellSet set_;
    std::unordered_map<int64_t, std::vector<int64_t>> rows_;
    LaneBits cols_, diags_;
};

}  // namespace contain
