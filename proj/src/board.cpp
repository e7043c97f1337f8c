#include "contain/board.hpp"

#include <algorithm>
#include <bit>

namespace contain {

void LaneBits::set(int64_t lane, int64_t y) {
    if (y < 0) return;
    auto& v = lanes_[lane];
    size_t w = static_cast<size_t>(y >> 6);
    if (v.size() <= w) v.resize(w + 1 + v.size() / 2, 0);
    v[w] |= uint64_t(1) << (y & 63);
}

bool LaneBits::test(int64_t lane, int64_t y) const {
    if (y < 0) return false;
    auto it = lanes_.find(lane);
    if (it == lanes_.end()) return false;
    size_t w = static_cast<size_t>(y >> 6);
    return w < it->second.size() && (it->second[w] >> (y & 63) & 1);
}

int64_t LaneBits::next_set(int64_t lane, int64_t y) const {
    if (y < 0) y = 0;
    auto it = lanes_.find(lane);
    if (it == lanes_.end()) return kNever;
    const auto& v = it->second;
    size_t w = static_cast<size_t>(y >> 6);
    if (w >= v.size()) return kNever;
    uint64_t word = v[w] & (~uint64_t(0) << (y & 63));
    while (true) {
        if (word) return static_cast<int64_t>(w * 64 + std::countr_zero(word));
        if (++w >= v.size()) return kNever;
        word = v[w];
    }
}

int64_t LaneBits::prev_clear(int64_t lane, int64_t y, int64_t lo) const {
    if (y < lo) return lo - 1;
    auto it = lanes_.find(lane);
    if (it == lanes_.end() || y < 0) return y;
    const auto& v = it->second;
    int64_t w = y >> 6;
    if (static_cast<size_t>(w) >= v.size()) return y;
    // bits above y are masked in as "set" so they are never returned
    uint64_t word = ~v[w] & (~uint64_t(0) >> (63 - (y & 63)));
    while (true) {
        if (word) {
            int64_t r = w * 64 + 63 - std::countl_zero(word);
            return r >= lo ? r : lo - 1;
        }
        if (--w < 0 || w * 64 + 63 < lo) return lo - 1;
        word = ~v[w];
    }
}

bool DeletionIndex::add(Cell c) {
    if (!set_.insert(c).second) return false;
    auto& r = rows_[c.y];
    r.insert(std::upper_bound(r.begin(), r.end(), c.x), c.x);
    cols_.set(c.x, c.y);
    diags_.set(c.y - c.x, c.y);
    return true;
}

const std::vector<int64_t>& DeletionIndex::row(int64_t y) const {
    static const std::vector<int64_t> empty;
    auto it = rows_.find(y);
    return it == rows_.end() ? empty : it->second;
}

std::pair<const int64_t*, const int64_t*> DeletionIndex::row_range(int64_t y, int64_t lo, int64_t hi) const {
    const auto& r = row(y);
    auto a = std::lower_bound(r.begin(), r.end(), lo);
    auto b = std::upper_bound(a, r.end(), hi);
    return {r.data() + (a - r.begin()), r.data() + (b - r.begin())};
}

}  // namespace contain
