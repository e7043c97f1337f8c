#include "contain/strategy.hpp"

#include <algorithm>

namespace contain {

namespace {

void sort_unique(std::vector<int64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

HalfGame::HalfGame(StrategyParams p, std::vector<int64_t> b0, const std::vector<Cell>& deleted0)
    : p_(std::move(p)) {
    for (const Cell& c : deleted0)
        if (c.y >= 0) del_.add(c);
    sort_unique(b0);
    for (int64_t x : b0)
        if (del_.contains({x, 0})) throw GameError("InvalidConfig", "initial front cell is deleted");
    h_ = h_prev_ = p_.schedule.h(0);
    Ht_ = Htilde_of(p_.schedule, p_.q, 0);
    ht_ = htilde_of(p_.schedule, 0);
    b_ = b_prev_ = bhat_ = bp_ = bp_prev_ = b0;
    if (!b_.empty()) extend_window(b_.front() - 1, b_.back() + 1);
}

const SegState* HalfGame::seg(int64_t index) const {
    if (index < base_ || index >= base_ + static_cast<int64_t>(segs_.size())) return nullptr;
    return &segs_[static_cast<size_t>(index - base_)];
}

bool HalfGame::prev_chi(int64_t index) const {
    if (index < base_ || index >= base_ + static_cast<int64_t>(segs_.size())) return true;
    return prev_chi_[static_cast<size_t>(index - base_)] != 0;
}

void HalfGame::extend_window(int64_t xlo, int64_t xhi) {
    int64_t klo = floor_div(xlo, h_), khi = floor_div(xhi, h_);
    if (segs_.empty()) {
        base_ = klo;
        segs_.resize(static_cast<size_t>(khi - klo + 1));
        prev_chi_.assign(segs_.size(), 1);
        kids_.resize(segs_.size());
        return;
    }
    while (base_ > klo) {
        --base_;
        segs_.emplace_front();
        prev_chi_.push_front(1);
        kids_.emplace_front();
    }
    while (base_ + static_cast<int64_t>(segs_.size()) <= khi) {
        segs_.emplace_back();
        prev_chi_.push_back(1);
        kids_.emplace_back();
    }
}

// Children of width h/2 fold into their parent: timers by max, pivots kept
// aside for the pivot step.
void HalfGame::merge_at_doubling() {
    if (segs_.empty()) return;
    const int64_t w = h_prev_;
    int64_t nbase = floor_div(base_, 2);
    int64_t nlast = floor_div(base_ + static_cast<int64_t>(segs_.size()) - 1, 2);
    std::deque<SegState> merged(static_cast<size_t>(nlast - nbase + 1));
    std::deque<char> chi(merged.size(), 0);
    std::deque<std::vector<std::array<int64_t, 3>>> kids(merged.size());
    std::vector<char> touched(merged.size(), 0);
    for (size_t i = 0; i < segs_.size(); ++i) {
        int64_t k = base_ + static_cast<int64_t>(i);
        size_t j = static_cast<size_t>(floor_div(k, 2) - nbase);
        const SegState& c = segs_[i];
        merged[j].tau = touched[j] ? std::max(merged[j].tau, c.tau) : c.tau;
        touched[j] = 1;
        chi[j] = chi[j] || c.chi();
        if (c.pivot != kNoPivot) kids[j].push_back({k * w, k * w + w - 1, c.pivot});
    }
    // a parent with one child outside the window: the other is empty and spreading
    for (size_t j = 0; j < merged.size(); ++j) {
        int64_t first = 2 * (nbase + static_cast<int64_t>(j));
        int64_t end = base_ + static_cast<int64_t>(segs_.size());
        if (first < base_ || first + 1 >= end) chi[j] = 1;
    }
    segs_.swap(merged);
    prev_chi_.swap(chi);
    kids_.swap(kids);
    base_ = nbase;
}

void HalfGame::build_provisional() {
    bhat_.clear();
    if (b_prev_.empty()) return;
    bhat_.reserve(2 * b_prev_.size() + 1);
    if (p_.variant == HalfVariant::Half) bhat_.push_back(b_prev_.front() - 1);
    for (int64_t x : b_prev_) {
        bhat_.push_back(x);
        bhat_.push_back(x + 1);
    }
    sort_unique(bhat_);
    int64_t lo = bhat_.front(), hi = bhat_.back();
    std::erase_if(bhat_, [&](int64_t x) { return del_.contains({x, t_}); });
    // deleted targets still matter to the counting, so the window covers them
    extend_window(lo - 1, hi + 1);
}

void HalfGame::update_timers() {
    const int64_t t = t_, h = h_;
    cL_ = kNever;
    cR_ = -kNever;
    if (!bhat_.empty()) {
        auto l = greedy_sweep(del_, t, bhat_, Ht_, true, Ht_);
        if (l.stop_column) cL_ = *l.stop_column;
        auto r = greedy_sweep(del_, t, bhat_, 2 * Ht_, false, 2 * Ht_);
        if (r.stop_column) cR_ = *r.stop_column;
    }
    std::vector<AlertInterval> alerts;
    for (int64_t k : dis_) alerts.push_back(alert_interval(del_, t, bhat_, k * h, k * h + h - 1, h, Ht_));
    for (size_t i = 0; i < segs_.size(); ++i) {
        const int64_t lo = (base_ + static_cast<int64_t>(i)) * h, hi = lo + h - 1;
        SegState& s = segs_[i];
        bool alert = std::any_of(alerts.begin(), alerts.end(), [&](const AlertInterval& iv) { return iv.contains(lo, hi); });
        if (alert)
            s.tau = Ht_;
        else if (lo <= cL_ || hi >= cR_)
            s.tau = ht_;
        else
            s.tau = std::max<int64_t>(s.tau - 1, 0);
    }
}

void HalfGame::update_pivots_and_front() {
    const int64_t t = t_, h = h_;
    b_.clear();
    auto hat = bhat_.begin();
    auto prev = b_prev_.begin();
    for (size_t i = 0; i < segs_.size(); ++i) {
        const int64_t lo = (base_ + static_cast<int64_t>(i)) * h, hi = lo + h - 1;
        SegState& s = segs_[i];
        while (hat != bhat_.end() && *hat < lo) ++hat;
        while (prev != b_prev_.end() && *prev < lo) ++prev;
        if (s.chi()) {
            s.pivot = kNoPivot;
            for (; hat != bhat_.end() && *hat <= hi; ++hat) b_.push_back(*hat);
            continue;
        }
        int64_t p = kNoPivot;
        if (prev_chi_[i]) {
            // consolidation: leftmost occupied cell with a clear column
            for (auto it = prev; it != b_prev_.end() && *it <= hi; ++it)
                if (column_clear(del_, *it, t, h)) {
                    p = *it;
                    break;
                }
        } else {
            for (const auto& [klo, khi, kp] : kids_[i])
                for (int64_t x : {kp, kp + 1}) {
                    if (x > khi || x >= p) continue;
                    if (has_path_within(del_, x, t, h, khi)) p = x;
                }
        }
        s.pivot = p;
        if (p != kNoPivot) b_.push_back(p);
    }
}

void HalfGame::prune() {
    bp_.clear();
    if (b_.empty()) return;
    const int64_t cap = 3 * H();
    bp_ = reachable_starts(del_, t_, b_, cap, Sided::One);
    if (p_.variant == HalfVariant::Eighth) return;
    auto cand = leftmost_candidates(del_, t_, b_, cap, p_.q);
    for (int64_t x : cand) {
        auto it = std::lower_bound(bp_prev_.begin(), bp_prev_.end(), x - 1);
        if (it != bp_prev_.end() && *it <= x + 1) bp_.push_back(x);
    }
    sort_unique(bp_);
}

void HalfGame::step(const std::vector<Cell>& new_deleted) {
    const int64_t t = t_ + 1;
    last_del_.clear();
    for (const Cell& c : new_deleted)
        if (c.y >= t && del_.add(c)) last_del_.push_back(c);
    std::sort(last_del_.begin(), last_del_.end(), row_major_less);

    t_ = t;
    h_prev_ = h_;
    h_ = p_.schedule.h(t);
    Ht_ = Htilde_of(p_.schedule, p_.q, t);
    ht_ = htilde_of(p_.schedule, t);
    b_prev_.swap(b_);
    bp_prev_.swap(bp_);

    if (h_ != h_prev_) {
        merge_at_doubling();
    } else {
        for (size_t i = 0; i < segs_.size(); ++i) {
            const int64_t lo = (base_ + static_cast<int64_t>(i)) * h_;
            prev_chi_[i] = segs_[i].chi();
            kids_[i].clear();
            if (segs_[i].pivot != kNoPivot) kids_[i].push_back({lo, lo + h_ - 1, segs_[i].pivot});
        }
    }
    build_provisional();

    dis_.clear();
    for (const Cell& c : last_del_)
        if (c.y <= t + h_ - 1) dis_.push_back(floor_div(c.x, h_));
    sort_unique(dis_);

    update_timers();
    update_pivots_and_front();
    prune();
}

std::vector<int64_t> leftmost_candidates(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front,
                                         int64_t cap, const Rational& q) {
    std::vector<int64_t> out;
    if (front.empty()) return out;
    auto len = path_lengths(del, t, front, cap, Sided::Two);
    // Fenwick tree over lengths 1..cap, queried for counts of length >= L
    std::vector<int64_t> fen(static_cast<size_t>(cap + 2), 0);
    int64_t seen = 0;
    auto add = [&](int64_t v) {
        for (; v <= cap; v += v & -v) fen[static_cast<size_t>(v)]++;
    };
    auto below = [&](int64_t v) {  // count with length <= v
        int64_t s = 0;
        for (; v > 0; v -= v & -v) s += fen[static_cast<size_t>(v)];
        return s;
    };
    out.push_back(front[0]);
    for (size_t i = 0; i < front.size(); ++i) {
        int64_t L = std::min(len[i], cap);
        if (L >= 1) {
            int64_t rank = seen - below(L - 1);
            __int128 lhs = static_cast<__int128>(rank) * q.den;
            __int128 rhs = static_cast<__int128>(2) * q.num * L * L + static_cast<__int128>(2) * L * q.den;
            if (i > 0 && lhs <= rhs) out.push_back(front[i]);
            add(L);
            ++seen;
        }
    }
    return out;
}

}  // namespace contain
