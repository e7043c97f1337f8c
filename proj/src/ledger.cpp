#include "contain/ledger.hpp"

#include <algorithm>
#include <bit>

namespace contain {

namespace {

bool has(const std::vector<int64_t>& sorted, int64_t x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

int64_t count_in(const std::vector<int64_t>& sorted, int64_t lo, int64_t hi) {
    return std::upper_bound(sorted.begin(), sorted.end(), hi) - std::lower_bound(sorted.begin(), sorted.end(), lo);
}

// (a - b*num/den) compared without division: a*den - b*num
__int128 scaled(const Rational& q, int64_t a, int64_t b) {
    return static_cast<__int128>(a) * q.den - static_cast<__int128>(b) * q.num;
}

}  // namespace

json LedgerTotals::to_json() const {
    return {{"t", t},         {"h", h},           {"phi", phi},         {"f", f},
            {"d", d},         {"prepot", prepot}, {"pot", pot},         {"b", b},
            {"b_pruned", b_pruned}, {"spreading", spreading}, {"simulative", simulative},
            {"dis", dis},     {"debt_segments", debt_segments}};
}

Ledger::Ledger(const HalfGame& g, const std::vector<Cell>& counted0, int64_t deleted0, std::string label)
    : label_(std::move(label)), variant_(g.params().variant), q_(g.params().q), t_(g.t()), h_(g.h()),
      deleted0_(deleted0) {
    for (const Cell& c : g.deletions().cells()) del_.add(c);
    base_ = g.seg_base();
    rows_.resize(g.segments().size());
    for (const Cell& c : counted0) {
        if (!counted_.insert(c).second) continue;
        int64_t k = floor_div(c.x, h_);
        extend(k, k);
        LedgerRow* r = row(k);
        r->f++;
        r->max_row = std::max(r->max_row, c.y);
        max_counted_row_ = std::max(max_counted_row_, c.y);
    }
    for (int64_t x : g.front()) {
        int64_t k = floor_div(x, h_);
        extend(k, k);
        row(k)->b++;
    }
    tot_.t = t_;
    tot_.h = h_;
    for (auto& r : rows_) {
        r.phi = r.r = r.b;  // every segment starts spreading and simple
        r.prepot = r.phi + r.f;
        tot_.phi += r.phi;
        tot_.f += r.f;
        tot_.b += r.b;
        tot_.prepot += r.prepot;
    }
    tot_.pot = tot_.prepot;
    tot_.b_pruned = static_cast<int64_t>(g.pruned().size());
    tot_.spreading = tot_.b_pruned;
    if (!g.front().empty()) {
        hist_min_ = g.front().front();
        hist_max_ = g.front().back();
    }
}

LedgerRow* Ledger::row(int64_t k) {
    if (k < base_ || k >= base_ + static_cast<int64_t>(rows_.size())) return nullptr;
    return &rows_[static_cast<size_t>(k - base_)];
}

void Ledger::extend(int64_t klo, int64_t khi) {
    if (rows_.empty()) {
        base_ = klo;
        rows_.resize(static_cast<size_t>(khi - klo + 1));
        return;
    }
    while (base_ > klo) {
        --base_;
        rows_.emplace_front();
    }
    while (base_ + static_cast<int64_t>(rows_.size()) <= khi) rows_.emplace_back();
}

std::string Ledger::seg_name(int64_t k) const {
    std::string s = label_.empty() ? "" : label_ + " ";
    return s + "seg " + std::to_string(k) + " [" + std::to_string(k * h_) + "," + std::to_string(k * h_ + h_ - 1) + "]";
}

void Ledger::violate(std::vector<Violation>& out, const char* check, const std::string& where, int64_t lhs,
                     int64_t rhs, std::string detail) {
    out.push_back({check, t_, where, lhs, rhs, std::move(detail)});
}

void Ledger::merge_rows() {
    if (rows_.empty()) return;
    const int64_t w = h_;  // old width
    int64_t nbase = floor_div(base_, 2);
    int64_t nlast = floor_div(base_ + static_cast<int64_t>(rows_.size()) - 1, 2);
    std::deque<LedgerRow> m(static_cast<size_t>(nlast - nbase + 1));
    for (auto& r : m) r.tau = 0, r.chi = false, r.ell = 0;
    std::vector<char> seen(m.size(), 0);
    for (size_t i = 0; i < rows_.size(); ++i) {
        const int64_t k = base_ + static_cast<int64_t>(i);
        const LedgerRow& c = rows_[i];
        LedgerRow& p = m[static_cast<size_t>(floor_div(k, 2) - nbase)];
        seen[static_cast<size_t>(floor_div(k, 2) - nbase)]++;
        p.f += c.f;
        p.phi += c.phi;
        p.r += c.r;
        p.d += c.d;
        p.b += c.b;
        p.prepot += c.prepot;
        p.ell = std::max(p.ell, c.ell);
        p.tau = std::max(p.tau, c.tau);
        p.chi = p.chi || c.chi;
        p.max_row = std::max(p.max_row, c.max_row);
        if (c.d > 0 && (p.debt_born < 0 || c.debt_born < p.debt_born)) p.debt_born = c.debt_born;
        if (c.pivot != kNoPivot) p.kids.push_back({k * w, k * w + w - 1, c.pivot});
    }
    // a missing child is an empty spreading segment
    for (size_t j = 0; j < m.size(); ++j)
        if (seen[j] < 2) {
            m[j].chi = true;
            m[j].tau = std::max<int64_t>(m[j].tau, 1);
        }
    rows_.swap(m);
    base_ = nbase;
}

int64_t Ledger::range_of(int64_t lo, int64_t hi, const std::vector<int64_t>& cells, int64_t ell) const {
    const int64_t w = hi - lo + 1;
    const size_t nw = static_cast<size_t>((w + 63) / 64);
    std::vector<uint64_t> cur(nw, 0), del(nw);
    auto load_del = [&](int64_t y) {
        std::fill(del.begin(), del.end(), 0);
        auto [a, b] = del_.row_range(y, lo, hi);
        for (const int64_t* p = a; p != b; ++p) del[static_cast<size_t>((*p - lo) / 64)] |= uint64_t(1) << ((*p - lo) % 64);
    };
    const uint64_t tail = (w % 64) ? ((uint64_t(1) << (w % 64)) - 1) : ~uint64_t(0);
    for (int64_t x : cells)
        if (x >= lo && x <= hi) cur[static_cast<size_t>((x - lo) / 64)] |= uint64_t(1) << ((x - lo) % 64);
    load_del(t_);
    for (size_t i = 0; i < nw; ++i) cur[i] &= ~del[i];
    for (int64_t y = t_ + 1; y <= t_ + ell; ++y) {
        load_del(y);
        uint64_t carry = 0;
        bool any = false;
        for (size_t i = 0; i < nw; ++i) {
            uint64_t v = cur[i];
            uint64_t nv = v | (v << 1) | carry;
            carry = v >> 63;
            cur[i] = nv & ~del[i];
            if (i + 1 == nw) cur[i] &= tail;
            any = any || cur[i];
        }
        if (!any) return 0;
    }
    int64_t n = 0;
    for (uint64_t v : cur) n += std::popcount(v);
    return n;
}

std::vector<Violation> Ledger::observe(const HalfGame& g) {
    std::vector<Violation> out;
    prev_tot_ = tot_;
    const int64_t t = g.t();
    t_ = t;
    const bool doubled = g.h() != h_;
    if (doubled) merge_rows();
    const int64_t h = g.h();
    h_ = h;
    extend(g.seg_base(), g.seg_base() + static_cast<int64_t>(g.segments().size()) - 1);
    for (const Cell& c : g.last_deletions()) del_.add(c);

    for (size_t i = 0; i < rows_.size(); ++i) {
        LedgerRow& r = rows_[i];
        r.prev_f = r.f;
        r.prev_phi = r.phi;
        r.prev_r = r.r;
        r.prev_d = r.d;
        r.prev_b = r.b;
        r.prev_ell = r.ell;
        r.prev_prepot = r.prepot;
        r.prev_chi = r.chi;
        r.prev_tau = r.tau;
        r.df = 0;
        if (!doubled) {
            r.kids.clear();
            const int64_t lo = (base_ + static_cast<int64_t>(i)) * h;
            if (r.pivot != kNoPivot) r.kids.push_back({lo, lo + h - 1, r.pivot});
        }
    }

    const auto& bprev = g.prev_front();
    const auto& b = g.front();
    const auto& bp = g.pruned();

    // disruptions, recomputed
    std::vector<int64_t> dis;
    for (const Cell& c : g.last_deletions())
        if (c.y >= t && c.y <= t + h - 1) dis.push_back(floor_div(c.x, h));
    std::sort(dis.begin(), dis.end());
    dis.erase(std::unique(dis.begin(), dis.end()), dis.end());
    if (dis != g.disrupted())
        violate(out, "disruption_set", label_, static_cast<int64_t>(g.disrupted().size()),
                static_cast<int64_t>(dis.size()));

    // timers, look-ahead, and the per-segment strategy rules
    std::vector<int64_t> expect_front;
    std::vector<int64_t> bhat;
    if (!bprev.empty()) {
        if (variant_ == HalfVariant::Half) bhat.push_back(bprev.front() - 1);
        for (int64_t x : bprev) {
            bhat.push_back(x);
            bhat.push_back(x + 1);
        }
        std::sort(bhat.begin(), bhat.end());
        bhat.erase(std::unique(bhat.begin(), bhat.end()), bhat.end());
        std::erase_if(bhat, [&](int64_t x) { return del_.contains({x, t}); });
    }
    for (size_t i = 0; i < rows_.size(); ++i) {
        const int64_t k = base_ + static_cast<int64_t>(i);
        const int64_t lo = k * h, hi = lo + h - 1;
        LedgerRow& r = rows_[i];
        const SegState* s = g.seg(k);
        SegState dflt;
        if (!s) s = &dflt;
        if (doubled && r.prev_tau > 0 && r.prev_tau <= g.h_prev())
            violate(out, "timer_after_doubling", seg_name(k), r.prev_tau, g.h_prev());
        r.tau = s->tau;
        r.chi = s->chi();
        r.pivot = s->pivot;
        r.ell = r.chi ? std::max<int64_t>(r.prev_ell - 1, 0) : h;
        if (r.chi && r.ell >= r.tau) violate(out, "lookahead_lt_timer", seg_name(k), r.ell, r.tau);
        if (r.prev_chi && !r.chi && (r.prev_ell != 0 || doubled))
            violate(out, "simple_before_consolidation", seg_name(k), r.prev_ell, 0, doubled ? "at a doubling" : "");
        if (r.prev_ell == 0 && r.max_row >= t) violate(out, "simple_fresh", seg_name(k), r.max_row, t - 1);

        if (r.chi) {
            if (r.pivot != kNoPivot) violate(out, "pivot_rule", seg_name(k), r.pivot, -1, "spreading segment has a pivot");
            for (auto it = std::lower_bound(bhat.begin(), bhat.end(), lo); it != bhat.end() && *it <= hi; ++it)
                expect_front.push_back(*it);
            continue;
        }
        int64_t p = kNoPivot;
        if (r.prev_chi) {
            for (auto it = std::lower_bound(bprev.begin(), bprev.end(), lo); it != bprev.end() && *it <= hi; ++it) {
                bool clear = true;
                for (int64_t y = t; y < t + h && clear; ++y) clear = !del_.contains({*it, y});
                if (clear) {
                    p = *it;
                    break;
                }
            }
        } else {
            for (const auto& [klo, khi, kp] : r.kids)
                for (int64_t x : {kp, kp + 1})
                    if (x <= khi && x < p && range_of(x, khi, {x}, h - 1) > 0) p = x;
        }
        if (p != r.pivot) violate(out, "pivot_rule", seg_name(k), r.pivot == kNoPivot ? -1 : r.pivot, p == kNoPivot ? -1 : p);
        if (r.pivot != kNoPivot) expect_front.push_back(r.pivot);
    }
    if (expect_front != b)
        violate(out, "front_rule", label_, static_cast<int64_t>(b.size()), static_cast<int64_t>(expect_front.size()));

    // counted deletions
    auto prev_adjacent = [&](int64_t x) {
        return has(bprev, x) || has(bprev, x - 1) || (variant_ == HalfVariant::Half && has(bprev, x + 1));
    };
    fresh_.clear();
    for (int64_t y = t; y <= t + h; ++y) {
        for (int64_t x : del_.row(y)) {
            const Cell c{x, y};
            if (counted_.count(c)) continue;
            const int64_t k = floor_div(x, h);
            LedgerRow* r = row(k);
            const int64_t ell = r ? r->ell : 0;
            if (y > t + ell) continue;
            if (ell == 0 && !prev_adjacent(x)) continue;
            if (!r) {
                extend(k, k);
                r = row(k);
            }
            counted_.insert(c);
            fresh_.push_back(c);
            r->df++;
            r->f++;
            r->max_row = std::max(r->max_row, y);
            max_counted_row_ = std::max(max_counted_row_, y);
            if (!std::binary_search(dis.begin(), dis.end(), k) && y <= t - 1 + r->prev_ell)
                violate(out, "fresh_counts", seg_name(k), y, t - 1 + r->prev_ell);
        }
    }

    // front sizes, range, simulated fire, pre-potential
    for (size_t i = 0; i < rows_.size(); ++i) {
        const int64_t k = base_ + static_cast<int64_t>(i);
        const int64_t lo = k * h, hi = lo + h - 1;
        LedgerRow& r = rows_[i];
        auto a = std::lower_bound(b.begin(), b.end(), lo);
        auto e = std::upper_bound(a, b.end(), hi);
        r.b = e - a;
        if (!r.chi && r.b > 1) violate(out, "simulative_unique", seg_name(k), r.b, 1);
        r.r = r.b == 0 ? 0 : (r.ell == 0 ? r.b : range_of(lo, hi, std::vector<int64_t>(a, e), r.ell));
        r.phi = r.chi ? r.r : std::max<int64_t>(r.prev_phi - r.df, 0);
        r.prepot = r.phi + r.f;
    }

    // debt: compensation from the nearest growing segment to the left that
    // has fire further left
    {
        bool fire_left = false, have_lambda = false, zero_since = true;
        int64_t lambda_gain = 0;
        for (auto& r : rows_) {
            const int64_t dpp = r.prepot - r.prev_prepot;
            r.dtilde = r.prev_d + std::max<int64_t>(-dpp, 0);
            if (dpp > 0 && fire_left) {
                have_lambda = true;
                lambda_gain = dpp;
                zero_since = true;
            }
            if (have_lambda && zero_since && r.dtilde > 0)
                r.d = std::max<int64_t>(r.dtilde - lambda_gain, 0);
            else
                r.d = r.dtilde;
            zero_since = zero_since && r.dtilde == 0;
            fire_left = fire_left || r.b > 0;
        }
    }
    for (auto& r : rows_) {
        if (r.d > 0) {
            if (r.prev_d == 0) r.debt_born = t;
        } else {
            r.debt_born = -1;
        }
    }

    if (fault_.turn == t) {
        if (LedgerRow* r = row(fault_.segment)) {
            if (fault_.field == LedgerFault::Field::Phi) r->phi += fault_.delta;
            if (fault_.field == LedgerFault::Field::Debt) r->d += fault_.delta;
            if (fault_.field == LedgerFault::Field::Counted) r->f += fault_.delta;
            r->prepot = r->phi + r->f;
            if (r->d > 0 && r->debt_born < 0) r->debt_born = t;
        }
    }

    // totals
    LedgerTotals tot;
    tot.t = t;
    tot.h = h;
    tot.dis = static_cast<int64_t>(dis.size());
    tot.b_pruned = static_cast<int64_t>(bp.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        const LedgerRow& r = rows_[i];
        tot.phi += r.phi;
        tot.f += r.f;
        tot.d += r.d;
        tot.prepot += r.prepot;
        tot.b += r.b;
        tot.simulative += r.chi ? 0 : 1;
        tot.debt_segments += r.d > 0 ? 1 : 0;
    }
    tot.pot = tot.prepot + tot.d;
    if (tot.f != static_cast<int64_t>(counted_.size()))
        violate(out, "counted_matches_cells", label_, tot.f, static_cast<int64_t>(counted_.size()));
    for (int64_t x : bp) {
        const LedgerRow* r = row(floor_div(x, h));
        if (!r || r->chi) tot.spreading++;
    }
    tot_ = tot;

    // per-segment suite
    std::vector<int64_t> left_mass(rows_.size()), right_mass(rows_.size());
    {
        int64_t acc = 0;
        for (size_t i = 0; i < rows_.size(); ++i) left_mass[i] = acc += rows_[i].b;
        acc = 0;
        for (size_t i = rows_.size(); i-- > 0;) right_mass[i] = acc += rows_[i].b;
    }
    for (size_t i = 0; i < rows_.size(); ++i) {
        const int64_t k = base_ + static_cast<int64_t>(i);
        const int64_t lo = k * h, hi = lo + h - 1;
        const LedgerRow& r = rows_[i];
        const std::string where = seg_name(k);
        const int64_t dpp = r.prepot - r.prev_prepot;
        const bool disrupted = std::binary_search(dis.begin(), dis.end(), k);

        if (r.phi + r.d > h) violate(out, "sim_fire_plus_debt_le_h", where, r.phi + r.d, h);
        if (r.phi > r.r) violate(out, "sim_fire_le_range", where, r.phi, r.r);
        if (r.d > 0) {
            const int64_t age = t - r.debt_born;
            // age <= q h^2 + h
            if (scaled(q_, age - h, 0) > static_cast<__int128>(q_.num) * h * h)
                violate(out, "debt_age", where, age, q_.floor_times(h * h) + h);
        }
        if (!disrupted && dpp < 0) violate(out, "prepotential_nondecreasing", where, dpp, 0);
        if (!disrupted && r.chi && (r.r - r.prev_r) + r.df < 0)
            violate(out, "range_plus_counted", where, (r.r - r.prev_r) + r.df, 0);
        if (r.prev_ell == 0 && r.ell == 0) {
            if (dpp < 0) violate(out, "simple_growth", where, dpp, 0);
            bool vacant = false;
            for (auto it = std::lower_bound(bprev.begin(), bprev.end(), lo - 1); it != bprev.end() && *it <= hi - 1; ++it)
                if (!has(bprev, *it + 1)) {
                    vacant = true;
                    break;
                }
            if (vacant && dpp < 1) violate(out, "simple_growth", where, dpp, 1, "right-vacant cell");
        }
        if (r.d - r.prev_d > std::max<int64_t>(-dpp, 0))
            violate(out, "debt_increment", where, r.d - r.prev_d, std::max<int64_t>(-dpp, 0));
        // deletions inside the look-ahead box
        auto box = [&](int64_t from) {
            int64_t n = 0;
            for (int64_t y = t; y <= t + r.ell; ++y) {
                auto [a, e] = del_.row_range(y, from, hi);
                n += e - a;
            }
            return n;
        };
        if (!r.chi) {
            int64_t inbox = box(lo);
            if (r.phi > h - inbox) violate(out, "sim_fire_vs_box", where, r.phi, h - inbox);
            if (r.pivot != kNoPivot) {
                int64_t w = hi - r.pivot + 1, ft = box(r.pivot);
                if (w > r.r + ft) violate(out, "range_covers_width", where, w, r.r + ft);
            }
        }
        if (std::min(left_mass[i], right_mass[i]) <= 2 * h &&
            (r.ell != 0 || r.prev_ell != 0 || r.d != 0 || r.prev_d != 0))
            violate(out, "thin_side_simple", where, std::max({r.ell, r.prev_ell, r.d, r.prev_d}), 0);
    }

    // no indebted segment lies in the left part of a simulative segment's alert interval
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].d <= 0) continue;
        const int64_t kq = base_ + static_cast<int64_t>(i);
        const int64_t minq = kq * h;
        std::vector<int64_t> right(std::lower_bound(bhat.begin(), bhat.end(), minq + h), bhat.end());
        int64_t c = kNever;
        if (!right.empty()) {
            auto sw = greedy_sweep(del_, t, std::move(right), g.Htilde(), true, g.Htilde());
            if (sw.stop_column) c = *sw.stop_column;
        }
        for (size_t j = (i == 0 ? 0 : i - 1); j < rows_.size(); ++j) {
            const int64_t ks = base_ + static_cast<int64_t>(j);
            if (ks * h > c) break;
            if (!rows_[j].chi) {
                violate(out, "simulative_debt_free", seg_name(kq), rows_[i].d, 0, "inside the alert interval of " + seg_name(ks));
                break;
            }
        }
    }

    // totals suite
    if (scaled(q_, tot.f - deleted0_, 0) > static_cast<__int128>(q_.num) * t)
        violate(out, "counted_total_le_qt", label_, tot.f - deleted0_, q_.floor_times(t));
    const int64_t growth = variant_ == HalfVariant::Half ? 2 : 1;
    if (prev_tot_.b > 0 && tot.pot - prev_tot_.pot < growth)
        violate(out, "potential_growth", label_, tot.pot - prev_tot_.pot, growth);
    if (tot.b == 0 && tot.phi + tot.d != 0) violate(out, "fire_from_potential", label_, tot.phi + tot.d, 0);
    if (!std::includes(b.begin(), b.end(), bp.begin(), bp.end()))
        violate(out, "pruned_subset", label_, static_cast<int64_t>(bp.size()), static_cast<int64_t>(b.size()));
    if (!b.empty() && !std::binary_search(bp.begin(), bp.end(), b.front()) && variant_ == HalfVariant::Half)
        violate(out, "min_retained", label_, b.front(), bp.empty() ? -1 : bp.front());

    // play area
    if (tot.b == 0 && max_counted_row_ > t) violate(out, "play_area_dead_front", label_, max_counted_row_, t);
    auto in_cone = [&](Cell c) {
        if (bprev.empty() || c.y < t - 1) return false;
        const int64_t n = c.y - (t - 1);
        return c.x >= bprev.front() - n && c.x <= bprev.back() + n;
    };
    for (const Cell& c : fresh_) {
        if (!in_cone(c)) violate(out, "play_area_cone", label_, c.x, c.y, "counted cell outside the cone");
        if (c.x < hist_min_ - 1 || c.x > hist_max_ + 1)
            violate(out, "play_area_columns", label_, c.x, c.x < hist_min_ ? hist_min_ - 1 : hist_max_ + 1);
    }
    for (int64_t x : {b.empty() ? kNever : b.front(), b.empty() ? kNever : b.back()}) {
        if (x == kNever) continue;
        if (!in_cone({x, t})) violate(out, "play_area_cone", label_, x, t, "front cell outside the cone");
        if (x < hist_min_ - 1 || x > hist_max_ + 1)
            violate(out, "play_area_columns", label_, x, x < hist_min_ ? hist_min_ - 1 : hist_max_ + 1);
    }
    if (!b.empty()) {
        hist_min_ = std::min(hist_min_, b.front());
        hist_max_ = std::max(hist_max_, b.back());
    }

    // side mass around sampled simulative segments
    std::erase_if(side_, [&](const SideMass& s) { return t >= s.t0 + s.Ht; });
    for (const SideMass& s : side_) {
        const int64_t el = t - s.t0;
        int64_t left = count_in(b, -kNever, s.hi), right = count_in(b, s.lo, kNever);
        if (scaled(q_, s.Ht, el) > static_cast<__int128>(left) * q_.den)  // Ht - q*el > left
            violate(out, "side_mass", label_, left, s.Ht - q_.ceil_times(el), "left of [" + std::to_string(s.lo) + "," + std::to_string(s.hi) + "]");
        if (scaled(q_, 2 * s.Ht, el) > static_cast<__int128>(right) * q_.den)
            violate(out, "side_mass", label_, right, 2 * s.Ht - q_.ceil_times(el), "right of [" + std::to_string(s.lo) + "," + std::to_string(s.hi) + "]");
    }
    if (t % 16 == 0) {
        const LedgerRow* first = nullptr;
        const LedgerRow* last = nullptr;
        int64_t kf = 0, kl = 0;
        for (size_t i = 0; i < rows_.size(); ++i)
            if (!rows_[i].chi) {
                if (!first) first = &rows_[i], kf = base_ + static_cast<int64_t>(i);
                last = &rows_[i], kl = base_ + static_cast<int64_t>(i);
            }
        if (first) side_.push_back({t, kf * h, kf * h + h - 1, g.Htilde()});
        if (last && kl != kf) side_.push_back({t, kl * h, kl * h + h - 1, g.Htilde()});
    }
    return out;
}

json Ledger::rows_json() const {
    json arr = json::array();
    for (size_t i = 0; i < rows_.size(); ++i) {
        const LedgerRow& r = rows_[i];
        const int64_t k = base_ + static_cast<int64_t>(i);
        if (r.b == 0 && r.f == 0 && r.d == 0 && r.chi) continue;
        json j = {{"seg", k}, {"lo", k * h_}, {"chi", r.chi ? 1 : 0}, {"tau", r.tau}, {"ell", r.ell},
                  {"b", r.b}, {"phi", r.phi}, {"f", r.f}, {"r", r.r}, {"d", r.d}, {"pot", r.pot()}};
        if (r.pivot != kNoPivot) j["p"] = r.pivot;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace contain
