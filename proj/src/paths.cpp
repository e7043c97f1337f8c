#include "contain/paths.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "contain/segments.hpp"

namespace contain {

namespace {

struct Deficient {
    int64_t x;
    int64_t len;
};

}  // namespace

std::vector<int64_t> path_lengths(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs,
                                  int64_t cap, Sided sided) {
    std::vector<int64_t> out(xs.size(), 0);
    if (cap <= 0 || xs.empty()) return out;
    auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    const int64_t lo = *mn - cap - 1, hi = *mx + cap + 1;
    const int64_t top = t + cap - 1;

    std::vector<Deficient> cur, next;
    for (int64_t y = top; y >= t; --y) {
        next.clear();
        if (y < top) {
            // x is short iff every parent is short
            const size_t n = cur.size();
            for (size_t i = 0; i < n; ++i) {
                const int64_t x = cur[i].x;
                if (sided == Sided::One) {
                    if (i + 1 < n && cur[i + 1].x == x + 1)
                        next.push_back({x, 1 + std::max(cur[i].len, cur[i + 1].len)});
                } else {
                    if (i + 2 < n && cur[i + 1].x == x + 1 && cur[i + 2].x == x + 2)
                        next.push_back({x + 1, 1 + std::max({cur[i].len, cur[i + 1].len, cur[i + 2].len})});
                }
            }
        }
        auto [a, b] = del.row_range(y, lo, hi);
        if (a != b) {
            std::vector<Deficient> merged;
            merged.reserve(next.size() + static_cast<size_t>(b - a));
            size_t i = 0;
            for (const int64_t* p = a; p != b; ++p) {
                while (i < next.size() && next[i].x < *p) merged.push_back(next[i++]);
                if (i < next.size() && next[i].x == *p) ++i;
                merged.push_back({*p, 0});
            }
            while (i < next.size()) merged.push_back(next[i++]);
            next.swap(merged);
        }
        cur.swap(next);
    }
    for (size_t k = 0; k < xs.size(); ++k) {
        auto it = std::lower_bound(cur.begin(), cur.end(), xs[k], [](const Deficient& d, int64_t x) { return d.x < x; });
        out[k] = (it != cur.end() && it->x == xs[k]) ? it->len : cap;
    }
    return out;
}

std::vector<int64_t> reachable_starts(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs,
                                      int64_t ell, Sided sided) {
    if (ell <= 0) return xs;
    auto len = path_lengths(del, t, xs, ell, sided);
    std::vector<int64_t> out;
    for (size_t i = 0; i < xs.size(); ++i)
        if (len[i] >= ell) out.push_back(xs[i]);
    return out;
}

bool column_clear(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell) {
    return del.next_in_column(x, t) >= t + ell;
}

bool has_path_within(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell, int64_t xmax) {
    if (ell <= 0) return true;
    if (xmax < x) return false;
    const int64_t w = xmax - x + 1;
    std::vector<char> alive(static_cast<size_t>(w), 1), nxt(static_cast<size_t>(w));
    for (int64_t y = t + ell - 1; y >= t; --y) {
        for (int64_t i = 0; i < w; ++i) {
            bool ok = !del.contains({x + i, y});
            if (ok && y < t + ell - 1) ok = alive[i] || (i + 1 < w && alive[i + 1]);
            nxt[i] = ok;
        }
        alive.swap(nxt);
    }
    return alive[0];
}

namespace {

// Lane form of the greedy: lanes are columns (left_to_right) or diagonals
// y - x (right_to_left); in both, a path either stays in its lane or moves
// to lane + 1 each row, and later paths lie strictly in higher lanes.
class LaneSweep {
public:
    LaneSweep(const DeletionIndex& del, bool diag, int64_t base, int64_t width, int64_t top)
        : del_(del), diag_(diag), base_(base), top_(top),
          dead_(static_cast<size_t>(width), kNever), env_(static_cast<size_t>(width), kNever) {}

    bool usable(int64_t lane, int64_t y) const {
        return y < dead(lane) && y < env(lane) && next_del(lane, y) != y;
    }

    // On success `runs` holds (lane, entry row) pairs, deepest first.
    bool dfs(int64_t c, int64_t e, std::vector<std::pair<int64_t, int64_t>>& runs) {
        int64_t yb = std::min({next_del(c, e + 1), dead(c), env(c)});
        if (yb > top_) {
            runs.emplace_back(c, e);
            return true;
        }
        int64_t rr = yb;
        while (true) {
            rr = std::min({rr, dead(c + 1) - 1, env(c + 1) - 1});
            if (rr < e + 1) break;
            rr = prev_clear(c + 1, rr, e + 1);
            if (rr < e + 1) break;
            if (dfs(c + 1, rr, runs)) {
                runs.emplace_back(c, e);
                return true;
            }
            --rr;
        }
        int64_t& d = dead_[static_cast<size_t>(c - base_)];
        d = std::min(d, e);
        return false;
    }

    void claim(const std::vector<std::pair<int64_t, int64_t>>& runs) {
        for (auto [lane, entry] : runs) env_[static_cast<size_t>(lane - base_)] = entry;
    }

private:
    int64_t dead(int64_t lane) const { return dead_[static_cast<size_t>(lane - base_)]; }
    int64_t env(int64_t lane) const { return env_[static_cast<size_t>(lane - base_)]; }
    int64_t next_del(int64_t lane, int64_t y) const {
        return diag_ ? del_.next_in_diagonal(lane, y) : del_.next_in_column(lane, y);
    }
    int64_t prev_clear(int64_t lane, int64_t y, int64_t lo) const {
        return diag_ ? del_.prev_clear_in_diagonal(lane, y, lo) : del_.prev_clear_in_column(lane, y, lo);
    }

    const DeletionIndex& del_;
    bool diag_;
    int64_t base_, top_;
    std::vector<int64_t> dead_, env_;
};

}  // namespace

SweepResult greedy_sweep(const DeletionIndex& del, int64_t t, std::vector<int64_t> xs, int64_t ell,
                         bool left_to_right, int64_t stop, bool want_witness) {
    SweepResult res;
    if (xs.empty()) return res;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (ell <= 0) {
        res.count = static_cast<int64_t>(xs.size());
        if (stop > 0 && res.count >= stop) res.stop_column = left_to_right ? xs[stop - 1] : xs[xs.size() - stop];
        return res;
    }
    const bool diag = !left_to_right;
    std::vector<int64_t> lanes(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) lanes[i] = diag ? t - xs[i] : xs[i];
    if (diag) std::reverse(lanes.begin(), lanes.end());
    const int64_t base = lanes.front();
    const int64_t width = lanes.back() - base + ell + 3;
    LaneSweep sweep(del, diag, base, width, t + ell - 1);

    std::vector<std::pair<int64_t, int64_t>> runs;
    for (int64_t s : lanes) {
        if (!sweep.usable(s, t)) continue;
        runs.clear();
        if (!sweep.dfs(s, t, runs)) continue;
        sweep.claim(runs);
        ++res.count;
        if (want_witness) {
            std::vector<int64_t> cols(static_cast<size_t>(ell));
            std::reverse(runs.begin(), runs.end());
            size_t k = 0;
            for (int64_t y = t; y < t + ell; ++y) {
                while (k + 1 < runs.size() && runs[k + 1].second <= y) ++k;
                int64_t lane = runs[k].first;
                cols[static_cast<size_t>(y - t)] = diag ? y - lane : lane;
            }
            res.witness.push_back(std::move(cols));
        }
        if (stop > 0 && res.count >= stop) {
            res.stop_column = diag ? t - s : s;
            break;
        }
    }
    return res;
}

int64_t flow_count(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& xs_in, int64_t ell,
                   Sided sided) {
    using namespace boost;
    using Traits = adjacency_list_traits<vecS, vecS, directedS>;
    using Graph = adjacency_list<vecS, vecS, directedS, no_property,
                                 property<edge_capacity_t, long,
                                          property<edge_residual_capacity_t, long,
                                                   property<edge_reverse_t, Traits::edge_descriptor>>>>;
    std::vector<int64_t> xs = xs_in;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) return 0;
    if (ell <= 0) return static_cast<int64_t>(xs.size());
    const int64_t lo = xs.front() - (sided == Sided::Two ? ell : 0), hi = xs.back() + ell;
    const int64_t w = hi - lo + 1;
    auto id = [&](int64_t x, int64_t y, int side) { return static_cast<size_t>(2 * ((y - t) * w + (x - lo)) + side); };
    const size_t n = static_cast<size_t>(2 * w * ell + 2);
    const size_t src = n - 2, snk = n - 1;
    Graph g(n);
    auto cap = get(edge_capacity, g);
    auto rev = get(edge_reverse, g);
    auto add = [&](size_t a, size_t b, long c) {
        auto e1 = add_edge(a, b, g).first;
        auto e2 = add_edge(b, a, g).first;
        cap[e1] = c;
        cap[e2] = 0;
        rev[e1] = e2;
        rev[e2] = e1;
    };
    for (int64_t y = t; y < t + ell; ++y)
        for (int64_t x = lo; x <= hi; ++x) {
            if (del.contains({x, y})) continue;
            add(id(x, y, 0), id(x, y, 1), 1);
            if (y == t + ell - 1) {
                add(id(x, y, 1), snk, 1);
                continue;
            }
            for (int dx = (sided == Sided::Two ? -1 : 0); dx <= 1; ++dx) {
                int64_t nx = x + dx;
                if (nx < lo || nx > hi || del.contains({nx, y + 1})) continue;
                add(id(x, y, 1), id(nx, y + 1, 0), 1);
            }
        }
    for (int64_t x : xs)
        if (!del.contains({x, t})) add(src, id(x, t, 0), 1);
    return push_relabel_max_flow(g, src, snk);
}

DisjointPathCount dispath(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front_sorted,
                          int64_t lo, int64_t hi, int64_t ell, Sided sided, int64_t stop, bool want_witness) {
    auto a = std::lower_bound(front_sorted.begin(), front_sorted.end(), lo);
    auto b = std::upper_bound(a, front_sorted.end(), hi);
    std::vector<int64_t> xs(a, b);
    DisjointPathCount out;
    if ((lo <= -kNever || hi >= kNever) && stop <= 0)
        throw GameError("QueryUnbounded", "unbounded region without a stop threshold");
    if (sided == Sided::Two) {
        out.count = flow_count(del, t, xs, ell, sided);
        if (stop > 0) out.count = std::min(out.count, stop);
        return out;
    }
    auto r = greedy_sweep(del, t, std::move(xs), ell, true, stop, want_witness);
    out.count = r.count;
    out.witness = std::move(r.witness);
    return out;
}

AlertInterval alert_interval(const DeletionIndex& del, int64_t t, const std::vector<int64_t>& front_sorted,
                             int64_t seg_lo, int64_t seg_hi, int64_t h, int64_t ell) {
    AlertInterval iv;
    auto a = std::lower_bound(front_sorted.begin(), front_sorted.end(), seg_lo);
    std::vector<int64_t> left(front_sorted.begin(), a);
    if (static_cast<int64_t>(left.size()) >= ell) {
        auto r = greedy_sweep(del, t, std::move(left), ell, false, ell);
        if (r.stop_column) iv.lo = floor_div(*r.stop_column, h) * h;
    }
    auto b = std::upper_bound(front_sorted.begin(), front_sorted.end(), seg_hi);
    std::vector<int64_t> right(b, front_sorted.end());
    if (static_cast<int64_t>(right.size()) >= 2 * ell) {
        auto r = greedy_sweep(del, t, std::move(right), 2 * ell, true, 2 * ell);
        if (r.stop_column) iv.hi = -floor_div(-(*r.stop_column + 1), h) * h;
    }
    return iv;
}

bool brute_has_path(const DeletionIndex& del, int64_t x, int64_t t, int64_t ell, Sided sided) {
    if (ell <= 0) return true;
    if (del.contains({x, t})) return false;
    if (ell == 1) return true;
    for (int dx = (sided == Sided::Two ? -1 : 0); dx <= 1; ++dx)
        if (brute_has_path(del, x + dx, t + 1, ell - 1, sided)) return true;
    return false;
}

}  // namespace contain
