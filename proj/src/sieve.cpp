#include "contain/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace contain {

namespace {

using i128 = __int128;

// c * sqrt((H + offset) / H): the budget bound at sieve time H on the absolute clock
double effective_c(Rational c, int64_t H, int64_t offset) {
    if (offset == 0) return c.to_double();
    return c.to_double() * std::sqrt((static_cast<double>(H) + static_cast<double>(offset)) / static_cast<double>(H));
}

// c_eff <= 1/6 - r0 / (4k), the hbar = 1 case of the smallness condition
bool small_enough(Rational c, int64_t r0, int64_t k, int64_t offset) {
    if (offset == 0) return static_cast<i128>(12) * k * c.num <= static_cast<i128>(c.den) * (2 * k - 3 * r0);
    return effective_c(c, k * k, offset) <= 1.0 / 6.0 - static_cast<double>(r0) / (4.0 * static_cast<double>(k));
}

// |D cap X| <= c sqrt(H) (2 + 2k/H + 3k^2/H) <= h - r0 with H = k^2; the
// count is an integer so the bound may be floored
bool direct_bound(Rational c, int64_t r0, int64_t k, int64_t offset) {
    if (offset == 0) return c.floor_times(5 * k + 2) <= k - 2 * r0;
    return effective_c(c, k * k, offset) * static_cast<double>(5 * k + 2) <= static_cast<double>(k - 2 * r0);
}

bool feasible(Rational c, int64_t r0, int64_t k, int64_t offset) {
    return small_enough(c, r0, k, offset) && direct_bound(c, r0, k, offset);
}

SievePlan make_plan(Rational c, int64_t r0, int64_t k, int64_t offset) {
    SievePlan p;
    p.c = c;
    p.r0 = r0;
    p.hbar = Rational(1);
    p.H = k * k;
    p.h = k - r0;
    p.offset = offset;
    p.c_eff = effective_c(c, p.H, offset);
    return p;
}

Violation bad(const char* check, int64_t t, const std::string& where, int64_t lhs, int64_t rhs,
              std::string detail = "") {
    return {check, t, where, lhs, rhs, std::move(detail)};
}

}  // namespace

// ---- plan ----

std::vector<int64_t> SievePlan::X() const {
    std::vector<int64_t> x;
    for (int64_t i = 0; i < k(); ++i) x.push_back(i * spacing());
    return x;
}

int64_t SievePlan::max_segments() const {
    if (offset == 0 && k() * k() == H) return c.ceil_times(2 * k());
    return static_cast<int64_t>(std::ceil(2 * c_eff * std::sqrt(static_cast<double>(H)) - 1e-9));
}

int64_t SievePlan::max_length() const {
    if (offset == 0 && k() * k() == H) return c.ceil_times(3 * k() * k());
    return static_cast<int64_t>(std::ceil(3 * static_cast<double>(k()) * c_eff * std::sqrt(static_cast<double>(H)) - 1e-9));
}

std::vector<std::string> SievePlan::check() const {
    std::vector<std::string> out;
    if (!(0 < c.num) || !(static_cast<i128>(6) * c.num < c.den)) out.push_back("c outside (0, 1/6)");
    if (r0 < 1) out.push_back("r0 < 1");
    if (h < r0) out.push_back("h < r0");
    if (k() <= 0 || H % k() != 0) out.push_back("H not divisible by h + r0");
    if (!(hbar == Rational(1)) || k() * k() != H) out.push_back("hbar != (h + r0) / sqrt(H)");
    if (k() > 0 && k() * k() == H && !small_enough(c, r0, k(), offset)) out.push_back("smallness condition fails");
    // the bound on |D cap X| the smallness condition is derived from
    if (k() > 0 && k() * k() == H && !direct_bound(c, r0, k(), offset)) out.push_back("|D cap X| bound exceeds h - r0");
    if (!(0 <= p2() && p2() <= p3() && p3() <= H)) out.push_back("phase bounds out of order");
    return out;
}

json SievePlan::to_json() const {
    json j{{"c", c.str()}, {"r0", r0}, {"hbar", hbar.str()}, {"H", H}, {"h", h}, {"k", k()},
           {"offset", offset}, {"c_eff", c_eff}, {"spacing", spacing()},
           {"phase_bounds", {p2(), p3(), H}}, {"max_segments", max_segments()}, {"max_length", max_length()}};
    if (k() <= 4096) j["X"] = X();
    return j;
}

SievePlan SievePlan::from_json(const json& j) {
    SievePlan p;
    p.c = parse_rational(j.at("c").get<std::string>());
    p.r0 = j.at("r0").get<int64_t>();
    p.hbar = parse_rational(j.value("hbar", std::string("1")));
    p.H = j.at("H").get<int64_t>();
    p.h = j.at("h").get<int64_t>();
    p.offset = j.value("offset", int64_t{0});
    p.c_eff = effective_c(p.c, p.H, p.offset);
    if (p.k() <= 0 || p.H <= 0) throw GameError("InvalidConfig", "sieve plan: H and h + r0 must be positive");
    return p;
}

SievePlan plan_sieve(Rational c, int64_t r0, int64_t offset, int64_t cap_H) {
    if (r0 < 1) throw GameError("InvalidConfig", "sieve: r0 must be >= 1");
    if (c.num <= 0) throw GameError("InvalidConfig", "sieve: c must be positive");
    if (!(static_cast<i128>(6) * c.num < c.den)) throw GameError("Unwinnable", "sieve: needs c < 1/6, got " + c.str());
    // offset 0: 12 k c <= 2k - 3 r0 solved for k
    const i128 den = static_cast<i128>(2) * c.den - static_cast<i128>(12) * c.num;
    const i128 need = static_cast<i128>(3) * c.den * r0;
    const i128 k0 = std::max<i128>(2 * static_cast<i128>(r0), (need + den - 1) / den);
    const int64_t kcap = static_cast<int64_t>(std::sqrt(static_cast<double>(cap_H)));
    auto over = [&](i128 k) { return k > kcap || k * k > cap_H; };
    if (over(k0)) throw GameError("CapExceeded", "sieve: H above the cap");
    int64_t k = static_cast<int64_t>(k0);
    if (offset == 0) {
        // the floored bound can lag the smallness condition by a few k
        while (!feasible(c, r0, k, 0))
            if (over(++k)) throw GameError("CapExceeded", "sieve: H above the cap");
    } else if (!feasible(c, r0, k, offset)) {
        // monotone in k: gallop, then bisect
        int64_t lo = k, hi = k;
        while (!feasible(c, r0, hi, offset)) {
            lo = hi;
            hi *= 2;
            if (over(hi)) {
                hi = kcap;
                if (!feasible(c, r0, hi, offset)) throw GameError("CapExceeded", "sieve: H above the cap");
                break;
            }
        }
        while (hi - lo > 1) {
            int64_t mid = lo + (hi - lo) / 2;
            (feasible(c, r0, mid, offset) ? hi : lo) = mid;
        }
        k = hi;
    }
    return make_plan(c, r0, k, offset);
}

SievePlan sieve_with_k(Rational c, int64_t r0, int64_t k, int64_t offset) {
    if (k <= r0) throw GameError("InvalidConfig", "sieve: k must exceed r0");
    return make_plan(c, r0, k, offset);
}

json DangerZone::to_json() const {
    return {{"t", t}, {"size", u.size()}, {"segments", segments}, {"in_x", in_x}, {"undeleted", undeleted}};
}

// ---- one sieve row ----

LineSieve::LineSieve(SievePlan plan, int64_t start, Map to_plane, Map to_local, std::string label)
    : plan_(std::move(plan)), start_(start), to_plane_(std::move(to_plane)), to_local_(std::move(to_local)),
      label_(std::move(label)), left_(plan_.H + 1) {}

int LineSieve::phase(int64_t T) const {
    const int64_t tau = T - start_;
    if (tau < plan_.p2()) return 1;
    if (tau < plan_.p3()) return 2;
    if (tau <= plan_.H) return 3;
    return 4;
}

bool LineSieve::crossed(Cell plane) const {
    Cell l = to_local_(plane);
    return l.y >= plan_.H;
}

void LineSieve::enter_phase2(const GameConfig& cfg, const GameState& s, int64_t T, std::vector<Violation>& out) {
    const int64_t H = plan_.H, K = plan_.k();
    // D: wall cells within king distance K of the fire
    std::vector<std::pair<int64_t, int64_t>> iv;
    const CellSet& fire = cfg.mode == Mode::Accumulate ? s.occupied_all : s.front_set;
    for (const Cell& c : fire) {
        Cell l = to_local_(c);
        if (H - l.y > K) continue;
        int64_t a = std::max<int64_t>(0, l.x - K), b = std::min(H, l.x + K);
        if (a <= b) iv.emplace_back(a, b);
    }
    std::sort(iv.begin(), iv.end());
    DangerZone d;
    d.t = T;
    int64_t reach = -1;
    for (auto [a, b] : iv) {
        if (a > reach + 1) ++d.segments;
        for (int64_t u = std::max(a, reach + 1); u <= b; ++u) d.u.push_back(u);
        reach = std::max(reach, b);
    }
    // what is left after phase 1: X, and non-X cells at or right of the cursor
    std::vector<int64_t> first, xs, later;
    auto in_d = [&](int64_t u) { return std::binary_search(d.u.begin(), d.u.end(), u); };
    for (int64_t u : d.u) {
        if (plan_.in_x(u)) ++d.in_x;
        if (!gone(s, u)) ++d.undeleted;
    }
    for (int64_t u : plan_.X())
        if (!gone(s, u)) (in_d(u) ? first : xs).push_back(u);
    for (int64_t u = cursor_; u <= H; ++u)
        if (!plan_.in_x(u) && !gone(s, u)) (in_d(u) ? first : later).push_back(u);
    std::sort(first.begin(), first.end());
    rest_ = first;
    rest_.insert(rest_.end(), xs.begin(), xs.end());
    rest_.insert(rest_.end(), later.begin(), later.end());
    // cells already deleted by someone else never come back into rest_
    left_ = static_cast<int64_t>(rest_.size());

    const int64_t seg_cap = plan_.max_segments(), len_cap = plan_.max_length();
    if (d.segments > seg_cap) out.push_back(bad("danger_zone_segments", T, label_, d.segments, seg_cap));
    if (static_cast<int64_t>(d.u.size()) > len_cap)
        out.push_back(bad("danger_zone_length", T, label_, static_cast<int64_t>(d.u.size()), len_cap));
    if (d.in_x > plan_.h - plan_.r0) out.push_back(bad("danger_zone_sieve", T, label_, d.in_x, plan_.h - plan_.r0));
    danger_ = std::move(d);
}

std::vector<Cell> LineSieve::take(const GameConfig& cfg, const GameState& s, int64_t T, int64_t n,
                                  std::vector<Violation>& out) {
    std::vector<Cell> del;
    const int64_t tau = T - start_;
    if (tau < 0 || n <= 0) return del;
    auto full = [&] { return static_cast<int64_t>(del.size()) >= n; };
    if (tau < plan_.p2()) {
        // phase 1: L_H minus X, left to right
        while (!full() && cursor_ <= plan_.H) {
            const int64_t u = cursor_++;
            if (plan_.in_x(u)) continue;
            --left_;
            if (!gone(s, u)) del.push_back(wall(u));
        }
        return del;
    }
    if (!danger_) enter_phase2(cfg, s, T, out);
    while (!full() && next_ < rest_.size()) {
        const int64_t u = rest_[next_++];
        --left_;
        if (!gone(s, u)) del.push_back(wall(u));
    }
    return del;
}

// ---- eighth-plane sieve policy ----

Rational sqrt_coefficient(const SpreadSpec& g) {
    if (g.kind != SpreadSpec::Kind::PowerLaw || !(g.exponent == Rational(1, 2)))
        throw GameError("InvalidConfig", "sieve needs g(t) = c*sqrt(t), got " + g.str());
    return g.coef;
}

int64_t seed_radius(const GameConfig& cfg) {
    int64_t r = 1;
    for (const Cell& c : cfg.initial_occupied) {
        if (cfg.kind == GraphKind::Plane) r = std::max<int64_t>({r, std::llabs(c.x), std::llabs(c.y)});
        else r = std::max<int64_t>({r, c.x, c.y});
    }
    return r;
}

void SieveContainer::start(const GameConfig& cfg, const GameState&) {
    if (cfg.kind != GraphKind::EighthPlane) throw GameError("InvalidConfig", "the row sieve plays on the eighth plane");
    if (!plan_) plan_ = plan_sieve(sqrt_coefficient(cfg.g), seed_radius(cfg));
    for (const Cell& c : cfg.initial_occupied)
        if (c.x < 0 || c.y < 0 || c.x > plan_->r0 || c.y > plan_->r0)
            throw GameError("InvalidConfig", "sieve: initial fire outside [0, r0]^2");
    auto id = [](Cell c) { return c; };
    sieve_.emplace(*plan_, 1, id, id, "L_H");
    pending_.clear();
}

std::vector<Cell> SieveContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    return sieve_->take(cfg, s, s.t + 1, budget, pending_);
}

void SieveContainer::observe(const TurnRecord& rec) {
    const int64_t cap = SpreadSpec::power(plan_->c, Rational(1, 2)).budget(rec.t);
    if (static_cast<int64_t>(rec.occupied_cells.size()) > cap)
        pending_.push_back(bad("spreader_budget_assumption", rec.t, "", static_cast<int64_t>(rec.occupied_cells.size()),
                               cap, "AssumptionViolated"));
    for (const Cell& c : rec.occupied_cells)
        if (sieve_->crossed(c)) pending_.push_back(bad("sieve_wall_crossed", rec.t, "L_H", c.x, c.y));
}

std::vector<Violation> SieveContainer::violations() {
    std::vector<Violation> v;
    v.swap(pending_);
    return v;
}

json SieveContainer::describe() const {
    json j{{"policy", "sieve"}, {"plan", plan_ ? plan_->to_json() : json(nullptr)}};
    if (sieve_ && sieve_->danger()) j["danger"] = sieve_->danger()->to_json();
    return j;
}

std::optional<Box> SieveContainer::enclosure() const {
    if (!sieve_ || !sieve_->complete()) return std::nullopt;
    // L_H plus the two domain edges close off the triangle below the row
    return Box{-1, -1, plan_->H + 1, plan_->H};
}

// ---- plane reduction ----

namespace {

ReductionPlan assemble(Rational c, int64_t r0, const std::function<SievePlan(int64_t, int64_t)>& sieve) {
    ReductionPlan p;
    p.c = c;
    p.r0 = r0;
    // step 1: 2 r1 + 1 cells at three a turn, done by the time the fire can reach row r1
    for (p.r1 = r0 + 1;; ++p.r1) {
        p.T1 = (2 * p.r1 + 1 + 2) / 3;
        if (p.T1 <= p.r1 - r0) break;
    }
    // east sieve: fire within column r0 + T1 when it starts, local row x + r1
    p.east = sieve(r0 + p.T1 + p.r1, p.T1);
    p.r2 = p.east.H - p.r1;
    p.E2 = p.T1 + 1 + p.east.H;
    p.west = sieve(r0 + p.E2 + p.r1, p.E2);
    p.r3 = p.west.H - p.r1;
    p.E3 = p.E2 + 1 + p.west.H;
    p.E4 = p.E3 + p.r2 + p.r3 + 1;
    p.r4 = r0 + p.E4;
    return p;
}

}  // namespace

ReductionPlan plan_reduction(Rational c, int64_t r0) {
    if (r0 < 1) throw GameError("InvalidConfig", "reduction: r0 must be >= 1");
    return assemble(c, r0, [&](int64_t r, int64_t off) { return plan_sieve(c, r, off); });
}

ReductionPlan reduction_with_k(Rational c, int64_t r0, int64_t k_east, int64_t k_west) {
    if (r0 < 1) throw GameError("InvalidConfig", "reduction: r0 must be >= 1");
    bool first = true;
    return assemble(c, r0, [&](int64_t r, int64_t off) {
        int64_t k = first ? k_east : k_west;
        first = false;
        return sieve_with_k(c, r, k, off);
    });
}

std::vector<std::string> ReductionPlan::check() const {
    std::vector<std::string> out;
    if (T1 != (2 * r1 + 3) / 3 || T1 > r1 - r0) out.push_back("step 1: north segment not finished in time");
    // maintenance lines stay ahead of the light cone when r1 - T1 >= r0
    if (r1 - T1 < r0) out.push_back("maintenance lines fall behind the fire");
    if (r2 <= r1 + 1 || r3 <= r1 + 1) out.push_back("side walls inside the north segment");
    if (east.r0 != r0 + T1 + r1 || east.offset != T1) out.push_back("east sieve radius/offset");
    if (west.r0 != r0 + E2 + r1 || west.offset != E2) out.push_back("west sieve radius/offset");
    if (E2 != T1 + 1 + east.H || E3 != E2 + 1 + west.H || E4 != E3 + r2 + r3 + 1 || r4 != r0 + E4)
        out.push_back("step accounting");
    for (auto& e : east.check()) out.push_back("east sieve: " + e);
    for (auto& e : west.check()) out.push_back("west sieve: " + e);
    return out;
}

json ReductionPlan::to_json() const {
    return {{"c", c.str()}, {"r0", r0}, {"r1", r1}, {"r2", r2}, {"r3", r3}, {"r4", r4},
            {"steps", {{{"step", 1}, {"from", 1}, {"to", T1}},
                       {{"step", 2}, {"from", T1 + 1}, {"to", E2}},
                       {{"step", 3}, {"from", E2 + 1}, {"to", E3}},
                       {{"step", 4}, {"from", E3 + 1}, {"to", E4}}}},
            {"rectangle", {{"x0", -r3}, {"y0", -r4}, {"x1", r2}, {"y1", r1}}},
            {"east", east.to_json()}, {"west", west.to_json()}};
}

int ReductionContainer::step_at(int64_t T) const {
    const auto& p = *plan_;
    if (T <= p.T1) return 1;
    if (T <= p.E2) return 2;
    if (T <= p.E3) return 3;
    if (T <= p.E4) return 4;
    return 5;
}

std::optional<Cell> ReductionContainer::east_line(int64_t T) const {
    const auto& p = *plan_;
    const int64_t j = T - p.T1;
    if (j < 1) return std::nullopt;
    if (j <= p.r2 - p.r1 - 1) return Cell{p.r1 + j, p.r1};
    const int64_t y = -p.r2 - 1 - (j - (p.r2 - p.r1));
    if (y < -p.r4 + 1) return std::nullopt;
    return Cell{p.r2, y};
}

std::optional<Cell> ReductionContainer::west_line(int64_t T) const {
    const auto& p = *plan_;
    const int64_t j = T - p.T1;
    if (j < 1) return std::nullopt;
    if (j <= p.r3 - p.r1 - 1) return Cell{-p.r1 - j, p.r1};
    const int64_t y = -p.r3 - 1 - (j - (p.r3 - p.r1));
    if (y < -p.r4 + 1) return std::nullopt;
    return Cell{-p.r3, y};
}

void ReductionContainer::start(const GameConfig& cfg, const GameState&) {
    if (cfg.kind != GraphKind::Plane) throw GameError("InvalidConfig", "the plane reduction plays on the plane");
    if (!(cfg.q == Rational(3)) || cfg.accumulating_container)
        throw GameError("InvalidConfig", "the plane reduction needs q = 3");
    if (!plan_) plan_ = plan_reduction(sqrt_coefficient(cfg.g), seed_radius(cfg));
    const auto& p = *plan_;
    for (const Cell& c : cfg.initial_occupied)
        if (std::llabs(c.x) > p.r0 || std::llabs(c.y) > p.r0)
            throw GameError("InvalidConfig", "reduction: initial fire outside [-r0, r0]^2");
    const int64_t r1 = p.r1, r2 = p.r2, r3 = p.r3;
    // east wall x = r2 seen from the west: u runs up the column, v = x + r1
    east_.emplace(p.east, p.T1 + 1, [=](Cell l) { return Cell{l.y - r1, l.x - r2}; },
                  [=](Cell c) { return Cell{c.y + r2, c.x + r1}; }, "east");
    // west wall x = -r3 seen from the east: v = r1 - x
    west_.emplace(p.west, p.E2 + 1, [=](Cell l) { return Cell{r1 - l.y, l.x - r3}; },
                  [=](Cell c) { return Cell{c.y + r3, r1 - c.x}; }, "west");
    pending_.clear();
    closed_ = false;
}

std::vector<Cell> ReductionContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    const auto& p = *plan_;
    const int64_t T = s.t + 1;
    std::vector<Cell> out;
    auto add = [&](std::optional<Cell> c) {
        if (c && static_cast<int64_t>(out.size()) < budget && !s.deleted.count(*c) &&
            std::find(out.begin(), out.end(), *c) == out.end())
            out.push_back(*c);
    };
    auto sieve = [&](LineSieve& ls) {
        for (const Cell& c : ls.take(cfg, s, T, 1, pending_)) add(c);
    };
    switch (step_at(T)) {
        case 1:
            // north segment [-r1, r1] x {r1}, three cells a turn
            for (int64_t i = 3 * (T - 1); i < 3 * T && i <= 2 * p.r1; ++i) add(Cell{-p.r1 + i, p.r1});
            break;
        case 2:
            sieve(*east_);
            add(west_line(T));
            add(east_line(T));
            break;
        case 3:
            sieve(*west_);
            add(east_line(T));
            add(west_line(T));
            break;
        case 4:
            add(east_line(T));
            add(west_line(T));
            add(Cell{-p.r3 + (T - p.E3 - 1), -p.r4});
            if (T == p.E4) closed_ = true;
            break;
        default: closed_ = true; break;
    }
    return out;
}

void ReductionContainer::observe(const TurnRecord& rec) {
    const auto& p = *plan_;
    const int64_t cap = SpreadSpec::power(p.c, Rational(1, 2)).budget(rec.t);
    if (static_cast<int64_t>(rec.occupied_cells.size()) > cap)
        pending_.push_back(bad("spreader_budget_assumption", rec.t, "", static_cast<int64_t>(rec.occupied_cells.size()),
                               cap, "AssumptionViolated"));
    for (const Cell& c : rec.occupied_cells) {
        if (c.y >= p.r1) pending_.push_back(bad("wall_crossed", rec.t, "north", c.x, c.y));
        if (c.x >= p.r2) pending_.push_back(bad("wall_crossed", rec.t, "east", c.x, c.y));
        if (c.x <= -p.r3) pending_.push_back(bad("wall_crossed", rec.t, "west", c.x, c.y));
        if (c.y <= -p.r4) pending_.push_back(bad("wall_crossed", rec.t, "south", c.x, c.y));
    }
}

std::vector<Violation> ReductionContainer::violations() {
    std::vector<Violation> v;
    v.swap(pending_);
    return v;
}

json ReductionContainer::describe() const {
    json j{{"policy", "sieve"}, {"plan", plan_ ? plan_->to_json() : json(nullptr)}};
    if (east_ && east_->danger()) j["east_danger"] = east_->danger()->to_json();
    if (west_ && west_->danger()) j["west_danger"] = west_->danger()->to_json();
    return j;
}

std::optional<Box> ReductionContainer::enclosure() const {
    if (!closed_) return std::nullopt;
    return plan_->rectangle();
}

std::unique_ptr<ContainerPolicy> make_sieve_container(const GameConfig& cfg) {
    if (cfg.kind == GraphKind::EighthPlane) return std::make_unique<SieveContainer>();
    if (cfg.kind == GraphKind::Plane) return std::make_unique<ReductionContainer>();
    throw GameError("InvalidConfig", "no sieve strategy on " + std::string(to_string(cfg.kind)));
}

}  // namespace contain
