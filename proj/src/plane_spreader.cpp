#include "contain/plane_spreader.hpp"

#include <algorithm>

namespace contain {

namespace {

int64_t dot(Cell a, Cell b) { return a.x * b.x + a.y * b.y; }

void sort_unique(std::vector<Cell>& v) {
    std::sort(v.begin(), v.end(), row_major_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Cell FrontGame::to_plane(Cell local, Cell origin) const { return FrontFrame(dir, rho0).map(local) + origin; }

Cell FrontGame::to_local(Cell plane, Cell origin) const {
    return FrontFrame(dir, rho0).unmap_unchecked({plane.x - origin.x, plane.y - origin.y});
}

void PlaneSpreader::start(const GameConfig& cfg, const GameState& s) {
    if (cfg.kind != GraphKind::Plane) throw GameError("InvalidConfig", "plane spreader needs the plane");
    if (s.front.size() != 1) throw GameError("InvalidConfig", "plane spreader: the initial fire is a single cell");
    origin_ = s.front.front();
    params_ = StrategyParams{HalfVariant::Half, cfg.q, cfg.h_schedule};
    for (auto& g : games_) g.reset();
    st_ = {};
    f_done_ = {};
    hist_max_ = {};  // the origin, at distance 0 in every direction
    for (auto& p : played_) p.clear();
    owner_.clear();
    next_id_ = collisions_ = rho0_sum_ = 0;
    pending_.clear();
    ignitions_.clear();
}

int64_t PlaneSpreader::rho_sum() const {
    int64_t s = 0;
    for (const auto& f : st_) s += f.rho;
    return s;
}

void PlaneSpreader::intern(const FrontGame& g, const std::vector<Cell>& plane_cells, int64_t t) {
    for (const Cell& c : plane_cells) {
        auto [it, fresh] = owner_.emplace(c, g.id);
        if (!fresh && it->second != g.id) {
            ++collisions_;
            pending_.push_back({"play_area_disjoint", t, "front" + std::to_string(g.dir) + "#" + std::to_string(g.id),
                                it->second, g.id,
                                "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") already in a play area"});
        }
    }
}

void PlaneSpreader::create(int i, int64_t t, const GameState& s, const std::vector<Cell>& seed) {
    auto g = std::make_unique<FrontGame>();
    g->id = next_id_++;
    g->dir = i;
    g->rho0 = st_[static_cast<size_t>(i)].rho;
    g->t0 = t;
    std::vector<int64_t> b0;
    std::vector<Cell> f0, f0_plane, b0_plane;
    for (const Cell& c : seed) {
        Cell l = g->to_local(c, origin_);
        if (s.deleted.count(c)) {
            f0.push_back(l);
            f0_plane.push_back(c);
        } else {
            b0.push_back(l.x);
            b0_plane.push_back(c);
        }
    }
    std::vector<Cell> del;
    for (const Cell& c : s.deleted) {
        Cell l = g->to_local(c, origin_);
        if (l.y >= 0) del.push_back(l);
    }
    g->game = std::make_unique<HalfGame>(params_, b0, del);
    g->ledger = std::make_unique<Ledger>(*g->game, f0, static_cast<int64_t>(s.deleted.size()),
                                         "front" + std::to_string(i) + "#" + std::to_string(g->id));
    if (i == fault_dir_) {
        g->ledger->set_fault(fault_);
        fault_dir_ = -1;
    }
    ignitions_.push_back({t, i, static_cast<int64_t>(seed.size()), static_cast<int64_t>(b0.size())});
    intern(*g, b0_plane, t);
    intern(*g, f0_plane, t);
    games_[static_cast<size_t>(i)] = std::move(g);
}

SpreaderMove PlaneSpreader::move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                                 int64_t budget) {
    const int64_t t = s.t;
    const auto prev = st_;
    for (size_t i = 0; i < 4; ++i) st_[i].rho = std::max<int64_t>(0, hist_max_[i] + 1);

    // cells occupied last turn, for the adjacency filter
    CellSet before;
    if (t == 1) before.insert(origin_);
    for (const auto& p : played_) before.insert(p.begin(), p.end());

    std::array<std::vector<Cell>, 4> out;
    for (int i = 0; i < 4; ++i) {
        const size_t k = static_cast<size_t>(i);
        auto& gp = games_[k];
        if (t == 1) {
            create(i, t, s, {origin_ + theta(i), origin_ + theta_diag(i)});
        } else if (gp && prev[k].active) {
            std::vector<Cell> local;
            for (const Cell& c : new_deleted) {
                Cell l = gp->to_local(c, origin_);
                if (l.y >= 0) local.push_back(l);
            }
            gp->game->step(local);
            auto v = gp->ledger->observe(*gp->game);
            pending_.insert(pending_.end(), v.begin(), v.end());
            std::vector<Cell> area;
            const int64_t v0 = gp->game->t();
            for (int64_t x : gp->game->front()) area.push_back(gp->to_plane({x, v0}, origin_));
            for (const Cell& c : gp->ledger->fresh_counted()) area.push_back(gp->to_plane(c, origin_));
            intern(*gp, area, t);
        } else if (st_[k].rho > prev[k].rho) {
            // re-ignition from the neighbouring fronts' cells on the old front line
            std::vector<Cell> seed;
            for (const Cell& c : played_[static_cast<size_t>((i + 1) % 4)])
                for (Cell d : {theta(i), theta_diag(i - 1)}) seed.push_back(c + d);
            for (const Cell& c : played_[static_cast<size_t>((i + 3) % 4)])
                for (Cell d : {theta(i), theta_diag(i)}) seed.push_back(c + d);
            std::erase_if(seed, [&](Cell c) { return dot(c + Cell{-origin_.x, -origin_.y}, theta(i)) != st_[k].rho; });
            sort_unique(seed);
            create(i, t, s, seed);
        } else {
            continue;
        }
        const FrontGame& g = *gp;
        const int64_t v0 = g.game->t();
        for (int64_t x : g.game->pruned()) {
            Cell c = g.to_plane({x, v0}, origin_);
            bool ok = false;
            for (int dx = -1; dx <= 1 && !ok; ++dx)
                for (int dy = -1; dy <= 1 && !ok; ++dy)
                    ok = (dx || dy) && before.count({c.x + dx, c.y + dy});
            if (!ok) {
                pending_.push_back({"plane_move_legal", t, "front" + std::to_string(i), c.x, c.y, "no occupied neighbour"});
                continue;
            }
            out[k].push_back(c);
        }
    }

    // budget: fronts in direction order
    int64_t total = 0;
    for (auto& o : out) total += static_cast<int64_t>(o.size());
    if (total > budget) {
        pending_.push_back({"plane_budget", t, "", total, budget, "played set truncated"});
        int64_t left = budget;
        for (auto& o : out) {
            if (static_cast<int64_t>(o.size()) > left) o.resize(static_cast<size_t>(left));
            left -= static_cast<int64_t>(o.size());
        }
    }

    SpreaderMove mv;
    for (size_t k = 0; k < 4; ++k) {
        FrontStatus& f = st_[k];
        f.played = static_cast<int64_t>(out[k].size());
        if (games_[k]) {
            const auto& tot = games_[k]->ledger->totals();
            f.phi = tot.phi;
            f.d = tot.d;
            f.b = tot.b;
            f.f = f_done_[k] + tot.f;
            f.active = !games_[k]->game->front().empty();
            if (!f.active) {
                f_done_[k] += tot.f;
                games_[k].reset();
            }
        } else {
            f.phi = f.d = f.b = 0;
            f.active = false;
        }
        for (const Cell& c : out[k]) {
            Cell rel{c.x - origin_.x, c.y - origin_.y};
            for (size_t j = 0; j < 4; ++j) hist_max_[j] = std::max(hist_max_[j], dot(rel, theta(static_cast<int>(j))));
            mv.cells.push_back(c);
        }
        played_[k] = std::move(out[k]);
    }
    sort_unique(mv.cells);
    if (cfg.q <= Rational(3)) check_plane(t, prev, total);
    mv.no_legal_move = mv.cells.empty();
    return mv;
}

void PlaneSpreader::check_plane(int64_t t, const std::array<FrontStatus, 4>& prev, int64_t played) {
    (void)played;
    auto bad = [&](const char* check, std::string where, int64_t lhs, int64_t rhs, std::string detail = "") {
        pending_.push_back({check, t, std::move(where), lhs, rhs, std::move(detail)});
    };
    int64_t rho = 0, rho_prev = 0, fire = 0, f = 0;
    for (size_t i = 0; i < 4; ++i) {
        rho += st_[i].rho;
        rho_prev += prev[i].rho;
        fire += st_[i].phi + st_[i].d;
        f += st_[i].f;
    }
    if (rho - rho_prev < 3) bad("radius_growth", "", rho - rho_prev, 3);
    for (int i = 0; i < 4; ++i) {
        const size_t k = static_cast<size_t>(i);
        const std::string where = "front" + std::to_string(i);
        const int64_t drho = st_[k].rho - prev[k].rho;
        const int64_t dpot = st_[k].pot() - prev[k].pot();
        if (dpot < 2 * drho) bad("front_potential_vs_radius", where, dpot, 2 * drho);
        const int64_t left = st_[static_cast<size_t>((i + 3) % 4)].rho, right = st_[static_cast<size_t>((i + 1) % 4)].rho;
        if (st_[k].phi + st_[k].d > 1 + left + right) bad("front_fire_le_width", where, st_[k].phi + st_[k].d, 1 + left + right);
        for (const Cell& c : played_[k]) {
            Cell rel{c.x - origin_.x, c.y - origin_.y};
            int64_t along = dot(rel, theta(i + 1));
            if (dot(rel, theta(i)) != st_[k].rho || along < -left || along > right)
                bad("front_confinement", where, c.x, c.y, "cell outside the front interval");
        }
    }
    if (rho - rho0_sum_ >= f) {
        if (fire < rho + rho0_sum_) bad("plane_fire_ge_radius", "", fire, rho + rho0_sum_);
        for (size_t i = 0; i < 2; ++i)
            if (st_[i].b + st_[i + 2].b == 0) bad("opposing_fronts_alive", "front" + std::to_string(i), 0, 1);
    }
}

json PlaneSpreader::metrics() {
    json fr = json::array();
    int64_t played = 0;
    for (size_t i = 0; i < 4; ++i) {
        const auto& f = st_[i];
        played += f.played;
        fr.push_back({{"dir", i}, {"active", f.active}, {"rho", f.rho}, {"phi", f.phi}, {"d", f.d}, {"f", f.f},
                      {"b", f.b}, {"played", f.played}, {"pot", f.pot()},
                      {"game", games_[i] ? json(games_[i]->id) : json(nullptr)}});
    }
    return {{"rho", rho_sum()}, {"played", played}, {"games", next_id_}, {"interned", interned()},
            {"collisions", collisions_}, {"fronts", fr}};
}

std::vector<Violation> PlaneSpreader::violations() {
    std::vector<Violation> v;
    v.swap(pending_);
    return v;
}

}  // namespace contain
