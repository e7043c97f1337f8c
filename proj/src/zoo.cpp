#include "contain/zoo.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "contain/simple_policies.hpp"

namespace contain {

bool container_may_delete(const GameConfig& cfg, const GameState& s, Cell c) {
    return in_domain(cfg.kind, c) && !s.deleted.count(c) && !s.is_occupied(c, cfg.mode);
}

namespace {

// front cells in row-major order; in accumulate mode the newest row only
std::vector<Cell> current_front(const GameState& s) { return s.front; }

// Outward and sideways unit vectors at a front cell: north and east on the
// directed graphs, the dominant cardinal direction from the origin on the plane.
struct Axes {
    Cell up{0, 1}, right{1, 0};
    int dir = 0;
};

Axes axes_at(const GameConfig& cfg, Cell c) {
    Axes a;
    if (cfg.kind != GraphKind::Plane) return a;
    const Cell o = cfg.initial_occupied.empty() ? Cell{0, 0} : cfg.initial_occupied.front();
    const Cell r{c.x - o.x, c.y - o.y};
    int64_t best = INT64_MIN;
    for (int i = 0; i < 4; ++i) {
        int64_t d = r.x * theta(i).x + r.y * theta(i).y;
        if (d > best) best = d, a.dir = i;
    }
    a.up = theta(a.dir);
    a.right = theta(a.dir + 1);
    return a;
}

Cell offset(Cell c, const Axes& a, int64_t up, int64_t right) {
    return {c.x + up * a.up.x + right * a.right.x, c.y + up * a.up.y + right * a.right.y};
}

void take(const GameConfig& cfg, const GameState& s, std::vector<Cell>& out, CellSet& used, Cell c, int64_t budget) {
    if (static_cast<int64_t>(out.size()) >= budget) return;
    if (!container_may_delete(cfg, s, c) || used.count(c)) return;
    used.insert(c);
    out.push_back(c);
}

}  // namespace

std::vector<Cell> RandomContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    auto front = current_front(s);
    if (front.empty() || budget <= 0) return out;
    if (cfg.kind == GraphKind::Plane) {
        const int64_t band = 2 * cfg.h_schedule.h(s.t + 1);
        CellSet used;
        for (int tries = 0; tries < 64 && static_cast<int64_t>(out.size()) < budget; ++tries) {
            std::uniform_int_distribution<size_t> pick(0, front.size() - 1);
            std::uniform_int_distribution<int64_t> du(1, band), dr(-2, 2);
            const Cell& c = front[pick(rng_)];
            const int64_t u = du(rng_), r = dr(rng_);
            take(cfg, s, out, used, offset(c, axes_at(cfg, c), u, r), budget);
        }
        return out;
    }
    int64_t xmin = front.front().x, xmax = front.front().x, ymax = front.front().y;
    for (const Cell& c : front) {
        xmin = std::min(xmin, c.x);
        xmax = std::max(xmax, c.x);
        ymax = std::max(ymax, c.y);
    }
    const int64_t band = 2 * cfg.h_schedule.h(s.t + 1);
    CellSet used;
    for (int tries = 0; tries < 64 && static_cast<int64_t>(out.size()) < budget; ++tries) {
        std::uniform_int_distribution<int64_t> dx(xmin - 2, xmax + 2), dy(ymax + 1, ymax + band);
        int64_t x = dx(rng_), y = dy(rng_);
        take(cfg, s, out, used, {x, y}, budget);
    }
    return out;
}

std::vector<Cell> GreedyFrontContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    CellSet used;
    for (const Cell& c : current_front(s)) take(cfg, s, out, used, offset(c, axes_at(cfg, c), 1, 0), budget);
    return out;
}

std::vector<Cell> DisruptorContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    auto front = current_front(s);
    if (front.empty()) return out;
    const int64_t h = cfg.h_schedule.h(s.t + 1);
    CellSet used;
    for (int tries = 0; tries < 8 * std::max<int64_t>(budget, 1) && static_cast<int64_t>(out.size()) < budget; ++tries) {
        const Cell& c = front[(k_ * 7919u) % front.size()];
        // rows t+1 .. t+h-1 relative to the front row, each strictly closer than h
        const int64_t dy = 1 + static_cast<int64_t>(k_ % static_cast<uint64_t>(std::max<int64_t>(h - 1, 1)));
        const int64_t dx = static_cast<int64_t>(k_ % 3);
        ++k_;
        take(cfg, s, out, used, offset(c, axes_at(cfg, c), dy, dx), budget);
    }
    return out;
}

std::vector<Cell> LeftWallContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    auto front = current_front(s);
    if (front.empty()) return out;
    if (cfg.kind == GraphKind::Plane) {
        // the sideways-minimal cell of one front, cycling through the fronts
        for (int n = 0; n < 4 && out.empty(); ++n) {
            const int dir = static_cast<int>((s.t + n) % 4);
            std::optional<Cell> m;
            int64_t best = INT64_MAX;
            for (const Cell& c : front) {
                Axes a = axes_at(cfg, c);
                if (a.dir != dir) continue;
                int64_t side = c.x * a.right.x + c.y * a.right.y;
                if (side < best) best = side, m = c;
            }
            if (!m) continue;
            CellSet used;
            Axes a = axes_at(cfg, *m);
            for (int64_t dx : {-1, 0, 1, 2, 3}) take(cfg, s, out, used, offset(*m, a, 1, dx), budget);
        }
        return out;
    }
    Cell m = *std::min_element(front.begin(), front.end(), [](const Cell& a, const Cell& b) {
        return a.x != b.x ? a.x < b.x : a.y > b.y;
    });
    CellSet used;
    for (int64_t dx : {-1, 0, 1, 2, 3}) take(cfg, s, out, used, {m.x + dx, m.y + 1}, budget);
    return out;
}

std::vector<Cell> SniperContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    auto front = current_front(s);
    std::vector<Cell> lone;
    for (size_t i = 0; i < front.size(); ++i) {
        bool left = i > 0 && front[i - 1].y == front[i].y && front[i - 1].x >= front[i].x - 1;
        bool right = i + 1 < front.size() && front[i + 1].y == front[i].y && front[i + 1].x <= front[i].x + 1;
        // only interior cells: the edges of the front are always spreading
        if (!left && !right && i > 0 && i + 1 < front.size()) lone.push_back(front[i]);
    }
    if (lone.empty()) return out;
    CellSet used;
    for (size_t n = 0; n < lone.size() && static_cast<int64_t>(out.size()) < budget; ++n) {
        const Cell& c = lone[(k_ + n) % lone.size()];
        Axes a = axes_at(cfg, c);
        take(cfg, s, out, used, offset(c, a, 1, 0), budget);
        take(cfg, s, out, used, offset(c, a, 1, 1), budget);
    }
    ++k_;
    return out;
}

std::vector<Cell> FocusContainer::move(const GameConfig& cfg, const GameState& s, int64_t budget) {
    std::vector<Cell> out;
    std::array<std::vector<Cell>, 4> by_dir;
    for (const Cell& c : current_front(s)) by_dir[static_cast<size_t>(axes_at(cfg, c).dir)].push_back(c);
    size_t pick = 4;
    for (size_t i = 0; i < 4; ++i)
        if (!by_dir[i].empty() && (pick == 4 || by_dir[i].size() < by_dir[pick].size())) pick = i;
    if (pick == 4) return out;
    auto& cells = by_dir[pick];
    const Axes a = axes_at(cfg, cells.front());
    auto side = [&](const Cell& c) { return c.x * a.right.x + c.y * a.right.y; };
    std::sort(cells.begin(), cells.end(), [&](const Cell& p, const Cell& q) { return side(p) < side(q); });
    CellSet used;
    take(cfg, s, out, used, offset(cells.front(), a, 1, -1), budget);
    take(cfg, s, out, used, offset(cells.back(), a, 1, 1), budget);
    for (const Cell& c : cells) {
        take(cfg, s, out, used, offset(c, a, 1, 0), budget);
        take(cfg, s, out, used, offset(c, a, 1, 1), budget);
    }
    return out;
}

const std::vector<std::string>& zoo_names() {
    static const std::vector<std::string> names{"null", "random", "greedy_front", "disruptor", "left_wall", "sniper", "focus"};
    return names;
}

std::unique_ptr<ContainerPolicy> make_zoo_container(const std::string& name) {
    if (name == "null") return std::make_unique<NullContainer>();
    if (name == "random") return std::make_unique<RandomContainer>();
    if (name == "greedy_front") return std::make_unique<GreedyFrontContainer>();
    if (name == "disruptor") return std::make_unique<DisruptorContainer>();
    if (name == "sniper") return std::make_unique<SniperContainer>();
    if (name == "focus") return std::make_unique<FocusContainer>();
    if (name == "left_wall") return std::make_unique<LeftWallContainer>();
    throw GameError("InvalidConfig", "unknown container policy: " + name);
}

}  // namespace contain
