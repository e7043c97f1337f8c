#include "contain/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace contain {

std::vector<Cell> sorted_cells(const CellSet& s) {
    std::vector<Cell> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), row_major_less);
    return v;
}

const char* to_string(GraphKind k) {
    switch (k) {
        case GraphKind::Plane: return "plane";
        case GraphKind::EighthPlane: return "eighth";
        case GraphKind::DirectedHalfPlane: return "half";
    }
    return "?";
}

GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "plane") return GraphKind::Plane;
    if (s == "eighth" || s == "eighth-plane") return GraphKind::EighthPlane;
    if (s == "half" || s == "half-plane") return GraphKind::DirectedHalfPlane;
    throw GameError("InvalidConfig", "unknown graph kind: " + s);
}

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw GameError("Overflow", "coordinate overflow");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw GameError("Overflow", "coordinate overflow");
    return r;
}

bool in_domain(GraphKind k, Cell c) {
    switch (k) {
        case GraphKind::Plane: return true;
        case GraphKind::EighthPlane: return 0 <= c.x && c.x <= c.y;
        case GraphKind::DirectedHalfPlane: return c.y >= 0;
    }
    return false;
}

bool has_edge(GraphKind k, Cell from, Cell to, bool unconstrained) {
    int64_t dx = to.x - from.x, dy = to.y - from.y;
    switch (k) {
        case GraphKind::Plane:
            return std::llabs(dx) <= 1 && std::llabs(dy) <= 1 && (dx != 0 || dy != 0);
        case GraphKind::EighthPlane:
            return dy == 1 && (dx == 0 || dx == 1) && in_domain(k, from) && in_domain(k, to);
        case GraphKind::DirectedHalfPlane:
            if (dy != 1 || std::llabs(dx) > 1 || from.y < 0) return false;
            return unconstrained || std::llabs(from.x) <= from.y;
    }
    return false;
}

std::vector<Cell> spread_targets(GraphKind k, const std::vector<Cell>& front, bool leftmost_nw) {
    if (front.empty()) return {};
    if (k == GraphKind::Plane) throw GameError("DomainViolation", "spread_targets is defined on directed kinds only");
    int64_t row = front.front().y;
    for (const Cell& c : front) {
        if (c.y != row) throw GameError("DomainViolation", "front is not on a single row");
        if (!in_domain(k, c)) throw GameError("DomainViolation", "front cell outside the domain");
    }
    std::vector<Cell> out;
    out.reserve(front.size() * 2 + 1);
    const Cell* mn = &front.front();
    for (const Cell& c : front) {
        if (c.x < mn->x) mn = &c;
        out.push_back({c.x, c.y + 1});
        out.push_back({c.x + 1, c.y + 1});
    }
    if (leftmost_nw && k == GraphKind::DirectedHalfPlane) out.push_back({mn->x - 1, mn->y + 1});
    std::erase_if(out, [k](const Cell& c) { return !in_domain(k, c); });
    std::sort(out.begin(), out.end(), row_major_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cell theta(int i) {
    static const Cell t[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
    return t[((i % 4) + 4) % 4];
}

Cell theta_diag(int i) {
    Cell a = theta(i), b = theta(i + 1);
    return {a.x + b.x, a.y + b.y};
}

FrontFrame::FrontFrame(int d, int64_t r) : dir(((d % 4) + 4) % 4), rho(r) {}

Cell FrontFrame::map(Cell local) const {
    Cell a = theta(dir), b = theta(dir + 1);
    int64_t s = checked_add(rho, local.y);
    return {checked_add(checked_mul(s, a.x), checked_mul(local.x, b.x)),
            checked_add(checked_mul(s, a.y), checked_mul(local.x, b.y))};
}

Cell FrontFrame::unmap_unchecked(Cell p) const {
    // theta(dir) and theta(dir+1) are orthonormal, so coordinates are dot products
    Cell a = theta(dir), b = theta(dir + 1);
    int64_t s = p.x * a.x + p.y * a.y;
    int64_t u = p.x * b.x + p.y * b.y;
    return {u, s - rho};
}

Cell FrontFrame::unmap(Cell p) const {
    Cell c = unmap_unchecked(p);
    if (c.y < 0) throw GameError("FrameError", "cell lies behind the frame's base line");
    return c;
}

}  // namespace contain
