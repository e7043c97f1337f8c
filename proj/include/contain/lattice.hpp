#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace contain {

struct Cell {
    int64_t x = 0;
    int64_t y = 0;
    auto operator<=>(const Cell&) const = default;
};

inline Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }

struct CellHash {
    size_t operator()(const Cell& c) const noexcept {
        uint64_t h = static_cast<uint64_t>(c.x) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<uint64_t>(c.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

using CellSet = std::unordered_set<Cell, CellHash>;

// row-major order, the order every list in a trace is written in
inline bool row_major_less(const Cell& a, const Cell& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}
std::vector<Cell> sorted_cells(const CellSet& s);

// Errors carry a stable code so the C API and HTTP layer can map them.
class GameError : public std::runtime_error {
public:
    GameError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class GraphKind { Plane, EighthPlane, DirectedHalfPlane };

const char* to_string(GraphKind k);
GraphKind graph_kind_from_string(const std::string& s);

bool in_domain(GraphKind k, Cell c);

// Edge test between consecutive rows or, on the plane, strong adjacency.
// `unconstrained` drops the |x| <= y source condition on the half plane,
// which embedded sub-games need since they start from arbitrary rows.
bool has_edge(GraphKind k, Cell from, Cell to, bool unconstrained = false);

std::vector<Cell> spread_targets(GraphKind k, const std::vector<Cell>& front, bool leftmost_nw);

// direction vectors; indices reduced mod 4
Cell theta(int i);
Cell theta_diag(int i);  // theta^{i,i+1}

struct FrontFrame {
    int dir = 0;
    int64_t rho = 0;

    FrontFrame() = default;
    FrontFrame(int d, int64_t r);
    Cell map(Cell local) const;    // (u,v) -> plane
    Cell unmap(Cell plane) const;  // throws FrameError for v < 0
    Cell unmap_unchecked(Cell plane) const;
};

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

}  // namespace contain
