#include "contain/simple_policies.hpp"

#include <algorithm>

namespace contain {

std::vector<Cell> legal_spread_targets(const GameConfig& cfg, const GameState& s) {
    const CellSet& from = cfg.mode == Mode::Accumulate ? s.occupied_all : s.front_set;
    CellSet out;
    for (const Cell& c : from) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                if (!dx && !dy) continue;
                Cell n{c.x + dx, c.y + dy};
                if (cfg.kind != GraphKind::Plane && !has_edge(cfg.kind, c, n)) continue;
                if (!in_domain(cfg.kind, n) || s.deleted.count(n) || from.count(n)) continue;
                out.insert(n);
            }
    }
    return {out.begin(), out.end()};
}

SpreaderMove GreedySpreader::move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>&,
                                  int64_t budget) {
    auto cand = legal_spread_targets(cfg, s);
    if (prefer_ == Prefer::Up) {
        std::sort(cand.begin(), cand.end(), [](const Cell& a, const Cell& b) {
            return a.y != b.y ? a.y > b.y : a.x < b.x;
        });
    } else {
        std::sort(cand.begin(), cand.end(), [](const Cell& a, const Cell& b) {
            int64_t na = std::max(std::llabs(a.x), std::llabs(a.y)), nb = std::max(std::llabs(b.x), std::llabs(b.y));
            return na != nb ? na > nb : row_major_less(a, b);
        });
    }
    if (static_cast<int64_t>(cand.size()) > budget) cand.resize(static_cast<size_t>(budget));
    return {cand, false};
}

SpreaderMove RandomSpreader::move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>&,
                                  int64_t budget) {
    auto cand = legal_spread_targets(cfg, s);
    std::sort(cand.begin(), cand.end(), row_major_less);  // hash order is not deterministic across builds
    std::shuffle(cand.begin(), cand.end(), rng_);
    if (static_cast<int64_t>(cand.size()) > budget) cand.resize(static_cast<size_t>(budget));
    return {cand, false};
}

std::string FrontierSpreader::name() const {
    switch (prefer_) {
        case Prefer::Outward: return "frontier_outward";
        case Prefer::Up: return "frontier_up";
        case Prefer::Random: return "frontier_random";
    }
    return "frontier";
}

int64_t FrontierSpreader::priority(Cell c) const {
    switch (prefer_) {
        case Prefer::Outward: return -std::max(std::llabs(c.x), std::llabs(c.y));
        case Prefer::Up: return -c.y;
        case Prefer::Random: {
            // splitmix64 of the cell and seed: a fixed random order per game
            uint64_t z = seed_ + 0x9E3779B97F4A7C15ull * (CellHash{}(c) + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return static_cast<int64_t>((z ^ (z >> 31)) >> 1);
        }
    }
    return 0;
}

void FrontierSpreader::offer(const GameConfig& cfg, const GameState& s, Cell from) {
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
            if (!dx && !dy) continue;
            Cell n{from.x + dx, from.y + dy};
            if (cfg.kind != GraphKind::Plane && !has_edge(cfg.kind, from, n)) continue;
            if (!in_domain(cfg.kind, n) || s.deleted.count(n) || occupied_.count(n) || pri_.count(n)) continue;
            int64_t p = priority(n);
            pri_.emplace(n, p);
            queue_.emplace(p, n);
        }
}

void FrontierSpreader::start(const GameConfig& cfg, const GameState& s) {
    if (cfg.mode != Mode::Accumulate) throw GameError("InvalidConfig", "frontier spreader needs accumulate mode");
    seed_ = cfg.seed;
    queue_.clear();
    pri_.clear();
    occupied_ = s.occupied_all;
    for (const Cell& c : sorted_cells(occupied_)) offer(cfg, s, c);
}

SpreaderMove FrontierSpreader::move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                                    int64_t budget) {
    for (const Cell& c : new_deleted) {
        auto it = pri_.find(c);
        if (it == pri_.end()) continue;
        queue_.erase({it->second, c});
        pri_.erase(it);
    }
    SpreaderMove mv;
    while (static_cast<int64_t>(mv.cells.size()) < budget && !queue_.empty()) {
        Cell c = queue_.begin()->second;
        queue_.erase(queue_.begin());
        pri_.erase(c);
        occupied_.insert(c);
        mv.cells.push_back(c);
    }
    for (const Cell& c : mv.cells) offer(cfg, s, c);
    return mv;
}

}  // namespace contain
