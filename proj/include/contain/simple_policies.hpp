#pragma once

#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "contain/engine.hpp"

namespace contain {

class NullContainer : public ContainerPolicy {
public:
    std::string name() const override { return "null"; }
    std::vector<Cell> move(const GameConfig&, const GameState&, int64_t) override { return {}; }
};

// Plays a fixed per-turn list of deletions; turns absent from the script pass.
class ScriptedContainer : public ContainerPolicy {
public:
    explicit ScriptedContainer(std::map<int64_t, std::vector<Cell>> script, std::string label = "replay")
        : script_(std::move(script)), label_(std::move(label)) {}
    std::string name() const override { return label_; }
    std::vector<Cell> move(const GameConfig&, const GameState& s, int64_t) override {
        auto it = script_.find(s.t + 1);
        return it == script_.end() ? std::vector<Cell>{} : it->second;
    }

private:
    std::map<int64_t, std::vector<Cell>> script_;
    std::string label_;
};

// All legal targets in a fixed preference order, cut at the budget.
class GreedySpreader : public SpreaderPolicy {
public:
    enum class Prefer { Up, Outward };
    explicit GreedySpreader(Prefer p = Prefer::Up) : prefer_(p) {}
    std::string name() const override { return prefer_ == Prefer::Up ? "greedy" : "greedy_outward"; }
    SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>&, int64_t budget) override;

private:
    Prefer prefer_;
};

class RandomSpreader : public SpreaderPolicy {
public:
    std::string name() const override { return "random"; }
    void start(const GameConfig& cfg, const GameState&) override { rng_.seed(cfg.seed ^ 0x5bd1e995u); }
    SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>&, int64_t budget) override;

private:
    std::mt19937_64 rng_;
};

// Accumulate mode only: keeps the candidate cells in a priority set so a
// turn costs O(budget log n) instead of a scan of the whole fire.
class FrontierSpreader : public SpreaderPolicy {
public:
    enum class Prefer { Outward, Up, Random };
    explicit FrontierSpreader(Prefer p = Prefer::Outward) : prefer_(p) {}
    std::string name() const override;
    void start(const GameConfig& cfg, const GameState& s) override;
    SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                      int64_t budget) override;
    size_t candidates() const { return pri_.size(); }

private:
    int64_t priority(Cell c) const;
    void offer(const GameConfig& cfg, const GameState& s, Cell from);

    Prefer prefer_;
    uint64_t seed_ = 0;
    std::set<std::pair<int64_t, Cell>, bool (*)(const std::pair<int64_t, Cell>&, const std::pair<int64_t, Cell>&)> queue_{
        &FrontierSpreader::before};
    std::unordered_map<Cell, int64_t, CellHash> pri_;
    CellSet occupied_;
    static bool before(const std::pair<int64_t, Cell>& a, const std::pair<int64_t, Cell>& b) {
        return a.first != b.first ? a.first < b.first : row_major_less(a.second, b.second);
    }
};

// legal spread targets of the current state (unsorted), the shared candidate generator
std::vector<Cell> legal_spread_targets(const GameConfig& cfg, const GameState& s);

}  // namespace contain
