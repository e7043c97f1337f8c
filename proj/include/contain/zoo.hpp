#pragma once

#include <memory>
#include <random>

#include "contain/engine.hpp"

namespace contain {

// Random deletions in a band above the front.
class RandomContainer : public ContainerPolicy {
public:
    std::string name() const override { return "random"; }
    void start(const GameConfig& cfg, const GameState&) override { rng_.seed(cfg.seed * 0x9E3779B97F4A7C15ull + 17); }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;

private:
    std::mt19937_64 rng_;
};

// Deletes the cells directly above occupied cells, left to right.
class GreedyFrontContainer : public ContainerPolicy {
public:
    std::string name() const override { return "greedy_front"; }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
};

// Every deletion lands within h_t rows of the front, cycling over the front's
// columns so that a different segment is disrupted each turn.
class DisruptorContainer : public ContainerPolicy {
public:
    std::string name() const override { return "disruptor"; }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;

private:
    uint64_t k_ = 0;
};

// Blocks the leftmost occupied cell's upward neighbours.
class LeftWallContainer : public ContainerPolicy {
public:
    std::string name() const override { return "left_wall"; }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
};

// Deletes above isolated front cells (pivots), cycling through them.
class SniperContainer : public ContainerPolicy {
public:
    std::string name() const override { return "sniper"; }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;

private:
    uint64_t k_ = 0;
};

// Spends the whole budget on the smallest front (on the plane: the front
// direction holding the fewest cells), ends first, then above every cell.
class FocusContainer : public ContainerPolicy {
public:
    std::string name() const override { return "focus"; }
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
};

// null, random, greedy_front, disruptor, left_wall, sniper, focus; sieve and reduction
// policies are built from their plans elsewhere
std::unique_ptr<ContainerPolicy> make_zoo_container(const std::string& name);
const std::vector<std::string>& zoo_names();

// legal for the Container on the next turn
bool container_may_delete(const GameConfig& cfg, const GameState& s, Cell c);

}  // namespace contain
