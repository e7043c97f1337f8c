#pragma once

#include "contain/engine.hpp"

namespace contain {

struct CalibrateOptions {
    int64_t turns = 2000;        // segment strategy runs
    int64_t plane_turns = 500;
    std::vector<int64_t> hs{2, 4, 8};
    int random_seeds = 3;
    bool plane = true;
};

// Runs the Spreader strategies against the zoo and records the constants
// the acceptance suite regresses against:
//   K_cal: max over runs and turns of spreading / h^6 and
//          |B'_t| / (h^6 + 2t/h + |B_0|), kept as exact fractions;
//   C2:    least integer C with the plane strategy's per-turn play within
//          floor(C t^(6/7)) on every unbounded run.
json calibrate(const CalibrateOptions& opt);

// the bounds K_cal promises for one turn of a segment-strategy run
bool within_spreading_bound(const Rational& k, int64_t spreading, int64_t h);
bool within_front_bound(const Rational& k, int64_t b_pruned, int64_t h, int64_t t, int64_t b0);

}  // namespace contain
