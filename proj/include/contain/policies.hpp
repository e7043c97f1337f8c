#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "contain/engine.hpp"
#include "contain/ledger.hpp"

namespace contain {

// paper (segment strategy off the plane, four-front strategy on it), greedy,
// greedy_outward, random, frontier_outward, frontier_up, frontier_random
std::unique_ptr<SpreaderPolicy> make_spreader(const std::string& name, const GameConfig& cfg);
const std::vector<std::string>& spreader_names();

// zoo names and sieve; unknown names throw GameError("UnknownPolicy")
std::unique_ptr<ContainerPolicy> make_container(const std::string& name, const GameConfig& cfg);
const std::vector<std::string>& container_names();

// Mode and stall settings a container needs: the sieve runs in accumulate
// mode and never stalls out (early turns have zero spreader budget).
void prepare_config(GameConfig& cfg, const std::string& container);

struct RunResult {
    Outcome outcome;
    std::string hash;
    int64_t turns = 0;
    int64_t violations = 0;
    json last_metrics = json::object();
};
// Builds both policies by name, prepares cfg and plays to the end. `writer`
// receives each trace line, `on_turn` each record. `fault` perturbs the
// paper Spreader's ledger (testing the checkers).
RunResult run_named(GameConfig cfg, const std::string& container, const std::string& spreader,
                    const std::function<void(const std::string&)>& writer = {},
                    const std::function<void(const TurnRecord&)>& on_turn = {},
                    const std::optional<LedgerFault>& fault = std::nullopt);

}  // namespace contain
