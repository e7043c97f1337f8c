#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "contain/engine.hpp"

namespace contain {

enum class Role { Container, Spreader, Observer };
const char* to_string(Role r);
Role role_from_string(const std::string& s);

// One rejected cell of a human move and the rule it broke.
struct CellRejection {
    Cell cell;
    std::string reason;
    std::string rule;
    json to_json() const;
};

// Thrown by Session for a human move with illegal cells.
class MoveRejected : public GameError {
public:
    explicit MoveRejected(std::vector<CellRejection> cells);
    const std::vector<CellRejection>& cells() const { return cells_; }

private:
    std::vector<CellRejection> cells_;
};

// A live game driven one half-turn at a time. The human side is labelled
// "human" in the trace; the other side is the named engine policy. All
// public calls lock the session.
class Session {
public:
    // container / spreader: engine policy names (the human side's is ignored)
    Session(GameConfig cfg, Role human, const std::string& container, const std::string& spreader);
    ~Session();

    Role human() const { return human_; }
    const GameConfig& config() const { return cfg_; }

    // human half-turn then engine half-turn; returns the record plus overlay
    json move(const std::vector<Cell>& cells);
    // observer sessions only: both halves by the engine
    json engine_step();
    // cells inside the viewport plus global metrics
    json state(const std::optional<Box>& viewport) const;
    std::string trace() const;
    std::string hash() const;
    int64_t turn() const;
    bool finished() const;

private:
    json finish_turn(const TurnRecord& rec);
    json overlay() const;

    GameConfig cfg_;
    Role human_;
    std::unique_ptr<ContainerPolicy> container_;
    std::unique_ptr<SpreaderPolicy> spreader_;
    std::unique_ptr<TraceSink> sink_;
    std::unique_ptr<Engine> engine_;
    json last_metrics_ = json::object();
    std::optional<std::pair<int64_t, std::vector<Cell>>> pending_;  // engine deletions for turn first + 1
    mutable std::mutex mu_;
};

}  // namespace contain
