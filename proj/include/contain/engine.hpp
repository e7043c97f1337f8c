#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contain/lattice.hpp"
#include "contain/rational.hpp"
#include "contain/segments.hpp"

namespace contain {

using json = nlohmann::json;

enum class Mode { Accumulate, Front };
enum class Status { Running, ContainerWin, SpreaderSurvivedHorizon };

const char* to_string(Status s);
const char* to_string(Mode m);

struct GameConfig {
    GraphKind kind = GraphKind::EighthPlane;
    Rational q{1};
    SpreadSpec g = SpreadSpec::unbounded();
    HSchedule h_schedule = HSchedule::constant(4);
    std::vector<Cell> initial_occupied{{0, 0}};
    std::vector<Cell> initial_deleted;
    std::vector<Cell> initial_counted;
    Mode mode = Mode::Front;
    bool accumulating_container = false;
    int64_t horizon = 100;
    int64_t stall_window = 0;  // 0 -> 2 * max h over the horizon
    uint64_t seed = 0;
    // Accumulate mode only: declare ContainerWin once the cells Spreader can
    // still ever reach number fewer than this (0 disables the check).
    int64_t enclosure_cap = 0;
    // per-segment ledger rows in every TurnRecord (large)
    bool verbose_metrics = false;

    void validate() const;  // throws GameError("InvalidConfig")
    int64_t effective_stall_window() const;
    json to_json() const;
    static GameConfig from_json(const json& j);
};

struct Violation {
    std::string check;   // invariant id
    int64_t turn = 0;
    std::string where;   // segment / front label
    int64_t lhs = 0;
    int64_t rhs = 0;
    std::string detail;
    json to_json() const;
    static Violation from_json(const json& j);
};

struct TurnRecord {
    int64_t t = 0;
    std::vector<Cell> deleted_cells;
    std::vector<Cell> occupied_cells;
    json metrics = json::object();
    std::vector<Violation> violations;
    json to_json() const;
    std::string dump() const;  // same bytes as to_json().dump(), without the tree
    static TurnRecord from_json(const json& j);
};

// Closed axis-parallel box; the boundary ring is x0, x1, y0, y1.
struct Box {
    int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool strictly_inside(const Box& o) const { return o.x0 < x0 && x1 < o.x1 && o.y0 < y0 && y1 < o.y1; }
};

struct GameState {
    int64_t t = 0;
    std::vector<Cell> front;  // B_t, row-major sorted
    CellSet front_set;
    CellSet occupied_all;     // accumulate mode
    CellSet deleted;
    Status status = Status::Running;
    std::string reason;
    int64_t stall = 0;
    int64_t spent = 0;        // container deletions so far
    Box occupied_box;         // bounding box of every cell occupied so far
    bool is_occupied(Cell c, Mode m) const {
        return m == Mode::Accumulate ? occupied_all.count(c) != 0 : front_set.count(c) != 0;
    }
};

class ContainerPolicy {
public:
    virtual ~ContainerPolicy() = default;
    virtual std::string name() const = 0;
    // called once before turn 1
    virtual void start(const GameConfig&, const GameState&) {}
    // s.t is the previous turn; the move is for turn s.t + 1
    virtual std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) = 0;
    virtual void observe(const TurnRecord&) {}
    virtual std::vector<Violation> violations() { return {}; }
    virtual json describe() const { return json::object(); }
    // A box whose in-domain boundary the policy claims to have deleted; the
    // engine verifies it and declares ContainerWin once the fire is inside.
    virtual std::optional<Box> enclosure() const { return std::nullopt; }
};

struct SpreaderMove {
    std::vector<Cell> cells;
    bool no_legal_move = false;
};

class SpreaderPolicy {
public:
    virtual ~SpreaderPolicy() = default;
    virtual std::string name() const = 0;
    virtual void start(const GameConfig&, const GameState&) {}
    // s.t is the current turn; new_deleted holds the Container's cells this
    // turn (already in s.deleted) and s.front is still B_{t-1}.
    virtual SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                              int64_t budget) = 0;
    // metrics and invariant failures for the turn just played
    virtual json metrics() { return json::object(); }
    virtual std::vector<Violation> violations() { return {}; }
};

// Receives the header, every record, and the outcome; hashes the canonical stream.
class TraceSink {
public:
    TraceSink();
    ~TraceSink();
    TraceSink(const TraceSink&) = delete;
    TraceSink& operator=(const TraceSink&) = delete;

    void keep_records(bool on) { keep_ = on; }
    void write_to(std::function<void(const std::string&)> fn) { writer_ = std::move(fn); }
    void line(const json& j);  // canonical one-line dump + '\n'
    void line(std::string s);  // already canonical, no newline
    std::string hex_digest();  // finalizes
    const std::vector<std::string>& lines() const { return lines_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    bool keep_ = false;
    std::vector<std::string> lines_;
    std::function<void(const std::string&)> writer_;
    std::string digest_;
};

std::string sha256_hex(const std::string& data);

struct Outcome {
    Status status = Status::Running;
    int64_t turn = 0;
    std::string reason;
    json to_json() const;
};

class Engine {
public:
    Engine(GameConfig cfg, ContainerPolicy& container, SpreaderPolicy& spreader, TraceSink* sink = nullptr);

    const GameState& state() const { return state_; }
    const GameConfig& config() const { return cfg_; }

    TurnRecord step();
    // container half and spreader half run separately so a human can drive either
    int64_t container_budget_now() const;
    int64_t spreader_budget_now() const;
    std::vector<Cell> check_container_move(const std::vector<Cell>& cells) const;  // returns sanitized copy
    TurnRecord step_with(const std::optional<std::vector<Cell>>& human_deletions,
                         const std::optional<std::vector<Cell>>& human_occupations);
    Outcome outcome() const;
    Outcome run();

    std::vector<TurnRecord> history;  // filled when keep_history
    bool keep_history = false;

private:
    void finish_if_done(TurnRecord& rec, bool no_legal_move);
    void apply_spreader(const std::vector<Cell>& cells);
    bool enclosed() const;
    bool certified_enclosure();

    GameConfig cfg_;
    ContainerPolicy& container_;
    SpreaderPolicy& spreader_;
    TraceSink* sink_;
    GameState state_;
    bool outcome_written_ = false;
    std::optional<Box> ring_;  // verified enclosure boundary
};

// budget-free legality check used by the engine and the HTTP layer; empty string when legal
std::string container_cell_error(const GameConfig& cfg, const GameState& s, Cell c);
std::string spreader_cell_error(const GameConfig& cfg, const GameState& s, Cell c);

json cell_json(Cell c);
Cell cell_from_json(const json& j);
json cells_json(const std::vector<Cell>& v);
std::vector<Cell> cells_from_json(const json& j);

}  // namespace contain
