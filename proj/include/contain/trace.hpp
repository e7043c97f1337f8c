#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "contain/engine.hpp"

namespace contain {

struct Trace {
    json header;
    GameConfig config;
    std::string container, spreader;
    std::vector<TurnRecord> records;
    std::optional<Outcome> outcome;
    std::string hash;  // SHA-256 over the canonical lines
};

// JSONL as written by TraceSink; GameError("TraceParse") names the line number
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
Trace read_trace_lines(const std::vector<std::string>& lines);

// Suites: recorded (violations the run reported), legality (board replay of
// every move and budget), claims (per-turn potential/radius claims
// recomputed from the metrics), oracle (greedy disjoint-path count against
// max-flow on states rebuilt from the trace).
struct VerifyReport {
    std::vector<Violation> violations;
    int64_t turns = 0;
    std::map<std::string, int64_t> checked;  // suite -> checks run
    bool clean() const { return violations.empty(); }
    std::set<std::string> names() const;
    json to_json() const;
};
const std::vector<std::string>& verify_suites();
VerifyReport verify_trace(const Trace& tr, const std::set<std::string>& suites);

// Plays the trace's deletions verbatim. When the recorded container is a
// known deterministic policy, a shadow copy is stepped alongside so its
// checks and enclosure claims reappear in the replayed trace.
class ReplayContainer : public ContainerPolicy {
public:
    ReplayContainer(const Trace& tr);
    std::string name() const override { return label_; }
    void start(const GameConfig& cfg, const GameState& s) override;
    std::vector<Cell> move(const GameConfig& cfg, const GameState& s, int64_t budget) override;
    void observe(const TurnRecord& rec) override;
    std::vector<Violation> violations() override;
    std::optional<Box> enclosure() const override;

private:
    std::string label_;
    std::map<int64_t, std::vector<Cell>> script_;
    std::unique_ptr<ContainerPolicy> shadow_;
};

// Plays recorded occupations (for traces whose spreader was a human).
class ScriptedSpreader : public SpreaderPolicy {
public:
    ScriptedSpreader(std::map<int64_t, std::vector<Cell>> script, std::string label)
        : script_(std::move(script)), label_(std::move(label)) {}
    std::string name() const override { return label_; }
    SpreaderMove move(const GameConfig&, const GameState& s, const std::vector<Cell>&, int64_t) override;

private:
    std::map<int64_t, std::vector<Cell>> script_;
    std::string label_;
};

struct ReplayResult {
    std::string hash;
    bool identical = false;
    Outcome outcome;
    std::vector<std::string> lines;
};
ReplayResult replay_trace(const Trace& tr);

struct RenderOptions {
    int64_t from = 0, to = -1;   // turn range, to < 0: last turn
    std::optional<int64_t> x0;   // left edge (pan); default: fit
    int64_t width = 100;         // ascii column cap
    bool last_only = false;
};
std::string render_ascii(const Trace& tr, const RenderOptions& opt);
std::string render_svg(const Trace& tr, const RenderOptions& opt);

}  // namespace contain
