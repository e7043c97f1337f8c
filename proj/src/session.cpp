#include "contain/session.hpp"

#include <algorithm>

#include "contain/paper_spreader.hpp"
#include "contain/paths.hpp"
#include "contain/policies.hpp"

namespace contain {

const char* to_string(Role r) {
    switch (r) {
        case Role::Container: return "container";
        case Role::Spreader: return "spreader";
        case Role::Observer: return "observer";
    }
    return "?";
}

Role role_from_string(const std::string& s) {
    if (s == "container") return Role::Container;
    if (s == "spreader") return Role::Spreader;
    if (s == "observer") return Role::Observer;
    throw GameError("InvalidConfig", "human_role must be container, spreader or observer");
}

json CellRejection::to_json() const { return {{"cell", cell_json(cell)}, {"reason", reason}, {"rule", rule}}; }

namespace {

std::string describe(const std::vector<CellRejection>& v) {
    std::string s = std::to_string(v.size()) + " illegal cell(s)";
    if (!v.empty()) s += ": (" + std::to_string(v[0].cell.x) + "," + std::to_string(v[0].cell.y) + ") " + v[0].reason;
    return s;
}

std::string container_rule(const std::string& reason) {
    if (reason == "occupied") return "the Container removes non-occupied vertices from the graph";
    if (reason == "already deleted") return "a vertex can be removed only once";
    if (reason == "duplicate") return "each vertex at most once per move";
    return "deletions stay inside the board";
}

std::string spreader_rule(const std::string& reason) {
    if (reason == "deleted") return "the Spreader occupies vertices of the remaining graph";
    if (reason == "duplicate") return "each vertex at most once per move";
    if (reason == "not adjacent to the occupied set") return "new vertices lie at distance at most one from the occupied set";
    return "occupations stay inside the board";
}

class HumanContainer : public ContainerPolicy {
public:
    std::string name() const override { return "human"; }
    std::vector<Cell> move(const GameConfig&, const GameState&, int64_t) override {
        throw GameError("Conflict", "waiting on the human Container");
    }
};

class HumanSpreader : public SpreaderPolicy {
public:
    std::string name() const override { return "human"; }
    SpreaderMove move(const GameConfig&, const GameState&, const std::vector<Cell>&, int64_t) override {
        throw GameError("Conflict", "waiting on the human Spreader");
    }
};

bool inside(const std::optional<Box>& v, Cell c) {
    return !v || (v->x0 <= c.x && c.x <= v->x1 && v->y0 <= c.y && c.y <= v->y1);
}

json window(const std::vector<Cell>& cells, const std::optional<Box>& v) {
    std::vector<Cell> out;
    for (const Cell& c : cells)
        if (inside(v, c)) out.push_back(c);
    return cells_json(out);
}

json window(const CellSet& cells, const std::optional<Box>& v) {
    std::vector<Cell> out;
    for (const Cell& c : cells)
        if (inside(v, c)) out.push_back(c);
    std::sort(out.begin(), out.end(), row_major_less);
    return cells_json(out);
}

}  // namespace

MoveRejected::MoveRejected(std::vector<CellRejection> cells)
    : GameError("IllegalMove", describe(cells)), cells_(std::move(cells)) {}

Session::Session(GameConfig cfg, Role human, const std::string& container, const std::string& spreader)
    : cfg_(std::move(cfg)), human_(human) {
    if (human_ != Role::Container) prepare_config(cfg_, container);
    cfg_.validate();
    container_ = human_ == Role::Container ? std::make_unique<HumanContainer>() : make_container(container, cfg_);
    spreader_ = human_ == Role::Spreader ? std::unique_ptr<SpreaderPolicy>(std::make_unique<HumanSpreader>())
                                         : make_spreader(spreader, cfg_);
    sink_ = std::make_unique<TraceSink>();
    sink_->keep_records(true);
    engine_ = std::make_unique<Engine>(cfg_, *container_, *spreader_, sink_.get());
}

Session::~Session() = default;

json Session::move(const std::vector<Cell>& cells) {
    std::lock_guard lk(mu_);
    if (human_ == Role::Observer) throw GameError("Conflict", "observer sessions advance with engine-step");
    const GameState& s = engine_->state();
    if (s.status != Status::Running) throw GameError("Conflict", "game already finished");
    std::vector<CellRejection> bad;
    CellSet seen;
    if (human_ == Role::Container) {
        int64_t budget = engine_->container_budget_now();
        if (static_cast<int64_t>(cells.size()) > budget)
            throw GameError("BudgetExceeded", std::to_string(cells.size()) + " cells submitted, budget " +
                                                  std::to_string(budget));
        for (const Cell& c : cells) {
            std::string why = container_cell_error(cfg_, s, c);
            if (why.empty() && !seen.insert(c).second) why = "duplicate";
            if (!why.empty()) bad.push_back({c, why, container_rule(why)});
        }
        if (!bad.empty()) throw MoveRejected(std::move(bad));
        return finish_turn(engine_->step_with(cells, std::nullopt));
    }
    // the Container half runs first, so the Spreader's cells are checked against it
    int64_t budget = engine_->spreader_budget_now();
    if (static_cast<int64_t>(cells.size()) > budget)
        throw GameError("BudgetExceeded", std::to_string(cells.size()) + " cells submitted, budget " +
                                              std::to_string(budget));
    // the engine Container moves once per turn, even if the human retries
    if (!pending_ || pending_->first != s.t)
        pending_.emplace(s.t, engine_->check_container_move(container_->move(cfg_, s, engine_->container_budget_now())));
    const std::vector<Cell>& dels = pending_->second;
    GameState after = s;
    for (const Cell& c : dels) after.deleted.insert(c);
    after.t += 1;
    for (const Cell& c : cells) {
        std::string why = spreader_cell_error(cfg_, after, c);
        if (why.empty() && !seen.insert(c).second) why = "duplicate";
        if (!why.empty()) bad.push_back({c, why, spreader_rule(why)});
    }
    if (!bad.empty()) throw MoveRejected(std::move(bad));
    return finish_turn(engine_->step_with(dels, cells));
}

json Session::engine_step() {
    std::lock_guard lk(mu_);
    if (human_ != Role::Observer) throw GameError("Conflict", "engine-step is for observer sessions");
    if (engine_->state().status != Status::Running) throw GameError("Conflict", "game already finished");
    return finish_turn(engine_->step());
}

json Session::finish_turn(const TurnRecord& rec) {
    if (!rec.metrics.empty()) last_metrics_ = rec.metrics;
    json j = rec.to_json();
    j["status"] = to_string(engine_->state().status);
    j["overlay"] = overlay();
    if (engine_->state().status != Status::Running) j["outcome"] = engine_->outcome().to_json();
    return j;
}

json Session::overlay() const {
    json o = json::object();
    const GameState& s = engine_->state();
    if (auto* p = dynamic_cast<const PaperSpreader*>(spreader_.get())) {
        // for a human Container: where the last deletions disrupted and the alert bands
        const HalfGame& g = p->game();
        const int64_t h = g.h();
        json dis = json::array(), alerts = json::array();
        for (int64_t k : g.disrupted()) {
            dis.push_back({k * h, k * h + h - 1});
            auto iv = alert_interval(g.deletions(), g.t(), g.provisional(), k * h, k * h + h - 1, h, g.Htilde());
            alerts.push_back({iv.lo == -kNever ? json(nullptr) : json(iv.lo), iv.hi == kNever ? json(nullptr) : json(iv.hi)});
        }
        o["disrupted"] = dis;
        o["alerts"] = alerts;
        o["h"] = h;
    }
    json d = container_->describe();
    if (d.contains("plan") && !d["plan"].is_null()) {
        // for a human Spreader: how far the fire is from the walls being built
        const json& plan = d["plan"];
        if (plan.contains("H")) o["rows_to_wall"] = plan["H"].get<int64_t>() - s.occupied_box.y1;
        if (plan.contains("rectangle")) o["rectangle"] = plan["rectangle"];
        for (const char* k : {"danger", "east_danger", "west_danger"})
            if (d.contains(k)) o[k] = d[k];
    }
    return o;
}

json Session::state(const std::optional<Box>& v) const {
    std::lock_guard lk(mu_);
    const GameState& s = engine_->state();
    json j{{"t", s.t},
           {"status", to_string(s.status)},
           {"human_role", to_string(human_)},
           {"container", container_->name()},
           {"spreader", spreader_->name()},
           {"config", cfg_.to_json()},
           {"front", window(s.front, v)},
           {"deleted", window(s.deleted, v)},
           {"metrics", last_metrics_},
           {"budget", {{"container", s.status == Status::Running ? engine_->container_budget_now() : 0},
                       {"spreader", s.status == Status::Running ? engine_->spreader_budget_now() : 0}}},
           {"counts", {{"front", s.front.size()}, {"deleted", s.deleted.size()}, {"occupied", s.occupied_all.size()}}},
           {"occupied_box", {s.occupied_box.x0, s.occupied_box.y0, s.occupied_box.x1, s.occupied_box.y1}},
           {"engine_policy", container_->describe()}};
    if (cfg_.mode == Mode::Accumulate) j["occupied"] = window(s.occupied_all, v);
    if (v) j["viewport"] = {v->x0, v->y0, v->x1, v->y1};
    if (s.status != Status::Running) j["outcome"] = engine_->outcome().to_json();
    return j;
}

std::string Session::trace() const {
    std::lock_guard lk(mu_);
    std::string out;
    for (const auto& l : sink_->lines()) out += l;
    return out;
}

std::string Session::hash() const {
    std::lock_guard lk(mu_);
    std::string out;
    for (const auto& l : sink_->lines()) out += l;
    return sha256_hex(out);
}

int64_t Session::turn() const {
    std::lock_guard lk(mu_);
    return engine_->state().t;
}

bool Session::finished() const {
    std::lock_guard lk(mu_);
    return engine_->state().status != Status::Running;
}

}  // namespace contain
