#include "contain/engine.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <deque>

namespace contain {

const char* to_string(Status s) {
    switch (s) {
        case Status::Running: return "Running";
        case Status::ContainerWin: return "ContainerWin";
        case Status::SpreaderSurvivedHorizon: return "SpreaderSurvivedHorizon";
    }
    return "?";
}

const char* to_string(Mode m) { return m == Mode::Front ? "front" : "accumulate"; }

json cell_json(Cell c) { return json::array({c.x, c.y}); }

Cell cell_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw GameError("ParseError", "cell must be [x, y]: " + j.dump());
    return {j[0].get<int64_t>(), j[1].get<int64_t>()};
}

json cells_json(const std::vector<Cell>& v) {
    json a = json::array();
    for (const Cell& c : v) a.push_back(cell_json(c));
    return a;
}

std::vector<Cell> cells_from_json(const json& j) {
    if (!j.is_array()) throw GameError("ParseError", "cell list must be an array");
    std::vector<Cell> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(cell_from_json(e));
    return out;
}

// ---- config ----

void GameConfig::validate() const {
    auto bad = [](const std::string& m) { throw GameError("InvalidConfig", m); };
    if (horizon < 1) bad("horizon must be >= 1");
    if (stall_window < 0) bad("stall_window must be >= 0");
    if (enclosure_cap < 0) bad("enclosure_cap must be >= 0");
    if (q.num < 0) bad("q must be non-negative");
    if (initial_occupied.empty()) bad("initial_occupied is empty");
    CellSet del(initial_deleted.begin(), initial_deleted.end());
    for (const Cell& c : initial_occupied) {
        if (!in_domain(kind, c)) bad("initial occupied cell outside the domain");
        if (del.count(c)) bad("initial occupied cell is also deleted");
    }
    for (const Cell& c : initial_deleted)
        if (!in_domain(kind, c)) bad("initial deleted cell outside the domain");
    for (const Cell& c : initial_counted)
        if (!del.count(c)) bad("initial_counted must be a subset of initial_deleted");
    if (mode == Mode::Front && kind != GraphKind::Plane) {
        int64_t row = initial_occupied.front().y;
        for (const Cell& c : initial_occupied)
            if (c.y != row) bad("front mode on a directed graph needs a single initial row");
    }
    if (auto v = validate_schedule(h_schedule, q, horizon); !v.empty())
        throw GameError("ScheduleViolation", "h schedule violates spacing at t=" + std::to_string(v.front().t) +
                                                 ": " + v.front().what);
}

int64_t GameConfig::effective_stall_window() const {
    return stall_window > 0 ? stall_window : 2 * h_schedule.h(horizon);
}

json GameConfig::to_json() const {
    auto sorted = [](std::vector<Cell> v) {
        std::sort(v.begin(), v.end(), row_major_less);
        return cells_json(v);
    };
    return json{{"kind", contain::to_string(kind)},
                {"q", q.str()},
                {"g", g.str()},
                {"h", h_schedule.str()},
                {"initial_occupied", sorted(initial_occupied)},
                {"initial_deleted", sorted(initial_deleted)},
                {"initial_counted", sorted(initial_counted)},
                {"mode", contain::to_string(mode)},
                {"accumulating_container", accumulating_container},
                {"horizon", horizon},
                {"stall_window", stall_window},
                {"seed", seed},
                {"enclosure_cap", enclosure_cap},
                {"verbose_metrics", verbose_metrics}};
}

GameConfig GameConfig::from_json(const json& j) {
    if (!j.is_object()) throw GameError("InvalidConfig", "config must be an object");
    GameConfig c;
    try {
        if (j.contains("kind")) c.kind = graph_kind_from_string(j.at("kind").get<std::string>());
        auto text = [&](const char* k) {
            const auto& v = j.at(k);
            return v.is_string() ? v.get<std::string>() : v.dump();
        };
        if (j.contains("q")) c.q = parse_rational(text("q"));
        if (j.contains("g")) c.g = parse_spread(text("g"));
        if (j.contains("h")) c.h_schedule = parse_schedule(text("h"));
        if (j.contains("initial_occupied")) c.initial_occupied = cells_from_json(j.at("initial_occupied"));
        if (j.contains("initial_deleted")) c.initial_deleted = cells_from_json(j.at("initial_deleted"));
        if (j.contains("initial_counted")) c.initial_counted = cells_from_json(j.at("initial_counted"));
        if (j.contains("mode")) {
            auto m = j.at("mode").get<std::string>();
            if (m == "front") c.mode = Mode::Front;
            else if (m == "accumulate") c.mode = Mode::Accumulate;
            else throw GameError("InvalidConfig", "mode must be front or accumulate");
        }
        if (j.contains("accumulating_container")) c.accumulating_container = j.at("accumulating_container").get<bool>();
        if (j.contains("horizon")) c.horizon = j.at("horizon").get<int64_t>();
        if (j.contains("stall_window")) c.stall_window = j.at("stall_window").get<int64_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
        if (j.contains("enclosure_cap")) c.enclosure_cap = j.at("enclosure_cap").get<int64_t>();
        if (j.contains("verbose_metrics")) c.verbose_metrics = j.at("verbose_metrics").get<bool>();
    } catch (const json::exception& e) {
        throw GameError("InvalidConfig", e.what());
    } catch (const std::invalid_argument& e) {
        throw GameError("InvalidConfig", e.what());
    }
    return c;
}

// ---- records ----

json Violation::to_json() const {
    return json{{"check", check}, {"turn", turn}, {"where", where}, {"lhs", lhs}, {"rhs", rhs}, {"detail", detail}};
}

Violation Violation::from_json(const json& j) {
    Violation v;
    v.check = j.value("check", "");
    v.turn = j.value("turn", int64_t{0});
    v.where = j.value("where", "");
    v.lhs = j.value("lhs", int64_t{0});
    v.rhs = j.value("rhs", int64_t{0});
    v.detail = j.value("detail", "");
    return v;
}

json TurnRecord::to_json() const {
    json vs = json::array();
    for (const auto& v : violations) vs.push_back(v.to_json());
    return json{{"type", "turn"},          {"t", t},
                {"deleted", cells_json(deleted_cells)}, {"occupied", cells_json(occupied_cells)},
                {"metrics", metrics},      {"violations", vs}};
}

namespace {

void append_cells(std::string& out, const std::vector<Cell>& v) {
    out += '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += std::to_string(v[i].x);
        out += ',';
        out += std::to_string(v[i].y);
        out += ']';
    }
    out += ']';
}

}  // namespace

// keys in the order json's std::map dumps them
std::string TurnRecord::dump() const {
    std::string out = "{\"deleted\":";
    out.reserve(64 + 16 * (deleted_cells.size() + occupied_cells.size()));
    append_cells(out, deleted_cells);
    out += ",\"metrics\":";
    out += metrics.dump();
    out += ",\"occupied\":";
    append_cells(out, occupied_cells);
    out += ",\"t\":";
    out += std::to_string(t);
    out += ",\"type\":\"turn\",\"violations\":[";
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) out += ',';
        out += violations[i].to_json().dump();
    }
    out += "]}";
    return out;
}

TurnRecord TurnRecord::from_json(const json& j) {
    TurnRecord r;
    r.t = j.at("t").get<int64_t>();
    r.deleted_cells = cells_from_json(j.at("deleted"));
    r.occupied_cells = cells_from_json(j.at("occupied"));
    if (j.contains("metrics")) r.metrics = j.at("metrics");
    if (j.contains("violations"))
        for (const auto& v : j.at("violations")) r.violations.push_back(Violation::from_json(v));
    return r;
}

json Outcome::to_json() const {
    return json{{"type", "outcome"}, {"status", contain::to_string(status)}, {"turn", turn}, {"reason", reason}};
}

// ---- trace sink ----

struct TraceSink::Impl {
    EVP_MD_CTX* ctx = nullptr;
    Impl() {
        ctx = EVP_MD_CTX_new();
        EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    }
    ~Impl() { EVP_MD_CTX_free(ctx); }
};

TraceSink::TraceSink() : impl_(std::make_unique<Impl>()) {}
TraceSink::~TraceSink() = default;

void TraceSink::line(const json& j) { line(j.dump()); }

void TraceSink::line(std::string s) {
    if (!digest_.empty()) throw GameError("TraceClosed", "trace already hashed");
    s += '\n';
    EVP_DigestUpdate(impl_->ctx, s.data(), s.size());
    if (writer_) writer_(s);
    if (keep_) lines_.push_back(std::move(s));
}

static std::string to_hex(const unsigned char* p, unsigned n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < n; ++i) {
        out += digits[p[i] >> 4];
        out += digits[p[i] & 15];
    }
    return out;
}

std::string TraceSink::hex_digest() {
    if (digest_.empty()) {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned n = 0;
        EVP_DigestFinal_ex(impl_->ctx, md, &n);
        digest_ = to_hex(md, n);
    }
    return digest_;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned n = 0;
    EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr);
    return to_hex(md, n);
}

// ---- legality ----

std::string container_cell_error(const GameConfig& cfg, const GameState& s, Cell c) {
    if (!in_domain(cfg.kind, c)) return "outside the domain";
    if (s.deleted.count(c)) return "already deleted";
    if (s.is_occupied(c, cfg.mode)) return "occupied";
    return {};
}

static bool adjacent_to(const GameConfig& cfg, const CellSet& from, Cell c) {
    if (cfg.kind == GraphKind::Plane) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                if ((dx || dy) && from.count({c.x + dx, c.y + dy})) return true;
        return false;
    }
    for (int dx = -1; dx <= 1; ++dx) {
        Cell p{c.x + dx, c.y - 1};
        if (from.count(p) && has_edge(cfg.kind, p, c)) return true;
    }
    return false;
}

std::string spreader_cell_error(const GameConfig& cfg, const GameState& s, Cell c) {
    if (!in_domain(cfg.kind, c)) return "outside the domain";
    if (s.deleted.count(c)) return "deleted";
    const CellSet& from = cfg.mode == Mode::Accumulate ? s.occupied_all : s.front_set;
    if (from.count(c)) return {};  // distance 0
    if (!adjacent_to(cfg, from, c)) return "not adjacent to the occupied set";
    return {};
}

// ---- engine ----

namespace {

void grow(Box& b, Cell c) {
    b.x0 = std::min(b.x0, c.x), b.x1 = std::max(b.x1, c.x);
    b.y0 = std::min(b.y0, c.y), b.y1 = std::max(b.y1, c.y);
}

}  // namespace

Engine::Engine(GameConfig cfg, ContainerPolicy& container, SpreaderPolicy& spreader, TraceSink* sink)
    : cfg_(std::move(cfg)), container_(container), spreader_(spreader), sink_(sink) {
    cfg_.validate();
    std::vector<Cell> occ = cfg_.initial_occupied;
    std::sort(occ.begin(), occ.end(), row_major_less);
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    state_.front = occ;
    state_.front_set = CellSet(occ.begin(), occ.end());
    if (cfg_.mode == Mode::Accumulate) state_.occupied_all = state_.front_set;
    if (!occ.empty()) state_.occupied_box = {occ.front().x, occ.front().y, occ.front().x, occ.front().y};
    for (const Cell& c : occ) grow(state_.occupied_box, c);
    state_.deleted = CellSet(cfg_.initial_deleted.begin(), cfg_.initial_deleted.end());
    container_.start(cfg_, state_);
    spreader_.start(cfg_, state_);
    if (sink_)
        sink_->line(json{{"type", "header"},
                         {"version", 1},
                         {"config", cfg_.to_json()},
                         {"container", container_.name()},
                         {"spreader", spreader_.name()}});
}

int64_t Engine::container_budget_now() const {
    return container_budget(cfg_.q, state_.t + 1, cfg_.accumulating_container, state_.spent);
}

int64_t Engine::spreader_budget_now() const { return cfg_.g.budget(state_.t + 1); }

std::vector<Cell> Engine::check_container_move(const std::vector<Cell>& cells) const {
    int64_t budget = container_budget_now();
    if (static_cast<int64_t>(cells.size()) > budget)
        throw GameError("BudgetExceeded", "container deleted " + std::to_string(cells.size()) + " cells, budget " +
                                              std::to_string(budget) + " at t=" + std::to_string(state_.t + 1));
    CellSet seen;
    for (const Cell& c : cells) {
        std::string why = container_cell_error(cfg_, state_, c);
        if (why.empty() && !seen.insert(c).second) why = "duplicate";
        if (!why.empty())
            throw GameError("ContainerIllegalMove",
                            "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "): " + why);
    }
    std::vector<Cell> out = cells;
    std::sort(out.begin(), out.end(), row_major_less);
    return out;
}

void Engine::apply_spreader(const std::vector<Cell>& cells) {
    for (const Cell& c : cells) grow(state_.occupied_box, c);
    state_.front = cells;
    state_.front_set = CellSet(cells.begin(), cells.end());
    if (cfg_.mode == Mode::Accumulate)
        for (const Cell& c : cells) state_.occupied_all.insert(c);
}

bool Engine::enclosed() const {
    // Cells reachable from the occupied set through undeleted cells; enclosed
    // when the search exhausts below the cap.
    const CellSet& occ = state_.occupied_all;
    CellSet seen;
    std::deque<Cell> queue;
    auto push_next = [&](Cell c) {
        auto visit = [&](Cell n) {
            if (!in_domain(cfg_.kind, n) || state_.deleted.count(n) || occ.count(n) || seen.count(n)) return;
            if (cfg_.kind != GraphKind::Plane && !has_edge(cfg_.kind, c, n)) return;
            seen.insert(n);
            queue.push_back(n);
        };
        if (cfg_.kind == GraphKind::Plane) {
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    if (dx || dy) visit({c.x + dx, c.y + dy});
        } else {
            for (int dx = -1; dx <= 1; ++dx) visit({c.x + dx, c.y + 1});
        }
    };
    for (const Cell& c : occ) {
        push_next(c);
        if (static_cast<int64_t>(seen.size()) >= cfg_.enclosure_cap) return false;
    }
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        push_next(c);
        if (static_cast<int64_t>(seen.size()) >= cfg_.enclosure_cap) return false;
    }
    return true;
}

bool Engine::certified_enclosure() {
    auto box = container_.enclosure();
    if (!box) return false;
    if (!ring_ || ring_->x0 != box->x0 || ring_->x1 != box->x1 || ring_->y0 != box->y0 || ring_->y1 != box->y1) {
        auto gap = [&](Cell c) { return in_domain(cfg_.kind, c) && !state_.deleted.count(c); };
        for (int64_t x = box->x0; x <= box->x1; ++x)
            if (gap({x, box->y0}) || gap({x, box->y1})) return false;
        for (int64_t y = box->y0; y <= box->y1; ++y)
            if (gap({box->x0, y}) || gap({box->x1, y})) return false;
        ring_ = box;
    }
    return state_.occupied_box.strictly_inside(*ring_);
}

TurnRecord Engine::step() { return step_with(std::nullopt, std::nullopt); }

TurnRecord Engine::step_with(const std::optional<std::vector<Cell>>& human_deletions,
                             const std::optional<std::vector<Cell>>& human_occupations) {
    if (state_.status != Status::Running) throw GameError("GameOver", "game already finished");
    const int64_t budget_c = container_budget_now();
    std::vector<Cell> dels = human_deletions ? *human_deletions : container_.move(cfg_, state_, budget_c);
    dels = check_container_move(dels);

    state_.t += 1;
    for (const Cell& c : dels) state_.deleted.insert(c);
    state_.spent += static_cast<int64_t>(dels.size());

    const int64_t budget_s = cfg_.g.budget(state_.t);
    SpreaderMove mv;
    if (human_occupations) mv.cells = *human_occupations;
    else mv = spreader_.move(cfg_, state_, dels, budget_s);

    if (static_cast<int64_t>(mv.cells.size()) > budget_s)
        throw GameError("BudgetExceeded", "spreader occupied " + std::to_string(mv.cells.size()) + " cells, budget " +
                                              std::to_string(budget_s) + " at t=" + std::to_string(state_.t));
    CellSet seen;
    for (const Cell& c : mv.cells) {
        std::string why = spreader_cell_error(cfg_, state_, c);
        if (why.empty() && !seen.insert(c).second) why = "duplicate";
        if (!why.empty())
            throw GameError("SpreaderIllegalMove",
                            "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "): " + why);
    }
    std::sort(mv.cells.begin(), mv.cells.end(), row_major_less);
    apply_spreader(mv.cells);

    TurnRecord rec;
    rec.t = state_.t;
    rec.deleted_cells = std::move(dels);
    rec.occupied_cells = mv.cells;
    if (!human_occupations) {
        rec.metrics = spreader_.metrics();
        rec.violations = spreader_.violations();
    }
    container_.observe(rec);
    for (auto& v : container_.violations()) rec.violations.push_back(std::move(v));

    finish_if_done(rec, mv.no_legal_move);
    if (sink_) sink_->line(rec.dump());
    if (keep_history) history.push_back(rec);
    if (state_.status != Status::Running && sink_ && !outcome_written_) {
        sink_->line(outcome().to_json());
        outcome_written_ = true;
    }
    return rec;
}

void Engine::finish_if_done(TurnRecord& rec, bool no_legal_move) {
    state_.stall = rec.occupied_cells.empty() ? state_.stall + 1 : 0;
    if (no_legal_move) {
        state_.status = Status::ContainerWin;
        state_.reason = "no legal move";
    } else if (state_.stall >= cfg_.effective_stall_window()) {
        state_.status = Status::ContainerWin;
        state_.reason = "stalled";
    } else if (cfg_.mode == Mode::Accumulate && certified_enclosure()) {
        state_.status = Status::ContainerWin;
        state_.reason = "enclosed";
    } else if (cfg_.enclosure_cap > 0 && cfg_.mode == Mode::Accumulate && enclosed()) {
        state_.status = Status::ContainerWin;
        state_.reason = "enclosed";
    } else if (state_.t >= cfg_.horizon) {
        if (cfg_.mode == Mode::Front && state_.front.empty()) {
            state_.status = Status::ContainerWin;
            state_.reason = "front empty at horizon";
        } else {
            state_.status = Status::SpreaderSurvivedHorizon;
            state_.reason = "horizon";
        }
    }
}

Outcome Engine::outcome() const { return Outcome{state_.status, state_.t, state_.reason}; }

Outcome Engine::run() {
    while (state_.status == Status::Running) step();
    return outcome();
}

}  // namespace contain
