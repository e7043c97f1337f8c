#include "contain/paper_spreader.hpp"

#include <algorithm>

namespace contain {

void PaperSpreader::start(const GameConfig& cfg, const GameState& s) {
    if (cfg.kind == GraphKind::Plane) throw GameError("InvalidConfig", "paper spreader: use the plane spreader on the plane");
    if (s.front.empty()) throw GameError("InvalidConfig", "paper spreader: empty initial front");
    row0_ = s.front.front().y;
    std::vector<int64_t> b0;
    for (const Cell& c : s.front) {
        if (c.y != row0_) throw GameError("InvalidConfig", "paper spreader: initial cells must share one row");
        b0.push_back(c.x);
    }
    auto local = [&](const std::vector<Cell>& cells) {
        std::vector<Cell> out;
        for (const Cell& c : cells) out.push_back({c.x, c.y - row0_});
        return out;
    };
    StrategyParams p;
    p.variant = cfg.kind == GraphKind::EighthPlane ? HalfVariant::Eighth : HalfVariant::Half;
    p.q = cfg.q;
    p.schedule = cfg.h_schedule;
    auto deleted = local(cfg.initial_deleted);
    game_ = std::make_unique<HalfGame>(p, b0, deleted);
    ledger_ = std::make_unique<Ledger>(*game_, local(cfg.initial_counted), static_cast<int64_t>(cfg.initial_deleted.size()));
    ledger_->set_fault(fault_);
    verbose_ = cfg.verbose_metrics;
    pending_.clear();
}

SpreaderMove PaperSpreader::move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                                 int64_t budget) {
    std::vector<Cell> local;
    for (const Cell& c : new_deleted) local.push_back({c.x, c.y - row0_});
    std::vector<int64_t> before = game_->pruned();
    game_->step(local);
    pending_ = ledger_->observe(*game_);

    const int64_t y = game_->t() + row0_;
    SpreaderMove mv;
    for (int64_t x : game_->pruned()) {
        // a cell whose parent was pruned would be an illegal move; drop and report it
        bool ok = std::binary_search(before.begin(), before.end(), x) ||
                  std::binary_search(before.begin(), before.end(), x - 1) ||
                  (cfg.kind == GraphKind::DirectedHalfPlane && std::binary_search(before.begin(), before.end(), x + 1));
        if (!ok) {
            pending_.push_back({"pruned_front_legal", game_->t(), "", x, 0, "no occupied parent"});
            continue;
        }
        mv.cells.push_back({x, y});
    }
    if (static_cast<int64_t>(mv.cells.size()) > budget) {
        pending_.push_back({"pruned_front_budget", game_->t(), "", static_cast<int64_t>(mv.cells.size()), budget, ""});
        mv.cells.resize(static_cast<size_t>(budget));
    }
    (void)s;
    mv.no_legal_move = mv.cells.empty();
    return mv;
}

json PaperSpreader::metrics() {
    json j = ledger_->totals().to_json();
    if (verbose_) j["segments"] = ledger_->rows_json();
    return j;
}

std::vector<Violation> PaperSpreader::violations() {
    std::vector<Violation> v;
    v.swap(pending_);
    return v;
}

}  // namespace contain
