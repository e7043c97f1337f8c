#pragma once

#include <memory>

#include "contain/engine.hpp"
#include "contain/ledger.hpp"
#include "contain/strategy.hpp"

namespace contain {

// The segment strategy on the eighth or half plane, audited each turn by a Ledger.
// Plays the pruned front B'. Initial cells must share one row.
class PaperSpreader : public SpreaderPolicy {
public:
    std::string name() const override { return "paper"; }
    void start(const GameConfig& cfg, const GameState& s) override;
    SpreaderMove move(const GameConfig& cfg, const GameState& s, const std::vector<Cell>& new_deleted,
                      int64_t budget) override;
    json metrics() override;
    std::vector<Violation> violations() override;

    const HalfGame& game() const { return *game_; }
    const Ledger& ledger() const { return *ledger_; }
    void set_fault(LedgerFault f) { fault_ = f; }

private:
    std::unique_ptr<HalfGame> game_;
    std::unique_ptr<Ledger> ledger_;
    std::vector<Violation> pending_;
    int64_t row0_ = 0;
    bool verbose_ = false;
    LedgerFault fault_;
};

}  // namespace contain
