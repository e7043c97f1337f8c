#include "contain/policies.hpp"

#include "contain/paper_spreader.hpp"
#include "contain/plane_spreader.hpp"
#include "contain/sieve.hpp"
#include "contain/simple_policies.hpp"
#include "contain/zoo.hpp"

namespace contain {

std::unique_ptr<SpreaderPolicy> make_spreader(const std::string& name, const GameConfig& cfg) {
    if (name == "paper") {
        if (cfg.kind == GraphKind::Plane) return std::make_unique<PlaneSpreader>();
        return std::make_unique<PaperSpreader>();
    }
    if (name == "greedy") return std::make_unique<GreedySpreader>(GreedySpreader::Prefer::Up);
    if (name == "greedy_outward") return std::make_unique<GreedySpreader>(GreedySpreader::Prefer::Outward);
    if (name == "random") return std::make_unique<RandomSpreader>();
    if (name == "frontier_outward") return std::make_unique<FrontierSpreader>(FrontierSpreader::Prefer::Outward);
    if (name == "frontier_up") return std::make_unique<FrontierSpreader>(FrontierSpreader::Prefer::Up);
    if (name == "frontier_random") return std::make_unique<FrontierSpreader>(FrontierSpreader::Prefer::Random);
    throw GameError("UnknownPolicy", "unknown spreader '" + name + "'");
}

const std::vector<std::string>& spreader_names() {
    static const std::vector<std::string> names{"paper",          "greedy",           "greedy_outward", "random",
                                                "frontier_outward", "frontier_up", "frontier_random"};
    return names;
}

std::unique_ptr<ContainerPolicy> make_container(const std::string& name, const GameConfig& cfg) {
    if (name == "sieve") return make_sieve_container(cfg);
    for (const auto& z : zoo_names())
        if (z == name) return make_zoo_container(name);
    throw GameError("UnknownPolicy", "unknown container '" + name + "'");
}

const std::vector<std::string>& container_names() {
    static const std::vector<std::string> names = [] {
        auto v = zoo_names();
        v.push_back("sieve");
        return v;
    }();
    return names;
}

void prepare_config(GameConfig& cfg, const std::string& container) {
    if (container != "sieve") return;
    cfg.mode = Mode::Accumulate;
    cfg.stall_window = cfg.horizon + 1;
}

RunResult run_named(GameConfig cfg, const std::string& container, const std::string& spreader,
                    const std::function<void(const std::string&)>& writer,
                    const std::function<void(const TurnRecord&)>& on_turn, const std::optional<LedgerFault>& fault) {
    prepare_config(cfg, container);
    cfg.validate();
    auto c = make_container(container, cfg);
    auto s = make_spreader(spreader, cfg);
    if (fault) {
        if (auto* p = dynamic_cast<PaperSpreader*>(s.get())) p->set_fault(*fault);
        else if (auto* pl = dynamic_cast<PlaneSpreader*>(s.get())) pl->set_fault(0, *fault);
        else throw GameError("InvalidConfig", "fault injection needs the paper Spreader");
    }
    TraceSink sink;
    if (writer) sink.write_to(writer);
    Engine e(cfg, *c, *s, &sink);
    RunResult out;
    while (e.state().status == Status::Running) {
        TurnRecord rec = e.step();
        out.violations += static_cast<int64_t>(rec.violations.size());
        if (on_turn) on_turn(rec);
        out.last_metrics = std::move(rec.metrics);
    }
    out.outcome = e.outcome();
    out.turns = e.state().t;
    out.hash = sink.hex_digest();
    return out;
}

}  // namespace contain
