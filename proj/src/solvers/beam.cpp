// Beam searches: the two-phase safe/unrestricted beam and the adaptive-width
// beam with last-op diversity.

#include <algorithm>
#include <set>

#include "internal.hpp"

namespace rsynth {

namespace {

struct BeamOptions {
    bool safe_only = false;
    bool adaptive = false;
};

struct BeamOutcome {
    SearchState best;
    std::uint64_t evaluated = 0;
};

std::vector<SearchState> expand(const SearchState& entry, const Task& task, const StrategyConfig& cfg,
                                bool safe_only, std::uint64_t& evaluated) {
    std::vector<SearchState> children;
    if (auto last = detail::remaining_budget(entry, task) > 0 ? finishing_op(entry, task) : std::nullopt) {
        children.push_back(advance(entry, *last, task));
        ++evaluated;
        return children;
    }
    for (const auto& op : step_candidates(entry, task, detail::candidate_options(cfg, safe_only))) {
        children.push_back(advance(entry, op, task));
        ++evaluated;
    }
    return children;
}

BeamOutcome run_beam(const Task& task, const StrategyConfig& cfg, BeamOptions opts, AdaptiveTrace* trace) {
    BeamOutcome out{initial_state(task), 0};
    if (out.best.perfect()) return out;

    const std::size_t base_width = static_cast<std::size_t>(cfg.beam_width);
    std::size_t width = base_width;
    std::vector<SearchState> beam{out.best};
    for (int depth = 1; depth <= task.max_programs; ++depth) {
        std::vector<SearchState> children;
        for (const auto& entry : beam) {
            if (entry.perfect()) continue;
            auto more = expand(entry, task, cfg, opts.safe_only, out.evaluated);
            std::move(more.begin(), more.end(), std::back_inserter(children));
        }
        if (children.empty()) break;
        std::stable_sort(children.begin(), children.end(), detail::better);

        std::vector<SearchState> next;
        std::set<std::vector<Text>> seen_states;
        std::set<ReplaceOp> seen_last;
        for (auto& child : children) {
            if (next.size() >= width) break;
            if (!seen_states.insert(child.current).second) continue;
            if (opts.adaptive && !seen_last.insert(child.program.back()).second) continue;
            next.push_back(std::move(child));
        }

        const bool progressed = detail::improves(next.front(), out.best);
        if (trace) {
            trace->widths.push_back(static_cast<int>(width));
            trace->stagnant.push_back(!progressed);
        }
        if (detail::better(next.front(), out.best)) out.best = next.front();
        if (out.best.perfect()) break;
        if (opts.adaptive && !progressed) width = std::min(width * 2, 4 * base_width);
        beam = std::move(next);
    }
    return out;
}

}  // namespace

SolveResult solve_two_phase_beam(const Task& task, const StrategyConfig& cfg) {
    cfg.validate();
    const auto id = strategy_ids::two_phase_beam;
    if (cfg.safety_mode == SafetyMode::off) {
        auto r = run_beam(task, cfg, {false, false}, nullptr);
        return make_result(task, std::move(r.best.program), id, r.evaluated);
    }
    auto safe = run_beam(task, cfg, {true, false}, nullptr);
    if (safe.best.perfect() || cfg.safety_mode == SafetyMode::strict) {
        return make_result(task, std::move(safe.best.program), id, safe.evaluated);
    }
    auto open = run_beam(task, cfg, {false, false}, nullptr);
    const std::uint64_t evaluated = safe.evaluated + open.evaluated;
    auto& winner = detail::better(open.best, safe.best) ? open.best : safe.best;
    return make_result(task, std::move(winner.program), id, evaluated);
}

SolveResult solve_adaptive_beam(const Task& task, const StrategyConfig& cfg, AdaptiveTrace* trace) {
    cfg.validate();
    auto r = run_beam(task, cfg, {false, true}, trace);
    return make_result(task, std::move(r.best.program), strategy_ids::adaptive_beam, r.evaluated);
}

}  // namespace rsynth
