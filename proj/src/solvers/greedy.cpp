// Greedy constructions: safety-first greedy with ordered-pair lookahead, and
// greedy with multi-pass residual fixing.

#include <algorithm>

#include "internal.hpp"

namespace rsynth {

namespace {

// Best two-op continuation from `state`: every first op from the candidate
// list, followed by the exact finishing op or the second-step candidates
// extracted from the intermediate state.
std::optional<SearchState> best_pair(const SearchState& state, const Task& task, const std::vector<ReplaceOp>& first,
                                     const CandidateOptions& opts, std::uint64_t& evaluated) {
    std::optional<SearchState> best;
    for (const auto& op1 : first) {
        SearchState mid = advance(state, op1, task);
        ++evaluated;
        if (auto last = finishing_op(mid, task)) {
            ++evaluated;
            return advance(mid, *last, task);
        }
        for (const auto& op2 : step_candidates(mid, task, opts)) {
            SearchState s = advance(mid, op2, task);
            ++evaluated;
            if (!best || detail::better(s, *best)) best = std::move(s);
        }
    }
    return best;
}

}  // namespace

SolveResult solve_safety_greedy_lookahead(const Task& task, const StrategyConfig& cfg) {
    cfg.validate();
    const auto opts = detail::candidate_options(cfg, /*safe_only=*/true);
    std::uint64_t evaluated = 0;
    SearchState state = initial_state(task);
    while (!state.perfect() && detail::remaining_budget(state, task) > 0) {
        if (auto last = finishing_op(state, task)) {
            state = advance(state, *last, task);
            ++evaluated;
            break;
        }
        const auto cands = step_candidates(state, task, opts);
        std::optional<SearchState> best;
        for (const auto& op : cands) {
            SearchState s = advance(state, op, task);
            ++evaluated;
            if (!best || detail::better(s, *best)) best = std::move(s);
        }
        if (best && detail::improves(*best, state)) {
            state = std::move(*best);
            continue;
        }
        if (cfg.lookahead < 2 || detail::remaining_budget(state, task) < 2) break;
        auto pair = best_pair(state, task, cands, opts, evaluated);
        if (!pair || !detail::improves(*pair, state)) break;
        state = std::move(*pair);
    }
    return make_result(task, std::move(state.program), strategy_ids::safety_greedy, evaluated);
}

namespace {

// Fixes minus regressions, then residual distance reduction.
struct NetGain {
    int net = 0;
    long long distance_drop = 0;
    friend auto operator<=>(const NetGain&, const NetGain&) = default;
};

NetGain gain(const SearchState& from, const SearchState& to) {
    return NetGain{to.solved - from.solved, from.total_distance - to.total_distance};
}

std::optional<SearchState> best_by_gain(const SearchState& state, const Task& task, const std::vector<ReplaceOp>& ops,
                                        std::uint64_t& evaluated) {
    std::optional<SearchState> best;
    NetGain best_gain{};
    for (const auto& op : ops) {
        SearchState s = advance(state, op, task);
        ++evaluated;
        const NetGain g = gain(state, s);
        if (!best || g > best_gain) {
            best = std::move(s);
            best_gain = g;
        }
    }
    return best;
}

}  // namespace

SolveResult solve_greedy_residual(const Task& task, const StrategyConfig& cfg) {
    cfg.validate();
    const auto opts = detail::candidate_options(cfg, /*safe_only=*/false);
    std::uint64_t evaluated = 0;
    SearchState state = initial_state(task);

    auto accept_if_gain = [&](std::optional<SearchState>& cand, bool need_fix) {
        if (!cand) return false;
        const NetGain g = gain(state, *cand);
        const bool ok = need_fix ? g.net > 0 : (g.net > 0 || (g.net == 0 && g.distance_drop > 0));
        if (ok) state = std::move(*cand);
        return ok;
    };

    bool progress = true;
    while (progress && !state.perfect() && detail::remaining_budget(state, task) > 0) {
        progress = false;
        // Greedy pass over the whole residual.
        while (!state.perfect() && detail::remaining_budget(state, task) > 0) {
            if (auto last = finishing_op(state, task)) {
                state = advance(state, *last, task);
                ++evaluated;
                break;
            }
            auto best = best_by_gain(state, task, step_candidates(state, task, opts), evaluated);
            if (!accept_if_gain(best, false)) break;
        }
        if (state.perfect() || detail::remaining_budget(state, task) == 0) break;

        // Residual pass: re-extract from each remaining mismatched pair alone,
        // with one more character of context, and take the first net fix.
        for (std::size_t i = 0; i < state.current.size() && !progress; ++i) {
            if (state.is_solved(i)) continue;
            const StringPair pair{state.current[i], task.examples[i].output};
            auto ops = extract_candidates(std::span(&pair, 1), opts.max_context + 1).ops;
            auto exact = exact_fix_ops(pair.current, pair.target);
            ops.insert(ops.end(), exact.begin(), exact.end());
            auto best = best_by_gain(state, task, ops, evaluated);
            progress = accept_if_gain(best, true);
        }
    }
    return make_result(task, std::move(state.program), strategy_ids::greedy_residual, evaluated);
}

}  // namespace rsynth
