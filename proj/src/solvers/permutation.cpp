// Order-search strategies: forced-op permutations with greedy extension and
// two-op sequences, and multi-start greedy construction with permutation
// reordering.

#include <algorithm>
#include <set>

#include "internal.hpp"
#include "rsynth/random.hpp"

namespace rsynth {

namespace {

// An op is forced when its uncontexted form is proposed by every mismatched pair.
Cascade forced_ops(const SearchState& state, const Task& task) {
    std::vector<StringPair> pairs;
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        if (!state.is_solved(i)) pairs.push_back({state.current[i], task.examples[i].output});
    }
    if (pairs.empty()) return {};
    std::optional<std::set<ReplaceOp>> common;
    for (const auto& p : pairs) {
        const auto mine = extract_candidates(std::span(&p, 1), 0).ops;
        std::set<ReplaceOp> proposed(mine.begin(), mine.end());
        if (!common) {
            common = std::move(proposed);
        } else {
            std::set<ReplaceOp> keep;
            std::set_intersection(common->begin(), common->end(), proposed.begin(), proposed.end(),
                                  std::inserter(keep, keep.end()));
            common = std::move(keep);
        }
        if (common->empty()) return {};
    }
    // Keep the corpus-wide candidate order.
    Cascade out;
    for (const auto& op : extract_candidates(pairs, 0).ops) {
        if (common->count(op)) out.push_back(op);
    }
    return out;
}

// Two-op sequences from `state`: candidate first ops with an exact finishing
// op, then the enabler search.
std::optional<SearchState> two_op_sequence(const SearchState& state, const Task& task, const StrategyConfig& cfg,
                                           const std::vector<ReplaceOp>& first, std::uint64_t& evaluated) {
    for (const auto& op : first) {
        SearchState mid = advance(state, op, task);
        ++evaluated;
        if (auto last = finishing_op(mid, task)) return advance(mid, *last, task);
    }
    auto found = enabler_pair_search(state, task, /*safe_only=*/false, cfg.enabler_cap);
    evaluated += found.evaluated;
    return std::move(found.state);
}

// Exact completion from the inputs: one finishing op, else a two-op sequence.
std::optional<SearchState> exact_from_root(const Task& task, const StrategyConfig& cfg, std::uint64_t& evaluated) {
    SearchState root = initial_state(task);
    if (auto last = finishing_op(root, task)) return advance(root, *last, task);
    if (task.max_programs < 2) return std::nullopt;
    auto found = enabler_pair_search(root, task, false, cfg.enabler_cap);
    evaluated += found.evaluated;
    return std::move(found.state);
}

}  // namespace

SolveResult solve_unique_op_permutations(const Task& task, const StrategyConfig& cfg) {
    cfg.validate();
    const auto id = strategy_ids::unique_perm;
    const auto opts = detail::candidate_options(cfg, false);
    std::uint64_t evaluated = 0;
    SearchState root = initial_state(task);
    if (root.perfect()) return make_result(task, {}, id, 0);

    Cascade forced = forced_ops(root, task);
    if (forced.size() > static_cast<std::size_t>(task.max_programs)) forced.erase(forced.begin() + task.max_programs, forced.end());
    SearchState state = detail::best_ordering(forced, task, cfg.permutation_cap, evaluated);
    if (detail::better(root, state)) state = root;

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
        if (detail::remaining_budget(state, task) < 2) break;
        auto seq = two_op_sequence(state, task, cfg, cands, evaluated);
        if (!seq || !detail::improves(*seq, state)) break;
        state = std::move(*seq);
    }

    if (!state.perfect()) {
        if (auto exact = exact_from_root(task, cfg, evaluated); exact && detail::better(*exact, state)) {
            state = std::move(*exact);
        }
    }
    return make_result(task, std::move(state.program), id, evaluated);
}

SolveResult solve_multistart_reorder(const Task& task, const StrategyConfig& cfg) {
    cfg.validate();
    const auto id = strategy_ids::multistart_reorder;
    const auto opts = detail::candidate_options(cfg, false);
    std::uint64_t evaluated = 0;
    SearchState global = initial_state(task);
    if (global.perfect()) return make_result(task, {}, id, 0);

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
        SearchState state = initial_state(task);
        // Construction.
        while (!state.perfect() && detail::remaining_budget(state, task) > 0) {
            if (auto last = finishing_op(state, task)) {
                state = advance(state, *last, task);
                ++evaluated;
                break;
            }
            auto cands = step_candidates(state, task, opts);
            if (restart > 0) rng.shuffle(std::span(cands));
            std::optional<SearchState> best;
            for (const auto& op : cands) {
                SearchState s = advance(state, op, task);
                ++evaluated;
                if (!best || detail::better(s, *best)) best = std::move(s);
            }
            if (!best || !detail::improves(*best, state)) break;
            state = std::move(*best);
        }
        // Ordering.
        if (!state.perfect()) {
            SearchState reordered = detail::best_ordering(state.program, task, cfg.permutation_cap, evaluated);
            if (detail::better(reordered, state)) state = std::move(reordered);
            if (!state.perfect() && detail::remaining_budget(state, task) > 0) {
                if (auto last = finishing_op(state, task)) state = advance(state, *last, task);
            }
        }
        if (detail::better(state, global)) global = std::move(state);
        if (global.perfect()) break;
    }
    return make_result(task, std::move(global.program), id, evaluated);
}

}  // namespace rsynth
