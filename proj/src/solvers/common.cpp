#include <algorithm>
#include <numeric>
#include <sstream>

#include "internal.hpp"
#include "rsynth/metrics.hpp"

namespace rsynth {

void StrategyConfig::validate() const {
    if (beam_width < 1 || max_candidates_per_step < 1 || restarts < 1 || permutation_cap < 1) {
        throw std::invalid_argument("strategy bounds must be positive");
    }
    if (lookahead < 0 || lookahead > 2) throw std::invalid_argument("lookahead must be 0, 1 or 2");
    if (max_context < 0) throw std::invalid_argument("max_context must be non-negative");
}

const std::vector<std::string>& all_strategy_ids() {
    static const std::vector<std::string> ids{
        std::string(strategy_ids::two_phase_beam),  std::string(strategy_ids::safety_greedy),
        std::string(strategy_ids::greedy_residual), std::string(strategy_ids::unique_perm),
        std::string(strategy_ids::multistart_reorder), std::string(strategy_ids::adaptive_beam),
    };
    return ids;
}

std::vector<std::string> parse_strategy_list(std::string_view spec) {
    if (spec == "all") return all_strategy_ids();
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(spec)};
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto& known = all_strategy_ids();
        if (std::find(known.begin(), known.end(), item) == known.end()) {
            throw UnknownStrategy("unknown strategy id: " + item);
        }
        out.push_back(item);
    }
    if (out.empty()) throw UnknownStrategy("empty strategy list");
    return out;
}

SolveResult make_result(const Task& task, Cascade program, std::string_view strategy_id, std::uint64_t evaluated) {
    SolveResult r;
    const auto solved = count_solved(program, task);
    r.reward = static_cast<double>(solved) / static_cast<double>(task.examples.size());
    r.success = solved == task.examples.size();
    r.complexity = static_cast<int>(program.size());
    r.program = std::move(program);
    r.strategy_id = std::string(strategy_id);
    r.candidates_evaluated = evaluated;
    return r;
}

SolveResult solve_strategy(std::string_view id, const Task& task, const StrategyConfig& cfg) {
    if (id == strategy_ids::two_phase_beam) return solve_two_phase_beam(task, cfg);
    if (id == strategy_ids::safety_greedy) return solve_safety_greedy_lookahead(task, cfg);
    if (id == strategy_ids::greedy_residual) return solve_greedy_residual(task, cfg);
    if (id == strategy_ids::unique_perm) return solve_unique_op_permutations(task, cfg);
    if (id == strategy_ids::multistart_reorder) return solve_multistart_reorder(task, cfg);
    if (id == strategy_ids::adaptive_beam) return solve_adaptive_beam(task, cfg);
    throw UnknownStrategy("unknown strategy id: " + std::string(id));
}

SolveResult select_best(std::span<const SolveResult> results) {
    if (results.empty()) throw std::invalid_argument("ensemble needs at least one strategy");
    std::size_t best = 0;
    std::uint64_t evaluated = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        evaluated += results[i].candidates_evaluated;
        const auto& r = results[i];
        const auto& b = results[best];
        if (r.reward > b.reward || (r.reward == b.reward && r.complexity < b.complexity)) best = i;
    }
    SolveResult out = results[best];
    out.candidates_evaluated = evaluated;
    return out;
}

SolveResult solve_ensemble(const Task& task, std::span<const std::string> strategies, const StrategyConfig& cfg) {
    std::vector<SolveResult> results;
    results.reserve(strategies.size());
    for (const auto& id : strategies) results.push_back(solve_strategy(id, task, cfg));
    return select_best(results);
}

bool replay_is_safe(const Cascade& program, const Task& task) {
    std::vector<Text> cur;
    for (const auto& ex : task.examples) cur.push_back(ex.input);
    Text buffer;
    for (const auto& op : program) {
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const bool was_correct = cur[i] == task.examples[i].output;
            const bool changed = apply_op_into(op, cur[i], buffer);
            if (was_correct && changed) return false;
            if (changed) cur[i].swap(buffer);
        }
    }
    return true;
}

namespace detail {

std::uint64_t bounded_factorial(std::size_t n, std::uint64_t limit) {
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        f *= k;
        if (f > limit) return limit + 1;
    }
    return f;
}

SearchState best_ordering(const Cascade& ops, const Task& task, int cap, std::uint64_t& evaluated) {
    auto build = [&](const std::vector<std::size_t>& order) {
        SearchState s = initial_state(task);
        for (auto idx : order) s = advance(s, ops[idx], task);
        ++evaluated;
        return s;
    };
    std::vector<std::size_t> order(ops.size());
    std::iota(order.begin(), order.end(), 0);
    SearchState best = build(order);
    if (ops.size() < 2 || bounded_factorial(ops.size(), static_cast<std::uint64_t>(cap)) > static_cast<std::uint64_t>(cap)) {
        return best;
    }
    while (std::next_permutation(order.begin(), order.end())) {
        SearchState s = build(order);
        if (detail::better(s, best)) best = std::move(s);
        if (best.perfect()) break;
    }
    return best;
}

}  // namespace detail

}  // namespace rsynth
