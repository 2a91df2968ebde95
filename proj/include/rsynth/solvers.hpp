#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsynth/dsl.hpp"

namespace rsynth {

enum class SafetyMode { strict, two_phase, off };

struct StrategyConfig {
    int beam_width = 16;
    int max_candidates_per_step = 64;
    int lookahead = 2;  // 0 or 1: single-step greedy only; 2: ordered-pair lookahead
    int restarts = 8;
    std::uint64_t seed = 42;
    SafetyMode safety_mode = SafetyMode::two_phase;
    int permutation_cap = 120;
    int max_context = 2;
    // Enabler ops tried per two-op completion search.
    std::uint64_t enabler_cap = 20000;

    /// Throws std::invalid_argument on non-positive bounds.
    void validate() const;
};

struct SolveResult {
    bool success = false;
    Cascade program;
    double reward = 0.0;
    int complexity = 0;
    std::string strategy_id;
    std::uint64_t candidates_evaluated = 0;

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

namespace strategy_ids {
inline constexpr std::string_view two_phase_beam = "two_phase_beam";
inline constexpr std::string_view safety_greedy = "safety_greedy";
inline constexpr std::string_view greedy_residual = "greedy_residual";
inline constexpr std::string_view unique_perm = "unique_perm";
inline constexpr std::string_view multistart_reorder = "multistart_reorder";
inline constexpr std::string_view adaptive_beam = "adaptive_beam";
}  // namespace strategy_ids

class UnknownStrategy : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The six strategy ids in canonical ensemble order.
const std::vector<std::string>& all_strategy_ids();

/// "all" or a comma-separated list of ids.
std::vector<std::string> parse_strategy_list(std::string_view spec);

SolveResult solve_two_phase_beam(const Task& task, const StrategyConfig& cfg);
SolveResult solve_safety_greedy_lookahead(const Task& task, const StrategyConfig& cfg);
SolveResult solve_greedy_residual(const Task& task, const StrategyConfig& cfg);
SolveResult solve_unique_op_permutations(const Task& task, const StrategyConfig& cfg);
SolveResult solve_multistart_reorder(const Task& task, const StrategyConfig& cfg);

struct AdaptiveTrace {
    std::vector<int> widths;  // beam width used at each depth
    std::vector<bool> stagnant;
};
SolveResult solve_adaptive_beam(const Task& task, const StrategyConfig& cfg, AdaptiveTrace* trace = nullptr);

SolveResult solve_strategy(std::string_view id, const Task& task, const StrategyConfig& cfg);

/// Max reward; ties by fewest ops, then earliest strategy in the list.
SolveResult solve_ensemble(const Task& task, std::span<const std::string> strategies, const StrategyConfig& cfg);

/// Merges already-computed strategy results with the ensemble selection rule.
SolveResult select_best(std::span<const SolveResult> results);

/// Replays the cascade and checks that no op changes an example that already
/// equals its target at that point.
bool replay_is_safe(const Cascade& program, const Task& task);

/// Wraps a final cascade into a SolveResult for the task.
SolveResult make_result(const Task& task, Cascade program, std::string_view strategy_id, std::uint64_t evaluated);

}  // namespace rsynth
