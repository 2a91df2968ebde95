#pragma once

#include <cstdint>

#include "rsynth/search.hpp"
#include "rsynth/solvers.hpp"

namespace rsynth::detail {

inline bool better(const SearchState& a, const SearchState& b) { return a.score() > b.score(); }

/// Progress ignoring cascade length: more solved, or as many solved and closer.
inline bool improves(const SearchState& next, const SearchState& prev) {
    if (next.solved != prev.solved) return next.solved > prev.solved;
    return next.total_distance < prev.total_distance;
}

inline std::size_t remaining_budget(const SearchState& s, const Task& task) {
    const auto used = s.program.size();
    const auto budget = static_cast<std::size_t>(task.max_programs);
    return used >= budget ? 0 : budget - used;
}

inline CandidateOptions candidate_options(const StrategyConfig& cfg, bool safe_only) {
    CandidateOptions opts;
    opts.max_context = static_cast<std::size_t>(cfg.max_context);
    opts.limit = static_cast<std::size_t>(cfg.max_candidates_per_step);
    opts.safe_only = safe_only;
    return opts;
}

/// Best ordering of `ops` applied from the task inputs. Orderings are tried in
/// lexicographic index order when n! <= cap; otherwise only the given order.
SearchState best_ordering(const Cascade& ops, const Task& task, int cap, std::uint64_t& evaluated);

/// n! saturating at `limit + 1`.
std::uint64_t bounded_factorial(std::size_t n, std::uint64_t limit);

}  // namespace rsynth::detail
