#pragma once

// Shared machinery for the cascade solvers: per-example search states, the
// lexicographic score, candidate generation and exact last-op inference.

#include <cstdint>
#include <optional>
#include <vector>

#include "rsynth/diff.hpp"
#include "rsynth/dsl.hpp"

namespace rsynth {

/// (solved count, -total residual edit distance, -cascade length), compared
/// lexicographically.
struct Score {
    int solved = 0;
    long long neg_distance = 0;
    int neg_length = 0;

    friend auto operator<=>(const Score&, const Score&) = default;
};

struct SearchState {
    Cascade program;
    std::vector<Text> current;           // one per example
    std::vector<std::size_t> distance;   // levenshtein(current[i], output[i])
    int solved = 0;
    long long total_distance = 0;

    Score score() const {
        return Score{solved, -total_distance, -static_cast<int>(program.size())};
    }
    bool perfect() const { return total_distance == 0; }
    bool is_solved(std::size_t i) const { return distance[i] == 0; }
};

SearchState initial_state(const Task& task);

/// Appends `op` and recomputes only the examples it changed.
SearchState advance(const SearchState& state, const ReplaceOp& op, const Task& task);

/// True when `op` leaves every already-solved example untouched.
bool is_safe(const SearchState& state, const ReplaceOp& op);

/// Replacement Q such that replace-all(current, pattern, Q) == target.
std::optional<Text> solve_replacement(TextView current, TextView target, TextView pattern);

/// Every op that maps this single pair exactly (patterns drawn from `current`).
std::vector<ReplaceOp> exact_fix_ops(TextView current, TextView target);

/// First op, in pattern order, that maps every example of the state onto its
/// target. A finishing op never disturbs solved examples.
std::optional<ReplaceOp> finishing_op(const SearchState& state, const Task& task);

struct CandidateOptions {
    std::size_t max_context = 2;
    std::size_t limit = 64;
    bool safe_only = false;       // drop ops whose pattern occurs in a solved example
    bool include_exact = true;    // add per-pair exact-fix ops
};

/// Diff-derived candidates over the unsolved pairs merged with per-pair exact
/// fixes, ranked by how many pairs propose them.
std::vector<ReplaceOp> step_candidates(const SearchState& state, const Task& task, const CandidateOptions& opts);

struct PairSearchResult {
    std::optional<SearchState> state;
    std::uint64_t evaluated = 0;
};

/// Two-op completion: enumerates enabler ops (patterns taken from unsolved
/// strings, replacements over the task alphabet) and infers the finishing op
/// exactly. Stops after `enabler_cap` enablers.
PairSearchResult enabler_pair_search(const SearchState& state, const Task& task, bool safe_only,
                                     std::uint64_t enabler_cap);

}  // namespace rsynth
