#pragma once

// Command-line workflows. Kept in the library so tests drive the same code
// paths as the rsynth executable.

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rsynth/dsl.hpp"
#include "rsynth/hybrid.hpp"
#include "rsynth/io.hpp"
#include "rsynth/metrics.hpp"
#include "rsynth/solvers.hpp"

namespace rsynth::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kExhausted = 3 };

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads; results keep index
/// order regardless of scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn);

std::vector<SolveResult> solve_corpus(std::span<const Task> tasks, std::span<const std::string> strategies,
                                      const StrategyConfig& cfg, int workers);

io::ResultRecord make_record(const Task& task, const SolveResult& result);

/// Scores grouped by the named meta field: "cascade_length", "bfcc" or "none".
std::vector<TaskScore> score_corpus(std::span<const Task> tasks, std::span<const Cascade> programs,
                                    const std::string& group_by);

/// Entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsynth::cli
