#pragma once

// Solver-first inference: run the strategy ensemble, and only when it falls
// short of a perfect program ask a fallback generator for candidates.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsynth/dsl.hpp"
#include "rsynth/solvers.hpp"

namespace rsynth {

/// Exact currency amount in units of 1e-12.
class Money {
public:
    static constexpr int kScaleDigits = 12;

    constexpr Money() = default;
    static constexpr Money from_units(__int128 units) { return Money(units); }
    /// Parses a nonnegative decimal such as "0.039" or "2". Throws
    /// std::invalid_argument on anything else or more than 12 decimals.
    static Money parse(std::string_view text);

    constexpr __int128 units() const noexcept { return units_; }
    /// Shortest exact decimal: "0.229", "2", "0".
    std::string to_string() const;

    friend constexpr Money operator+(Money a, Money b) { return Money(a.units_ + b.units_); }
    Money& operator+=(Money o) { units_ += o.units_; return *this; }
    friend constexpr bool operator==(Money, Money) = default;
    friend constexpr auto operator<=>(Money, Money) = default;

private:
    constexpr explicit Money(__int128 units) : units_(units) {}
    __int128 units_ = 0;
};

struct PricingConfig {
    Money input_price = Money::parse("0.039");   // per million tokens
    Money output_price = Money::parse("0.190");  // per million tokens
    Money construction_cost;                    // one-time
};

struct Usage {
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;
};

/// input_tokens * input_price / 1e6 + output_tokens * output_price / 1e6, plus
/// the construction cost when requested. Rounds half up at 1e-12.
Money compute_cost(const Usage& usage, const PricingConfig& pricing, bool include_construction);

/// max(2, ceil(n_examples / ratio)).
int compression_budget(int n_examples, double ratio);

class FallbackError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feedback handed to sequential attempts: failing example indices of the best
/// program so far, and that program.
struct Feedback {
    std::vector<std::size_t> failing;
    Cascade best;
    double best_reward = 0.0;
};

struct Attempt {
    std::vector<Cascade> candidates;
    Usage usage;
};

class FallbackGenerator {
public:
    virtual ~FallbackGenerator() = default;
    virtual std::string name() const = 0;
    /// False for generators that never produce candidates; the pipeline then
    /// skips fallback entirely.
    virtual bool enabled() const { return true; }
    /// `feedback` is null for independent attempts. Throws FallbackError on
    /// transport failure.
    virtual Attempt generate(const Task& task, int attempt, const Feedback* feedback) = 0;
};

/// Returns the task's ground truth, if it has one.
class OracleFallback : public FallbackGenerator {
public:
    std::string name() const override { return "oracle"; }
    Attempt generate(const Task& task, int attempt, const Feedback* feedback) override;
};

/// Ground truth with each op's replacement swapped, with probability p, for a
/// random same-length string over the task alphabet.
class NoisyOracleFallback : public FallbackGenerator {
public:
    NoisyOracleFallback(double p, std::uint64_t seed);
    std::string name() const override;
    Attempt generate(const Task& task, int attempt, const Feedback* feedback) override;

private:
    double p_;
    std::uint64_t seed_;
};

/// Runs a command per attempt. It reads a JSON object {task, attempt, feedback}
/// on standard input and prints one cascade per line, then a usage line
/// {"input_tokens":N,"output_tokens":M}.
class CommandFallback : public FallbackGenerator {
public:
    explicit CommandFallback(std::string command) : command_(std::move(command)) {}
    std::string name() const override { return "cmd:" + command_; }
    Attempt generate(const Task& task, int attempt, const Feedback* feedback) override;

private:
    std::string command_;
};

class NullFallback : public FallbackGenerator {
public:
    std::string name() const override { return "none"; }
    bool enabled() const override { return false; }
    Attempt generate(const Task&, int, const Feedback*) override { return {}; }
};

/// "oracle", "noisy:<p>", "cmd:<path>" or "none". Throws std::invalid_argument.
std::unique_ptr<FallbackGenerator> make_fallback(std::string_view spec, std::uint64_t seed = 42);

/// Usage reported for a candidate of `ops` ops on `task` by the mock oracles.
Usage mock_usage(const Task& task, std::size_t ops);

enum class FallbackMode { best_of_k, direct_feedback };

FallbackMode parse_fallback_mode(std::string_view s);

struct RunLedger {
    std::string task_id;
    SolveResult solver_result;
    bool fallback_used = false;
    int fallback_attempts = 0;
    Cascade final_program;
    double final_reward = 0.0;
    bool final_from_fallback = false;
    Usage usage;
    Money cost;  // without construction cost
    std::optional<std::string> fallback_error;
};

/// Both modes stop drawing once a candidate reaches reward 1.0; best_of_k
/// attempts get no feedback, direct_feedback attempts get the current best.
/// The final program is the best of solver and fallback candidates by reward,
/// then fewest ops, then solver first, then earliest attempt.
RunLedger hybrid_solve(const Task& task, const SolveResult& solver_result, FallbackGenerator& fallback,
                       int max_attempts, FallbackMode mode, const PricingConfig& pricing = {});

RunLedger hybrid_solve(const Task& task, std::span<const std::string> strategies, const StrategyConfig& cfg,
                       FallbackGenerator& fallback, int max_attempts, FallbackMode mode,
                       const PricingConfig& pricing = {});

}  // namespace rsynth
