#pragma once

// String-rewrite DSL: replace(pattern, replacement) ops composed into cascades.
//
// Strings are sequences of Unicode scalar values (std::u32string), so op length
// bounds count characters rather than bytes.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsynth {

using Text = std::u32string;
using TextView = std::u32string_view;

inline constexpr std::size_t kMaxPatternLength = 3;
inline constexpr std::size_t kMaxReplacementLength = 3;
inline constexpr char32_t kBoundary = U'#';

class DslError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One literal rewrite. Construction enforces |pattern| in [1,3],
/// |replacement| in [0,3] and pattern != replacement.
class ReplaceOp {
public:
    ReplaceOp(Text pattern, Text replacement);

    /// UTF-8 convenience constructor.
    static ReplaceOp from_utf8(std::string_view pattern, std::string_view replacement);

    const Text& pattern() const noexcept { return pattern_; }
    const Text& replacement() const noexcept { return replacement_; }

    friend bool operator==(const ReplaceOp&, const ReplaceOp&) = default;
    friend std::strong_ordering operator<=>(const ReplaceOp& a, const ReplaceOp& b) {
        if (auto c = a.pattern_.compare(b.pattern_); c != 0) {
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        auto c = a.replacement_.compare(b.replacement_);
        if (c == 0) return std::strong_ordering::equal;
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    Text pattern_;
    Text replacement_;
};

using Cascade = std::vector<ReplaceOp>;

/// Replace-all: left to right, non-overlapping, inserted text is not rescanned.
Text apply_op(const ReplaceOp& op, TextView s);

/// Same as apply_op but reports whether anything was replaced.
bool apply_op_into(const ReplaceOp& op, TextView s, Text& out);

Text apply_cascade(const Cascade& cascade, TextView s);

/// Number of non-overlapping occurrences found by the replace-all scan.
std::size_t count_occurrences(TextView haystack, TextView pattern);

inline std::size_t complexity(const Cascade& cascade) noexcept { return cascade.size(); }

/// (V + V^2 + V^3)(1 + V + V^2 + V^3). Throws std::overflow_error past 64 bits.
std::uint64_t count_programs(std::uint64_t alphabet_size);

/// Sum over k = 1..max_len of count_programs(V)^k, exact.
boost::multiprecision::cpp_int cascade_search_space(std::uint64_t alphabet_size, std::uint64_t max_len);

struct Example {
    Text input;
    Text output;

    friend bool operator==(const Example&, const Example&) = default;
};

struct TaskMeta {
    std::optional<Cascade> ground_truth;
    std::optional<int> cascade_length;
    std::optional<std::vector<std::string>> bfcc;

    friend bool operator==(const TaskMeta&, const TaskMeta&) = default;
};

struct Task {
    std::string task_id;
    std::vector<Example> examples;
    int max_programs = 1;
    Text alphabet;  // sorted, unique
    TaskMeta meta;

    friend bool operator==(const Task&, const Task&) = default;
};

/// Sorted set of every character appearing in the examples.
Text collect_alphabet(const std::vector<Example>& examples);

/// Builds a task, filling the alphabet from the examples. Throws DslError when
/// examples are empty, the budget is not positive, or a ground truth does not
/// reproduce the outputs.
Task make_task(std::string task_id, std::vector<Example> examples, int max_programs, TaskMeta meta = {});

/// Wraps s as #s#.
Text wrap_boundaries(TextView s);

std::string describe(const ReplaceOp& op);
std::string describe(const Cascade& cascade);

}  // namespace rsynth
