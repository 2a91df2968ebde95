#include "rsynth/dsl.hpp"

#include <algorithm>
#include <limits>

#include "rsynth/utf8.hpp"

namespace rsynth {

ReplaceOp::ReplaceOp(Text pattern, Text replacement)
    : pattern_(std::move(pattern)), replacement_(std::move(replacement)) {
    if (pattern_.empty() || pattern_.size() > kMaxPatternLength) {
        throw DslError("pattern length must be in [1,3], got " + std::to_string(pattern_.size()));
    }
    if (replacement_.size() > kMaxReplacementLength) {
        throw DslError("replacement length must be in [0,3], got " + std::to_string(replacement_.size()));
    }
    if (pattern_ == replacement_) {
        throw DslError("identity op replace(" + to_utf8(pattern_) + "," + to_utf8(replacement_) + ")");
    }
}

ReplaceOp ReplaceOp::from_utf8(std::string_view pattern, std::string_view replacement) {
    return ReplaceOp(rsynth::from_utf8(pattern), rsynth::from_utf8(replacement));
}

bool apply_op_into(const ReplaceOp& op, TextView s, Text& out) {
    const Text& pat = op.pattern();
    std::size_t pos = s.find(pat);
    if (pos == TextView::npos) {
        out.assign(s);
        return false;
    }
    out.clear();
    out.reserve(s.size() + op.replacement().size());
    std::size_t from = 0;
    while (pos != TextView::npos) {
        out.append(s.substr(from, pos - from));
        out.append(op.replacement());
        from = pos + pat.size();
        pos = s.find(pat, from);
    }
    out.append(s.substr(from));
    return true;
}

Text apply_op(const ReplaceOp& op, TextView s) {
    Text out;
    apply_op_into(op, s, out);
    return out;
}

Text apply_cascade(const Cascade& cascade, TextView s) {
    Text cur(s);
    Text next;
    for (const auto& op : cascade) {
        if (apply_op_into(op, cur, next)) cur.swap(next);
    }
    return cur;
}

std::size_t count_occurrences(TextView haystack, TextView pattern) {
    if (pattern.empty()) return 0;
    std::size_t n = 0;
    for (std::size_t pos = haystack.find(pattern); pos != TextView::npos;
         pos = haystack.find(pattern, pos + pattern.size())) {
        ++n;
    }
    return n;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw std::overflow_error("program count exceeds 64 bits");
    }
    return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a) {
        throw std::overflow_error("program count exceeds 64 bits");
    }
    return a + b;
}

}  // namespace

std::uint64_t count_programs(std::uint64_t v) {
    if (v == 0) throw DslError("alphabet size must be positive");
    const std::uint64_t v2 = checked_mul(v, v);
    const std::uint64_t v3 = checked_mul(v2, v);
    const std::uint64_t patterns = checked_add(checked_add(v, v2), v3);
    return checked_mul(patterns, checked_add(patterns, 1));
}

boost::multiprecision::cpp_int cascade_search_space(std::uint64_t v, std::uint64_t max_len) {
    if (max_len == 0) throw DslError("max_len must be positive");
    using boost::multiprecision::cpp_int;
    const cpp_int per_step = count_programs(v);
    cpp_int total = 0;
    cpp_int power = 1;
    for (std::uint64_t k = 1; k <= max_len; ++k) {
        power *= per_step;
        total += power;
    }
    return total;
}

Text collect_alphabet(const std::vector<Example>& examples) {
    Text chars;
    for (const auto& ex : examples) {
        chars.append(ex.input);
        chars.append(ex.output);
    }
    std::sort(chars.begin(), chars.end());
    chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
    return chars;
}

Task make_task(std::string task_id, std::vector<Example> examples, int max_programs, TaskMeta meta) {
    if (examples.empty()) throw DslError("task " + task_id + " has no examples");
    if (max_programs < 1) throw DslError("task " + task_id + " has non-positive max_programs");
    if (meta.ground_truth) {
        for (const auto& ex : examples) {
            if (apply_cascade(*meta.ground_truth, ex.input) != ex.output) {
                throw DslError("task " + task_id + ": ground truth does not reproduce example output");
            }
        }
    }
    Task task;
    task.task_id = std::move(task_id);
    task.alphabet = collect_alphabet(examples);
    task.examples = std::move(examples);
    task.max_programs = max_programs;
    task.meta = std::move(meta);
    return task;
}

Text wrap_boundaries(TextView s) {
    Text out;
    out.reserve(s.size() + 2);
    out.push_back(kBoundary);
    out.append(s);
    out.push_back(kBoundary);
    return out;
}

std::string describe(const ReplaceOp& op) {
    return "replace('" + to_utf8(op.pattern()) + "','" + to_utf8(op.replacement()) + "')";
}

std::string describe(const Cascade& cascade) {
    std::string out = "[";
    for (std::size_t i = 0; i < cascade.size(); ++i) {
        if (i) out += ", ";
        out += describe(cascade[i]);
    }
    return out + "]";
}

}  // namespace rsynth
