#include "rsynth/search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rsynth/metrics.hpp"

namespace rsynth {

SearchState initial_state(const Task& task) {
    SearchState s;
    s.current.reserve(task.examples.size());
    s.distance.reserve(task.examples.size());
    for (const auto& ex : task.examples) {
        s.current.push_back(ex.input);
        const auto d = levenshtein(ex.input, ex.output);
        s.distance.push_back(d);
        s.total_distance += static_cast<long long>(d);
        if (d == 0) ++s.solved;
    }
    return s;
}

SearchState advance(const SearchState& state, const ReplaceOp& op, const Task& task) {
    SearchState next = state;
    next.program.push_back(op);
    Text buffer;
    for (std::size_t i = 0; i < task.examples.size(); ++i) {
        if (!apply_op_into(op, state.current[i], buffer)) continue;
        const auto d = levenshtein(buffer, task.examples[i].output);
        next.total_distance += static_cast<long long>(d) - static_cast<long long>(state.distance[i]);
        next.solved += (d == 0 ? 1 : 0) - (state.distance[i] == 0 ? 1 : 0);
        next.distance[i] = d;
        next.current[i].swap(buffer);
    }
    return next;
}

bool is_safe(const SearchState& state, const ReplaceOp& op) {
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        if (state.distance[i] == 0 && state.current[i].find(op.pattern()) != Text::npos) return false;
    }
    return true;
}

std::optional<Text> solve_replacement(TextView current, TextView target, TextView pattern) {
    const std::size_t first = current.find(pattern);
    if (first == TextView::npos) return std::nullopt;
    const auto k = static_cast<long long>(count_occurrences(current, pattern));
    const long long growth = static_cast<long long>(target.size()) - static_cast<long long>(current.size());
    if (growth % k != 0) return std::nullopt;
    const long long repl_len = static_cast<long long>(pattern.size()) + growth / k;
    if (repl_len < 0 || repl_len > static_cast<long long>(kMaxReplacementLength)) return std::nullopt;
    if (first + static_cast<std::size_t>(repl_len) > target.size()) return std::nullopt;
    if (current.substr(0, first) != target.substr(0, first)) return std::nullopt;
    Text repl(target.substr(first, static_cast<std::size_t>(repl_len)));
    if (repl == pattern) return std::nullopt;
    Text check;
    apply_op_into(ReplaceOp(Text(pattern), repl), current, check);
    if (check != target) return std::nullopt;
    return repl;
}

namespace {

std::vector<Text> distinct_substrings(TextView s) {
    std::set<Text> subs;
    for (std::size_t len = 1; len <= kMaxPatternLength; ++len) {
        for (std::size_t i = 0; i + len <= s.size(); ++i) subs.emplace(s.substr(i, len));
    }
    return {subs.begin(), subs.end()};
}

}  // namespace

std::vector<ReplaceOp> exact_fix_ops(TextView current, TextView target) {
    std::vector<ReplaceOp> ops;
    if (current == target) return ops;
    for (const auto& pattern : distinct_substrings(current)) {
        if (auto repl = solve_replacement(current, target, pattern)) ops.emplace_back(pattern, std::move(*repl));
    }
    return ops;
}

std::optional<ReplaceOp> finishing_op(const SearchState& state, const Task& task) {
    std::size_t pivot = state.current.size();
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        if (state.distance[i] != 0) {
            pivot = i;
            break;
        }
    }
    if (pivot == state.current.size()) return std::nullopt;
    Text buffer;
    for (const auto& op : exact_fix_ops(state.current[pivot], task.examples[pivot].output)) {
        bool ok = true;
        for (std::size_t i = 0; i < state.current.size() && ok; ++i) {
            if (i == pivot) continue;
            apply_op_into(op, state.current[i], buffer);
            ok = buffer == task.examples[i].output;
        }
        if (ok) return op;
    }
    return std::nullopt;
}

std::vector<ReplaceOp> step_candidates(const SearchState& state, const Task& task, const CandidateOptions& opts) {
    std::vector<StringPair> pairs;
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        if (state.distance[i] != 0) pairs.push_back({state.current[i], task.examples[i].output});
    }
    if (pairs.empty()) return {};

    auto diff = extract_candidates(pairs, opts.max_context);
    std::map<ReplaceOp, int> counts = diff.origin;
    if (opts.include_exact) {
        for (const auto& p : pairs) {
            for (auto& op : exact_fix_ops(p.current, p.target)) ++counts[op];
        }
    }
    std::vector<std::pair<ReplaceOp, int>> ranked;
    ranked.reserve(counts.size());
    for (auto& [op, n] : counts) {
        if (opts.safe_only && !is_safe(state, op)) continue;
        ranked.emplace_back(op, n);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > opts.limit) ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(opts.limit), ranked.end());
    std::vector<ReplaceOp> out;
    out.reserve(ranked.size());
    for (auto& [op, n] : ranked) out.push_back(op);
    return out;
}

namespace {

// All strings of length 0..3 over `alphabet`, shortest first, then lexicographic.
std::vector<Text> replacement_space(TextView alphabet) {
    std::vector<Text> out{Text()};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= kMaxReplacementLength; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (char32_t c : alphabet) {
                Text s = out[i];
                s.push_back(c);
                out.push_back(std::move(s));
            }
        }
        begin = end;
    }
    return out;
}

}  // namespace

PairSearchResult enabler_pair_search(const SearchState& state, const Task& task, bool safe_only,
                                     std::uint64_t enabler_cap) {
    PairSearchResult result;
    std::set<Text> patterns;
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        if (state.distance[i] == 0) continue;
        for (auto& p : distinct_substrings(state.current[i])) patterns.insert(std::move(p));
    }
    if (patterns.empty()) return result;
    const auto replacements = replacement_space(task.alphabet);
    for (const auto& pattern : patterns) {
        for (const auto& repl : replacements) {
            if (repl == pattern) continue;
            if (result.evaluated >= enabler_cap) return result;
            ++result.evaluated;
            ReplaceOp enabler(pattern, repl);
            if (safe_only && !is_safe(state, enabler)) continue;
            SearchState mid = advance(state, enabler, task);
            if (mid.perfect()) {
                result.state = std::move(mid);
                return result;
            }
            if (auto last = finishing_op(mid, task)) {
                result.state = advance(mid, *last, task);
                return result;
            }
        }
    }
    return result;
}

}  // namespace rsynth
