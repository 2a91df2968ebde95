#include "rsynth/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rsynth {

std::size_t levenshtein(TextView a, TextView b) {
    if (a.size() < b.size()) std::swap(a, b);
    if (b.empty()) return a.size();
    // Strip the common prefix and suffix; they never contribute.
    while (!b.empty() && a.front() == b.front()) {
        a.remove_prefix(1);
        b.remove_prefix(1);
    }
    while (!b.empty() && a.back() == b.back()) {
        a.remove_suffix(1);
        b.remove_suffix(1);
    }
    if (b.empty()) return a.size();

    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[b.size()];
}

double string_similarity(TextView a, TextView b) {
    if (a.empty() && b.empty()) return 1.0;
    const auto longest = std::max(a.size(), b.size());
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

std::size_t count_solved(const Cascade& cascade, const Task& task) {
    std::size_t solved = 0;
    for (const auto& ex : task.examples) {
        if (apply_cascade(cascade, ex.input) == ex.output) ++solved;
    }
    return solved;
}

double reward(const Cascade& cascade, const Task& task) {
    if (task.examples.empty()) return 0.0;
    return static_cast<double>(count_solved(cascade, task)) / static_cast<double>(task.examples.size());
}

double edit_similarity(const Cascade& cascade, const Task& task) {
    if (task.examples.empty()) return 0.0;
    double total = 0.0;
    for (const auto& ex : task.examples) {
        total += string_similarity(apply_cascade(cascade, ex.input), ex.output);
    }
    return total / static_cast<double>(task.examples.size());
}

TaskScore score_task(const Cascade& program, const Task& task) {
    TaskScore s;
    s.task_id = task.task_id;
    const auto solved = count_solved(program, task);
    s.reward = static_cast<double>(solved) / static_cast<double>(task.examples.size());
    s.success = solved == task.examples.size();
    s.edit_similarity = s.success ? 1.0 : edit_similarity(program, task);
    s.predicted_complexity = static_cast<int>(program.size());
    if (task.meta.cascade_length) {
        s.gt_complexity = *task.meta.cascade_length;
    } else if (task.meta.ground_truth) {
        s.gt_complexity = static_cast<int>(task.meta.ground_truth->size());
    }
    return s;
}

DeltaSummary delta_complexity(std::span<const TaskScore> scores) {
    DeltaSummary out;
    double total = 0.0;
    for (const auto& s : scores) {
        if (!s.success) continue;
        if (!s.gt_complexity || !s.predicted_complexity) {
            ++out.skipped_missing_gt;
            continue;
        }
        total += *s.predicted_complexity - *s.gt_complexity;
        ++out.solved_considered;
    }
    if (out.solved_considered > 0) out.mean = total / out.solved_considered;
    return out;
}

namespace {

std::optional<long long> as_integer(const std::string& s) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
    return v;
}

GroupStats summarize(std::span<const TaskScore> scores, int* delta_skipped) {
    GroupStats g;
    g.n_tasks = static_cast<int>(scores.size());
    if (scores.empty()) return g;
    // Accumulate in a canonical order so the sums do not depend on input order.
    std::vector<double> rewards, sims;
    int successes = 0;
    for (const auto& s : scores) {
        rewards.push_back(s.reward);
        sims.push_back(s.edit_similarity);
        successes += s.success ? 1 : 0;
    }
    std::sort(rewards.begin(), rewards.end());
    std::sort(sims.begin(), sims.end());
    double rsum = 0.0, ssum = 0.0;
    for (double r : rewards) rsum += r;
    for (double x : sims) ssum += x;
    const double n = static_cast<double>(scores.size());
    g.accuracy = 100.0 * successes / n;
    g.mean_reward = rsum / n;
    g.edit_sim = 100.0 * ssum / n;
    std::vector<TaskScore> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end(), [](const TaskScore& a, const TaskScore& b) {
        return std::tie(a.predicted_complexity, a.gt_complexity) < std::tie(b.predicted_complexity, b.gt_complexity);
    });
    const auto delta = delta_complexity(sorted);
    g.delta_complexity = delta.mean;
    if (delta_skipped) *delta_skipped = delta.skipped_missing_gt;
    return g;
}

double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

}  // namespace

bool group_key_less(const std::string& a, const std::string& b) {
    const auto ia = as_integer(a);
    const auto ib = as_integer(b);
    if (ia && ib) return *ia < *ib;
    if (ia != ib && (ia || ib)) return ia.has_value();  // integers before text
    return a < b;
}

CorpusReport aggregate(std::span<const TaskScore> scores, const GroupKeyFn& group_key) {
    if (scores.empty()) throw std::invalid_argument("aggregate needs at least one score");
    CorpusReport report;
    report.overall = summarize(scores, &report.delta_skipped);

    std::map<std::string, std::vector<TaskScore>, decltype(&group_key_less)> groups(&group_key_less);
    for (const auto& s : scores) {
        std::string key = group_key ? group_key(s) : s.group;
        if (!key.empty()) groups[key].push_back(s);
    }
    for (auto& [key, members] : groups) {
        report.breakdowns.emplace_back(key, summarize(members, nullptr));
    }
    return report;
}

namespace {

nlohmann::ordered_json stats_to_json(const GroupStats& g) {
    nlohmann::ordered_json j;
    j["accuracy"] = round_to(g.accuracy, 1);
    j["mean_reward"] = round_to(g.mean_reward, 4);
    j["edit_sim"] = round_to(g.edit_sim, 1);
    j["delta_complexity"] = g.delta_complexity ? nlohmann::ordered_json(round_to(*g.delta_complexity, 4))
                                               : nlohmann::ordered_json(nullptr);
    j["n_tasks"] = g.n_tasks;
    return j;
}

std::string fixed(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

}  // namespace

nlohmann::ordered_json report_to_json(const CorpusReport& report) {
    auto j = stats_to_json(report.overall);
    auto groups = nlohmann::ordered_json::object();
    for (const auto& [key, stats] : report.breakdowns) groups[key] = stats_to_json(stats);
    j["breakdowns"] = groups;
    return j;
}

std::string render_report_table(const CorpusReport& report) {
    std::ostringstream os;
    auto row = [&os](const std::string& label, const GroupStats& g) {
        os << std::left << std::setw(12) << label << std::right << std::setw(8) << g.n_tasks << std::setw(10)
           << fixed(g.accuracy, 1) << std::setw(13) << fixed(g.mean_reward, 4) << std::setw(10) << fixed(g.edit_sim, 1)
           << std::setw(10) << (g.delta_complexity ? fixed(*g.delta_complexity, 2) : std::string("-")) << '\n';
    };
    os << std::left << std::setw(12) << "group" << std::right << std::setw(8) << "n_tasks" << std::setw(10)
       << "accuracy" << std::setw(13) << "mean_reward" << std::setw(10) << "edit_sim" << std::setw(10) << "delta"
       << '\n';
    row("all", report.overall);
    for (const auto& [key, stats] : report.breakdowns) row(key, stats);
    return os.str();
}

}  // namespace rsynth
