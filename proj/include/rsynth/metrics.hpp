#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rsynth/dsl.hpp"

namespace rsynth {

std::size_t levenshtein(TextView a, TextView b);

/// 1 when both are empty, else 1 - lev(a,b) / max(|a|,|b|).
double string_similarity(TextView a, TextView b);

/// Number of examples the cascade maps exactly onto their outputs.
std::size_t count_solved(const Cascade& cascade, const Task& task);

/// Fraction of examples solved; always a multiple of 1/n.
double reward(const Cascade& cascade, const Task& task);

double edit_similarity(const Cascade& cascade, const Task& task);

struct TaskScore {
    std::string task_id;
    double reward = 0.0;
    bool success = false;
    double edit_similarity = 0.0;
    std::optional<int> predicted_complexity;
    std::optional<int> gt_complexity;
    std::string group;  // breakdown key, empty when ungrouped
};

/// Scores a returned program against a task. Ground-truth complexity comes from
/// meta.cascade_length, falling back to the ground-truth cascade length.
TaskScore score_task(const Cascade& program, const Task& task);

struct DeltaSummary {
    std::optional<double> mean;
    int solved_considered = 0;
    int skipped_missing_gt = 0;
};

/// Mean (predicted - ground truth) complexity over solved tasks only.
DeltaSummary delta_complexity(std::span<const TaskScore> scores);

struct GroupStats {
    double accuracy = 0.0;     // percent
    double mean_reward = 0.0;  // [0,1]
    double edit_sim = 0.0;     // percent
    std::optional<double> delta_complexity;
    int n_tasks = 0;
};

struct CorpusReport {
    GroupStats overall;
    std::vector<std::pair<std::string, GroupStats>> breakdowns;  // ascending key order
    int delta_skipped = 0;
};

using GroupKeyFn = std::function<std::string(const TaskScore&)>;

/// Groups by TaskScore::group when no key function is given; empty keys are
/// left out of the breakdowns. Keys that parse as integers sort numerically.
CorpusReport aggregate(std::span<const TaskScore> scores, const GroupKeyFn& group_key = {});

/// Ordering used for breakdown keys.
bool group_key_less(const std::string& a, const std::string& b);

nlohmann::ordered_json report_to_json(const CorpusReport& report);
std::string render_report_table(const CorpusReport& report);

}  // namespace rsynth
