#pragma once

// JSONL formats: task files, result files, SLR task files.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rsynth/dsl.hpp"
#include "rsynth/slr.hpp"

namespace rsynth::io {

using Json = nlohmann::ordered_json;

/// Malformed input; `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
public:
    InputError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// [[pattern, replacement], ...]
Json cascade_to_json(const Cascade& cascade);
Cascade cascade_from_json(const Json& j);

Json task_to_json(const Task& task);
Task task_from_json(const Json& j, bool wrap = false);

/// One task per nonblank line. With `wrap`, inputs and outputs become #s#.
std::vector<Task> read_tasks(std::istream& in, bool wrap = false);
std::vector<Task> read_tasks_file(const std::string& path, bool wrap = false);
void write_tasks(std::ostream& out, const std::vector<Task>& tasks);

struct ResultRecord {
    std::string task_id;
    bool success = false;
    double reward = 0.0;
    Cascade program;
    int complexity = 0;
    std::string strategy_id;
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;
    std::string cost = "0";  // exact decimal text

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

Json result_to_json(const ResultRecord& r);
ResultRecord result_from_json(const Json& j);
std::vector<ResultRecord> read_results(std::istream& in);

slr::SlrTask slr_task_from_json(const Json& j);
Json slr_task_to_json(const slr::SlrTask& task);
std::vector<slr::SlrTask> read_slr_tasks(std::istream& in);
std::vector<slr::SlrTask> read_slr_tasks_file(const std::string& path);

/// Compact single-line dump with non-ASCII characters kept as UTF-8.
std::string dump_line(const Json& j);

}  // namespace rsynth::io
