#include "rsynth/io.hpp"

#include <fstream>

#include "rsynth/utf8.hpp"

namespace rsynth::io {

namespace {

Text text_field(const Json& j, const char* what) {
    if (!j.is_string()) throw InputError(0, std::string(what) + " must be a string");
    return from_utf8(j.get<std::string>());
}

template <typename Parse>
auto read_lines(std::istream& in, Parse parse) {
    std::vector<decltype(parse(Json{}))> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse(Json::parse(line)));
        } catch (const InputError& e) {
            throw InputError(number, e.what());
        } catch (const std::exception& e) {
            throw InputError(number, e.what());
        }
    }
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(0, "cannot open " + path);
    return in;
}

}  // namespace

Json cascade_to_json(const Cascade& cascade) {
    Json arr = Json::array();
    for (const auto& op : cascade) arr.push_back(Json::array({to_utf8(op.pattern()), to_utf8(op.replacement())}));
    return arr;
}

Cascade cascade_from_json(const Json& j) {
    if (!j.is_array()) throw InputError(0, "cascade must be an array of [pattern, replacement] pairs");
    Cascade out;
    for (const auto& op : j) {
        if (!op.is_array() || op.size() != 2) throw InputError(0, "each op must be a [pattern, replacement] pair");
        out.emplace_back(text_field(op[0], "pattern"), text_field(op[1], "replacement"));
    }
    return out;
}

Json task_to_json(const Task& task) {
    Json j;
    j["task_id"] = task.task_id;
    Json examples = Json::array();
    for (const auto& ex : task.examples) examples.push_back(Json::array({to_utf8(ex.input), to_utf8(ex.output)}));
    j["examples"] = std::move(examples);
    j["max_programs"] = task.max_programs;
    const auto& m = task.meta;
    if (m.ground_truth || m.cascade_length || m.bfcc) {
        Json meta = Json::object();
        if (m.ground_truth) meta["ground_truth"] = cascade_to_json(*m.ground_truth);
        if (m.cascade_length) meta["cascade_length"] = *m.cascade_length;
        if (m.bfcc) meta["bfcc"] = *m.bfcc;
        j["meta"] = std::move(meta);
    }
    return j;
}

Task task_from_json(const Json& j, bool wrap) {
    if (!j.is_object()) throw InputError(0, "task record must be an object");
    if (!j.contains("task_id") || !j["task_id"].is_string()) throw InputError(0, "missing string task_id");
    if (!j.contains("examples") || !j["examples"].is_array()) throw InputError(0, "missing examples array");
    if (!j.contains("max_programs") || !j["max_programs"].is_number_integer()) {
        throw InputError(0, "missing integer max_programs");
    }
    std::vector<Example> examples;
    for (const auto& pair : j["examples"]) {
        if (!pair.is_array() || pair.size() != 2) throw InputError(0, "each example must be an [input, output] pair");
        Text input = text_field(pair[0], "input");
        Text output = text_field(pair[1], "output");
        if (wrap) {
            input = wrap_boundaries(input);
            output = wrap_boundaries(output);
        }
        examples.push_back({std::move(input), std::move(output)});
    }
    TaskMeta meta;
    if (j.contains("meta") && !j["meta"].is_null()) {
        const auto& m = j["meta"];
        if (!m.is_object()) throw InputError(0, "meta must be an object");
        // A ground truth written for unwrapped strings does not describe wrapped ones.
        if (m.contains("ground_truth") && !wrap) meta.ground_truth = cascade_from_json(m["ground_truth"]);
        if (m.contains("cascade_length")) meta.cascade_length = m["cascade_length"].get<int>();
        if (m.contains("bfcc")) meta.bfcc = m["bfcc"].get<std::vector<std::string>>();
    }
    try {
        return make_task(j["task_id"].get<std::string>(), std::move(examples), j["max_programs"].get<int>(),
                         std::move(meta));
    } catch (const DslError& e) {
        throw InputError(0, e.what());
    }
}

std::vector<Task> read_tasks(std::istream& in, bool wrap) {
    return read_lines(in, [wrap](const Json& j) { return task_from_json(j, wrap); });
}

std::vector<Task> read_tasks_file(const std::string& path, bool wrap) {
    auto in = open_input(path);
    return read_tasks(in, wrap);
}

void write_tasks(std::ostream& out, const std::vector<Task>& tasks) {
    for (const auto& t : tasks) out << dump_line(task_to_json(t)) << '\n';
}

Json result_to_json(const ResultRecord& r) {
    Json j;
    j["task_id"] = r.task_id;
    j["success"] = r.success;
    j["reward"] = r.reward;
    j["program"] = cascade_to_json(r.program);
    j["complexity"] = r.complexity;
    j["strategy_id"] = r.strategy_id;
    j["tokens"] = Json{{"input", r.input_tokens}, {"output", r.output_tokens}};
    // Written from exact decimal text so the number never picks up binary noise.
    j["cost"] = Json::parse(r.cost);
    return j;
}

ResultRecord result_from_json(const Json& j) {
    ResultRecord r;
    r.task_id = j.at("task_id").get<std::string>();
    r.success = j.at("success").get<bool>();
    r.reward = j.at("reward").get<double>();
    r.program = cascade_from_json(j.at("program"));
    r.complexity = j.at("complexity").get<int>();
    r.strategy_id = j.at("strategy_id").get<std::string>();
    r.input_tokens = j.at("tokens").at("input").get<std::uint64_t>();
    r.output_tokens = j.at("tokens").at("output").get<std::uint64_t>();
    r.cost = j.at("cost").dump();
    return r;
}

std::vector<ResultRecord> read_results(std::istream& in) { return read_lines(in, result_from_json); }

slr::SlrTask slr_task_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("task_id") || !j["task_id"].is_string()) {
        throw InputError(0, "SLR record needs a string task_id");
    }
    if (!j.contains("examples") || !j["examples"].is_array()) throw InputError(0, "missing examples array");
    slr::SlrTask task;
    task.task_id = j["task_id"].get<std::string>();
    for (const auto& ex : j["examples"]) {
        if (!ex.is_array() || ex.size() != 2 || !ex[0].is_string() || !ex[1].is_string()) {
            throw InputError(0, "task " + task.task_id + ": each example must be [facts_text, label]");
        }
        try {
            task.examples.push_back({ex[0].get<std::string>(), slr::parse_label(ex[1].get<std::string>())});
        } catch (const slr::SlrInputError& e) {
            throw InputError(0, "task " + task.task_id + ": " + e.what());
        }
    }
    return task;
}

Json slr_task_to_json(const slr::SlrTask& task) {
    Json j;
    j["task_id"] = task.task_id;
    Json examples = Json::array();
    for (const auto& ex : task.examples) examples.push_back(Json::array({ex.facts_text, std::string(slr::label_name(ex.label))}));
    j["examples"] = std::move(examples);
    return j;
}

std::vector<slr::SlrTask> read_slr_tasks(std::istream& in) { return read_lines(in, slr_task_from_json); }

std::vector<slr::SlrTask> read_slr_tasks_file(const std::string& path) {
    auto in = open_input(path);
    return read_slr_tasks(in);
}

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

}  // namespace rsynth::io
