#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rsynth/cli.hpp"
#include "rsynth/io.hpp"

using namespace rsynth;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "rsynth");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Scratch {
    std::filesystem::path dir;
    Scratch() : dir(std::filesystem::temp_directory_path() / ("rsynth-cli-" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("space commands print exact counts") {
    CHECK(run({"space", "13", "1"}).out == "5662020\n");
    CHECK(run({"space", "13"}).out == "5662020\n");
    CHECK(run({"slr-space", "33"}).out == "46937\n");
    CHECK(run({"slr-space", "1"}).out == "1\n");
    CHECK(run({"space", "2", "2"}).out == std::to_string(210 + 210 * 210) + "\n");
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"space"}).code == cli::kUsage);
    CHECK(run({"gen", "--examples", "3"}).code == cli::kUsage);
    CHECK(run({"gen", "--cascade-len", "5..2"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("gen writes bounded, reproducible task files") {
    Scratch s;
    REQUIRE(run({"gen", "--count", "0", "-o", s("empty.jsonl")}).code == 0);
    CHECK(slurp(s("empty.jsonl")).empty());
    REQUIRE(run({"gen", "--count", "25", "--seed", "4", "--cascade-len", "2..5", "--examples", "5", "-o", s("a.jsonl")}).code == 0);
    REQUIRE(run({"gen", "--count", "25", "--seed", "4", "--cascade-len", "2..5", "--examples", "5", "-o", s("b.jsonl")}).code == 0);
    CHECK(slurp(s("a.jsonl")) == slurp(s("b.jsonl")));
    const auto tasks = io::read_tasks_file(s("a.jsonl"));
    REQUIRE(tasks.size() == 25);
    for (const auto& t : tasks) {
        CHECK(t.examples.size() == 5);
        CHECK(*t.meta.cascade_length >= 2);
        CHECK(*t.meta.cascade_length <= 5);
    }
    CHECK(run({"gen", "--alphabet", "a", "--string-len", "0", "--count", "1", "-o", s("x.jsonl")}).code == cli::kExhausted);
}

TEST_CASE("solve output is deterministic across worker counts and round-trips") {
    Scratch s;
    REQUIRE(run({"gen", "--count", "30", "--seed", "9", "--cascade-len", "1..3", "-o", s("t.jsonl")}).code == 0);
    REQUIRE(run({"solve", s("t.jsonl"), "--ensemble", "all", "-o", s("r1.jsonl")}).code == 0);
    REQUIRE(run({"solve", s("t.jsonl"), "--ensemble", "all", "--workers", "3", "-o", s("r2.jsonl")}).code == 0);
    const auto r1 = slurp(s("r1.jsonl"));
    CHECK(r1 == slurp(s("r2.jsonl")));

    std::istringstream in(r1);
    const auto records = io::read_results(in);
    REQUIRE(records.size() == 30);
    std::string again;
    for (const auto& r : records) {
        again += io::dump_line(io::result_to_json(r)) + "\n";
        CHECK(r.success == (r.reward == 1.0));
    }
    CHECK(again == r1);

    const auto tasks = io::read_tasks_file(s("t.jsonl"));
    for (std::size_t i = 0; i < tasks.size(); ++i) CHECK(records[i].task_id == tasks[i].task_id);
}

TEST_CASE("ensemble accuracy is at least a single strategy's") {
    Scratch s;
    REQUIRE(run({"gen", "--count", "30", "--seed", "12", "-o", s("t.jsonl")}).code == 0);
    REQUIRE(run({"solve", s("t.jsonl"), "--strategy", "two_phase_beam", "-o", s("one.jsonl"), "--report-json", s("one.json")}).code == 0);
    REQUIRE(run({"solve", s("t.jsonl"), "--ensemble", "all", "-o", s("all.jsonl"), "--report-json", s("all.json")}).code == 0);
    const auto one = nlohmann::json::parse(slurp(s("one.json")));
    const auto all = nlohmann::json::parse(slurp(s("all.json")));
    CHECK(all["accuracy"].get<double>() >= one["accuracy"].get<double>());
}

TEST_CASE("identity tasks score 100") {
    Scratch s;
    {
        std::ofstream f(s("id.jsonl"));
        for (int i = 0; i < 10; ++i) f << R"({"task_id":"id)" << i << R"(","examples":[["abc","abc"],["b","b"]],"max_programs":2})" << "\n";
    }
    REQUIRE(run({"solve", s("id.jsonl"), "-o", s("r.jsonl"), "--report-json", s("rep.json")}).code == 0);
    CHECK(nlohmann::json::parse(slurp(s("rep.json")))["accuracy"].get<double>() == 100.0);
}

TEST_CASE("malformed task files exit with code 2 and name the line") {
    Scratch s;
    {
        std::ofstream f(s("bad.jsonl"));
        f << R"({"task_id":"ok","examples":[["a","b"]],"max_programs":1})" << "\n" << "{not json\n";
    }
    const auto r = run({"solve", s("bad.jsonl")});
    CHECK(r.code == cli::kInput);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"solve", s("missing.jsonl")}).code == cli::kInput);
    {
        std::ofstream f(s("badop.jsonl"));
        f << R"({"task_id":"x","examples":[["a","b"]],"max_programs":1,"meta":{"ground_truth":[["abcd","x"]]}})" << "\n";
    }
    CHECK(run({"solve", s("badop.jsonl")}).code == cli::kInput);
}

TEST_CASE("wrap-boundaries wraps at ingestion") {
    Scratch s;
    {
        std::ofstream f(s("w.jsonl"));
        f << R"({"task_id":"w","examples":[["ab","eb"],["ba","ba"],["aa","ea"]],"max_programs":1})" << "\n";
    }
    REQUIRE(run({"solve", s("w.jsonl"), "--wrap-boundaries", "-o", s("r.jsonl")}).code == 0);
    std::ifstream in(s("r.jsonl"));
    const auto rec = io::read_results(in).at(0);
    CHECK(rec.success);
    REQUIRE(rec.program.size() == 1);
    CHECK(rec.program[0].pattern() == U"#a");
}

TEST_CASE("compress reports one row per ratio in order") {
    Scratch s;
    REQUIRE(run({"gen", "--count", "8", "--seed", "2", "--examples", "5", "-o", s("t.jsonl")}).code == 0);
    const auto r = run({"compress", s("t.jsonl"), "--ratios", "1", "-o", s("c.json")});
    REQUIRE(r.code == 0);
    const auto rows = nlohmann::json::parse(slurp(s("c.json")));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["mean_budget"].get<double>() == 5.0);
    REQUIRE(run({"compress", s("t.jsonl"), "--ratios", "5,1,2", "-o", s("c3.json")}).code == 0);
    const auto rows3 = nlohmann::json::parse(slurp(s("c3.json")));
    REQUIRE(rows3.size() == 3);
    CHECK(rows3[0]["ratio"].get<double>() == 5.0);
    CHECK(rows3[1]["ratio"].get<double>() == 1.0);
    for (const auto& row : rows3) CHECK(row["mean_length"].get<double>() <= row["mean_budget"].get<double>());
    CHECK(run({"compress", s("t.jsonl"), "--ratios", "0"}).code == cli::kUsage);
}

TEST_CASE("hybrid summaries") {
    Scratch s;
    REQUIRE(run({"gen", "--count", "20", "--seed", "6", "--cascade-len", "3..5", "--max-programs", "5", "-o", s("t.jsonl")}).code == 0);
    const auto oracle = run({"hybrid", s("t.jsonl"), "--fallback", "oracle", "-o", s("h.jsonl")});
    REQUIRE(oracle.code == 0);
    CHECK(oracle.out.find("all               20     100.0") != std::string::npos);
    std::uint64_t in_tokens = 0;
    std::istringstream lines(slurp(s("h.jsonl")));
    std::string line;
    while (std::getline(lines, line)) in_tokens += nlohmann::json::parse(line)["tokens"]["input"].get<std::uint64_t>();
    CHECK(oracle.out.find("input tokens " + std::to_string(in_tokens) + "\n") != std::string::npos);

    const auto none = run({"hybrid", s("t.jsonl"), "--fallback", "none", "-o", s("n.jsonl")});
    const auto solve = run({"solve", s("t.jsonl"), "-o", s("r.jsonl")});
    CHECK(none.out.substr(0, solve.out.size()) == solve.out);
    CHECK(run({"hybrid", s("t.jsonl"), "--fallback", "psychic"}).code == cli::kUsage);
}

TEST_CASE("slr commands") {
    Scratch s;
    REQUIRE(run({"gen-slr", "--count", "5", "--complexity", "1", "--seed", "3", "-o", s("slr.jsonl")}).code == 0);
    REQUIRE(run({"slr", s("slr.jsonl"), "-o", s("a.jsonl")}).code == 0);
    REQUIRE(run({"slr", s("slr.jsonl"), "-o", s("b.jsonl")}).code == 0);
    CHECK(slurp(s("a.jsonl")) == slurp(s("b.jsonl")));
    std::istringstream lines(slurp(s("a.jsonl")));
    std::string line;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["success"].get<bool>());
        CHECK(j["complexity"].get<int>() == 1);
    }
    {
        std::ofstream f(s("unsat.jsonl"));
        const char* facts = "has_car(t,a). car_num(a,1). car_color(a,red). has_car(t,b). car_num(b,2). car_len(b,long).";
        f << R"({"task_id":"u","examples":[[")" << facts << R"(","eastbound"],[")" << facts << R"(","westbound"]]})" << "\n";
    }
    REQUIRE(run({"slr", s("unsat.jsonl"), "--top-k", "3", "--max-literals", "2", "-o", s("u.jsonl")}).code == 0);
    const auto u = nlohmann::json::parse(slurp(s("u.jsonl")));
    CHECK_FALSE(u["success"].get<bool>());
    CHECK(u["candidates"].size() == 3);

    const auto script = s("verify.sh");
    {
        std::ofstream f(script);
        f << "#!/bin/sh\ncat > /dev/null\necho 0.25\n";
    }
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    REQUIRE(run({"slr", s("slr.jsonl"), "--verifier-cmd", script, "-o", s("v.jsonl")}).code == 0);
    CHECK(nlohmann::json::parse(slurp(s("v.jsonl")).substr(0, slurp(s("v.jsonl")).find('\n')))["score"].get<double>() == 0.25);

    {
        std::ofstream f(s("badslr.jsonl"));
        f << R"({"task_id":"oops","examples":[["has_car(t,a","eastbound"]]})" << "\n";
    }
    const auto bad = run({"slr", s("badslr.jsonl")});
    CHECK(bad.code == cli::kInput);
    CHECK(bad.err.find("oops") != std::string::npos);
}
