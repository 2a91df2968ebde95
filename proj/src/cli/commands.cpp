#include "rsynth/cli.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "CLI11.hpp"

#include "rsynth/taskgen.hpp"
#include "rsynth/utf8.hpp"

namespace rsynth::cli {

template <typename T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn) {
    std::vector<std::optional<T>> slots(n);
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) slots[i] = fn(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(threads, n); ++w) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < n;) {
                    try {
                        slots[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<SolveResult> solve_corpus(std::span<const Task> tasks, std::span<const std::string> strategies,
                                      const StrategyConfig& cfg, int workers) {
    return parallel_map<SolveResult>(tasks.size(), workers,
                                     [&](std::size_t i) { return solve_ensemble(tasks[i], strategies, cfg); });
}

io::ResultRecord make_record(const Task& task, const SolveResult& result) {
    io::ResultRecord r;
    r.task_id = task.task_id;
    r.success = result.success;
    r.reward = result.reward;
    r.program = result.program;
    r.complexity = result.complexity;
    r.strategy_id = result.strategy_id;
    return r;
}

std::vector<TaskScore> score_corpus(std::span<const Task> tasks, std::span<const Cascade> programs,
                                    const std::string& group_by) {
    std::vector<TaskScore> scores;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto s = score_task(programs[i], tasks[i]);
        const auto& meta = tasks[i].meta;
        if (group_by == "cascade_length" && meta.cascade_length) {
            s.group = std::to_string(*meta.cascade_length);
        } else if (group_by == "bfcc" && meta.bfcc) {
            std::string key;
            for (const auto& r : *meta.bfcc) key += (key.empty() ? "" : "+") + r;
            s.group = key.empty() ? "independent" : key;
        }
        scores.push_back(std::move(s));
    }
    return scores;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& s, const char* what) {
    auto number = [&](std::string_view v) {
        int x = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || p != v.data() + v.size()) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
        return x;
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int v = number(s);
        return {v, v};
    }
    return {number(std::string_view(s).substr(0, dots)), number(std::string_view(s).substr(dots + 2))};
}

std::vector<double> parse_ratios(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || !(v > 0)) throw UsageError("bad ratio '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty ratio list");
    return out;
}

SafetyMode parse_safety(const std::string& s) {
    if (s == "strict") return SafetyMode::strict;
    if (s == "two_phase") return SafetyMode::two_phase;
    if (s == "off") return SafetyMode::off;
    throw UsageError("unknown safety mode '" + s + "'");
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw io::InputError(0, "cannot write " + path);
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

struct SolverFlags {
    std::string strategy;
    std::string ensemble;
    StrategyConfig cfg;
    std::string safety = "two_phase";
    int workers = 1;

    void attach(CLI::App* app) {
        auto* s = app->add_option("--strategy", strategy, "single strategy id");
        auto* e = app->add_option("--ensemble", ensemble, "'all' or comma-separated strategy ids");
        s->excludes(e);
        app->add_option("--beam-width", cfg.beam_width);
        app->add_option("--max-candidates", cfg.max_candidates_per_step);
        app->add_option("--lookahead", cfg.lookahead);
        app->add_option("--restarts", cfg.restarts);
        app->add_option("--seed", cfg.seed);
        app->add_option("--safety", safety, "strict, two_phase or off");
        app->add_option("--permutation-cap", cfg.permutation_cap);
        app->add_option("--max-context", cfg.max_context);
        app->add_option("--enabler-cap", cfg.enabler_cap);
        app->add_option("--workers", workers)->check(CLI::PositiveNumber);
    }

    std::vector<std::string> strategies() const {
        try {
            if (!strategy.empty()) return parse_strategy_list(strategy);
            return parse_strategy_list(ensemble.empty() ? "all" : ensemble);
        } catch (const UnknownStrategy& e) {
            throw UsageError(e.what());
        }
    }

    StrategyConfig config() {
        cfg.safety_mode = parse_safety(safety);
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

void print_report(std::ostream& out, const CorpusReport& report) { out << render_report_table(report); }

int cmd_gen(const GenSpec& spec, int count, const std::string& out_path, std::ostream& out) {
    spec.validate();
    std::vector<Task> tasks;
    for (int i = 0; i < count; ++i) tasks.push_back(generate_task(spec, static_cast<std::uint64_t>(i)));
    Output o(out_path, out);
    io::write_tasks(*o, tasks);
    return kOk;
}

int cmd_solve(const std::string& tasks_path, SolverFlags& flags, bool wrap, const std::string& out_path,
              const std::string& report_json, const std::string& group_by, std::ostream& out) {
    const auto strategies = flags.strategies();
    const auto cfg = flags.config();
    const auto tasks = io::read_tasks_file(tasks_path, wrap);
    const auto results = solve_corpus(tasks, strategies, cfg, flags.workers);
    {
        Output o(out_path, out);
        for (std::size_t i = 0; i < tasks.size(); ++i) *o << io::dump_line(io::result_to_json(make_record(tasks[i], results[i]))) << '\n';
    }
    std::vector<Cascade> programs;
    for (const auto& r : results) programs.push_back(r.program);
    if (tasks.empty()) return kOk;
    const auto report = aggregate(score_corpus(tasks, programs, group_by));
    if (!out_path.empty() && out_path != "-") print_report(out, report);
    if (!report_json.empty()) {
        Output o(report_json, out);
        *o << report_to_json(report).dump(2) << '\n';
    }
    return kOk;
}

double external_score(const std::string& cmd, const std::string& rule_text, const std::string& task_path) {
    char path[] = "/tmp/rsynth-rule-XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) throw std::runtime_error("cannot create a temporary file");
    close(fd);
    {
        std::ofstream tmp(path, std::ios::binary);
        tmp << rule_text << '\n';
    }
    FILE* pipe = popen((cmd + " " + shell_quote(task_path) + " < " + shell_quote(path)).c_str(), "r");
    if (!pipe) {
        std::remove(path);
        throw std::runtime_error("cannot start verifier " + cmd);
    }
    std::string text;
    char buf[256];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
    const int status = pclose(pipe);
    std::remove(path);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (status != 0 || used == 0) throw std::runtime_error("verifier " + cmd + " gave no score");
    return v;
}

int cmd_slr(const std::string& tasks_path, const slr::InductionOptions& opts, const std::string& verifier,
            int workers, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto tasks = io::read_slr_tasks_file(tasks_path);
    const auto results = parallel_map<slr::InductionResult>(tasks.size(), workers, [&](std::size_t i) {
        return slr::induce_rule(tasks[i], opts);
    });
    int solved = 0;
    {
        Output o(out_path, out);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto& r = results[i];
            io::Json candidates = io::Json::array();
            for (const auto& sr : r.ranked) {
                double score = sr.score;
                if (!verifier.empty()) {
                    // The hook scores one task at a time from its own file.
                    char path[] = "/tmp/rsynth-slrtask-XXXXXX";
                    const int fd = mkstemp(path);
                    if (fd < 0) throw std::runtime_error("cannot create a temporary file");
                    close(fd);
                    {
                        std::ofstream tmp(path, std::ios::binary);
                        tmp << io::dump_line(io::slr_task_to_json(tasks[i])) << '\n';
                    }
                    try {
                        score = external_score(verifier, slr::render_rule(sr.rule), path);
                    } catch (...) {
                        std::remove(path);
                        throw;
                    }
                    std::remove(path);
                }
                candidates.push_back({{"rule", slr::render_rule(sr.rule)},
                                      {"score", score},
                                      {"complexity", sr.rule.complexity()}});
            }
            io::Json rec;
            rec["task_id"] = tasks[i].task_id;
            const bool success = !candidates.empty() && candidates[0]["score"].get<double>() == 1.0;
            solved += success;
            rec["success"] = success;
            rec["score"] = candidates.empty() ? io::Json(0.0) : candidates[0]["score"];
            rec["rule"] = candidates.empty() ? io::Json(nullptr) : candidates[0]["rule"];
            rec["complexity"] = candidates.empty() ? io::Json(0) : candidates[0]["complexity"];
            rec["candidates"] = std::move(candidates);
            rec["single_class"] = r.single_class;
            rec["evaluated"] = r.evaluated;
            *o << io::dump_line(rec) << '\n';
            if (r.single_class) err << "warning: task " << tasks[i].task_id << " has a single label\n";
        }
    }
    if (!out_path.empty() && out_path != "-") {
        const double acc = tasks.empty() ? 0.0 : 100.0 * solved / static_cast<double>(tasks.size());
        out << "tasks " << tasks.size() << "  solved " << solved << "  accuracy " << format_fixed(acc, 1) << "\n";
    }
    return kOk;
}

struct SlrGenFlags {
    int count = 10;
    int trains = 6;
    int max_cars = 5;
    std::string complexity = "1..3";
    std::uint64_t seed = 0;
};

int cmd_gen_slr(const SlrGenFlags& f, const std::string& out_path, std::ostream& out) {
    const auto [cmin, cmax] = parse_range(f.complexity, "complexity range");
    if (cmin < 1 || cmin > cmax || f.max_cars < 1 || f.trains < 2 || f.count < 0) throw UsageError("bad SLR generation flags");
    Output o(out_path, out);
    for (int i = 0; i < f.count; ++i) {
        const std::uint64_t stream = derive_seed(f.seed, static_cast<std::uint64_t>(i));
        Rng rng(stream);
        for (int attempt = 0;; ++attempt) {
            const auto rule = slr_gen::sample_rule(rng, static_cast<int>(rng.between(cmin, cmax)), f.max_cars);
            try {
                auto task = generate_slr_instance(f.trains, f.max_cars, rule, stream + attempt);
                task.task_id = "slr-" + std::to_string(f.seed) + "-" + std::to_string(i);
                auto j = io::slr_task_to_json(task);
                j["gt_rule"] = slr::render_rule(rule);
                *o << io::dump_line(j) << '\n';
                break;
            } catch (const GenerationExhausted&) {
                if (attempt + 1 >= kMaxGenerationAttempts) throw;
            }
        }
    }
    return kOk;
}

struct HybridFlags {
    std::string fallback = "none";
    std::string mode = "direct_feedback";
    int attempts = 1;
    std::string input_price = "0.039";
    std::string output_price = "0.190";
    std::string construction_cost = "0";
};

int cmd_hybrid(const std::string& tasks_path, SolverFlags& sflags, const HybridFlags& h, bool wrap,
               const std::string& out_path, std::ostream& out) {
    const auto strategies = sflags.strategies();
    const auto cfg = sflags.config();
    PricingConfig pricing;
    std::unique_ptr<FallbackGenerator> fallback;
    FallbackMode mode;
    try {
        pricing.input_price = Money::parse(h.input_price);
        pricing.output_price = Money::parse(h.output_price);
        pricing.construction_cost = Money::parse(h.construction_cost);
        fallback = make_fallback(h.fallback, cfg.seed);
        mode = parse_fallback_mode(h.mode);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (h.attempts < 1) throw UsageError("--attempts must be at least 1");
    const auto tasks = io::read_tasks_file(tasks_path, wrap);
    const auto solved = solve_corpus(tasks, strategies, cfg, sflags.workers);
    // Fallback generators may hold state or spawn processes; run them in order.
    std::vector<RunLedger> ledgers;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        ledgers.push_back(hybrid_solve(tasks[i], solved[i], *fallback, h.attempts, mode, pricing));
    }
    Usage total;
    Money cost;
    int used = 0;
    {
        Output o(out_path, out);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto& l = ledgers[i];
            io::ResultRecord r;
            r.task_id = l.task_id;
            r.success = l.final_reward == 1.0;
            r.reward = l.final_reward;
            r.program = l.final_program;
            r.complexity = static_cast<int>(l.final_program.size());
            r.strategy_id = l.final_from_fallback ? "fallback:" + fallback->name() : l.solver_result.strategy_id;
            r.input_tokens = l.usage.input_tokens;
            r.output_tokens = l.usage.output_tokens;
            r.cost = l.cost.to_string();
            auto j = io::result_to_json(r);
            j["solver_reward"] = l.solver_result.reward;
            j["fallback_used"] = l.fallback_used;
            j["fallback_attempts"] = l.fallback_attempts;
            if (l.fallback_error) j["fallback_error"] = *l.fallback_error;
            *o << io::dump_line(j) << '\n';
            total.input_tokens += l.usage.input_tokens;
            total.output_tokens += l.usage.output_tokens;
            cost += l.cost;
            used += l.fallback_used;
        }
    }
    std::vector<Cascade> programs;
    for (const auto& l : ledgers) programs.push_back(l.final_program);
    if (!out_path.empty() && out_path != "-") {
        if (!tasks.empty()) print_report(out, aggregate(score_corpus(tasks, programs, "none")));
        out << "fallback tasks " << used << "\n"
            << "input tokens " << total.input_tokens << "\n"
            << "output tokens " << total.output_tokens << "\n"
            << "cost " << compute_cost(total, pricing, false).to_string() << "\n"
            << "cost with construction " << compute_cost(total, pricing, true).to_string() << "\n";
    }
    return kOk;
}

int cmd_compress(const std::string& tasks_path, SolverFlags& flags, const std::string& ratios_text, bool wrap,
                 const std::string& out_path, std::ostream& out) {
    const auto strategies = flags.strategies();
    const auto cfg = flags.config();
    const auto ratios = parse_ratios(ratios_text);
    const auto tasks = io::read_tasks_file(tasks_path, wrap);
    io::Json rows = io::Json::array();
    out << "ratio  accuracy  mean_length  mean_budget\n";
    for (double ratio : ratios) {
        std::vector<Task> budgeted = tasks;
        double budget_sum = 0;
        for (auto& t : budgeted) {
            t.max_programs = compression_budget(static_cast<int>(t.examples.size()), ratio);
            budget_sum += t.max_programs;
        }
        const auto results = solve_corpus(budgeted, strategies, cfg, flags.workers);
        double len_sum = 0;
        int solved = 0;
        for (const auto& r : results) {
            len_sum += static_cast<double>(r.program.size());
            solved += r.success;
        }
        const double n = std::max<std::size_t>(1, tasks.size());
        const double acc = 100.0 * solved / n;
        std::ostringstream ratio_text;
        ratio_text << ratio;
        out << ratio_text.str() << "  " << format_fixed(acc, 1) << "  " << format_fixed(len_sum / n, 2) << "  "
            << format_fixed(budget_sum / n, 2) << "\n";
        rows.push_back({{"ratio", ratio},
                        {"accuracy", std::round(acc * 10) / 10},
                        {"mean_length", len_sum / n},
                        {"mean_budget", budget_sum / n},
                        {"n_tasks", tasks.size()}});
    }
    if (!out_path.empty()) {
        Output o(out_path, out);
        *o << rows.dump(2) << '\n';
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rewrite-cascade synthesis and relational rule induction"};
    app.require_subcommand(1);

    GenSpec spec;
    std::string alphabet = "abc", cascade_len = "2..5", string_len = "3..8", gen_out;
    int count = 10, max_programs = 0;
    bool wrap = false;
    auto* gen = app.add_subcommand("gen", "generate PBE tasks with ground truth");
    gen->add_option("--alphabet", alphabet);
    gen->add_option("--cascade-len", cascade_len, "N or MIN..MAX");
    gen->add_option("--examples", spec.n_examples);
    gen->add_option("--string-len", string_len, "N or MIN..MAX");
    gen->add_option("--seed", spec.seed);
    gen->add_option("--count", count)->check(CLI::NonNegativeNumber);
    gen->add_option("--max-programs", max_programs, "budget written to each task (default: longest cascade)");
    gen->add_flag("--wrap-boundaries", wrap);
    gen->add_option("--out,-o", gen_out);

    SolverFlags solve_flags;
    std::string tasks_path, solve_out, report_json, group_by = "none";
    auto* solve = app.add_subcommand("solve", "run a strategy or ensemble over a task file");
    solve->add_option("tasks", tasks_path)->required();
    solve_flags.attach(solve);
    solve->add_flag("--wrap-boundaries", wrap);
    solve->add_option("--out,-o", solve_out);
    solve->add_option("--report-json", report_json);
    solve->add_option("--group-by", group_by)->check(CLI::IsMember({"none", "cascade_length", "bfcc"}));

    slr::InductionOptions slr_opts;
    std::string verifier, slr_out;
    int slr_workers = 1;
    auto* slr_cmd = app.add_subcommand("slr", "induce classification rules for train tasks");
    slr_cmd->add_option("tasks", tasks_path)->required();
    slr_cmd->add_option("--max-literals", slr_opts.max_literals)->check(CLI::PositiveNumber);
    slr_cmd->add_option("--top-k", slr_opts.top_k)->check(CLI::PositiveNumber);
    slr_cmd->add_option("--max-evaluations", slr_opts.max_evaluations);
    slr_cmd->add_option("--verifier-cmd", verifier, "scores rule text on stdin; task file path as argument");
    slr_cmd->add_option("--workers", slr_workers)->check(CLI::PositiveNumber);
    slr_cmd->add_option("--out,-o", slr_out);

    SlrGenFlags slr_gen_flags;
    std::string slr_gen_out;
    auto* gen_slr = app.add_subcommand("gen-slr", "generate train tasks from random planted rules");
    gen_slr->add_option("--count", slr_gen_flags.count);
    gen_slr->add_option("--trains", slr_gen_flags.trains);
    gen_slr->add_option("--max-cars", slr_gen_flags.max_cars);
    gen_slr->add_option("--complexity", slr_gen_flags.complexity, "N or MIN..MAX");
    gen_slr->add_option("--seed", slr_gen_flags.seed);
    gen_slr->add_option("--out,-o", slr_gen_out);

    SolverFlags hybrid_flags;
    HybridFlags hflags;
    std::string hybrid_out;
    auto* hybrid = app.add_subcommand("hybrid", "solver first, fallback generator for the rest");
    hybrid->add_option("tasks", tasks_path)->required();
    hybrid_flags.attach(hybrid);
    hybrid->add_option("--fallback", hflags.fallback, "oracle, noisy:<p>, cmd:<path> or none");
    hybrid->add_option("--mode", hflags.mode, "best_of_k or direct_feedback");
    hybrid->add_option("--attempts", hflags.attempts);
    hybrid->add_option("--input-price", hflags.input_price, "currency per million input tokens");
    hybrid->add_option("--output-price", hflags.output_price, "currency per million output tokens");
    hybrid->add_option("--construction-cost", hflags.construction_cost);
    hybrid->add_flag("--wrap-boundaries", wrap);
    hybrid->add_option("--out,-o", hybrid_out);

    std::uint64_t v = 0, max_len = 1, l = 0;
    auto* space = app.add_subcommand("space", "count cascades of up to MAX_LEN ops over V symbols");
    space->add_option("V", v)->required()->check(CLI::PositiveNumber);
    space->add_option("MAX_LEN", max_len)->check(CLI::PositiveNumber);
    auto* slr_space = app.add_subcommand("slr-space", "count rule candidates over L ground literals");
    slr_space->add_option("L", l)->required()->check(CLI::PositiveNumber);

    SolverFlags compress_flags;
    std::string ratios = "1,2,3,5", compress_out;
    auto* compress = app.add_subcommand("compress", "rerun the ensemble under shrinking budgets");
    compress->add_option("tasks", tasks_path)->required();
    compress_flags.attach(compress);
    compress->add_option("--ratios", ratios);
    compress->add_flag("--wrap-boundaries", wrap);
    compress->add_option("--out,-o", compress_out, "per-ratio rows as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            spec.alphabet = from_utf8(alphabet);
            std::tie(spec.cascade_min, spec.cascade_max) = parse_range(cascade_len, "cascade length");
            std::tie(spec.string_min, spec.string_max) = parse_range(string_len, "string length");
            spec.wrap_boundaries = wrap;
            if (max_programs > 0) spec.max_programs = max_programs;
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return cmd_gen(spec, count, gen_out, out);
        }
        if (*solve) return cmd_solve(tasks_path, solve_flags, wrap, solve_out, report_json, group_by, out);
        if (*slr_cmd) return cmd_slr(tasks_path, slr_opts, verifier, slr_workers, slr_out, out, err);
        if (*gen_slr) return cmd_gen_slr(slr_gen_flags, slr_gen_out, out);
        if (*hybrid) return cmd_hybrid(tasks_path, hybrid_flags, hflags, wrap, hybrid_out, out);
        if (*space) {
            out << cascade_search_space(v, max_len) << "\n";
            return kOk;
        }
        if (*slr_space) {
            out << slr::count_rule_candidates(l) << "\n";
            return kOk;
        }
        if (*compress) return cmd_compress(tasks_path, compress_flags, ratios, wrap, compress_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const GenerationExhausted& e) {
        err << "error: " << e.what() << "\n";
        return kExhausted;
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const slr::SlrInputError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const Utf8Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rsynth::cli
