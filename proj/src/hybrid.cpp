#include "rsynth/hybrid.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include "rsynth/io.hpp"
#include "rsynth/metrics.hpp"
#include "rsynth/random.hpp"

namespace rsynth {

namespace {

constexpr __int128 pow10(int n) {
    __int128 v = 1;
    while (n-- > 0) v *= 10;
    return v;
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace

Money Money::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a nonnegative decimal amount: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    __int128 whole = 0;
    std::size_t i = 0;
    bool digits = false;
    for (; i < text.size() && text[i] != '.'; ++i) {
        if (text[i] < '0' || text[i] > '9') throw bad();
        whole = whole * 10 + (text[i] - '0');
        digits = true;
        if (whole > pow10(18)) throw bad();
    }
    __int128 frac = 0;
    int frac_digits = 0;
    if (i < text.size()) {
        for (++i; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9' || frac_digits == kScaleDigits) throw bad();
            frac = frac * 10 + (text[i] - '0');
            ++frac_digits;
            digits = true;
        }
    }
    if (!digits) throw bad();
    return Money(whole * pow10(kScaleDigits) + frac * pow10(kScaleDigits - frac_digits));
}

std::string Money::to_string() const {
    const bool negative = units_ < 0;
    const auto mag = static_cast<unsigned __int128>(negative ? -units_ : units_);
    const auto scale = static_cast<unsigned __int128>(pow10(kScaleDigits));
    std::string out = (negative ? "-" : "") + u128_to_string(mag / scale);
    std::string frac = u128_to_string(mag % scale);
    if (mag % scale != 0) {
        frac.insert(frac.begin(), kScaleDigits - frac.size(), '0');
        while (frac.back() == '0') frac.pop_back();
        out += "." + frac;
    }
    return out;
}

Money compute_cost(const Usage& usage, const PricingConfig& pricing, bool include_construction) {
    auto part = [](std::uint64_t tokens, Money price) {
        const __int128 numer = static_cast<__int128>(tokens) * price.units();
        return Money::from_units((numer + 500'000) / 1'000'000);
    };
    Money total = part(usage.input_tokens, pricing.input_price) + part(usage.output_tokens, pricing.output_price);
    if (include_construction) total += pricing.construction_cost;
    return total;
}

int compression_budget(int n_examples, double ratio) {
    if (n_examples < 1) throw std::invalid_argument("n_examples must be positive");
    if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be positive");
    // Ratios such as 1/3 arrive rounded; keep exact quotients from rounding up.
    const double q = static_cast<double>(n_examples) / ratio;
    const double c = std::ceil(q - 1e-9 * std::max(1.0, q));
    return std::max(2, static_cast<int>(c));
}

Usage mock_usage(const Task& task, std::size_t ops) {
    std::uint64_t chars = 0;
    for (const auto& ex : task.examples) chars += ex.input.size() + ex.output.size();
    return {4 * chars + 200, 20 * ops + 50};
}

Attempt OracleFallback::generate(const Task& task, int, const Feedback*) {
    Attempt a;
    if (task.meta.ground_truth) {
        a.candidates.push_back(*task.meta.ground_truth);
        a.usage = mock_usage(task, task.meta.ground_truth->size());
    } else {
        a.usage = mock_usage(task, 0);
    }
    return a;
}

NoisyOracleFallback::NoisyOracleFallback(double p, std::uint64_t seed) : p_(p), seed_(seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probability must lie in [0,1]");
}

std::string NoisyOracleFallback::name() const { return "noisy:" + std::to_string(p_); }

Attempt NoisyOracleFallback::generate(const Task& task, int attempt, const Feedback*) {
    Attempt a;
    if (!task.meta.ground_truth) {
        a.usage = mock_usage(task, 0);
        return a;
    }
    std::uint64_t h = seed_;
    for (unsigned char c : task.task_id) h = mix64(h ^ c);
    Rng rng(derive_seed(h, static_cast<std::uint64_t>(attempt)));
    Cascade out;
    for (const auto& op : *task.meta.ground_truth) {
        if (!rng.chance(p_) || task.alphabet.empty()) {
            out.push_back(op);
            continue;
        }
        Text repl;
        for (std::size_t i = 0; i < op.replacement().size(); ++i) repl.push_back(task.alphabet[rng.below(task.alphabet.size())]);
        out.push_back(repl == op.pattern() ? op : ReplaceOp(op.pattern(), repl));
    }
    a.usage = mock_usage(task, out.size());
    a.candidates.push_back(std::move(out));
    return a;
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

}  // namespace

Attempt CommandFallback::generate(const Task& task, int attempt, const Feedback* feedback) {
    io::Json payload;
    payload["task"] = io::task_to_json(task);
    payload["attempt"] = attempt;
    if (feedback) {
        payload["feedback"] = {{"failing", feedback->failing},
                               {"best", io::cascade_to_json(feedback->best)},
                               {"best_reward", feedback->best_reward}};
    } else {
        payload["feedback"] = nullptr;
    }

    char path[] = "/tmp/rsynth-fallback-XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) throw FallbackError("cannot create a temporary file");
    close(fd);
    {
        std::ofstream tmp(path, std::ios::binary);
        tmp << io::dump_line(payload) << '\n';
    }
    const std::string cmdline = command_ + " < " + shell_quote(path);
    FILE* pipe = popen(cmdline.c_str(), "r");
    if (!pipe) {
        std::remove(path);
        throw FallbackError("cannot start " + command_);
    }
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    const int status = pclose(pipe);
    std::remove(path);
    if (status != 0) throw FallbackError(command_ + " exited with status " + std::to_string(status));

    Attempt a;
    std::size_t start = 0;
    while (start < output.size()) {
        std::size_t end = output.find('\n', start);
        if (end == std::string::npos) end = output.size();
        const std::string line = output.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = io::Json::parse(line);
            if (j.is_object() && j.contains("input_tokens")) {
                a.usage.input_tokens = j.at("input_tokens").get<std::uint64_t>();
                a.usage.output_tokens = j.at("output_tokens").get<std::uint64_t>();
            } else {
                a.candidates.push_back(io::cascade_from_json(j));
            }
        } catch (const std::exception& e) {
            throw FallbackError("bad line from " + command_ + ": " + e.what());
        }
    }
    return a;
}

std::unique_ptr<FallbackGenerator> make_fallback(std::string_view spec, std::uint64_t seed) {
    if (spec == "oracle") return std::make_unique<OracleFallback>();
    if (spec == "none") return std::make_unique<NullFallback>();
    if (spec.starts_with("noisy:")) {
        const std::string p(spec.substr(6));
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size() || p.empty()) throw std::invalid_argument("bad noise probability in '" + std::string(spec) + "'");
        return std::make_unique<NoisyOracleFallback>(v, seed);
    }
    if (spec.starts_with("cmd:") && spec.size() > 4) return std::make_unique<CommandFallback>(std::string(spec.substr(4)));
    throw std::invalid_argument("unknown fallback '" + std::string(spec) + "' (oracle, noisy:<p>, cmd:<path>, none)");
}

FallbackMode parse_fallback_mode(std::string_view s) {
    if (s == "best_of_k" || s == "bok") return FallbackMode::best_of_k;
    if (s == "direct_feedback" || s == "df") return FallbackMode::direct_feedback;
    throw std::invalid_argument("unknown fallback mode '" + std::string(s) + "'");
}

RunLedger hybrid_solve(const Task& task, const SolveResult& solver_result, FallbackGenerator& fallback,
                       int max_attempts, FallbackMode mode, const PricingConfig& pricing) {
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
    RunLedger ledger;
    ledger.task_id = task.task_id;
    ledger.solver_result = solver_result;
    ledger.final_program = solver_result.program;
    ledger.final_reward = solver_result.reward;
    if (solver_result.reward == 1.0 || !fallback.enabled()) return ledger;

    Feedback feedback;
    feedback.best = solver_result.program;
    feedback.best_reward = solver_result.reward;
    auto refresh_failing = [&] {
        feedback.failing.clear();
        for (std::size_t i = 0; i < task.examples.size(); ++i) {
            if (apply_cascade(feedback.best, task.examples[i].input) != task.examples[i].output) feedback.failing.push_back(i);
        }
    };
    refresh_failing();

    for (int attempt = 0; attempt < max_attempts && ledger.final_reward < 1.0; ++attempt) {
        Attempt a;
        try {
            a = fallback.generate(task, attempt, mode == FallbackMode::direct_feedback ? &feedback : nullptr);
        } catch (const FallbackError& e) {
            ledger.fallback_error = e.what();
            break;
        }
        ++ledger.fallback_attempts;
        ledger.usage.input_tokens += a.usage.input_tokens;
        ledger.usage.output_tokens += a.usage.output_tokens;
        for (auto& candidate : a.candidates) {
            if (static_cast<int>(candidate.size()) > task.max_programs) continue;
            const double r = reward(candidate, task);
            const bool better = r > ledger.final_reward ||
                                (r == ledger.final_reward && candidate.size() < ledger.final_program.size());
            if (better) {
                ledger.final_reward = r;
                ledger.final_program = std::move(candidate);
                ledger.final_from_fallback = true;
            }
        }
        if (ledger.final_reward > feedback.best_reward) {
            feedback.best = ledger.final_program;
            feedback.best_reward = ledger.final_reward;
            refresh_failing();
        }
    }
    ledger.fallback_used = ledger.fallback_attempts > 0;
    ledger.cost = compute_cost(ledger.usage, pricing, false);
    return ledger;
}

RunLedger hybrid_solve(const Task& task, std::span<const std::string> strategies, const StrategyConfig& cfg,
                       FallbackGenerator& fallback, int max_attempts, FallbackMode mode, const PricingConfig& pricing) {
    return hybrid_solve(task, solve_ensemble(task, strategies, cfg), fallback, max_attempts, mode, pricing);
}

}  // namespace rsynth
