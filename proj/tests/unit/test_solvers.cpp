#include "doctest.h"
#include "helpers.hpp"
#include "rsynth/metrics.hpp"
#include "rsynth/search.hpp"
#include "rsynth/solvers.hpp"
#include "rsynth/taskgen.hpp"

using namespace rsynth;
using testing::T;
using testing::op;

namespace {

std::vector<Task> small_corpus(int n, std::uint64_t seed) {
    GenSpec spec;
    spec.cascade_min = 1;
    spec.cascade_max = 3;
    spec.seed = seed;
    std::vector<Task> out;
    for (int i = 0; i < n; ++i) out.push_back(generate_task(spec, static_cast<std::uint64_t>(i)));
    return out;
}

}  // namespace

TEST_CASE("every strategy solves a single-substitution task") {
    const auto t = testing::task({{"cat", "cut"}, {"bat", "but"}, {"tab", "tub"}, {"xyz", "xyz"}}, 3);
    for (const auto& id : all_strategy_ids()) {
        CAPTURE(id);
        const auto r = solve_strategy(id, t, StrategyConfig{});
        CHECK(r.success);
        CHECK(r.reward == 1.0);
        CHECK(r.strategy_id == id);
        CHECK(r.complexity == static_cast<int>(r.program.size()));
        CHECK(r.program.size() == 1);
    }
}

TEST_CASE("identity tasks are solved by the empty program") {
    const auto t = testing::task({{"abc", "abc"}, {"b", "b"}}, 2);
    const auto r = solve_ensemble(t, all_strategy_ids(), StrategyConfig{});
    CHECK(r.success);
    CHECK(r.program.empty());
}

TEST_CASE("a feeding pair that needs two ops in order") {
    // a->b then b->c would also rewrite the original b's, so order matters.
    const auto t = testing::task({{"ab", "cc"}, {"ba", "cc"}, {"aab", "ccc"}, {"b", "c"}, {"a", "c"}}, 2);
    const auto r = solve_ensemble(t, all_strategy_ids(), StrategyConfig{});
    CHECK(r.success);
    CHECK(r.program.size() <= 2);
}

TEST_CASE("results respect the budget and never pad") {
    for (const auto& t : small_corpus(40, 5)) {
        for (const auto& id : all_strategy_ids()) {
            const auto r = solve_strategy(id, t, StrategyConfig{});
            CHECK(static_cast<int>(r.program.size()) <= t.max_programs);
            CHECK(r.reward == doctest::Approx(reward(r.program, t)));
            CHECK(r.success == (r.reward == 1.0));
        }
    }
}

TEST_CASE("strategies are deterministic") {
    for (const auto& t : small_corpus(15, 8)) {
        for (const auto& id : all_strategy_ids()) CHECK(solve_strategy(id, t, StrategyConfig{}) == solve_strategy(id, t, StrategyConfig{}));
    }
}

TEST_CASE("ensemble dominates each member and picks by the tie rules") {
    for (const auto& t : small_corpus(30, 21)) {
        std::vector<SolveResult> single;
        for (const auto& id : all_strategy_ids()) single.push_back(solve_strategy(id, t, StrategyConfig{}));
        const auto ens = solve_ensemble(t, all_strategy_ids(), StrategyConfig{});
        for (const auto& s : single) {
            CHECK(ens.reward >= s.reward);
            if (s.reward == ens.reward) CHECK(ens.program.size() <= s.program.size());
        }
    }
    SolveResult a, b, c;
    a.reward = 0.5;
    a.program = {op("a", "b")};
    a.strategy_id = "first";
    b.reward = 1.0;
    b.program = {op("a", "b"), op("b", "c")};
    b.strategy_id = "second";
    c.reward = 1.0;
    c.program = {op("x", "y"), op("y", "z")};
    c.strategy_id = "third";
    const SolveResult all[] = {a, b, c};
    CHECK(select_best(all).strategy_id == "second");
}

TEST_CASE("strict mode never disturbs a solved example") {
    StrategyConfig cfg;
    cfg.safety_mode = SafetyMode::strict;
    for (const auto& t : small_corpus(40, 33)) {
        const auto r = solve_two_phase_beam(t, cfg);
        CHECK(replay_is_safe(r.program, t));
        CHECK(replay_is_safe(solve_safety_greedy_lookahead(t, cfg).program, t));
    }
}

TEST_CASE("replay safety detects a disturbed example") {
    const auto t = testing::task({{"a", "b"}, {"b", "b"}}, 2);
    CHECK(replay_is_safe({op("a", "b")}, t));
    CHECK_FALSE(replay_is_safe({op("b", "c"), op("a", "b")}, t));
}

TEST_CASE("lookahead finds a pair when no single safe op helps") {
    // Checked exhaustively: every op over {a,b} either disturbs a solved
    // example or leaves the solved count and distance unchanged.
    const auto t = testing::task({{"bb", "bb"}, {"b", "b"}, {"bbbb", "bbba"}, {"a", "a"}}, 2);
    const auto base = initial_state(t);
    const Text alpha = T("ab");
    std::vector<Text> strings{Text{}};
    for (std::size_t len = 1, start = 0; len <= 3; ++len) {
        const std::size_t end = strings.size();
        for (std::size_t i = start; i < end; ++i) {
            for (char32_t c : alpha) strings.push_back(strings[i] + c);
        }
        start = end;
    }
    for (const auto& p : strings) {
        if (p.empty()) continue;
        for (const auto& r : strings) {
            if (p == r) continue;
            const ReplaceOp o(p, r);
            if (!is_safe(base, o)) continue;
            const auto s = advance(base, o, t);
            CHECK_FALSE((s.solved > base.solved || (s.solved == base.solved && s.total_distance < base.total_distance)));
        }
    }
    StrategyConfig one;
    one.lookahead = 1;
    CHECK_FALSE(solve_safety_greedy_lookahead(t, one).success);
    const auto two = solve_safety_greedy_lookahead(t, StrategyConfig{});
    CHECK(two.success);
    CHECK(two.program.size() == 2);
    CHECK(replay_is_safe(two.program, t));
}

TEST_CASE("adaptive beam widens on stagnation up to four times the base width") {
    StrategyConfig cfg;
    cfg.beam_width = 2;
    for (const auto& t : small_corpus(20, 4)) {
        AdaptiveTrace trace;
        solve_adaptive_beam(t, cfg, &trace);
        for (std::size_t d = 0; d < trace.widths.size(); ++d) {
            CHECK(trace.widths[d] >= 2);
            CHECK(trace.widths[d] <= 8);
            if (d > 0 && trace.stagnant[d - 1]) CHECK(trace.widths[d] == std::min(8, trace.widths[d - 1] * 2));
        }
    }
}

TEST_CASE("strategy list parsing and config validation") {
    CHECK(parse_strategy_list("all").size() == 6);
    CHECK(parse_strategy_list("unique_perm,safety_greedy") == std::vector<std::string>{"unique_perm", "safety_greedy"});
    CHECK_THROWS_AS(parse_strategy_list("nope"), UnknownStrategy);
    CHECK_THROWS_AS(parse_strategy_list(""), UnknownStrategy);
    StrategyConfig bad;
    bad.beam_width = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(solve_strategy("nope", testing::task({{"a", "b"}}, 1), StrategyConfig{}), UnknownStrategy);
}

TEST_CASE("exact replacement inference") {
    CHECK(solve_replacement(T("abab"), T("xbxb"), T("a")) == T("x"));
    CHECK(solve_replacement(T("abab"), T("bb"), T("a")) == T(""));
    CHECK_FALSE(solve_replacement(T("abab"), T("xbyb"), T("a")).has_value());
    for (const auto& o : exact_fix_ops(T("cat"), T("cut"))) CHECK(apply_op(o, T("cat")) == T("cut"));
}
