#include "doctest.h"
#include "rsynth/random.hpp"
#include "rsynth/slr.hpp"
#include "rsynth/taskgen.hpp"

using namespace rsynth;
using namespace rsynth::slr;

namespace {

TrainModel train_of(const char* facts) { return normalize(parse_facts(facts)); }

Rule red_rule() { return Rule{{{{Attribute::color, static_cast<int>(Color::red)}, 0, false}}}; }

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("fact parsing") {
    const auto facts = parse_facts("has_car(t1, c1).  car_num(c1,1).\ncar_color(c1, red). car_len(c1,long). has_wall(c1, full).");
    REQUIRE(facts.size() == 5);
    CHECK(facts[0].predicate == Predicate::has_car);
    CHECK(facts[2].args == std::vector<std::string>{"c1", "red"});
    CHECK(render_fact(facts[1]) == "car_num(c1, 1).");
    CHECK(parse_facts("  ").empty());
}

TEST_CASE("fact errors carry kind and byte offset") {
    auto kind_at = [](const char* text) -> std::pair<FactErrorKind, std::size_t> {
        try {
            parse_facts(text);
        } catch (const FactError& e) {
            return {e.kind(), e.offset()};
        }
        FAIL("expected an error");
        return {};
    };
    CHECK(kind_at("has_car(t1, c1)") == std::pair{FactErrorKind::syntax, std::size_t{15}});
    CHECK(kind_at("has_car(t1 c1).") .first == FactErrorKind::syntax);
    CHECK(kind_at("x. has_car(t,c).").first == FactErrorKind::syntax);
    CHECK(kind_at("has_car(t,c). car_colour(c,red).") == std::pair{FactErrorKind::unknown_predicate, std::size_t{14}});
    CHECK(kind_at("car_color(c,red,x).").first == FactErrorKind::arity);
    CHECK(kind_at("car_color(c, purple).") == std::pair{FactErrorKind::domain, std::size_t{13}});
    CHECK(kind_at("car_num(c, 0).").first == FactErrorKind::domain);
    CHECK(kind_at("car_len(c, medium).").first == FactErrorKind::domain);
}

TEST_CASE("normalization orders cars and erases identifiers") {
    const auto a = train_of("has_car(t1,x). has_car(t1,y). car_num(y,1). car_num(x,2). car_color(x,red). car_color(y,blue).");
    const auto b = train_of("has_car(q,c9). car_num(c9,2). car_color(c9,red). has_car(q,c3). car_num(c3,1). car_color(c3,blue).");
    CHECK(a == b);
    REQUIRE(a.cars.size() == 2);
    CHECK(a.cars[0].position == 1);
    CHECK(a.cars[0].color == Color::blue);
}

TEST_CASE("normalization errors") {
    auto kind = [](const char* text) {
        try {
            normalize(parse_facts(text));
        } catch (const NormalizeError& e) {
            return e.kind();
        }
        FAIL("expected an error");
        return NormalizeErrorKind::missing_car_num;
    };
    CHECK(kind("has_car(t,c).") == NormalizeErrorKind::missing_car_num);
    CHECK(kind("has_car(t,c). car_num(c,1). car_num(c,2).") == NormalizeErrorKind::duplicate_car_num);
    CHECK(kind("has_car(t,c). has_car(t,d). car_num(c,1). car_num(d,1).") == NormalizeErrorKind::duplicate_car_num);
    CHECK(kind("has_car(t,c). car_num(c,1). car_color(d,red).") == NormalizeErrorKind::orphan_property);
    CHECK(kind("has_car(t,c). car_num(c,1). car_color(c,red). car_color(c,blue).") ==
          NormalizeErrorKind::conflicting_property);
}

TEST_CASE("existential evaluation") {
    const auto red = train_of("has_car(t,a). car_num(a,1). car_color(a,red).");
    const auto blue = train_of("has_car(t,a). car_num(a,1). car_color(a,blue).");
    CHECK(eval_rule(red_rule(), red));
    CHECK_FALSE(eval_rule(red_rule(), blue));

    const Rule red_long{{{{Attribute::color, 0}, 0, false}, {{Attribute::length, 1}, 0, false}}};
    const auto split = train_of(
        "has_car(t,a). car_num(a,1). car_color(a,red). car_len(a,short). "
        "has_car(t,b). car_num(b,2). car_color(b,blue). car_len(b,long).");
    CHECK_FALSE(eval_rule(red_long, split));

    // Two variables need two distinct cars.
    const Rule two_red{{{{Attribute::color, 0}, 0, false}, {{Attribute::color, 0}, 1, false}}};
    CHECK_FALSE(eval_rule(two_red, red));
    CHECK(eval_rule(two_red, train_of("has_car(t,a). car_num(a,1). car_color(a,red). has_car(t,b). car_num(b,2). car_color(b,red).")));

    const Rule no_red{{{{Attribute::color, 0}, 0, true}}};
    CHECK(eval_rule(no_red, blue));
    CHECK_FALSE(eval_rule(no_red, red));

    const Rule first_car_not_red{{{{Attribute::num, 1}, 0, false}, {{Attribute::color, 0}, 0, true}}};
    CHECK(eval_rule(first_car_not_red, blue));
    CHECK_FALSE(eval_rule(first_car_not_red, red));
}

TEST_CASE("rule rendering") {
    CHECK(render_rule(red_rule()) == "eastbound(T) :- has_car(T,C1), car_color(C1,red).");
    const Rule two{{{{Attribute::color, 0}, 0, false}, {{Attribute::num, 2}, 1, false}, {{Attribute::wall, 1}, 1, true}}};
    CHECK(render_rule(two) ==
          "eastbound(T) :- has_car(T,C1), has_car(T,C2), C1 \\= C2, car_color(C1,red), car_num(C2,2), "
          "\\+ has_wall(C2,railing).");
    const Rule free_neg{{{{Attribute::length, 0}, 0, false}, {{Attribute::color, 4}, 7, true}}};
    CHECK(render_rule(free_neg) ==
          "eastbound(T) :- has_car(T,C1), car_len(C1,short), \\+ (has_car(T,C2), car_color(C2,white)).");
}

TEST_CASE("candidate counts") {
    CHECK(count_rule_candidates(5) == 30);
    CHECK(count_rule_candidates(11) == 561);
    CHECK(count_rule_candidates(19) == 5035);
    CHECK(count_rule_candidates(33) == 46937);
    CHECK(count_rule_candidates(50) == 251175);
    CHECK(count_rule_candidates(1) == 1);
    CHECK(count_rule_candidates(0) == 0);
    for (std::uint64_t l = 0; l <= 12; ++l) {
        std::uint64_t subsets = 0;
        for (std::uint64_t mask = 1; mask < (1ULL << l); ++mask) {
            if (__builtin_popcountll(mask) <= 4) ++subsets;
        }
        CHECK(count_rule_candidates(l) == subsets);
        CHECK(count_rule_candidates(l) == binom(l, 1) + binom(l, 2) + binom(l, 3) + binom(l, 4));
    }
}

TEST_CASE("layer enumeration is deterministic and duplicate-free") {
    const std::vector<Literal> vocab{{Attribute::color, 0}, {Attribute::length, 1}, {Attribute::num, 1}};
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::string> first, second;
        enumerate_layer(vocab, k, [&](const Rule& r) {
            CHECK(r.complexity() == static_cast<std::size_t>(k));
            first.push_back(render_rule(r));
            return true;
        });
        enumerate_layer(vocab, k, [&](const Rule& r) {
            second.push_back(render_rule(r));
            return true;
        });
        CHECK(first == second);
        std::set<std::string> unique(first.begin(), first.end());
        CHECK(unique.size() == first.size());
    }
    int seen = 0;
    enumerate_layer(vocab, 2, [&](const Rule&) { return ++seen < 3; });
    CHECK(seen == 3);
}

TEST_CASE("induction exits at the first perfect layer") {
    SlrTask task{"sep",
                 {{"has_car(t,a). car_num(a,1). car_color(a,red).", Label::eastbound},
                  {"has_car(t,a). car_num(a,1). car_color(a,blue). has_car(t,b). car_num(b,2). car_color(b,red).", Label::eastbound},
                  {"has_car(t,a). car_num(a,1). car_color(a,blue).", Label::westbound},
                  {"has_car(t,a). car_num(a,1). car_color(a,green). has_car(t,b). car_num(b,2). car_color(b,white).", Label::westbound}}};
    const auto r = induce_rule(task);
    REQUIRE(r.success);
    CHECK(r.layers_searched == 1);
    CHECK(render_rule(r.ranked.front().rule) == "eastbound(T) :- has_car(T,C1), car_color(C1,red).");
    CHECK(r.ranked.front().score == 1.0);
    CHECK_FALSE(r.single_class);
}

TEST_CASE("unsatisfiable labeling returns ranked imperfect rules") {
    const char* facts = "has_car(t,a). car_num(a,1). car_color(a,red). car_len(a,long).";
    SlrTask task{"conflict", {{facts, Label::eastbound}, {facts, Label::westbound}, {"has_car(t,a). car_num(a,1). car_color(a,blue).", Label::westbound}}};
    InductionOptions opts;
    opts.top_k = 3;
    opts.max_literals = 2;
    const auto r = induce_rule(task, opts);
    CHECK_FALSE(r.success);
    REQUIRE(r.ranked.size() == 3);
    // Identical trains with opposite labels cap the score at 2/3.
    CHECK(r.ranked[0].score == doctest::Approx(2.0 / 3.0));
    for (std::size_t i = 1; i < r.ranked.size(); ++i) CHECK(r.ranked[i].score <= r.ranked[i - 1].score);
    CHECK(r.layers_searched == 2);
}

TEST_CASE("single-class tasks are flagged") {
    SlrTask task{"one", {{"has_car(t,a). car_num(a,1). car_color(a,red).", Label::eastbound}}};
    CHECK(induce_rule(task).single_class);
}

TEST_CASE("load errors name the task") {
    SlrTask task{"broken", {{"has_car(t,a", Label::eastbound}}};
    try {
        load_trains(task);
        FAIL("expected an error");
    } catch (const SlrInputError& e) {
        CHECK(std::string(e.what()).find("broken") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_label("northbound"), SlrInputError);
}

TEST_CASE("facts render and reparse to the same train") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        auto train = slr_gen::sample_train(rng, 5);
        if (rng.chance(0.3)) train.cars.front().wall.reset();
        CHECK(normalize(parse_facts(render_facts(train_facts(train, "tr")))) == train);
    }
}
