#include "doctest.h"
#include "helpers.hpp"
#include "rsynth/metrics.hpp"
#include "rsynth/taskgen.hpp"

using namespace rsynth;
using testing::T;
using testing::op;

TEST_CASE("generation is deterministic and self-consistent") {
    GenSpec spec;
    spec.seed = 77;
    spec.cascade_min = 2;
    spec.cascade_max = 5;
    spec.n_examples = 7;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto a = generate_task(spec, i);
        CHECK(a == generate_task(spec, i));
        REQUIRE(a.meta.ground_truth.has_value());
        CHECK(reward(*a.meta.ground_truth, a) == 1.0);
        CHECK(a.examples.size() == 7);
        const int len = static_cast<int>(a.meta.ground_truth->size());
        CHECK(len >= 2);
        CHECK(len <= 5);
        CHECK(a.meta.cascade_length == len);
        CHECK(a.max_programs == 5);
        int changed = 0;
        for (const auto& ex : a.examples) {
            changed += ex.input != ex.output;
            CHECK_FALSE((ex.output.empty() && !ex.input.empty()));
            CHECK(ex.input.size() >= 3);
            CHECK(ex.input.size() <= 8);
        }
        CHECK(changed >= 2);
        CHECK(a.task_id == "gen-77-" + std::to_string(i));
    }
    CHECK_FALSE(generate_task(spec, 1) == generate_task(spec, 2));
}

TEST_CASE("wrapped generation keeps boundary markers") {
    GenSpec spec;
    spec.wrap_boundaries = true;
    spec.seed = 3;
    for (std::uint64_t i = 0; i < 30; ++i) {
        const auto t = generate_task(spec, i);
        for (const auto& ex : t.examples) {
            CHECK(ex.input.front() == kBoundary);
            CHECK(ex.input.back() == kBoundary);
        }
    }
}

TEST_CASE("generator settings validation") {
    GenSpec spec;
    spec.n_examples = 4;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = GenSpec{};
    spec.cascade_min = 4;
    spec.cascade_max = 3;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = GenSpec{};
    spec.alphabet.clear();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("impossible specs exhaust generation") {
    GenSpec spec;
    spec.alphabet = T("a");
    spec.string_min = 0;
    spec.string_max = 0;  // nothing can ever change
    CHECK_THROWS_AS(generate_task(spec, 0), GenerationExhausted);
}

TEST_CASE("interaction labels on reference pairs") {
    const Cascade feed{op("a", "b"), op("b", "c")};
    const auto f = classify_bfcc(feed, {T("a"), T("xax")});
    CHECK(f.names() == std::vector<std::string>{"feeding"});

    const auto bleed = classify_bfcc({op("ab", "x"), op("b", "y")}, {T("ab")});
    CHECK(bleed.has(Interaction::bleeding));

    CHECK(classify_bfcc({op("a", "b"), op("c", "d")}, {T("ac"), T("aacc")}).empty());

    const auto counterbleed = classify_bfcc({op("b", "y"), op("ab", "x")}, {T("ab")});
    CHECK(counterbleed.has(Interaction::counterbleeding));

    CHECK_THROWS(classify_bfcc({op("a", "b")}, {T("a")}));
}

TEST_CASE("reversing a feeding pair yields counterfeeding") {
    Rng rng(12);
    const Text alpha = T("abc");
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 100; ++i) {
        auto rand_text = [&](int lo, int hi) {
            Text s;
            const auto n = rng.between(lo, hi);
            for (int k = 0; k < n; ++k) s.push_back(alpha[rng.below(3)]);
            return s;
        };
        const Text p1 = rand_text(1, 2), r1 = rand_text(0, 2), p2 = rand_text(1, 2), r2 = rand_text(0, 2);
        if (p1 == r1 || p2 == r2) continue;
        const Cascade c{ReplaceOp(p1, r1), ReplaceOp(p2, r2)};
        std::vector<Text> inputs;
        for (int k = 0; k < 4; ++k) inputs.push_back(rand_text(2, 6));
        const auto forward = classify_bfcc(c, inputs);
        if (!(forward == BfccLabel{1u << static_cast<unsigned>(Interaction::feeding)})) continue;
        ++checked;
        const auto reversed = classify_bfcc({c[1], c[0]}, inputs);
        CHECK(reversed.has(Interaction::counterfeeding));
    }
    CHECK(checked > 10);
}

TEST_CASE("train instances are labeled by the planted rule") {
    const slr::Rule red{{{{slr::Attribute::color, static_cast<int>(slr::Color::red)}, 0, false}}};
    const auto task = generate_slr_instance(8, 4, red, 5);
    CHECK(task == generate_slr_instance(8, 4, red, 5));
    bool east = false, west = false;
    for (const auto& ex : task.examples) {
        const auto train = slr::normalize(slr::parse_facts(ex.facts_text));
        bool has_red = false;
        for (const auto& car : train.cars) has_red |= car.color == slr::Color::red;
        CHECK(has_red == (ex.label == slr::Label::eastbound));
        east |= ex.label == slr::Label::eastbound;
        west |= ex.label == slr::Label::westbound;
        CHECK(train.cars.size() <= 4);
    }
    CHECK((east && west));
    const slr::Rule impossible{{{{slr::Attribute::num, 9}, 0, false}}};
    CHECK_THROWS_AS(generate_slr_instance(4, 3, impossible, 1), GenerationExhausted);
}
