#include "rsynth/taskgen.hpp"

#include <algorithm>

namespace rsynth {

void GenSpec::validate() const {
    if (alphabet.empty()) throw std::invalid_argument("alphabet is empty");
    if (std::find(alphabet.begin(), alphabet.end(), kBoundary) != alphabet.end() && wrap_boundaries) {
        throw std::invalid_argument("alphabet may not contain the boundary marker when wrapping");
    }
    if (cascade_min < 1 || cascade_min > cascade_max) throw std::invalid_argument("bad cascade length range");
    if (string_min < 0 || string_min > string_max) throw std::invalid_argument("bad string length range");
    if (n_examples < 5) throw std::invalid_argument("n_examples must be at least 5");
    if (max_programs && *max_programs < 1) throw std::invalid_argument("max_programs must be positive");
}

namespace {

Text random_string(Rng& rng, const Text& alphabet, std::size_t len) {
    Text s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
    return s;
}

ReplaceOp random_op(Rng& rng, const GenSpec& spec) {
    for (;;) {
        Text pattern;
        Text replacement;
        if (spec.wrap_boundaries && rng.below(3) == 0) {
            // Anchored at a word edge; the marker survives the rewrite.
            const bool left = rng.chance(0.5);
            const Text body = random_string(rng, spec.alphabet, rng.between(1, 2));
            const Text rest = random_string(rng, spec.alphabet, rng.between(0, 2));
            pattern = left ? kBoundary + body : body + kBoundary;
            replacement = left ? kBoundary + rest : rest + kBoundary;
        } else {
            pattern = random_string(rng, spec.alphabet, rng.between(1, 3));
            replacement = random_string(rng, spec.alphabet, rng.between(0, 3));
        }
        if (pattern != replacement) return ReplaceOp(std::move(pattern), std::move(replacement));
    }
}

}  // namespace

Task generate_task(const GenSpec& spec, std::uint64_t index) {
    spec.validate();
    Rng rng(derive_seed(spec.seed, index));
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        const auto len = static_cast<int>(rng.between(spec.cascade_min, spec.cascade_max));
        Cascade cascade;
        for (int i = 0; i < len; ++i) cascade.push_back(random_op(rng, spec));

        std::vector<Example> examples;
        std::vector<Text> inputs;
        int changed = 0;
        bool degenerate = false;
        for (int i = 0; i < spec.n_examples; ++i) {
            Text input = random_string(rng, spec.alphabet, rng.between(spec.string_min, spec.string_max));
            if (spec.wrap_boundaries) input = wrap_boundaries(input);
            Text output = apply_cascade(cascade, input);
            changed += output != input;
            degenerate |= output.empty() && !input.empty();
            inputs.push_back(input);
            examples.push_back({std::move(input), std::move(output)});
        }
        if (changed < 2 || degenerate) continue;

        TaskMeta meta;
        meta.cascade_length = len;
        meta.bfcc = len >= 2 ? classify_bfcc(cascade, inputs).names() : std::vector<std::string>{};
        meta.ground_truth = std::move(cascade);
        return make_task("gen-" + std::to_string(spec.seed) + "-" + std::to_string(index), std::move(examples),
                         spec.max_programs.value_or(spec.cascade_max), std::move(meta));
    }
    throw GenerationExhausted("no acceptable task for index " + std::to_string(index) + " after " +
                              std::to_string(kMaxGenerationAttempts) + " attempts");
}

std::vector<std::string> BfccLabel::names() const {
    std::vector<std::string> out;
    for (unsigned r = 0; r < 4; ++r) {
        if (bits & (1u << r)) out.emplace_back(kInteractionNames[r]);
    }
    return out;
}

BfccLabel classify_bfcc(const Cascade& cascade, const std::vector<Text>& inputs) {
    if (cascade.size() < 2) throw std::invalid_argument("interaction labels need at least two ops");
    BfccLabel label;
    const std::size_t n = cascade.size();
    for (const auto& input : inputs) {
        // trace[t] is the string op t sees.
        std::vector<Text> trace{input};
        for (const auto& op : cascade) trace.push_back(apply_op(op, trace.back()));

        for (std::size_t i = 0; i < n; ++i) {
            const TextView pi = cascade[i].pattern();
            const std::size_t sites_i = count_occurrences(trace[i], pi);
            Text skipped = trace[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                const TextView pj = cascade[j].pattern();
                const std::size_t actual = count_occurrences(trace[j], pj);
                const std::size_t without = count_occurrences(skipped, pj);
                if (actual > without) label.add(Interaction::feeding);
                if (actual < without) label.add(Interaction::bleeding);
                skipped = apply_op(cascade[j], skipped);

                const std::size_t swapped = count_occurrences(apply_op(cascade[j], trace[i]), pi);
                if (swapped > sites_i) label.add(Interaction::counterfeeding);
                if (sites_i > 0 && swapped < sites_i) label.add(Interaction::counterbleeding);
            }
        }
    }
    return label;
}

namespace slr_gen {

slr::TrainModel sample_train(Rng& rng, int max_cars) {
    slr::TrainModel train;
    const auto n = rng.between(1, max_cars);
    for (int p = 1; p <= n; ++p) {
        slr::Car car;
        car.position = p;
        car.color = static_cast<slr::Color>(rng.below(slr::kColorNames.size()));
        car.length = static_cast<slr::Length>(rng.below(slr::kLengthNames.size()));
        car.wall = static_cast<slr::Wall>(rng.below(slr::kWallNames.size()));
        train.cars.push_back(car);
    }
    return train;
}

slr::Rule sample_rule(Rng& rng, int complexity, int max_cars) {
    auto literal = [&] {
        const auto a = static_cast<slr::Attribute>(rng.below(4));
        int value = 0;
        switch (a) {
            case slr::Attribute::color: value = static_cast<int>(rng.below(slr::kColorNames.size())); break;
            case slr::Attribute::length: value = static_cast<int>(rng.below(slr::kLengthNames.size())); break;
            case slr::Attribute::wall: value = static_cast<int>(rng.below(slr::kWallNames.size())); break;
            case slr::Attribute::num: value = static_cast<int>(rng.between(1, max_cars)); break;
        }
        return slr::Literal{a, value};
    };
    slr::Rule rule;
    int vars = 0;
    int free_var = 100;
    for (int i = 0; i < complexity; ++i) {
        const bool negated = i > 0 && rng.below(4) == 0;
        if (negated) {
            const auto pick = rng.below(static_cast<std::uint64_t>(vars) + 1);
            rule.body.push_back({literal(), pick == static_cast<std::uint64_t>(vars) ? free_var++ : static_cast<int>(pick), true});
        } else {
            const auto pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(vars) + 1));
            if (pick == vars) ++vars;
            rule.body.push_back({literal(), pick, false});
        }
    }
    return rule;
}

}  // namespace slr_gen

slr::SlrTask generate_slr_instance(int n_trains, int max_cars, const slr::Rule& gt_rule, std::uint64_t seed) {
    if (n_trains < 2) throw std::invalid_argument("need at least two trains");
    if (max_cars < 1) throw std::invalid_argument("max_cars must be positive");
    if (gt_rule.body.empty()) throw std::invalid_argument("ground-truth rule has an empty body");
    Rng rng(derive_seed(seed, 0x51a));
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        slr::SlrTask task;
        task.task_id = "slr-" + std::to_string(seed);
        int east = 0;
        for (int t = 0; t < n_trains; ++t) {
            const auto train = slr_gen::sample_train(rng, max_cars);
            const bool label = slr::eval_rule(gt_rule, train);
            east += label;
            task.examples.push_back({slr::render_facts(slr::train_facts(train, "t" + std::to_string(t))),
                                     label ? slr::Label::eastbound : slr::Label::westbound});
        }
        if (east > 0 && east < n_trains) return task;
    }
    throw GenerationExhausted("rule " + slr::render_rule(gt_rule) + " never produced both labels");
}

}  // namespace rsynth
