#pragma once

// Synthetic PBE tasks with known ground-truth cascades, rule-interaction
// labels, and small labeled train instances.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsynth/dsl.hpp"
#include "rsynth/random.hpp"
#include "rsynth/slr.hpp"

namespace rsynth {

class GenerationExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxGenerationAttempts = 1000;

struct GenSpec {
    Text alphabet = U"abc";
    int cascade_min = 2;
    int cascade_max = 5;
    int n_examples = 5;
    int string_min = 3;
    int string_max = 8;
    std::uint64_t seed = 0;
    bool wrap_boundaries = false;
    std::optional<int> max_programs;  // defaults to cascade_max

    /// Throws std::invalid_argument on an inconsistent spec.
    void validate() const;
};

Task generate_task(const GenSpec& spec, std::uint64_t index);

enum class Interaction { feeding, bleeding, counterfeeding, counterbleeding };

inline constexpr const char* kInteractionNames[] = {"feeding", "bleeding", "counterfeeding", "counterbleeding"};

struct BfccLabel {
    unsigned bits = 0;

    bool has(Interaction r) const noexcept { return bits & (1u << static_cast<unsigned>(r)); }
    void add(Interaction r) noexcept { bits |= 1u << static_cast<unsigned>(r); }
    bool empty() const noexcept { return bits == 0; }
    std::vector<std::string> names() const;

    friend bool operator==(const BfccLabel&, const BfccLabel&) = default;
};

/// Pairwise interactions of the ops over the traces of `inputs`. For i < j:
///   feeding / bleeding: r_j's site count where it runs is higher / lower than
///     it would be with r_i skipped;
///   counterfeeding / counterbleeding: on the string r_i actually saw, running
///     r_j first would raise / lower r_i's site count (bleeding requires r_i to
///     have applied).
BfccLabel classify_bfcc(const Cascade& cascade, const std::vector<Text>& inputs);

namespace slr_gen {

/// Random fully specified train with 1..max_cars cars at positions 1..n.
slr::TrainModel sample_train(Rng& rng, int max_cars);

/// Random rule of the given complexity over the full attribute domains and
/// positions 1..max_cars. Roughly one item in four is negated.
slr::Rule sample_rule(Rng& rng, int complexity, int max_cars);

}  // namespace slr_gen

/// Labels sampled trains with gt_rule, resampling until both labels occur.
/// Throws GenerationExhausted when that never happens.
slr::SlrTask generate_slr_instance(int n_trains, int max_cars, const slr::Rule& gt_rule, std::uint64_t seed);

}  // namespace rsynth
