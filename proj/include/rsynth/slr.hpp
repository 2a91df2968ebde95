#pragma once

// Relational train descriptions: ground-fact parsing, train normalization,
// an existential rule evaluator, and ascending-complexity rule induction.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsynth::slr {

enum class Predicate { has_car, car_num, car_color, car_len, has_wall };

enum class Color { red, blue, green, yellow, white };
enum class Length { short_, long_ };
enum class Wall { full, railing };

inline constexpr std::array<std::string_view, 5> kColorNames{"red", "blue", "green", "yellow", "white"};
inline constexpr std::array<std::string_view, 2> kLengthNames{"short", "long"};
inline constexpr std::array<std::string_view, 2> kWallNames{"full", "railing"};

std::string_view predicate_name(Predicate p);

struct Fact {
    Predicate predicate = Predicate::has_car;
    std::vector<std::string> args;

    friend bool operator==(const Fact&, const Fact&) = default;
};

enum class FactErrorKind { syntax, unknown_predicate, arity, domain };

class FactError : public std::runtime_error {
public:
    FactError(FactErrorKind kind, std::size_t offset, const std::string& what)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}
    FactErrorKind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    FactErrorKind kind_;
    std::size_t offset_;
};

/// Period-terminated ground terms `pred(a, b).` separated by whitespace.
std::vector<Fact> parse_facts(std::string_view text);

std::string render_fact(const Fact& fact);
std::string render_facts(const std::vector<Fact>& facts);

struct Car {
    int position = 0;
    std::optional<Color> color;
    std::optional<Length> length;
    std::optional<Wall> wall;

    friend bool operator==(const Car&, const Car&) = default;
};

/// Cars ordered by position; train and car identifiers are discarded.
struct TrainModel {
    std::vector<Car> cars;
    friend bool operator==(const TrainModel&, const TrainModel&) = default;
};

enum class NormalizeErrorKind { missing_car_num, duplicate_car_num, orphan_property, conflicting_property };

class NormalizeError : public std::runtime_error {
public:
    NormalizeError(NormalizeErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    NormalizeErrorKind kind() const noexcept { return kind_; }

private:
    NormalizeErrorKind kind_;
};

TrainModel normalize(const std::vector<Fact>& facts);

/// Renders a model back to facts for train `train_id`.
std::vector<Fact> train_facts(const TrainModel& train, std::string_view train_id = "t0");

// Rules ---------------------------------------------------------------------

enum class Attribute { color, length, wall, num };

struct Literal {
    Attribute attribute = Attribute::color;
    int value = 0;  // enum index, or the car position for `num`

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// One body item. A negated item on a variable that no positive item binds is
/// its own existential scope: \+ (has_car(T,C), lit(C)).
struct BodyItem {
    Literal literal;
    int var = 0;  // zero-based car variable index
    bool negated = false;

    friend auto operator<=>(const BodyItem&, const BodyItem&) = default;
};

struct Rule {
    std::vector<BodyItem> body;

    std::size_t complexity() const noexcept { return body.size(); }
    /// Number of distinct car variables referenced.
    int car_vars() const;
    /// Variables bound by at least one positive item, ascending.
    std::vector<int> bound_vars() const;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// True when some assignment of distinct cars to the bound variables satisfies
/// every positive item and no negated item holds.
bool eval_rule(const Rule& rule, const TrainModel& train);

bool literal_holds(const Literal& lit, const Car& car);

/// C(L,1) + C(L,2) + C(L,3) + C(L,4).
std::uint64_t count_rule_candidates(std::uint64_t ground_literals);

/// eastbound(T) :- has_car(T,C1), car_color(C1,red).
std::string render_rule(const Rule& rule);

std::string render_literal(const Literal& lit, std::string_view var);

// Tasks and induction ---------------------------------------------------------

enum class Label { eastbound, westbound };

std::string_view label_name(Label l);
Label parse_label(std::string_view s);

struct SlrExample {
    std::string facts_text;
    Label label = Label::westbound;
    friend bool operator==(const SlrExample&, const SlrExample&) = default;
};

struct SlrTask {
    std::string task_id;
    std::vector<SlrExample> examples;
    friend bool operator==(const SlrTask&, const SlrTask&) = default;
};

struct LabeledTrain {
    TrainModel train;
    bool eastbound = false;
};

/// Parses and normalizes every example; errors carry the task id.
std::vector<LabeledTrain> load_trains(const SlrTask& task);

/// Fraction of trains whose rule verdict matches the label.
double rule_score(const Rule& rule, const std::vector<LabeledTrain>& trains);

/// Attribute-value literals present in the trains, in (color, len, wall, num)
/// order with domain-declaration value order and ascending positions.
std::vector<Literal> literal_vocabulary(const std::vector<LabeledTrain>& trains);

struct ScoredRule {
    Rule rule;
    double score = 0.0;
};

struct InductionOptions {
    int max_literals = 4;
    int top_k = 1;
    std::uint64_t max_evaluations = 5'000'000;
};

struct InductionResult {
    std::vector<ScoredRule> ranked;
    bool success = false;
    bool single_class = false;  // warning: every example carries the same label
    std::uint64_t evaluated = 0;
    int layers_searched = 0;
};

/// Layered search over complexity 1..max_literals with early exit at the first
/// perfect rule; otherwise the top_k by (score desc, complexity asc, order).
InductionResult induce_rule(const SlrTask& task, const InductionOptions& opts = {});
InductionResult induce_rule(const std::vector<LabeledTrain>& trains, const InductionOptions& opts = {});

/// Calls `visit` for every rule of exactly `complexity` body items over the
/// vocabulary, in the deterministic enumeration order. Stops early when
/// `visit` returns false.
void enumerate_layer(const std::vector<Literal>& vocab, int complexity,
                     const std::function<bool(const Rule&)>& visit);

class SlrInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rsynth::slr
