#include <algorithm>
#include <map>
#include <set>

#include "rsynth/slr.hpp"

namespace rsynth::slr {

int Rule::car_vars() const {
    std::set<int> vars;
    for (const auto& item : body) vars.insert(item.var);
    return static_cast<int>(vars.size());
}

std::vector<int> Rule::bound_vars() const {
    std::set<int> vars;
    for (const auto& item : body) {
        if (!item.negated) vars.insert(item.var);
    }
    return {vars.begin(), vars.end()};
}

bool literal_holds(const Literal& lit, const Car& car) {
    switch (lit.attribute) {
        case Attribute::color: return car.color && static_cast<int>(*car.color) == lit.value;
        case Attribute::length: return car.length && static_cast<int>(*car.length) == lit.value;
        case Attribute::wall: return car.wall && static_cast<int>(*car.wall) == lit.value;
        case Attribute::num: return car.position == lit.value;
    }
    return false;
}

namespace {

bool any_car(const Literal& lit, const TrainModel& train) {
    return std::any_of(train.cars.begin(), train.cars.end(), [&](const Car& c) { return literal_holds(lit, c); });
}

struct Binder {
    const std::vector<std::vector<const BodyItem*>>& checks;
    const TrainModel& train;
    std::vector<bool> used;

    bool assign(std::size_t depth) {
        if (depth == checks.size()) return true;
        for (std::size_t c = 0; c < train.cars.size(); ++c) {
            if (used[c]) continue;
            const Car& car = train.cars[c];
            bool ok = true;
            for (const BodyItem* item : checks[depth]) {
                if (literal_holds(item->literal, car) == item->negated) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[c] = true;
            if (assign(depth + 1)) return true;
            used[c] = false;
        }
        return false;
    }
};

}  // namespace

bool eval_rule(const Rule& rule, const TrainModel& train) {
    const auto bound = rule.bound_vars();
    std::vector<std::vector<const BodyItem*>> checks(bound.size());
    for (const auto& item : rule.body) {
        auto it = std::lower_bound(bound.begin(), bound.end(), item.var);
        if (it != bound.end() && *it == item.var) {
            checks[it - bound.begin()].push_back(&item);
        } else if (any_car(item.literal, train)) {
            return false;
        }
    }
    if (bound.size() > train.cars.size()) return false;
    Binder binder{checks, train, std::vector<bool>(train.cars.size(), false)};
    return binder.assign(0);
}

std::uint64_t count_rule_candidates(std::uint64_t l) {
    const auto c2 = l * (l - (l ? 1 : 0)) / 2;
    std::uint64_t total = l + c2;
    if (l >= 3) total += l * (l - 1) * (l - 2) / 6;
    if (l >= 4) total += l * (l - 1) * (l - 2) * (l - 3) / 24;
    return total;
}

std::string render_literal(const Literal& lit, std::string_view var) {
    const std::string v(var);
    switch (lit.attribute) {
        case Attribute::color: return "car_color(" + v + "," + std::string(kColorNames[lit.value]) + ")";
        case Attribute::length: return "car_len(" + v + "," + std::string(kLengthNames[lit.value]) + ")";
        case Attribute::wall: return "has_wall(" + v + "," + std::string(kWallNames[lit.value]) + ")";
        case Attribute::num: return "car_num(" + v + "," + std::to_string(lit.value) + ")";
    }
    return {};
}

std::string render_rule(const Rule& rule) {
    const auto bound = rule.bound_vars();
    std::map<int, std::string> names;
    for (std::size_t i = 0; i < bound.size(); ++i) names[bound[i]] = "C" + std::to_string(i + 1);
    int next = static_cast<int>(bound.size());

    std::vector<std::string> parts;
    for (const auto& [var, name] : names) parts.push_back("has_car(T," + name + ")");
    for (std::size_t i = 0; i < bound.size(); ++i) {
        for (std::size_t j = i + 1; j < bound.size(); ++j) {
            parts.push_back(names[bound[i]] + " \\= " + names[bound[j]]);
        }
    }
    for (const auto& item : rule.body) {
        auto it = names.find(item.var);
        if (it != names.end() && std::binary_search(bound.begin(), bound.end(), item.var)) {
            parts.push_back((item.negated ? "\\+ " : "") + render_literal(item.literal, it->second));
        } else {
            std::string name;
            if (it != names.end()) {
                name = it->second;
            } else {
                name = "C" + std::to_string(++next);
                names[item.var] = name;
            }
            parts.push_back("\\+ (has_car(T," + name + "), " + render_literal(item.literal, name) + ")");
        }
    }
    std::string out = "eastbound(T) :- ";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out + ".";
}

std::string_view label_name(Label l) { return l == Label::eastbound ? "eastbound" : "westbound"; }

Label parse_label(std::string_view s) {
    if (s == "eastbound") return Label::eastbound;
    if (s == "westbound") return Label::westbound;
    throw SlrInputError("unknown label '" + std::string(s) + "'");
}

std::vector<LabeledTrain> load_trains(const SlrTask& task) {
    std::vector<LabeledTrain> out;
    for (std::size_t i = 0; i < task.examples.size(); ++i) {
        const auto& ex = task.examples[i];
        try {
            out.push_back({normalize(parse_facts(ex.facts_text)), ex.label == Label::eastbound});
        } catch (const std::exception& e) {
            throw SlrInputError("task " + task.task_id + " example " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

double rule_score(const Rule& rule, const std::vector<LabeledTrain>& trains) {
    if (trains.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& t : trains) hits += eval_rule(rule, t.train) == t.eastbound;
    return static_cast<double>(hits) / static_cast<double>(trains.size());
}

std::vector<Literal> literal_vocabulary(const std::vector<LabeledTrain>& trains) {
    std::set<Literal> seen;
    for (const auto& t : trains) {
        for (const auto& car : t.train.cars) {
            if (car.color) seen.insert({Attribute::color, static_cast<int>(*car.color)});
            if (car.length) seen.insert({Attribute::length, static_cast<int>(*car.length)});
            if (car.wall) seen.insert({Attribute::wall, static_cast<int>(*car.wall)});
            seen.insert({Attribute::num, car.position});
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

// Restricted-growth strings: block labels for `n` items, first occurrences ascending.
bool next_partition(std::vector<int>& rgs) {
    const int n = static_cast<int>(rgs.size());
    for (int i = n - 1; i > 0; --i) {
        const int max_before = *std::max_element(rgs.begin(), rgs.begin() + i);
        if (rgs[i] <= max_before) {
            ++rgs[i];
            std::fill(rgs.begin() + i + 1, rgs.end(), 0);
            return true;
        }
    }
    return false;
}

bool next_multiset(std::vector<int>& idx, int universe) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < universe - 1) {
            ++idx[i];
            std::fill(idx.begin() + i + 1, idx.end(), idx[i]);
            return true;
        }
    }
    return false;
}

bool has_duplicate(const std::vector<BodyItem>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[i].literal == items[j].literal && items[i].negated == items[j].negated && items[i].var == items[j].var) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

void enumerate_layer(const std::vector<Literal>& vocab, int complexity,
                     const std::function<bool(const Rule&)>& visit) {
    const int l = static_cast<int>(vocab.size());
    if (l == 0 || complexity <= 0) return;
    const int universe = 2 * l;
    std::vector<int> idx(complexity, 0);
    do {
        std::vector<Literal> pos, neg;
        for (int e : idx) (e < l ? pos : neg).push_back(vocab[e % l]);
        const int p = static_cast<int>(pos.size());
        const int q = static_cast<int>(neg.size());

        std::vector<int> groups(p, 0);
        bool more_groups = true;
        while (more_groups) {
            const int g = p ? *std::max_element(groups.begin(), groups.end()) + 1 : 0;
            // Each negated item goes to a bound variable 0..g-1 or to a free scope (g).
            std::vector<int> target(q, 0);
            bool more_targets = true;
            while (more_targets) {
                Rule rule;
                for (int i = 0; i < p; ++i) rule.body.push_back({pos[i], groups[i], false});
                int free_var = g;
                for (int i = 0; i < q; ++i) {
                    const bool free = target[i] == g;
                    rule.body.push_back({neg[i], free ? free_var++ : target[i], true});
                }
                bool duplicate = has_duplicate(rule.body);
                if (!duplicate) {
                    // Two free scopes over the same literal say the same thing.
                    for (int i = 0; i < q && !duplicate; ++i) {
                        for (int j = i + 1; j < q; ++j) {
                            if (target[i] == g && target[j] == g && neg[i] == neg[j]) {
                                duplicate = true;
                                break;
                            }
                        }
                    }
                }
                if (!duplicate && !visit(rule)) return;

                more_targets = false;
                for (int i = q - 1; i >= 0; --i) {
                    if (target[i] < g) {
                        ++target[i];
                        std::fill(target.begin() + i + 1, target.end(), 0);
                        more_targets = true;
                        break;
                    }
                }
            }
            more_groups = p > 1 && next_partition(groups);
        }
    } while (next_multiset(idx, universe));
}

InductionResult induce_rule(const std::vector<LabeledTrain>& trains, const InductionOptions& opts) {
    if (opts.max_literals < 1) throw std::invalid_argument("max_literals must be positive");
    if (opts.top_k < 1) throw std::invalid_argument("top_k must be positive");
    InductionResult result;
    if (!trains.empty()) {
        result.single_class = std::all_of(trains.begin(), trains.end(),
                                          [&](const LabeledTrain& t) { return t.eastbound == trains[0].eastbound; });
    }
    const auto vocab = literal_vocabulary(trains);
    const auto k = static_cast<std::size_t>(opts.top_k);
    auto& ranked = result.ranked;
    bool exhausted = false;

    for (int layer = 1; layer <= opts.max_literals && !result.success && !exhausted; ++layer) {
        result.layers_searched = layer;
        enumerate_layer(vocab, layer, [&](const Rule& rule) {
            if (result.evaluated >= opts.max_evaluations) {
                exhausted = true;
                return false;
            }
            ++result.evaluated;
            const double s = rule_score(rule, trains);
            if (s == 1.0) {
                ranked.insert(ranked.begin(), ScoredRule{rule, s});
                if (ranked.size() > k) ranked.pop_back();
                result.success = true;
                return false;
            }
            if (ranked.size() < k || s > ranked.back().score) {
                auto at = std::upper_bound(ranked.begin(), ranked.end(), s,
                                           [](double v, const ScoredRule& r) { return v > r.score; });
                ranked.insert(at, ScoredRule{rule, s});
                if (ranked.size() > k) ranked.pop_back();
            }
            return true;
        });
    }
    return result;
}

InductionResult induce_rule(const SlrTask& task, const InductionOptions& opts) {
    return induce_rule(load_trains(task), opts);
}

}  // namespace rsynth::slr
