#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "rsynth/slr.hpp"

namespace rsynth::slr {

std::string_view predicate_name(Predicate p) {
    switch (p) {
        case Predicate::has_car: return "has_car";
        case Predicate::car_num: return "car_num";
        case Predicate::car_color: return "car_color";
        case Predicate::car_len: return "car_len";
        case Predicate::has_wall: return "has_wall";
    }
    return "?";
}

namespace {

std::optional<Predicate> lookup_predicate(std::string_view name) {
    for (auto p : {Predicate::has_car, Predicate::car_num, Predicate::car_color, Predicate::car_len,
                   Predicate::has_wall}) {
        if (predicate_name(p) == name) return p;
    }
    return std::nullopt;
}

template <std::size_t N>
std::optional<int> index_of(const std::array<std::string_view, N>& names, std::string_view v) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == v) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::optional<int> positive_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0) return std::nullopt;
    return v;
}

bool atom_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FactParser {
public:
    explicit FactParser(std::string_view text) : text_(text) {}

    std::vector<Fact> run() {
        std::vector<Fact> facts;
        skip_ws();
        while (pos_ < text_.size()) {
            facts.push_back(term());
            skip_ws();
        }
        return facts;
    }

private:
    Fact term() {
        const std::size_t name_at = pos_;
        const std::string_view name = atom("predicate name");
        expect('(');
        std::vector<std::pair<std::string, std::size_t>> args;
        skip_ws();
        const std::size_t first_at = pos_;
        args.emplace_back(std::string(atom("argument")), first_at);
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            args.emplace_back(std::string(atom("argument")), at);
            skip_ws();
        }
        expect(')');
        skip_ws();
        expect('.');

        const auto pred = lookup_predicate(name);
        if (!pred) throw FactError(FactErrorKind::unknown_predicate, name_at, "unknown predicate '" + std::string(name) + "'");
        if (args.size() != 2) {
            throw FactError(FactErrorKind::arity, name_at,
                            std::string(name) + " expects 2 arguments, got " + std::to_string(args.size()));
        }
        check_domain(*pred, args[1].first, args[1].second);
        Fact f;
        f.predicate = *pred;
        for (auto& [a, at] : args) f.args.push_back(std::move(a));
        return f;
    }

    static void check_domain(Predicate p, const std::string& value, std::size_t at) {
        bool ok = true;
        switch (p) {
            case Predicate::has_car: break;
            case Predicate::car_num: ok = positive_int(value).has_value(); break;
            case Predicate::car_color: ok = index_of(kColorNames, value).has_value(); break;
            case Predicate::car_len: ok = index_of(kLengthNames, value).has_value(); break;
            case Predicate::has_wall: ok = index_of(kWallNames, value).has_value(); break;
        }
        if (!ok) {
            throw FactError(FactErrorKind::domain, at,
                            "value '" + value + "' outside the domain of " + std::string(predicate_name(p)));
        }
    }

    std::string_view atom(const char* what) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && atom_char(text_[pos_])) ++pos_;
        if (pos_ == start) throw FactError(FactErrorKind::syntax, start, std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw FactError(FactErrorKind::syntax, pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Fact> parse_facts(std::string_view text) { return FactParser(text).run(); }

std::string render_fact(const Fact& fact) {
    std::string out(predicate_name(fact.predicate));
    out += '(';
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
        if (i) out += ", ";
        out += fact.args[i];
    }
    return out + ").";
}

std::string render_facts(const std::vector<Fact>& facts) {
    std::string out;
    for (const auto& f : facts) {
        if (!out.empty()) out += ' ';
        out += render_fact(f);
    }
    return out;
}

TrainModel normalize(const std::vector<Fact>& facts) {
    std::map<std::string, std::size_t> index;
    std::vector<Car> cars;
    std::vector<bool> numbered;
    for (const auto& f : facts) {
        if (f.predicate == Predicate::has_car && !index.count(f.args[1])) {
            index.emplace(f.args[1], cars.size());
            cars.emplace_back();
            numbered.push_back(false);
        }
    }
    auto car_of = [&](const Fact& f) -> std::size_t {
        auto it = index.find(f.args[0]);
        if (it == index.end()) {
            throw NormalizeError(NormalizeErrorKind::orphan_property,
                                 render_fact(f) + " refers to a car without has_car");
        }
        return it->second;
    };
    auto conflict = [](const Fact& f) {
        return NormalizeError(NormalizeErrorKind::conflicting_property, "conflicting " + render_fact(f));
    };
    for (const auto& f : facts) {
        switch (f.predicate) {
            case Predicate::has_car: break;
            case Predicate::car_num: {
                const auto i = car_of(f);
                if (numbered[i]) {
                    throw NormalizeError(NormalizeErrorKind::duplicate_car_num, "car " + f.args[0] + " numbered twice");
                }
                cars[i].position = *positive_int(f.args[1]);
                numbered[i] = true;
                break;
            }
            case Predicate::car_color: {
                auto& c = cars[car_of(f)];
                if (c.color) throw conflict(f);
                c.color = static_cast<Color>(*index_of(kColorNames, f.args[1]));
                break;
            }
            case Predicate::car_len: {
                auto& c = cars[car_of(f)];
                if (c.length) throw conflict(f);
                c.length = static_cast<Length>(*index_of(kLengthNames, f.args[1]));
                break;
            }
            case Predicate::has_wall: {
                auto& c = cars[car_of(f)];
                if (c.wall) throw conflict(f);
                c.wall = static_cast<Wall>(*index_of(kWallNames, f.args[1]));
                break;
            }
        }
    }
    for (const auto& [id, i] : index) {
        if (!numbered[i]) throw NormalizeError(NormalizeErrorKind::missing_car_num, "car " + id + " has no car_num");
    }
    std::sort(cars.begin(), cars.end(), [](const Car& a, const Car& b) { return a.position < b.position; });
    for (std::size_t i = 1; i < cars.size(); ++i) {
        if (cars[i].position == cars[i - 1].position) {
            throw NormalizeError(NormalizeErrorKind::duplicate_car_num,
                                 "two cars share car_num " + std::to_string(cars[i].position));
        }
    }
    return TrainModel{std::move(cars)};
}

std::vector<Fact> train_facts(const TrainModel& train, std::string_view train_id) {
    std::vector<Fact> facts;
    const std::string t(train_id);
    for (const auto& car : train.cars) {
        const std::string c = t + "_c" + std::to_string(car.position);
        facts.push_back({Predicate::has_car, {t, c}});
        facts.push_back({Predicate::car_num, {c, std::to_string(car.position)}});
        if (car.color) facts.push_back({Predicate::car_color, {c, std::string(kColorNames[static_cast<int>(*car.color)])}});
        if (car.length) facts.push_back({Predicate::car_len, {c, std::string(kLengthNames[static_cast<int>(*car.length)])}});
        if (car.wall) facts.push_back({Predicate::has_wall, {c, std::string(kWallNames[static_cast<int>(*car.wall)])}});
    }
    return facts;
}

}  // namespace rsynth::slr
