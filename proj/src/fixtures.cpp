#include "hermitia/fixtures.hpp"

#include <cmath>
#include <sstream>

#include "hermitia/heig.hpp"
#include "hermitia/io.hpp"

namespace hermitia {

ComplexTensor fixture_example_3_2() {
    ComplexTensor a({2, 3});
    const double scale = 1.0 / std::sqrt(86.0);
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            double re = static_cast<double>(j + k + 2);  // (j+1) + (k+1)
            double im = static_cast<double>(j) - static_cast<double>(k);
            a[j * 3 + k] = scale * Complex(re, im);
        }
    }
    return a;
}

namespace {

std::vector<Complex> direction(double alpha, double beta) {
    return {Complex(std::cos(alpha) * std::sin(beta), 0.0),
            Complex(std::sin(alpha) * std::sin(beta), 0.0),
            Complex(std::cos(beta), 0.0)};
}

} // namespace

ComplexTensor fixture_example_3_4() {
    const double pi = 3.14159265358979323846;
    struct Term {
        double weight;
        double a1, b1, a2, b2, a3, b3;
    };
    const Term terms[] = {
        {0.371391, pi / 3, pi / 3, pi / 3, 5 * pi / 6, -pi / 6, 5 * pi / 6},
        {0.742781, pi / 3, 5 * pi / 6, pi / 3, pi / 2, pi / 3, pi / 3},
        {0.557086, pi / 3, pi / 3, -pi / 6, pi / 2, pi / 3, 5 * pi / 6},
    };
    ComplexTensor a({3, 3, 3});
    for (const Term& t : terms) {
        ModeVectorTuple u;
        u.vectors.push_back(direction(t.a1, t.b1));
        u.vectors.push_back(direction(t.a2, t.b2));
        u.vectors.push_back(direction(t.a3, t.b3));
        ComplexTensor prod = product_tensor(u);
        prod *= Complex(t.weight, 0.0);
        a += prod;
    }
    return a;
}

MixedStateEnsemble fixture_example_6_2(double p1, double p2) {
    const double s3 = std::sqrt(3.0);
    const double s18 = 3.0 * std::sqrt(2.0);
    ComplexTensor psi1({2, 2}, {Complex(1 / s3, 0), Complex(1 / s3, 0),
                                Complex(0, 0), Complex(0, 1 / s3)});
    ComplexTensor psi2({2, 2}, {Complex(1 / s18, 0), Complex(-1 / s18, 0),
                                Complex(0, 4 / s18), Complex(0, 0)});
    MixedStateEnsemble e;
    e.probabilities = {p1, p2};
    e.pure_states = {std::move(psi1), std::move(psi2)};
    e.validate();
    return e;
}

ComplexTensor fixture_rank_one(const std::vector<std::size_t>& dims, std::uint64_t seed) {
    Rng rng = Rng::split(seed, 0x72616E6B);
    return product_tensor(random_tuple(rng, dims));
}

MixedStateEnsemble fixture_separable(const std::vector<std::size_t>& dims, std::size_t terms,
                                     std::uint64_t seed) {
    if (terms == 0) throw UnknownFixture("separable fixture needs at least one term");
    Rng rng = Rng::split(seed, 0x73657061);
    MixedStateEnsemble e;
    double sum = 0.0;
    for (std::size_t t = 0; t < terms; ++t) {
        double p = 0.2 + rng.uniform();
        e.probabilities.push_back(p);
        sum += p;
        e.pure_states.push_back(product_tensor(random_tuple(rng, dims)));
    }
    for (double& p : e.probabilities) p /= sum;
    // compensate rounding so the probabilities sum to 1 exactly
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < terms; ++t) acc += e.probabilities[t];
    e.probabilities.back() = 1.0 - acc;
    e.validate();
    return e;
}

namespace {

// "name" or "name(arg,arg,...)"; dims arguments look like [2,2,2]
struct FixtureSpec {
    std::string name;
    std::vector<std::string> args;
};

FixtureSpec parse_fixture_spec(const std::string& text) {
    FixtureSpec spec;
    auto open = text.find('(');
    if (open == std::string::npos) {
        spec.name = text;
        return spec;
    }
    if (text.back() != ')') throw UnknownFixture("malformed fixture arguments: " + text);
    spec.name = text.substr(0, open);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::string current;
    int depth = 0;
    for (char c : inner) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            spec.args.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) spec.args.push_back(current);
    return spec;
}

std::vector<std::size_t> parse_dims_arg(const std::string& text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw UnknownFixture("expected a dimension list like [2,2]: " + text);
    }
    std::vector<std::size_t> dims;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        long v = std::stol(item);
        if (v <= 0) throw UnknownFixture("dimensions must be positive: " + text);
        dims.push_back(static_cast<std::size_t>(v));
    }
    if (dims.empty()) throw UnknownFixture("empty dimension list: " + text);
    return dims;
}

} // namespace

nlohmann::json fixture_by_name(const std::string& name) {
    FixtureSpec spec = parse_fixture_spec(name);
    try {
        if (spec.name == "example-3.2") {
            return complex_tensor_to_json(fixture_example_3_2());
        }
        if (spec.name == "example-3.4") {
            return complex_tensor_to_json(fixture_example_3_4());
        }
        if (spec.name == "example-6.2") {
            double p1 = 0.5, p2 = 0.5;
            if (spec.args.size() == 2) {
                p1 = std::stod(spec.args[0]);
                p2 = std::stod(spec.args[1]);
            } else if (!spec.args.empty()) {
                throw UnknownFixture("example-6.2 takes two weights");
            }
            return ensemble_to_json(fixture_example_6_2(p1, p2));
        }
        if (spec.name == "rank-one") {
            if (spec.args.size() != 2) throw UnknownFixture("rank-one takes (dims, seed)");
            return complex_tensor_to_json(
                fixture_rank_one(parse_dims_arg(spec.args[0]),
                                 static_cast<std::uint64_t>(std::stoull(spec.args[1]))));
        }
        if (spec.name == "separable") {
            if (spec.args.size() != 3) throw UnknownFixture("separable takes (dims, terms, seed)");
            return ensemble_to_json(fixture_separable(
                parse_dims_arg(spec.args[0]), static_cast<std::size_t>(std::stoul(spec.args[1])),
                static_cast<std::uint64_t>(std::stoull(spec.args[2]))));
        }
    } catch (const std::invalid_argument&) {
        throw UnknownFixture("malformed fixture arguments: " + name);
    } catch (const std::out_of_range&) {
        throw UnknownFixture("fixture argument out of range: " + name);
    }
    throw UnknownFixture("unknown fixture: " + spec.name);
}

} // namespace hermitia
