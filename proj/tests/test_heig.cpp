#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace hermitia;

namespace {

// quadratic form of the flattening at the flattened product vector; the
// independent route for evaluate()
double flat_quadratic_form(const HermitianTensor& h, const ModeVectorTuple& x) {
    ComplexTensor prod = product_tensor(x);
    const std::size_t n = prod.size();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::conj(prod[i]) * h.raw(i, j) * prod[j];
        }
    }
    return acc.real();
}

ModeVectorTuple replace_mode(const ModeVectorTuple& x, std::size_t k, std::vector<Complex> v) {
    ModeVectorTuple out = x;
    out.vectors[k] = std::move(v);
    return out;
}

} // namespace

TEST_CASE("evaluate on the identity-like tensor and a rank-one tensor") {
    Rng rng(61);
    ModeVectorTuple x = random_tuple(rng, {2, 3});
    CHECK(evaluate(identity_tensor({2, 3}), x) == doctest::Approx(1.0).epsilon(1e-12));

    ModeVectorTuple u = random_tuple(rng, {2, 2, 2});
    CHECK(evaluate(rank_one(u), u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate equals the flattened quadratic form") {
    Rng rng(62);
    for (const auto& dims : std::vector<std::vector<std::size_t>>{{2}, {2, 2}, {2, 3}}) {
        HermitianTensor h = random_hermitian_tensor(rng, dims);
        ModeVectorTuple x = random_tuple(rng, dims);
        CHECK(std::abs(evaluate(h, x) - flat_quadratic_form(h, x)) <= 1e-10);
    }
}

TEST_CASE("gradient_contraction at a rank-one fixed point returns the factor") {
    Rng rng(63);
    ModeVectorTuple u = random_tuple(rng, {2, 3});
    HermitianTensor h = rank_one(u);
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<Complex> g = gradient_contraction(h, u, k);
        for (std::size_t a = 0; a < g.size(); ++a) {
            CHECK(std::abs(g[a] - u.vectors[k][a]) < 1e-12);
        }
    }
}

TEST_CASE("gradient_contraction for matrices is the matrix-vector product") {
    Rng rng(64);
    HermitianTensor h = random_hermitian_tensor(rng, {4});
    ModeVectorTuple x = random_tuple(rng, {4});
    std::vector<Complex> g = gradient_contraction(h, x, 0);
    for (std::size_t a = 0; a < 4; ++a) {
        Complex want = 0.0;
        for (std::size_t b = 0; b < 4; ++b) want += h.raw(a, b) * x.vectors[0][b];
        CHECK(std::abs(g[a] - want) < 1e-12);
    }
}

TEST_CASE("gradient_contraction matches central finite differences") {
    Rng rng(65);
    const double step = 1e-5;
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<std::size_t> dims{2, 2, 2};
        HermitianTensor h = random_hermitian_tensor(rng, dims);
        ModeVectorTuple x = random_tuple(rng, dims);
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::vector<Complex> g = gradient_contraction(h, x, k);
            for (std::size_t a = 0; a < dims[k]; ++a) {
                std::vector<Complex> up = x.vectors[k], down = x.vectors[k];
                up[a] += step;
                down[a] -= step;
                double d_re = (evaluate(h, replace_mode(x, k, up)) -
                               evaluate(h, replace_mode(x, k, down))) /
                              (2 * step);
                up = x.vectors[k];
                down = x.vectors[k];
                up[a] += Complex(0, step);
                down[a] -= Complex(0, step);
                double d_im = (evaluate(h, replace_mode(x, k, up)) -
                               evaluate(h, replace_mode(x, k, down))) /
                              (2 * step);
                CHECK(std::abs(d_re - 2 * g[a].real()) <= 1e-6);
                CHECK(std::abs(d_im - 2 * g[a].imag()) <= 1e-6);
            }
        }
    }
}

TEST_CASE("power_iterate recovers a rank-one tensor from any start") {
    Rng rng(66);
    ModeVectorTuple u = random_tuple(rng, {2, 3, 2});
    HermitianTensor h = rank_one(u);
    HermitianEigenpair pair = power_iterate(h, random_tuple(rng, {2, 3, 2}), Objective::Max);
    CHECK(pair.converged);
    CHECK(pair.lambda == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t k = 0; k < 3; ++k) {
        Complex overlap = 0.0;
        for (std::size_t a = 0; a < u.vectors[k].size(); ++a) {
            overlap += std::conj(pair.x.vectors[k][a]) * u.vectors[k][a];
        }
        CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("power_iterate on matrices matches the eigensolver") {
    Rng rng(67);
    HermitianTensor h = random_hermitian_tensor(rng, {6});
    std::vector<double> spec = matrix_eigenvalues(h);
    auto [up, down] = extreme_hermitian_eigenvalues(h, 8, 5);
    CHECK(std::abs(up.lambda - spec.front()) <= 1e-8);
    CHECK(std::abs(down.lambda - spec.back()) <= 1e-8);
    CHECK(up.residual <= 1e-8);
    CHECK(down.residual <= 1e-8);
}

TEST_CASE("power_iterate on the identity tensor settles immediately") {
    Rng rng(68);
    HermitianTensor id = identity_tensor({2, 2});
    HermitianEigenpair pair = power_iterate(id, random_tuple(rng, {2, 2}), Objective::Max);
    CHECK(pair.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.iterations == 1);
}

TEST_CASE("extreme eigenvalues of an orthogonal difference of products") {
    Rng rng(69);
    ModeVectorTuple u, v;
    for (std::size_t k = 0; k < 2; ++k) {
        auto pair = random_orthonormal_set(rng, 2, 2);
        u.vectors.push_back(pair[0]);
        v.vectors.push_back(pair[1]);
    }
    HermitianTensor hu = rank_one(u);
    HermitianTensor hv = rank_one(v);
    std::vector<Complex> diff(hu.size());
    for (std::size_t i = 0; i < hu.size(); ++i) diff[i] = hu.data()[i] - hv.data()[i];
    HermitianTensor h = HermitianTensor::from_entries({2, 2}, diff);

    CHECK(evaluate(h, u) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(evaluate(h, v) == doctest::Approx(-1.0).epsilon(1e-10));

    auto [up, down] = extreme_hermitian_eigenvalues(h, 16, 3);
    CHECK(up.lambda == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(down.lambda == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("density tensors have nonnegative Hermitian values") {
    Rng rng(70);
    HermitianTensor h = density_tensor(fixture_example_6_2());
    auto [up, down] = extreme_hermitian_eigenvalues(h, 16, 1);
    (void)up;
    CHECK(down.lambda >= -1e-8);
}

TEST_CASE("accepted eigenpairs satisfy the stationarity identities") {
    Rng rng(71);
    for (const auto& dims : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
        HermitianTensor h = random_hermitian_tensor(rng, dims);
        auto [up, down] = extreme_hermitian_eigenvalues(h, 8, 2);
        for (const HermitianEigenpair* p : {&up, &down}) {
            CHECK(p->converged);
            CHECK(p->x.is_normalized(1e-12));
            CHECK(std::abs(p->lambda - evaluate(h, p->x)) <= 1e-10);
            // the two stationarity equations are conjugates: the open-slot
            // contraction residual equals the residual of its conjugate
            for (std::size_t k = 0; k < dims.size(); ++k) {
                std::vector<Complex> g = gradient_contraction(h, p->x, k);
                double res13 = 0.0, res12 = 0.0;
                for (std::size_t a = 0; a < g.size(); ++a) {
                    res13 += std::norm(g[a] - p->lambda * p->x.vectors[k][a]);
                    res12 += std::norm(std::conj(g[a]) -
                                       p->lambda * std::conj(p->x.vectors[k][a]));
                }
                CHECK(std::sqrt(res13) <= 1e-7);
                CHECK(std::abs(res13 - res12) <= 1e-14);
            }
        }
    }
}

TEST_CASE("converged matrix eigenvalues belong to the spectrum") {
    Rng rng(72);
    HermitianTensor h = random_hermitian_tensor(rng, {5});
    std::vector<double> spec = matrix_eigenvalues(h);
    for (int s = 0; s < 50; ++s) {
        Rng srng = Rng::split(9, static_cast<std::uint64_t>(s));
        HermitianEigenpair pair =
            power_iterate(h, random_tuple(srng, {5}), s % 2 == 0 ? Objective::Max : Objective::Min);
        if (!pair.converged) continue;
        double best = 1e9;
        for (double w : spec) best = std::min(best, std::abs(w - pair.lambda));
        CHECK(best <= 1e-7);
    }
}

TEST_CASE("evaluate transforms contravariantly under unitary transforms") {
    Rng rng(73);
    const std::vector<std::size_t> dims{2, 3};
    HermitianTensor h = random_hermitian_tensor(rng, dims);
    std::vector<ComplexMatrix> q{random_unitary(rng, 2), random_unitary(rng, 3)};
    HermitianTensor moved = unitary_transform(h, q);
    ModeVectorTuple x = random_tuple(rng, dims);

    // evaluate(A x Q, x) = evaluate(A, x') with x'_k = conj(Q_k) x_k
    ModeVectorTuple pulled;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<Complex> v(dims[k], 0.0);
        for (std::size_t t = 0; t < dims[k]; ++t) {
            for (std::size_t i = 0; i < dims[k]; ++i) {
                v[t] += std::conj(q[k](t, i)) * x.vectors[k][i];
            }
        }
        pulled.vectors.push_back(std::move(v));
    }
    CHECK(std::abs(evaluate(moved, x) - evaluate(h, pulled)) <= 1e-10);
}

TEST_CASE("nonnegativity probe outcomes") {
    Rng rng(74);
    hermitia::MixedStateEnsemble e = test_support::random_separable_ensemble(rng, {2, 2}, 3);
    NonnegativityReport clean = nonnegativity_probe(density_tensor(e), 8, 1);
    CHECK(clean.verdict == NonnegativityReport::Verdict::NonnegativeSoFar);
    CHECK(clean.min_value_found >= -1e-9);

    ModeVectorTuple u = random_tuple(rng, {2, 2});
    HermitianTensor pos = rank_one(u);
    std::vector<Complex> negated(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) negated[i] = -pos.data()[i];
    HermitianTensor neg = HermitianTensor::from_entries({2, 2}, negated);
    NonnegativityReport hit = nonnegativity_probe(neg, 8, 1);
    CHECK(hit.verdict == NonnegativityReport::Verdict::NegativeWitness);
    CHECK(hit.min_value_found == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(evaluate(neg, hit.witness) == doctest::Approx(hit.min_value_found).epsilon(1e-12));

    // scaling the tensor scales the witness value
    std::vector<Complex> scaled(neg.size());
    for (std::size_t i = 0; i < neg.size(); ++i) scaled[i] = 2.5 * neg.data()[i];
    NonnegativityReport hit2 =
        nonnegativity_probe(HermitianTensor::from_entries({2, 2}, scaled), 8, 1);
    CHECK(hit2.verdict == NonnegativityReport::Verdict::NegativeWitness);
    CHECK(hit2.min_value_found == doctest::Approx(2.5 * hit.min_value_found).epsilon(1e-8));
}
