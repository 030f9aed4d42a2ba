#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "test_support.hpp"

using namespace hermitia;
using test_support::oracle_abs_square_sum;
using test_support::oracle_outer;

namespace {

ModeVectorTuple basis_tuple(const std::vector<std::size_t>& dims) {
    ModeVectorTuple u;
    for (std::size_t n : dims) {
        std::vector<Complex> e(n, 0.0);
        e[0] = 1.0;
        u.vectors.push_back(std::move(e));
    }
    return u;
}

const std::vector<std::vector<std::size_t>> kShapes = {{2}, {2, 2}, {2, 3}, {2, 2, 2}};

} // namespace

TEST_CASE("is_hermitian accepts the zero tensor") {
    ComplexTensor zero({2, 2, 2, 2});
    CHECK(is_hermitian(zero, 0.0));
}

TEST_CASE("is_hermitian accepts a conjugate pair by construction") {
    ComplexTensor t({2, 2, 2, 2});
    t.at({0, 0, 0, 1}) = Complex(0, 1);
    t.at({0, 1, 0, 0}) = Complex(0, -1);
    CHECK(is_hermitian(t, 0.0));

    t.at({0, 1, 0, 0}) = Complex(0, 1);  // break the pairing
    CHECK_FALSE(is_hermitian(t, 1e-12));
    HermiticityReport rep = hermiticity_defect(t);
    CHECK(rep.max_defect == doctest::Approx(2.0));
}

TEST_CASE("is_hermitian accepts a brute-force two-state mixture") {
    MixedStateEnsemble e = fixture_example_6_2();
    std::vector<std::size_t> doubled{2, 2, 2, 2};
    ComplexTensor h(doubled);
    for (std::size_t t = 0; t < 2; ++t) {
        ComplexTensor outer = oracle_outer(e.pure_states[t]);
        outer *= Complex(e.probabilities[t], 0.0);
        h += outer;
    }
    CHECK(is_hermitian(h, 1e-14));
}

TEST_CASE("is_hermitian rejects non-doubled shapes") {
    CHECK_THROWS_AS(is_hermitian(ComplexTensor({2, 2, 3}), 1e-12), ShapeMismatch);
    CHECK_THROWS_AS(is_hermitian(ComplexTensor({2, 3, 3, 2}), 1e-12), ShapeMismatch);
}

TEST_CASE("inner_product basics") {
    Rng rng(11);
    ModeVectorTuple u = random_tuple(rng, {2, 3});
    HermitianTensor h = rank_one(u);
    CHECK(inner_product(h, h).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner_product(h, HermitianTensor::zero({2, 3}))) == 0.0);

    HermitianTensor r = random_hermitian_tensor(rng, {2, 2});
    CHECK(inner_product(r, r).real() ==
          doctest::Approx(oracle_abs_square_sum(r.data())).epsilon(1e-12));
    CHECK_THROWS_AS(inner_product(h, r), ShapeMismatch);
}

TEST_CASE("frobenius_norm basics") {
    CHECK(frobenius_norm(HermitianTensor::zero({2, 2})) == 0.0);
    Rng rng(12);
    HermitianTensor h = rank_one(random_tuple(rng, {3, 2}));
    CHECK(frobenius_norm(h) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitianized third-order example has unit norm") {
    ComplexTensor a = fixture_example_3_4();
    CHECK(std::abs(a.norm() - 1.0) < 1e-6);
    HermitianTensor rho = hermitianize(a);
    CHECK(std::abs(frobenius_norm(rho) - 1.0) < 1e-6);
}

TEST_CASE("matrix_trace of a rank-one tensor is the product of squared norms") {
    Rng rng(13);
    for (const auto& dims : kShapes) {
        ModeVectorTuple u;
        double expect = 1.0;
        for (std::size_t n : dims) {
            std::vector<Complex> v(n);
            for (Complex& z : v) z = rng.complex_gaussian();  // deliberately non-unit
            double s = 0.0;
            for (const Complex& z : v) s += std::norm(z);
            expect *= s;
            u.vectors.push_back(std::move(v));
        }
        CHECK(matrix_trace(rank_one(u)) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("matrix_trace of an orthonormal mixture is one") {
    HermitianTensor h = density_tensor(fixture_example_6_2(0.3, 0.7));
    CHECK(matrix_trace(h) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("matrix_trace flags a corrupted diagonal") {
    // bypass validation to simulate corrupted data reaching the trace
    std::vector<Complex> bad{Complex(0, 1), Complex(0, 0), Complex(0, 0), Complex(0, 1)};
    HermitianTensor h({2}, std::move(bad), HermitianTensor::Trusted{});
    CHECK_THROWS_AS(matrix_trace(h), NonRealTrace);
}

TEST_CASE("rank_one places a single unit at the all-ones index") {
    HermitianTensor h = rank_one(basis_tuple({2, 3, 2}));
    CHECK(h.entry({0, 0, 0}, {0, 0, 0}) == Complex(1.0));
    double sum = oracle_abs_square_sum(h.data());
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("rank_one of (1, i)/sqrt2 is the known 2x2 matrix") {
    const double s = 1.0 / std::sqrt(2.0);
    ModeVectorTuple u;
    u.vectors.push_back({Complex(s, 0), Complex(0, s)});
    HermitianTensor h = rank_one(u);
    CHECK(std::abs(h.raw(0, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(h.raw(0, 1) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(h.raw(1, 0) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(h.raw(1, 1) - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("pairing a Hermitian tensor with any rank-one tensor is real") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& dims = kShapes[trial % kShapes.size()];
        HermitianTensor a = random_hermitian_tensor(rng, dims);
        HermitianTensor b = rank_one(random_tuple(rng, dims));
        CHECK(std::abs(inner_product(a, b).imag()) <= 1e-12);
    }
}

TEST_CASE("mode_product with the identity is the identity") {
    Rng rng(15);
    ComplexTensor a = random_complex_tensor(rng, {2, 3, 2});
    ComplexTensor b = mode_product(a, 1, ComplexMatrix::identity(3));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("mode_product contraction orientation on an order-2 tensor") {
    // (A x_1 Q)(i, c) = sum_t A(t, c) Q(t, i), i.e. Q^T A
    Rng rng(16);
    ComplexTensor a = random_complex_tensor(rng, {2, 2});
    ComplexMatrix q(2, 2);
    for (Complex& z : q.data()) z = rng.complex_gaussian();
    ComplexTensor b = mode_product(a, 0, q);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t c = 0; c < 2; ++c) {
            Complex want = a.at({0, c}) * q(0, i) + a.at({1, c}) * q(1, i);
            CHECK(std::abs(b.at({i, c}) - want) < 1e-14);
        }
    }
}

TEST_CASE("mode products on disjoint modes commute") {
    Rng rng(17);
    ComplexTensor a = random_complex_tensor(rng, {2, 3});
    ComplexMatrix q1 = random_unitary(rng, 2);
    ComplexMatrix q2 = random_unitary(rng, 3);
    ComplexTensor left = mode_product(mode_product(a, 0, q1), 1, q2);
    ComplexTensor right = mode_product(mode_product(a, 1, q2), 0, q1);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(left[i] - right[i]) < 1e-14);
}

TEST_CASE("unitary_transform with identities is the identity") {
    Rng rng(18);
    HermitianTensor a = random_hermitian_tensor(rng, {2, 2});
    std::vector<ComplexMatrix> q{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
    HermitianTensor b = unitary_transform(a, q);
    CHECK(test_support::max_entry_distance(a, b) < 1e-15);
}

TEST_CASE("unitary_transform preserves trace, norm and hermiticity") {
    Rng rng(19);
    for (const auto& dims : kShapes) {
        HermitianTensor a = random_hermitian_tensor(rng, dims);
        std::vector<ComplexMatrix> q;
        for (std::size_t n : dims) q.push_back(random_unitary(rng, n));
        HermitianTensor b = unitary_transform(a, q);
        CHECK(std::abs(matrix_trace(a) - matrix_trace(b)) <= 1e-10);
        CHECK(std::abs(frobenius_norm(a) - frobenius_norm(b)) <= 1e-10);
        CHECK(is_hermitian(b.as_complex_tensor(), 1e-12));
    }
}

TEST_CASE("two unitary transforms compose into one") {
    Rng rng(20);
    HermitianTensor a = random_hermitian_tensor(rng, {2, 3});
    std::vector<ComplexMatrix> p{random_unitary(rng, 2), random_unitary(rng, 3)};
    std::vector<ComplexMatrix> q{random_unitary(rng, 2), random_unitary(rng, 3)};
    HermitianTensor two_step = unitary_transform(unitary_transform(a, p), q);
    std::vector<ComplexMatrix> pq{multiply(p[0], q[0]), multiply(p[1], q[1])};
    HermitianTensor one_step = unitary_transform(a, pq);
    CHECK(test_support::max_entry_distance(two_step, one_step) <= 1e-10);
}

TEST_CASE("unitary_transform rejects a non-unitary matrix") {
    HermitianTensor a = HermitianTensor::zero({2, 2});
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(0, 0) = 2.0;
    std::vector<ComplexMatrix> q{ComplexMatrix::identity(2), bad};
    try {
        unitary_transform(a, q);
        FAIL("expected NotUnitary");
    } catch (const NotUnitary& e) {
        CHECK(e.mode == 1);
    }
}

TEST_CASE("symmetric-Hermitian predicate") {
    Rng rng(21);
    std::vector<Complex> v = random_unit_vector(rng, 2);
    ModeVectorTuple same;
    same.vectors = {v, v};
    CHECK(is_symmetric_hermitian(rank_one(same), 1e-12));
    CHECK(is_symmetric_hermitian(HermitianTensor::zero({2, 2}), 0.0));

    ModeVectorTuple diff;
    diff.vectors = {random_unit_vector(rng, 2), random_unit_vector(rng, 2)};
    HermitianTensor h = rank_one(diff);
    // swapped entries differ for generic unequal factors
    CHECK_FALSE(is_symmetric_hermitian(h, 1e-8));
    CHECK_THROWS_AS(is_symmetric_hermitian(HermitianTensor::zero({2, 3}), 1e-12), ShapeMismatch);
}

TEST_CASE("conjugate partial-symmetric predicate") {
    Rng rng(22);
    std::vector<Complex> v = random_unit_vector(rng, 2);
    ModeVectorTuple same;
    same.vectors = {v, v};
    CHECK(is_conjugate_partial_symmetric(rank_one(same), 1e-12));

    // symmetric-Hermitian but not conjugate partial-symmetric: the i- and
    // j-blocks only permute simultaneously
    HermitianTensor h = HermitianTensor::zero({2, 2});
    h.raw(1, 1) = 1.0;  // entry ((0,1),(0,1))
    h.raw(2, 2) = 1.0;  // entry ((1,0),(1,0))
    CHECK(is_symmetric_hermitian(h, 1e-12));
    CHECK_FALSE(is_conjugate_partial_symmetric(h, 1e-12));
}

TEST_CASE("construction validates hermiticity and symmetrize repairs it") {
    std::vector<Complex> bad{Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0)};
    CHECK_THROWS_AS(HermitianTensor::from_entries({2}, bad), NotHermitian);
    HermitianTensor fixed = HermitianTensor::symmetrized({2}, bad);
    CHECK(std::abs(fixed.raw(0, 1) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(fixed.raw(1, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(is_hermitian(fixed.as_complex_tensor(), 0.0));
}

TEST_CASE("construction rejects non-finite entries") {
    std::vector<Complex> bad{Complex(0, 0), Complex(0, 0), Complex(0, 0),
                             Complex(std::numeric_limits<double>::infinity(), 0)};
    CHECK_THROWS_AS(HermitianTensor::from_entries({2}, bad), NonFiniteEntry);
    CHECK_THROWS_AS(ComplexTensor({2, 2}, bad), NonFiniteEntry);
}

TEST_CASE("every construction path stays Hermitian at 1e-12") {
    Rng rng(23);
    for (const auto& dims : kShapes) {
        CHECK(is_hermitian(rank_one(random_tuple(rng, dims)).as_complex_tensor(), 0.0));
        CHECK(is_hermitian(hermitianize(random_complex_tensor(rng, dims)).as_complex_tensor(), 0.0));
        CHECK(is_hermitian(random_hermitian_tensor(rng, dims).as_complex_tensor(), 0.0));
        CHECK(is_hermitian(identity_tensor(dims).as_complex_tensor(), 0.0));
    }
}
