#pragma once

#include <cmath>
#include <vector>

#include "hermitia/decomposition.hpp"
#include "hermitia/fixtures.hpp"
#include "hermitia/heig.hpp"
#include "hermitia/io.hpp"
#include "hermitia/linalg.hpp"
#include "hermitia/partial_trace.hpp"
#include "hermitia/quantum.hpp"
#include "hermitia/random.hpp"
#include "hermitia/tensor.hpp"

namespace test_support {

using hermitia::Complex;
using hermitia::ComplexTensor;
using hermitia::HermitianTensor;
using hermitia::ModeVectorTuple;
using hermitia::Rng;

// Independent reconstruction of rho(A) entry by entry through multi-index
// odometers; deliberately avoids hermitianize's flat loops.
inline ComplexTensor oracle_outer(const ComplexTensor& a) {
    std::vector<std::size_t> doubled = a.dims();
    doubled.insert(doubled.end(), a.dims().begin(), a.dims().end());
    ComplexTensor out(doubled);
    const std::size_t m = a.order();
    std::vector<std::size_t> idx(2 * m, 0);
    do {
        std::vector<std::size_t> i(idx.begin(), idx.begin() + m);
        std::vector<std::size_t> j(idx.begin() + m, idx.end());
        out.at(idx) = a.at(i) * std::conj(a.at(j));
    } while (hermitia::next_index(doubled, idx));
    return out;
}

// entrywise |x|^2 accumulation, the direct-summation oracle for norms
inline double oracle_abs_square_sum(const std::vector<Complex>& entries) {
    double s = 0.0;
    for (const Complex& z : entries) s += std::norm(z);
    return s;
}

inline double max_entry_distance(const HermitianTensor& a, const HermitianTensor& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    }
    return d;
}

// unit tensor sum lambda_1 T_1 + lambda_2 T_2 over per-mode orthonormal
// factors, with lambda_1^2 + lambda_2^2 = 1 and both weights >= min_weight
inline ComplexTensor two_term_orthogonal_mixture(Rng& rng, const std::vector<std::size_t>& dims,
                                                 double min_weight) {
    const double lo = min_weight * min_weight;
    double w = lo + (1.0 - 2.0 * lo) * rng.uniform();  // lambda_1^2 in [lo, 1-lo]
    double l1 = std::sqrt(w), l2 = std::sqrt(1.0 - w);

    ModeVectorTuple u1, u2;
    for (std::size_t n : dims) {
        auto pair = hermitia::random_orthonormal_set(rng, n, 2);
        u1.vectors.push_back(pair[0]);
        u2.vectors.push_back(pair[1]);
    }
    ComplexTensor t1 = hermitia::product_tensor(u1);
    t1 *= Complex(l1, 0.0);
    ComplexTensor t2 = hermitia::product_tensor(u2);
    t2 *= Complex(l2, 0.0);
    return t1 + t2;
}

// random mixture of product pure states as an ensemble
inline hermitia::MixedStateEnsemble random_separable_ensemble(Rng& rng,
                                                              const std::vector<std::size_t>& dims,
                                                              std::size_t terms) {
    hermitia::MixedStateEnsemble e;
    double sum = 0.0;
    for (std::size_t t = 0; t < terms; ++t) {
        double p = 0.2 + rng.uniform();
        e.probabilities.push_back(p);
        sum += p;
        e.pure_states.push_back(hermitia::product_tensor(hermitia::random_tuple(rng, dims)));
    }
    for (double& p : e.probabilities) p /= sum;
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < terms; ++t) acc += e.probabilities[t];
    e.probabilities.back() = 1.0 - acc;
    return e;
}

} // namespace test_support
