#pragma once

#include <cstdint>
#include <vector>

#include "hermitia/linalg.hpp"
#include "hermitia/random.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// H(x) = <H, (x)x_i (x) conj(x_j)>; real for Hermitian H. Throws
// NonRealValue if the imaginary residue exceeds 1e-10.
double evaluate(const HermitianTensor& h, const ModeVectorTuple& x);

// Vector whose entries contract H against all x_i and all conj(x_j) for
// j != k, leaving the j = k conjugate slot open. At an eigentuple this
// equals lambda * x_k.
std::vector<Complex> gradient_contraction(const HermitianTensor& h, const ModeVectorTuple& x,
                                          std::size_t k);

// Effective Hermitian matrix M_k with H(x) = x_k^H M_k x_k (all other mode
// vectors fixed); gradient_contraction(h, x, k) == M_k x_k.
HermitianMatrix effective_mode_matrix(const HermitianTensor& h, const ModeVectorTuple& x,
                                      std::size_t k);

struct HermitianEigenpair {
    double lambda = 0.0;
    ModeVectorTuple x;            // unit vectors, phase-gauged
    double residual = 0.0;        // max over modes of ||M_k x_k - lambda x_k||
    int iterations = 0;           // completed sweeps
    std::uint64_t start_seed = 0; // start index within a multi-start search
    bool converged = false;
};

enum class Objective { Max, Min };

struct PowerOptions {
    double lambda_tol = 1e-10;   // per-sweep change of lambda
    double residual_tol = 1e-8;  // stationarity acceptance
    int max_iters = 2000;
};

// Alternating mode updates from `start`: each sweep replaces x_k by the
// extreme eigenvector of the effective matrix M_k, which maximizes
// (minimizes) H(x) over that mode exactly. Stops when the per-sweep change
// of lambda or the stationarity residual falls below tolerance; if the
// sweep budget runs out the pair is returned with converged = false.
HermitianEigenpair power_iterate(const HermitianTensor& h, const ModeVectorTuple& start,
                                 Objective objective, const PowerOptions& opts = {});

// Best max/min eigenpair over seeded random starts; deterministic for a
// fixed seed. Ties keep the earliest start.
std::pair<HermitianEigenpair, HermitianEigenpair> extreme_hermitian_eigenvalues(
    const HermitianTensor& h, int starts = 32, std::uint64_t seed = 1,
    const PowerOptions& opts = {});

struct NonnegativityReport {
    enum class Verdict { NonnegativeSoFar, NegativeWitness };
    double min_value_found = 0.0;
    ModeVectorTuple witness;
    int starts = 0;
    Verdict verdict = Verdict::NonnegativeSoFar;
};

// Multi-start search for a unit tuple with H(x) < -1e-9. A clean pass is
// evidence, not proof; the verdict name says so.
NonnegativityReport nonnegativity_probe(const HermitianTensor& h, int starts = 32,
                                        std::uint64_t seed = 1);

// seeded random helpers shared by the multi-start searches and fixtures
std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n);
ModeVectorTuple random_tuple(Rng& rng, const std::vector<std::size_t>& dims);
ComplexMatrix random_unitary(Rng& rng, std::size_t n);
ComplexTensor random_complex_tensor(Rng& rng, const std::vector<std::size_t>& dims);
HermitianTensor random_hermitian_tensor(Rng& rng, const std::vector<std::size_t>& mode_dims);
std::vector<std::vector<Complex>> random_orthonormal_set(Rng& rng, std::size_t n, std::size_t count);

} // namespace hermitia
