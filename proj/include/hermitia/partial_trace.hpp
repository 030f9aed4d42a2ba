#pragma once

#include <vector>

#include "hermitia/linalg.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// rho(A) = A (x) conj(A); exactly Hermitian
HermitianTensor hermitianize(const ComplexTensor& a);

struct PartialTraceResult {
    std::vector<std::size_t> kept_modes;  // sorted, 0-based
    HermitianTensor tensor;               // over the kept mode dims
};

// Contracts the mode pairs outside `kept` over equal indices. kept must be
// a nonempty subset of the modes.
PartialTraceResult partial_trace(const HermitianTensor& h, std::vector<std::size_t> kept);

// non-k partial trace as an n_k x n_k matrix
HermitianMatrix partial_trace_matrix(const HermitianTensor& h, std::size_t k);

struct SchmidtForm {
    std::vector<double> coefficients;                // sqrt(lambda_i), descending, positive
    std::vector<std::vector<Complex>> left_vectors;  // orthonormal, in C^{n_1}
    std::vector<std::vector<Complex>> right_vectors; // orthonormal, in C^{n_2}
};

// Diagonal expansion A = sum_i sqrt(lambda_i) e_i (x) f_i for order-2 tensors,
// built from the two partial traces of rho(A).
SchmidtForm schmidt_polar(const ComplexTensor& a);

struct OrthogonalSpectraReport {
    double max_spectrum_deviation = 0.0;  // vs {lambda_i^2} per mode
    double max_matrix_deviation = 0.0;    // vs sum lambda_i^2 u u^H per mode
    double max_deviation() const {
        return max_spectrum_deviation > max_matrix_deviation ? max_spectrum_deviation
                                                             : max_matrix_deviation;
    }
};

// For A = sum_i lambda_i u_i^(1) (x) ... (x) u_i^(m) with per-mode orthonormal
// factors, measures how far each mode's partial-trace spectrum is from
// {lambda_i^2} and each partial trace from sum lambda_i^2 u u^H.
OrthogonalSpectraReport verify_orthogonal_decomposition_spectra(
    const std::vector<std::pair<double, ModeVectorTuple>>& terms);

struct RankOneReport {
    bool rank_one = false;
    std::vector<double> top_eigenvalues;  // lambda_max of each rho_k
    std::vector<double> det_residuals;    // |det(rho_k - I)| per mode
    bool normalized_input = false;        // true when the input had to be rescaled
};

// A (unit norm) is rank-one iff every non-k partial trace of rho(A) has the
// single nonzero eigenvalue 1. Non-unit input is normalized and flagged.
RankOneReport is_rank_one(const ComplexTensor& a, double tol = 1e-8);

struct SpectraSimilarityReport {
    double max_deviation = 0.0;
};

// Spectra of the partial traces of rho(A) and rho(A x_1 Q_1 ... x_m Q_m)
// agree for unitary Q_k; returns the largest deviation observed.
SpectraSimilarityReport partial_trace_spectra_similarity(const ComplexTensor& a,
                                                         const std::vector<ComplexMatrix>& q);

} // namespace hermitia
