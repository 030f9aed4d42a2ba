#pragma once

#include <vector>

#include "hermitia/linalg.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// H = sum_i lambda_i U_i (x) conj(U_i) with orthonormal tensors U_i and
// nonzero real lambda_i (descending by value); s equals the rank of
// flatten(H) under the zero cutoff.
struct EigenMatrixDecomposition {
    std::vector<std::size_t> mode_dims;
    std::vector<double> lambdas;
    std::vector<ComplexTensor> factors;
    std::size_t s() const { return lambdas.size(); }
};

EigenMatrixDecomposition eigen_matrix_decompose(const HermitianTensor& h);

struct HermitianDecompositionTerm {
    double weight = 0.0;      // real, not necessarily positive
    ModeVectorTuple factors;  // unit vectors
};

// H = sum_i weight_i (x)u_i (x) conj(u_i) over rank-one product tensors.
struct HermitianDecomposition {
    std::vector<std::size_t> mode_dims;
    std::vector<HermitianDecompositionTerm> terms;
    std::size_t r() const { return terms.size(); }
    bool positive() const;  // all weights > 0
};

// Constructive decomposition over the canonical rank-one product basis:
// per mode, the n_k^2 projectors v v^H with v in
// {e_a} U {(e_a+e_b)/sqrt2, a<b} U {(e_a+i e_b)/sqrt2, a<b}.
// Solves one real n^2 x n^2 system (n = prod n_k); throws BudgetExceeded
// when n exceeds the solve budget.
HermitianDecomposition hermitian_decompose(const HermitianTensor& h,
                                           std::size_t max_flat_dim = 64);

HermitianTensor reconstruct(const EigenMatrixDecomposition& d);
HermitianTensor reconstruct(const HermitianDecomposition& d);

// ||H - reconstruction||_F, maxed with the re-checked side conditions
// (factor orthonormality / unit factor vectors).
double verify_decomposition(const HermitianTensor& h, const EigenMatrixDecomposition& d);
double verify_decomposition(const HermitianTensor& h, const HermitianDecomposition& d);

// Q linking two positive decompositions of the same tensor: V = U Q with
// Q Q^H = I, where U stacks the s flattened scaled eigen factors and V the
// r flattened scaled candidate factors.
struct HJWRelation {
    ComplexMatrix q;                   // s x r
    double co_isometry_defect = 0.0;   // ||Q Q^H - I_s||_F
    double reconstruction_defect = 0.0; // max column norm of U Q - V
};

// Both factor lists carry their sqrt-weight scaling. Requires the two lists
// to represent the same tensor (equal Gram matrices sum u u^H within 1e-8);
// throws NotSameTensor otherwise, RankDeficientU when U drops rank.
HJWRelation hjw_relate(const std::vector<ComplexTensor>& scaled_u_factors,
                       const std::vector<ComplexTensor>& scaled_v_factors);

// Overlap matrix between a positive eigen decomposition and a candidate
// positive decomposition: Q(i,j) = sqrt(p_i / lambda_j) <U_j, (x)u_i>.
// All residuals are <= 1e-8 exactly when the candidate is a genuine
// positive decomposition of the same tensor.
struct OverlapReport {
    ComplexMatrix q;                    // r x s
    double orthogonality_defect = 0.0;  // ||Q^H Q - I_s||_F
    double forward_residual = 0.0;      // rows sqrt(p_i) vec((x)u_i) vs Q rows sqrt(l_j) vec(U_j)
    double backward_residual = 0.0;     // the adjoint identity
};

OverlapReport overlap_Q(const EigenMatrixDecomposition& eigen,
                        const HermitianDecomposition& candidate);

} // namespace hermitia
