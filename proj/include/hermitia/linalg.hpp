#pragma once

#include <vector>

#include "hermitia/tensor.hpp"

namespace hermitia {

// n x n complex matrix with M = M^H within tolerance.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    static HermitianMatrix from_entries(std::size_t n, std::vector<Complex> entries,
                                        double tol = kDefaultHermiticityTol);
    static HermitianMatrix symmetrized(std::size_t n, std::vector<Complex> entries,
                                       double tol = kDefaultHermiticityTol);
    static HermitianMatrix zero(std::size_t n);

    struct Trusted {};
    HermitianMatrix(std::size_t n, std::vector<Complex> entries, Trusted,
                    double tol = kDefaultHermiticityTol);

    std::size_t n() const { return n_; }
    double tol() const { return tol_; }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    std::vector<Complex>& data() { return a_; }
    const std::vector<Complex>& data() const { return a_; }

    double frobenius_norm() const;
    double trace() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
    double tol_ = kDefaultHermiticityTol;
};

struct MatrixSpectrum {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // columns, orthonormal, phase-gauged
    double residual = 0.0;            // ||M - V diag(w) V^H||_F
};

// Row-major multi-index bijection (mode 1 slowest). flatten/fold are pure
// relabelings; no arithmetic is performed.
HermitianMatrix flatten(const HermitianTensor& h);
HermitianTensor unflatten(const HermitianMatrix& m, const std::vector<std::size_t>& mode_dims);
ComplexTensor fold_vector(const std::vector<Complex>& q, const std::vector<std::size_t>& mode_dims);
std::vector<Complex> tensor_to_vector(const ComplexTensor& t);

// Cyclic Jacobi eigendecomposition for complex Hermitian matrices.
// Deterministic: eigenvalues descending, each eigenvector scaled so its
// first component of modulus > 1e-8 is real positive, degenerate groups
// ordered by the gauged vectors lexicographically.
MatrixSpectrum eigh(const HermitianMatrix& m);

// eigenvalues of flatten(h), descending
std::vector<double> matrix_eigenvalues(const HermitianTensor& h);

// |w| <= cutoff counts as a zero eigenvalue for rank decisions
inline double zero_eigenvalue_cutoff(double matrix_norm) {
    return 1e-10 * (matrix_norm > 1.0 ? matrix_norm : 1.0);
}

// Dense real LU with partial pivoting and one step of iterative refinement.
// Throws SingularBasisSystem when a pivot falls below the relative threshold.
class RealLinearSolver {
public:
    RealLinearSolver(std::vector<double> a, std::size_t n);  // a: n x n row-major
    std::vector<double> solve(const std::vector<double>& b) const;

private:
    std::vector<double> solve_once(const std::vector<double>& b) const;
    std::size_t n_;
    std::vector<double> original_;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
};

// Solve A X = B for small dense complex A (partial pivoting). Throws
// RankDeficientU when A is numerically singular.
ComplexMatrix solve_complex(ComplexMatrix a, ComplexMatrix b);

} // namespace hermitia
