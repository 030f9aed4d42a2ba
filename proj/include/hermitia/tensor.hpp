#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hermitia/errors.hpp"

namespace hermitia {

using Complex = std::complex<double>;

inline constexpr double kDefaultHermiticityTol = 1e-12;

// --- multi-index helpers (row-major, last index fastest) --------------------

std::size_t shape_size(const std::vector<std::size_t>& dims);
std::size_t flat_index(const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& idx);
// Odometer step; returns false once idx wraps back to all zeros.
bool next_index(const std::vector<std::size_t>& dims, std::vector<std::size_t>& idx);

// Dense order-m complex multi-array, row-major storage.
// Carries pure states and any raw tensor data. Entries must be finite.
class ComplexTensor {
public:
    ComplexTensor() = default;
    explicit ComplexTensor(std::vector<std::size_t> dims);
    ComplexTensor(std::vector<std::size_t> dims, std::vector<Complex> entries);

    std::size_t order() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t mode) const { return dims_[mode]; }
    std::size_t size() const { return data_.size(); }

    Complex& operator[](std::size_t flat) { return data_[flat]; }
    const Complex& operator[](std::size_t flat) const { return data_[flat]; }
    Complex& at(const std::vector<std::size_t>& idx) { return data_[flat_index(dims_, idx)]; }
    const Complex& at(const std::vector<std::size_t>& idx) const { return data_[flat_index(dims_, idx)]; }

    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

    double norm() const;  // Frobenius
    ComplexTensor conjugated() const;

    ComplexTensor& operator+=(const ComplexTensor& other);
    ComplexTensor& operator-=(const ComplexTensor& other);
    ComplexTensor& operator*=(Complex scale);

private:
    std::vector<std::size_t> dims_;
    std::vector<Complex> data_;
};

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator*(Complex scale, ComplexTensor a);

// <A, B> = sum conj(A) * B over all entries
Complex inner(const ComplexTensor& a, const ComplexTensor& b);

// Tuple of per-mode vectors (x_1, ..., x_m), vector k of length n_k.
struct ModeVectorTuple {
    std::vector<std::vector<Complex>> vectors;

    std::size_t modes() const { return vectors.size(); }
    std::vector<std::size_t> dims() const;
    double norm_of(std::size_t k) const;
    bool is_normalized(double tol = 1e-12) const;
    ModeVectorTuple normalized() const;
};

// ⊗_k u_k as an order-m ComplexTensor
ComplexTensor product_tensor(const ModeVectorTuple& u);

// Small dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    std::vector<Complex>& data() { return a_; }
    const std::vector<Complex>& data() const { return a_; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double unitary_defect() const;  // ||Q^H Q - I||_F

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// Order-2m complex tensor with conjugate pair-symmetry
// H[i_1..i_m, j_1..j_m] = conj(H[j_1..j_m, i_1..i_m]).
// mode_dims() holds [n_1..n_m]; storage is row-major over the doubled
// shape, which coincides with the row-major (prod n)^2 matrix layout.
class HermitianTensor {
public:
    HermitianTensor() = default;

    // Validates conjugate pair-symmetry within tol, then trusts the data.
    static HermitianTensor from_entries(std::vector<std::size_t> mode_dims,
                                        std::vector<Complex> entries,
                                        double tol = kDefaultHermiticityTol);

    // Averages (H[I,J] + conj(H[J,I]))/2, producing an exactly Hermitian
    // tensor from near-Hermitian input.
    static HermitianTensor symmetrized(std::vector<std::size_t> mode_dims,
                                       std::vector<Complex> entries,
                                       double tol = kDefaultHermiticityTol);

    static HermitianTensor zero(std::vector<std::size_t> mode_dims);

    struct Trusted {};  // tag: entries known Hermitian by construction
    HermitianTensor(std::vector<std::size_t> mode_dims, std::vector<Complex> entries,
                    Trusted, double tol = kDefaultHermiticityTol);

    std::size_t modes() const { return mode_dims_.size(); }
    const std::vector<std::size_t>& mode_dims() const { return mode_dims_; }
    std::size_t flat_dim() const { return flat_dim_; }       // prod n_k
    std::size_t size() const { return data_.size(); }        // flat_dim^2
    double hermiticity_tol() const { return tol_; }

    // matrix-style access by flattened multi-indices
    Complex& raw(std::size_t i, std::size_t j) { return data_[i * flat_dim_ + j]; }
    const Complex& raw(std::size_t i, std::size_t j) const { return data_[i * flat_dim_ + j]; }
    Complex entry(const std::vector<std::size_t>& I, const std::vector<std::size_t>& J) const;

    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

    // copy of the entries as an order-2m ComplexTensor
    ComplexTensor as_complex_tensor() const;

    std::vector<std::size_t> doubled_dims() const;

private:
    std::vector<std::size_t> mode_dims_;
    std::size_t flat_dim_ = 0;
    std::vector<Complex> data_;
    double tol_ = kDefaultHermiticityTol;
};

// --- predicates over raw order-2m arrays ------------------------------------

struct HermiticityReport {
    double max_defect = 0.0;
    std::vector<std::size_t> worst_i, worst_j;  // multi-index pair of the max defect
};

// entries must have shape [n_1..n_m, n_1..n_m]
HermiticityReport hermiticity_defect(const ComplexTensor& entries);
bool is_hermitian(const ComplexTensor& entries, double tol);

// --- algebra -----------------------------------------------------------------

Complex inner_product(const HermitianTensor& a, const HermitianTensor& b);
double frobenius_norm(const HermitianTensor& a);

// sum over the diagonal H[I,I]; throws NonRealTrace when the imaginary
// part exceeds the tensor's hermiticity tolerance
double matrix_trace(const HermitianTensor& a);

// ⊗u_1..u_m ⊗ conj(u_1)..conj(u_m); exactly Hermitian by construction
HermitianTensor rank_one(const ModeVectorTuple& u);

// identity-like tensor: H[I,J] = prod_k delta(i_k, j_k)
HermitianTensor identity_tensor(const std::vector<std::size_t>& mode_dims);

// (A x_k Q)[.., i_k, ..] = sum_t A[.., t, ..] * Q(t, i_k); any order,
// mode is 0-based
ComplexTensor mode_product(const ComplexTensor& a, std::size_t mode, const ComplexMatrix& q);

// A x_1 Q_1 .. x_m Q_m x_{m+1} conj(Q_1) .. x_{2m} conj(Q_m); each Q_k must
// be unitary within 1e-10
HermitianTensor unitary_transform(const HermitianTensor& a, const std::vector<ComplexMatrix>& q);

// entries invariant under simultaneous permutation of the i- and j-blocks;
// requires all mode dims equal
bool is_symmetric_hermitian(const HermitianTensor& a, double tol);

// entries invariant under independent permutations of the two blocks
bool is_conjugate_partial_symmetric(const HermitianTensor& a, double tol);

} // namespace hermitia
