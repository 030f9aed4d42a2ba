#include "hermitia/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hermitia {

// --- HermitianMatrix ----------------------------------------------------------

HermitianMatrix::HermitianMatrix(std::size_t n, std::vector<Complex> entries, Trusted, double tol)
    : n_(n), a_(std::move(entries)), tol_(tol) {
    if (a_.size() != n_ * n_) throw ShapeMismatch("matrix entry count is not n^2");
}

HermitianMatrix HermitianMatrix::from_entries(std::size_t n, std::vector<Complex> entries, double tol) {
    HermitianMatrix m(n, std::move(entries), Trusted{}, tol);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                throw NotHermitian("matrix violates conjugate symmetry");
            }
        }
    }
    return m;
}

HermitianMatrix HermitianMatrix::symmetrized(std::size_t n, std::vector<Complex> entries, double tol) {
    HermitianMatrix m(n, std::move(entries), Trusted{}, tol);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    return m;
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
    return HermitianMatrix(n, std::vector<Complex>(n * n), Trusted{});
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i).real();
    return t;
}

// --- flatten / fold ----------------------------------------------------------

HermitianMatrix flatten(const HermitianTensor& h) {
    // storage layouts coincide: entry (I,J) of the tensor sits at row I,
    // column J of the matrix
    return HermitianMatrix(h.flat_dim(), h.data(), HermitianMatrix::Trusted{}, h.hermiticity_tol());
}

HermitianTensor unflatten(const HermitianMatrix& m, const std::vector<std::size_t>& mode_dims) {
    if (shape_size(mode_dims) != m.n()) {
        throw ShapeMismatch("matrix dimension does not factor over the mode dimensions");
    }
    return HermitianTensor(mode_dims, m.data(), HermitianTensor::Trusted{}, m.tol());
}

ComplexTensor fold_vector(const std::vector<Complex>& q, const std::vector<std::size_t>& mode_dims) {
    if (q.size() != shape_size(mode_dims)) {
        throw ShapeMismatch("vector length does not factor over the mode dimensions");
    }
    return ComplexTensor(mode_dims, q);
}

std::vector<Complex> tensor_to_vector(const ComplexTensor& t) {
    return t.data();
}

// --- eigh: cyclic Jacobi ----------------------------------------------------

namespace {

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            s += std::norm(a[p * n + q]);
    return std::sqrt(2.0 * s);
}

void phase_gauge(std::vector<Complex>& col) {
    for (const Complex& z : col) {
        double m = std::abs(z);
        if (m > 1e-8) {
            Complex phase = std::conj(z) / m;
            for (Complex& w : col) w *= phase;
            return;
        }
    }
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

} // namespace

MatrixSpectrum eigh(const HermitianMatrix& input) {
    const std::size_t n = input.n();
    std::vector<Complex> m = input.data();
    std::vector<Complex> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double norm = input.frobenius_norm();
    const double target = 1e-13 * norm;
    const int max_sweeps = 60;

    if (n > 1 && norm > 0.0) {
        int sweep = 0;
        while (off_diagonal_norm(m, n) > target) {
            if (++sweep > max_sweeps) {
                throw NoConvergence("eigh did not converge within the sweep budget");
            }
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const Complex h = m[p * n + q];
                    const double habs = std::abs(h);
                    if (habs == 0.0) continue;

                    // 2x2 unitary annihilating the (p,q) pair
                    const double a = m[p * n + p].real();
                    const double b = m[q * n + q].real();
                    const double tau = (b - a) / (2.0 * habs);
                    double t;
                    if (tau >= 0.0) {
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    } else {
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    }
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const Complex u = h / habs;
                    const Complex su = s * u;
                    const Complex suc = s * std::conj(u);

                    // columns: col_p' = c col_p - conj(su) col_q,
                    //          col_q' = su col_p + c col_q
                    for (std::size_t r = 0; r < n; ++r) {
                        Complex mp = m[r * n + p], mq = m[r * n + q];
                        m[r * n + p] = c * mp - suc * mq;
                        m[r * n + q] = su * mp + c * mq;
                        Complex vp = v[r * n + p], vq = v[r * n + q];
                        v[r * n + p] = c * vp - suc * vq;
                        v[r * n + q] = su * vp + c * vq;
                    }
                    // rows (adjoint action)
                    for (std::size_t col = 0; col < n; ++col) {
                        Complex mp = m[p * n + col], mq = m[q * n + col];
                        m[p * n + col] = c * mp - su * mq;
                        m[q * n + col] = suc * mp + c * mq;
                    }
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    m[p * n + p] = Complex(m[p * n + p].real(), 0.0);
                    m[q * n + q] = Complex(m[q * n + q].real(), 0.0);
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i * n + i].real();

    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) cols[j][i] = v[i * n + j];
        phase_gauge(cols[j]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eig[a] > eig[b];
    });
    // deterministic order inside (near-)degenerate groups
    const double tie = 1e-12 * (norm > 1.0 ? norm : 1.0);
    std::size_t g = 0;
    while (g < n) {
        std::size_t e = g + 1;
        while (e < n && std::abs(eig[order[g]] - eig[order[e]]) <= tie) ++e;
        std::sort(order.begin() + g, order.begin() + e, [&](std::size_t a, std::size_t b) {
            return lex_less(cols[a], cols[b]);
        });
        g = e;
    }

    MatrixSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = eig[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = cols[order[j]][i];
    }

    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex rec = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                rec += out.eigenvectors(i, k) * out.eigenvalues[k] * std::conj(out.eigenvectors(j, k));
            }
            res += std::norm(input(i, j) - rec);
        }
    }
    out.residual = std::sqrt(res);
    return out;
}

std::vector<double> matrix_eigenvalues(const HermitianTensor& h) {
    return eigh(flatten(h)).eigenvalues;
}

// --- small dense solvers ------------------------------------------------------

RealLinearSolver::RealLinearSolver(std::vector<double> a, std::size_t n)
    : n_(n), original_(a), lu_(std::move(a)), perm_(n) {
    if (lu_.size() != n * n) throw ShapeMismatch("matrix entry count is not n^2");
    std::iota(perm_.begin(), perm_.end(), 0);

    double max_entry = 0.0;
    for (double x : lu_) max_entry = std::max(max_entry, std::abs(x));
    const double pivot_floor = 1e-12 * (max_entry > 0.0 ? max_entry : 1.0);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_[perm_[k] * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            double cand = std::abs(lu_[perm_[r] * n + k]);
            if (cand > best) { best = cand; piv = r; }
        }
        if (best < pivot_floor) {
            throw SingularBasisSystem("linear system is numerically singular");
        }
        std::swap(perm_[k], perm_[piv]);
        const std::size_t pk = perm_[k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const std::size_t pr = perm_[r];
            double f = lu_[pr * n + k] / lu_[pk * n + k];
            lu_[pr * n + k] = f;
            for (std::size_t c = k + 1; c < n; ++c) {
                lu_[pr * n + c] -= f * lu_[pk * n + c];
            }
        }
    }
}

std::vector<double> RealLinearSolver::solve_once(const std::vector<double>& b) const {
    std::vector<double> y(n_);
    for (std::size_t r = 0; r < n_; ++r) {
        double s = b[perm_[r]];
        for (std::size_t c = 0; c < r; ++c) s -= lu_[perm_[r] * n_ + c] * y[c];
        y[r] = s;
    }
    std::vector<double> x(n_);
    for (std::size_t r = n_; r-- > 0;) {
        double s = y[r];
        for (std::size_t c = r + 1; c < n_; ++c) s -= lu_[perm_[r] * n_ + c] * x[c];
        x[r] = s / lu_[perm_[r] * n_ + r];
    }
    return x;
}

std::vector<double> RealLinearSolver::solve(const std::vector<double>& b) const {
    if (b.size() != n_) throw ShapeMismatch("right-hand side length differs");
    std::vector<double> x = solve_once(b);
    // one refinement pass against the unfactored matrix
    std::vector<double> r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = b[i];
        for (std::size_t c = 0; c < n_; ++c) s -= original_[i * n_ + c] * x[c];
        r[i] = s;
    }
    std::vector<double> dx = solve_once(r);
    for (std::size_t i = 0; i < n_; ++i) x[i] += dx[i];
    return x;
}

ComplexMatrix solve_complex(ComplexMatrix a, ComplexMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw ShapeMismatch("matrix is not square");
    if (b.rows() != n) throw ShapeMismatch("right-hand side row count differs");

    double max_entry = 0.0;
    for (const Complex& z : a.data()) max_entry = std::max(max_entry, std::abs(z));
    const double pivot_floor = 1e-12 * (max_entry > 0.0 ? max_entry : 1.0);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > best) { best = std::abs(a(r, k)); piv = r; }
        }
        if (best < pivot_floor) throw RankDeficientU("complex system is numerically singular");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(k, c), b(piv, c));
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            Complex f = a(r, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(k, c);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t r = n; r-- > 0;) {
            Complex s = b(r, c);
            for (std::size_t k = r + 1; k < n; ++k) s -= a(r, k) * x(k, c);
            x(r, c) = s / a(r, r);
        }
    }
    return x;
}

} // namespace hermitia
