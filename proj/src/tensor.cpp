#include "hermitia/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hermitia {

std::size_t shape_size(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

std::size_t flat_index(const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& idx) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        flat = flat * dims[k] + idx[k];
    }
    return flat;
}

bool next_index(const std::vector<std::size_t>& dims, std::vector<std::size_t>& idx) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (++idx[k] < dims[k]) return true;
        idx[k] = 0;
    }
    return false;
}

// --- ComplexTensor -----------------------------------------------------------

namespace {

void check_finite(const std::vector<Complex>& data) {
    for (const Complex& z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw NonFiniteEntry("tensor entry is not finite");
        }
    }
}

void check_positive_dims(const std::vector<std::size_t>& dims) {
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeMismatch("mode dimensions must be positive");
    }
}

} // namespace

ComplexTensor::ComplexTensor(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), data_(shape_size(dims_)) {
    check_positive_dims(dims_);
}

ComplexTensor::ComplexTensor(std::vector<std::size_t> dims, std::vector<Complex> entries)
    : dims_(std::move(dims)), data_(std::move(entries)) {
    check_positive_dims(dims_);
    if (data_.size() != shape_size(dims_)) {
        throw ShapeMismatch("entry count does not match the mode dimensions");
    }
    check_finite(data_);
}

double ComplexTensor::norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexTensor ComplexTensor::conjugated() const {
    ComplexTensor out(*this);
    for (Complex& z : out.data_) z = std::conj(z);
    return out;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
    if (dims_ != other.dims_) throw ShapeMismatch("tensor shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& other) {
    if (dims_ != other.dims_) throw ShapeMismatch("tensor shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexTensor& ComplexTensor::operator*=(Complex scale) {
    for (Complex& z : data_) z *= scale;
    return *this;
}

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) { a += b; return a; }
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) { a -= b; return a; }
ComplexTensor operator*(Complex scale, ComplexTensor a) { a *= scale; return a; }

Complex inner(const ComplexTensor& a, const ComplexTensor& b) {
    if (a.dims() != b.dims()) throw ShapeMismatch("tensor shapes differ");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// --- ModeVectorTuple ----------------------------------------------------------

std::vector<std::size_t> ModeVectorTuple::dims() const {
    std::vector<std::size_t> d(vectors.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) d[k] = vectors[k].size();
    return d;
}

double ModeVectorTuple::norm_of(std::size_t k) const {
    double s = 0.0;
    for (const Complex& z : vectors[k]) s += std::norm(z);
    return std::sqrt(s);
}

bool ModeVectorTuple::is_normalized(double tol) const {
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (std::abs(norm_of(k) - 1.0) > tol) return false;
    }
    return true;
}

ModeVectorTuple ModeVectorTuple::normalized() const {
    ModeVectorTuple out(*this);
    for (std::size_t k = 0; k < out.vectors.size(); ++k) {
        double n = out.norm_of(k);
        if (n < 1e-300) throw ZeroTensor("cannot normalize a zero mode vector");
        for (Complex& z : out.vectors[k]) z /= n;
    }
    return out;
}

ComplexTensor product_tensor(const ModeVectorTuple& u) {
    if (u.modes() == 0) throw ShapeMismatch("empty mode vector tuple");
    ComplexTensor out(u.dims());
    std::vector<std::size_t> idx(u.modes(), 0);
    std::size_t flat = 0;
    do {
        Complex v = 1.0;
        for (std::size_t k = 0; k < u.modes(); ++k) v *= u.vectors[k][idx[k]];
        out[flat++] = v;
    } while (next_index(out.dims(), idx));
    return out;
}

// --- ComplexMatrix -------------------------------------------------------------

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::unitary_defect() const {
    double s = 0.0;
    for (std::size_t i = 0; i < cols_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            Complex g = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) {
                g += std::conj((*this)(r, i)) * (*this)(r, j);
            }
            if (i == j) g -= 1.0;
            s += std::norm(g);
        }
    }
    return std::sqrt(s);
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product shapes differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex v = a(r, k);
            if (v == 0.0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

// --- HermitianTensor ------------------------------------------------------------

HermitianTensor::HermitianTensor(std::vector<std::size_t> mode_dims,
                                 std::vector<Complex> entries, Trusted, double tol)
    : mode_dims_(std::move(mode_dims)),
      flat_dim_(shape_size(mode_dims_)),
      data_(std::move(entries)),
      tol_(tol) {
    check_positive_dims(mode_dims_);
    if (data_.size() != flat_dim_ * flat_dim_) {
        throw ShapeMismatch("entry count does not match the doubled mode dimensions");
    }
}

HermitianTensor HermitianTensor::from_entries(std::vector<std::size_t> mode_dims,
                                              std::vector<Complex> entries, double tol) {
    check_finite(entries);
    HermitianTensor h(std::move(mode_dims), std::move(entries), Trusted{}, tol);
    const std::size_t n = h.flat_dim_;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(h.raw(i, j) - std::conj(h.raw(j, i))) > tol) {
                throw NotHermitian("entries violate conjugate pair-symmetry");
            }
        }
    }
    return h;
}

HermitianTensor HermitianTensor::symmetrized(std::vector<std::size_t> mode_dims,
                                             std::vector<Complex> entries, double tol) {
    check_finite(entries);
    HermitianTensor h(std::move(mode_dims), std::move(entries), Trusted{}, tol);
    const std::size_t n = h.flat_dim_;
    for (std::size_t i = 0; i < n; ++i) {
        h.raw(i, i) = Complex(h.raw(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex avg = 0.5 * (h.raw(i, j) + std::conj(h.raw(j, i)));
            h.raw(i, j) = avg;
            h.raw(j, i) = std::conj(avg);
        }
    }
    return h;
}

HermitianTensor HermitianTensor::zero(std::vector<std::size_t> mode_dims) {
    std::size_t n = shape_size(mode_dims);
    return HermitianTensor(std::move(mode_dims), std::vector<Complex>(n * n), Trusted{});
}

Complex HermitianTensor::entry(const std::vector<std::size_t>& I,
                               const std::vector<std::size_t>& J) const {
    return raw(flat_index(mode_dims_, I), flat_index(mode_dims_, J));
}

ComplexTensor HermitianTensor::as_complex_tensor() const {
    return ComplexTensor(doubled_dims(), data_);
}

std::vector<std::size_t> HermitianTensor::doubled_dims() const {
    std::vector<std::size_t> d(mode_dims_);
    d.insert(d.end(), mode_dims_.begin(), mode_dims_.end());
    return d;
}

// --- predicates ------------------------------------------------------------------

namespace {

// splits a doubled shape [n_1..n_m, n_1..n_m]; throws if entries is not one
std::vector<std::size_t> halved_dims(const ComplexTensor& entries) {
    const auto& d = entries.dims();
    if (d.size() == 0 || d.size() % 2 != 0) {
        throw ShapeMismatch("array order is not even");
    }
    std::size_t m = d.size() / 2;
    for (std::size_t k = 0; k < m; ++k) {
        if (d[k] != d[k + m]) {
            throw ShapeMismatch("array shape is not a doubled mode list");
        }
    }
    return std::vector<std::size_t>(d.begin(), d.begin() + m);
}

void unflatten_index(const std::vector<std::size_t>& dims, std::size_t flat,
                     std::vector<std::size_t>& idx) {
    idx.resize(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
}

} // namespace

HermiticityReport hermiticity_defect(const ComplexTensor& entries) {
    std::vector<std::size_t> mode_dims = halved_dims(entries);
    const std::size_t n = shape_size(mode_dims);
    HermiticityReport rep;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double d = std::abs(entries[i * n + j] - std::conj(entries[j * n + i]));
            if (d > rep.max_defect) {
                rep.max_defect = d;
                wi = i;
                wj = j;
            }
        }
    }
    unflatten_index(mode_dims, wi, rep.worst_i);
    unflatten_index(mode_dims, wj, rep.worst_j);
    return rep;
}

bool is_hermitian(const ComplexTensor& entries, double tol) {
    return hermiticity_defect(entries).max_defect <= tol;
}

// --- algebra -----------------------------------------------------------------------

Complex inner_product(const HermitianTensor& a, const HermitianTensor& b) {
    if (a.mode_dims() != b.mode_dims()) throw ShapeMismatch("tensor shapes differ");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
    return s;
}

double frobenius_norm(const HermitianTensor& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double matrix_trace(const HermitianTensor& a) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.flat_dim(); ++i) t += a.raw(i, i);
    double scale = std::max(1.0, std::abs(t.real()));
    if (std::abs(t.imag()) > a.hermiticity_tol() * scale) {
        throw NonRealTrace("matrix trace has a non-real part; input is corrupted");
    }
    return t.real();
}

HermitianTensor rank_one(const ModeVectorTuple& u) {
    if (u.modes() == 0) throw ShapeMismatch("rank_one needs at least one mode vector");
    ComplexTensor prod = product_tensor(u);
    const std::size_t n = prod.size();
    std::vector<Complex> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            entries[i * n + j] = prod[i] * std::conj(prod[j]);
        }
    }
    return HermitianTensor(u.dims(), std::move(entries), HermitianTensor::Trusted{});
}

HermitianTensor identity_tensor(const std::vector<std::size_t>& mode_dims) {
    HermitianTensor h = HermitianTensor::zero(mode_dims);
    for (std::size_t i = 0; i < h.flat_dim(); ++i) h.raw(i, i) = 1.0;
    return h;
}

ComplexTensor mode_product(const ComplexTensor& a, std::size_t mode, const ComplexMatrix& q) {
    if (mode >= a.order()) throw ShapeMismatch("mode index out of range");
    const std::size_t nk = a.dim(mode);
    if (q.rows() != nk || q.cols() != nk) {
        throw ShapeMismatch("matrix dimension does not match the contracted mode");
    }
    std::size_t stride = 1;
    for (std::size_t l = mode + 1; l < a.order(); ++l) stride *= a.dim(l);
    const std::size_t outer = a.size() / (nk * stride);

    ComplexTensor out(a.dims());
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < stride; ++s) {
            const std::size_t base = o * nk * stride + s;
            for (std::size_t i = 0; i < nk; ++i) {
                Complex v = 0.0;
                for (std::size_t t = 0; t < nk; ++t) {
                    v += a[base + t * stride] * q(t, i);
                }
                out[base + i * stride] = v;
            }
        }
    }
    return out;
}

HermitianTensor unitary_transform(const HermitianTensor& a, const std::vector<ComplexMatrix>& q) {
    const std::size_t m = a.modes();
    if (q.size() != m) throw ShapeMismatch("one matrix per mode is required");
    for (std::size_t k = 0; k < m; ++k) {
        if (q[k].rows() != a.mode_dims()[k] || q[k].cols() != a.mode_dims()[k]) {
            throw NotUnitary("matrix dimension does not match mode", k);
        }
        if (q[k].unitary_defect() > 1e-10) {
            throw NotUnitary("matrix is not unitary within 1e-10", k);
        }
    }
    ComplexTensor work = a.as_complex_tensor();
    for (std::size_t k = 0; k < m; ++k) {
        work = mode_product(work, k, q[k]);
    }
    for (std::size_t k = 0; k < m; ++k) {
        ComplexMatrix qc(q[k].rows(), q[k].cols());
        for (std::size_t i = 0; i < q[k].data().size(); ++i) qc.data()[i] = std::conj(q[k].data()[i]);
        work = mode_product(work, m + k, qc);
    }
    // Hermitian in exact arithmetic; averaging removes roundoff asymmetry.
    return HermitianTensor::symmetrized(a.mode_dims(), std::move(work.data()), a.hermiticity_tol());
}

namespace {

bool permutation_invariant(const HermitianTensor& a, double tol, bool simultaneous) {
    const auto& nd = a.mode_dims();
    const std::size_t m = nd.size();
    for (std::size_t k = 1; k < m; ++k) {
        if (nd[k] != nd[0]) throw ShapeMismatch("mode dimensions differ");
    }

    std::vector<std::size_t> perm_i(m), perm_j(m);
    std::iota(perm_i.begin(), perm_i.end(), 0);

    std::vector<std::size_t> dd = a.doubled_dims();
    std::vector<std::size_t> idx(2 * m, 0);
    std::vector<std::size_t> pidx(2 * m);

    do {
        if (simultaneous) {
            perm_j = perm_i;
        } else {
            std::iota(perm_j.begin(), perm_j.end(), 0);
        }
        do {
            bool ident = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (perm_i[k] != k || perm_j[k] != k) { ident = false; break; }
            }
            if (!ident) {
                std::fill(idx.begin(), idx.end(), 0);
                do {
                    for (std::size_t k = 0; k < m; ++k) {
                        pidx[k] = idx[perm_i[k]];
                        pidx[m + k] = idx[m + perm_j[k]];
                    }
                    Complex d = a.data()[flat_index(dd, idx)] - a.data()[flat_index(dd, pidx)];
                    if (std::abs(d) > tol) return false;
                } while (next_index(dd, idx));
            }
            if (simultaneous) break;
        } while (std::next_permutation(perm_j.begin(), perm_j.end()));
    } while (std::next_permutation(perm_i.begin(), perm_i.end()));
    return true;
}

} // namespace

bool is_symmetric_hermitian(const HermitianTensor& a, double tol) {
    return permutation_invariant(a, tol, /*simultaneous=*/true);
}

bool is_conjugate_partial_symmetric(const HermitianTensor& a, double tol) {
    return permutation_invariant(a, tol, /*simultaneous=*/false);
}

} // namespace hermitia
