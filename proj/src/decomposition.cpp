#include "hermitia/decomposition.hpp"

#include <algorithm>
#include <cmath>

namespace hermitia {

bool HermitianDecomposition::positive() const {
    if (terms.empty()) return false;
    for (const auto& t : terms) {
        if (!(t.weight > 0.0)) return false;
    }
    return true;
}

EigenMatrixDecomposition eigen_matrix_decompose(const HermitianTensor& h) {
    HermitianMatrix flat = flatten(h);
    MatrixSpectrum spec = eigh(flat);
    const double cutoff = zero_eigenvalue_cutoff(flat.frobenius_norm());
    const std::size_t n = flat.n();

    EigenMatrixDecomposition d;
    d.mode_dims = h.mode_dims();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(spec.eigenvalues[i]) <= cutoff) continue;
        std::vector<Complex> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = spec.eigenvectors(r, i);
        d.lambdas.push_back(spec.eigenvalues[i]);
        d.factors.push_back(fold_vector(col, h.mode_dims()));
    }
    return d;
}

// --- constructive rank-one decomposition ------------------------------------------

namespace {

// canonical rank-one Hermitian basis of C^{d x d}: d^2 unit vectors
std::vector<std::vector<Complex>> canonical_mode_basis(std::size_t d) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<Complex>> basis;
    basis.reserve(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        std::vector<Complex> v(d, 0.0);
        v[a] = 1.0;
        basis.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            std::vector<Complex> v(d, 0.0);
            v[a] = inv_sqrt2;
            v[b] = inv_sqrt2;
            basis.push_back(std::move(v));
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            std::vector<Complex> v(d, 0.0);
            v[a] = inv_sqrt2;
            v[b] = Complex(0.0, inv_sqrt2);
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

// real coordinates of a Hermitian n x n matrix: diagonal, then Re/Im of the
// upper triangle, row by row
std::vector<double> real_coordinates(const std::vector<Complex>& m, std::size_t n) {
    std::vector<double> c;
    c.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(m[i * n + i].real());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            c.push_back(m[i * n + j].real());
            c.push_back(m[i * n + j].imag());
        }
    }
    return c;
}

} // namespace

HermitianDecomposition hermitian_decompose(const HermitianTensor& h, std::size_t max_flat_dim) {
    const std::size_t n = h.flat_dim();
    if (n > max_flat_dim) {
        throw BudgetExceeded("flattened dimension exceeds the solve budget");
    }
    const std::size_t m = h.modes();
    const std::size_t cols = n * n;

    std::vector<std::vector<std::vector<Complex>>> mode_bases;
    std::vector<std::size_t> basis_counts;
    for (std::size_t k = 0; k < m; ++k) {
        mode_bases.push_back(canonical_mode_basis(h.mode_dims()[k]));
        basis_counts.push_back(mode_bases.back().size());
    }

    // columns: real coordinates of each rank-one product tensor, indexed by
    // the mixed-radix tuple (t_1..t_m) over the per-mode bases
    std::vector<double> system(cols * cols);
    std::vector<ModeVectorTuple> tuples(cols);
    std::vector<std::size_t> t(m, 0);
    for (std::size_t col = 0; col < cols; ++col) {
        ModeVectorTuple u;
        for (std::size_t k = 0; k < m; ++k) u.vectors.push_back(mode_bases[k][t[k]]);
        HermitianTensor basis_tensor = rank_one(u);
        std::vector<double> coords = real_coordinates(basis_tensor.data(), n);
        for (std::size_t row = 0; row < cols; ++row) {
            system[row * cols + col] = coords[row];
        }
        tuples[col] = std::move(u);
        next_index(basis_counts, t);
    }

    std::vector<double> rhs = real_coordinates(h.data(), n);
    RealLinearSolver solver(std::move(system), cols);
    std::vector<double> weights = solver.solve(rhs);

    const double drop = 1e-12 * std::max(1.0, frobenius_norm(h));
    HermitianDecomposition d;
    d.mode_dims = h.mode_dims();
    for (std::size_t col = 0; col < cols; ++col) {
        if (std::abs(weights[col]) <= drop) continue;
        d.terms.push_back({weights[col], std::move(tuples[col])});
    }
    return d;
}

// --- reconstruction / verification ---------------------------------------------------

HermitianTensor reconstruct(const EigenMatrixDecomposition& d) {
    const std::size_t n = shape_size(d.mode_dims);
    std::vector<Complex> acc(n * n, 0.0);
    for (std::size_t i = 0; i < d.s(); ++i) {
        const auto& u = d.factors[i].data();
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                acc[r * n + c] += d.lambdas[i] * u[r] * std::conj(u[c]);
            }
        }
    }
    return HermitianTensor(d.mode_dims, std::move(acc), HermitianTensor::Trusted{});
}

HermitianTensor reconstruct(const HermitianDecomposition& d) {
    const std::size_t n = shape_size(d.mode_dims);
    std::vector<Complex> acc(n * n, 0.0);
    for (const auto& term : d.terms) {
        ComplexTensor prod = product_tensor(term.factors);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                acc[r * n + c] += term.weight * prod[r] * std::conj(prod[c]);
            }
        }
    }
    return HermitianTensor(d.mode_dims, std::move(acc), HermitianTensor::Trusted{});
}

namespace {

double reconstruction_defect(const HermitianTensor& h, const HermitianTensor& rec) {
    if (h.mode_dims() != rec.mode_dims()) throw ShapeMismatch("tensor shapes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        s += std::norm(h.data()[i] - rec.data()[i]);
    }
    return std::sqrt(s);
}

} // namespace

double verify_decomposition(const HermitianTensor& h, const EigenMatrixDecomposition& d) {
    double worst = reconstruction_defect(h, reconstruct(d));
    for (std::size_t i = 0; i < d.s(); ++i) {
        for (std::size_t j = i; j < d.s(); ++j) {
            Complex g = inner(d.factors[i], d.factors[j]);
            double want = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - want));
        }
    }
    return worst;
}

double verify_decomposition(const HermitianTensor& h, const HermitianDecomposition& d) {
    double worst = reconstruction_defect(h, reconstruct(d));
    for (const auto& term : d.terms) {
        for (std::size_t k = 0; k < term.factors.modes(); ++k) {
            worst = std::max(worst, std::abs(term.factors.norm_of(k) - 1.0));
        }
    }
    return worst;
}

// --- HJW relation ------------------------------------------------------------------------

HJWRelation hjw_relate(const std::vector<ComplexTensor>& scaled_u_factors,
                       const std::vector<ComplexTensor>& scaled_v_factors) {
    if (scaled_u_factors.empty() || scaled_v_factors.empty()) {
        throw ShapeMismatch("factor lists must be nonempty");
    }
    const std::vector<std::size_t> dims = scaled_u_factors.front().dims();
    const std::size_t n = shape_size(dims);
    const std::size_t s = scaled_u_factors.size();
    const std::size_t r = scaled_v_factors.size();

    ComplexMatrix u(n, s), v(n, r);
    for (std::size_t i = 0; i < s; ++i) {
        if (scaled_u_factors[i].dims() != dims) throw ShapeMismatch("factor shapes differ");
        for (std::size_t a = 0; a < n; ++a) u(a, i) = scaled_u_factors[i][a];
    }
    for (std::size_t j = 0; j < r; ++j) {
        if (scaled_v_factors[j].dims() != dims) throw ShapeMismatch("factor shapes differ");
        for (std::size_t a = 0; a < n; ++a) v(a, j) = scaled_v_factors[j][a];
    }

    // Gram condition: sum u u^H = sum v v^H, i.e. both lists flatten the
    // same tensor
    double gram_defect = 0.0;
    double gram_scale = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Complex gu = 0.0, gv = 0.0;
            for (std::size_t i = 0; i < s; ++i) gu += u(a, i) * std::conj(u(b, i));
            for (std::size_t j = 0; j < r; ++j) gv += v(a, j) * std::conj(v(b, j));
            gram_defect += std::norm(gu - gv);
            gram_scale += std::norm(gu);
        }
    }
    gram_defect = std::sqrt(gram_defect);
    if (gram_defect > 1e-8 * std::max(1.0, std::sqrt(gram_scale))) {
        throw NotSameTensor("factor lists do not represent the same tensor");
    }
    if (r < s) {
        throw RankDeficientU("candidate list is shorter than the eigen factor list");
    }

    // least-squares Q from the normal equations (U^H U) Q = U^H V
    ComplexMatrix uhu = multiply(u.adjoint(), u);
    ComplexMatrix uhv = multiply(u.adjoint(), v);
    ComplexMatrix q = solve_complex(std::move(uhu), std::move(uhv));

    HJWRelation rel;
    double cd = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            Complex g = 0.0;
            for (std::size_t c = 0; c < r; ++c) g += q(i, c) * std::conj(q(j, c));
            if (i == j) g -= 1.0;
            cd += std::norm(g);
        }
    }
    rel.co_isometry_defect = std::sqrt(cd);

    ComplexMatrix uq = multiply(u, q);
    for (std::size_t j = 0; j < r; ++j) {
        double col = 0.0;
        for (std::size_t a = 0; a < n; ++a) col += std::norm(uq(a, j) - v(a, j));
        rel.reconstruction_defect = std::max(rel.reconstruction_defect, std::sqrt(col));
    }
    rel.q = std::move(q);
    return rel;
}

OverlapReport overlap_Q(const EigenMatrixDecomposition& eigen,
                        const HermitianDecomposition& candidate) {
    if (eigen.mode_dims != candidate.mode_dims) throw ShapeMismatch("tensor shapes differ");
    const std::size_t s = eigen.s();
    const std::size_t r = candidate.r();
    if (s == 0 || r == 0) throw ShapeMismatch("decompositions must be nonempty");
    for (double l : eigen.lambdas) {
        if (!(l > 0.0)) throw NonPositiveWeights("eigen decomposition has a nonpositive value");
    }
    if (!candidate.positive()) {
        throw NonPositiveWeights("candidate decomposition has a nonpositive weight");
    }

    const std::size_t n = shape_size(eigen.mode_dims);
    std::vector<ComplexTensor> products;
    products.reserve(r);
    for (const auto& term : candidate.terms) products.push_back(product_tensor(term.factors));

    OverlapReport rep;
    rep.q = ComplexMatrix(r, s);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            Complex x = inner(eigen.factors[j], products[i]);
            rep.q(i, j) = std::sqrt(candidate.terms[i].weight / eigen.lambdas[j]) * x;
        }
    }

    double od = 0.0;
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b) {
            Complex g = 0.0;
            for (std::size_t i = 0; i < r; ++i) g += std::conj(rep.q(i, a)) * rep.q(i, b);
            if (a == b) g -= 1.0;
            od += std::norm(g);
        }
    }
    rep.orthogonality_defect = std::sqrt(od);

    // rows sqrt(p_i) vec((x)u_i) ?= Q rows sqrt(lambda_j) vec(U_j)
    double fwd = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            Complex lhs = std::sqrt(candidate.terms[i].weight) * products[i][a];
            Complex rhs = 0.0;
            for (std::size_t j = 0; j < s; ++j) {
                rhs += rep.q(i, j) * std::sqrt(eigen.lambdas[j]) * eigen.factors[j][a];
            }
            fwd += std::norm(lhs - rhs);
        }
    }
    rep.forward_residual = std::sqrt(fwd);

    double bwd = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t a = 0; a < n; ++a) {
            Complex lhs = std::sqrt(eigen.lambdas[j]) * eigen.factors[j][a];
            Complex rhs = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                rhs += std::conj(rep.q(i, j)) * std::sqrt(candidate.terms[i].weight) * products[i][a];
            }
            bwd += std::norm(lhs - rhs);
        }
    }
    rep.backward_residual = std::sqrt(bwd);
    return rep;
}

} // namespace hermitia
