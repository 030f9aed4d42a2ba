#include "hermitia/partial_trace.hpp"

#include <algorithm>
#include <cmath>

namespace hermitia {

HermitianTensor hermitianize(const ComplexTensor& a) {
    const std::size_t n = a.size();
    std::vector<Complex> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            entries[i * n + j] = a[i] * std::conj(a[j]);
        }
    }
    return HermitianTensor(a.dims(), std::move(entries), HermitianTensor::Trusted{});
}

PartialTraceResult partial_trace(const HermitianTensor& h, std::vector<std::size_t> kept) {
    const std::size_t m = h.modes();
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw EmptyKeepSet("the kept mode set must be nonempty");
    if (kept.back() >= m) throw ShapeMismatch("kept mode index out of range");

    std::vector<std::size_t> out_dims(kept.size());
    for (std::size_t t = 0; t < kept.size(); ++t) out_dims[t] = h.mode_dims()[kept[t]];

    std::vector<bool> is_kept(m, false);
    for (std::size_t k : kept) is_kept[k] = true;

    HermitianTensor out = HermitianTensor::zero(out_dims);
    const std::size_t out_n = out.flat_dim();

    // single scan over all (I, J); entries with matching traced indices
    // accumulate into the kept-index slot
    const std::vector<std::size_t>& nd = h.mode_dims();
    std::vector<std::size_t> I(m, 0);
    std::size_t flat_i = 0;
    do {
        std::vector<std::size_t> J(m, 0);
        std::size_t flat_j = 0;
        do {
            bool diagonal = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (!is_kept[k] && I[k] != J[k]) { diagonal = false; break; }
            }
            if (diagonal) {
                std::size_t oi = 0, oj = 0;
                for (std::size_t t = 0; t < kept.size(); ++t) {
                    oi = oi * out_dims[t] + I[kept[t]];
                    oj = oj * out_dims[t] + J[kept[t]];
                }
                out.data()[oi * out_n + oj] += h.raw(flat_i, flat_j);
            }
            ++flat_j;
        } while (next_index(nd, J));
        ++flat_i;
    } while (next_index(nd, I));

    return PartialTraceResult{std::move(kept), std::move(out)};
}

HermitianMatrix partial_trace_matrix(const HermitianTensor& h, std::size_t k) {
    PartialTraceResult r = partial_trace(h, {k});
    return HermitianMatrix(r.tensor.flat_dim(), r.tensor.data(), HermitianMatrix::Trusted{},
                           h.hermiticity_tol());
}

SchmidtForm schmidt_polar(const ComplexTensor& a) {
    if (a.order() != 2) throw OrderMismatch("Schmidt polar form requires an order-2 tensor");
    const std::size_t n1 = a.dim(0), n2 = a.dim(1);

    HermitianTensor rho = hermitianize(a);
    MatrixSpectrum spec1 = eigh(partial_trace_matrix(rho, 0));

    const double cutoff = zero_eigenvalue_cutoff(a.norm() * a.norm());

    SchmidtForm form;
    for (std::size_t i = 0; i < n1; ++i) {
        double lambda = spec1.eigenvalues[i];
        if (lambda <= cutoff) break;
        double sigma = std::sqrt(lambda);

        std::vector<Complex> e(n1);
        for (std::size_t r = 0; r < n1; ++r) e[r] = spec1.eigenvectors(r, i);

        // f_i = A^T conj(e_i) / sigma: orthonormal eigenvectors of the other
        // partial trace with phases matched to give A = sum sigma_i e_i (x) f_i
        std::vector<Complex> f(n2, 0.0);
        for (std::size_t r = 0; r < n1; ++r) {
            Complex w = std::conj(e[r]) / sigma;
            for (std::size_t c = 0; c < n2; ++c) f[c] += w * a[r * n2 + c];
        }

        form.coefficients.push_back(sigma);
        form.left_vectors.push_back(std::move(e));
        form.right_vectors.push_back(std::move(f));
    }
    return form;
}

namespace {

// deviation between a spectrum (descending, padded with zeros) and a target
// multiset of values
double spectrum_deviation(const std::vector<double>& eigenvalues, std::vector<double> target) {
    target.resize(eigenvalues.size(), 0.0);
    std::sort(target.begin(), target.end(), std::greater<double>());
    double dev = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        dev = std::max(dev, std::abs(eigenvalues[i] - target[i]));
    }
    return dev;
}

} // namespace

OrthogonalSpectraReport verify_orthogonal_decomposition_spectra(
    const std::vector<std::pair<double, ModeVectorTuple>>& terms) {
    if (terms.empty()) throw ShapeMismatch("at least one term is required");
    const std::vector<std::size_t> dims = terms.front().second.dims();
    const std::size_t m = dims.size();
    const std::size_t r = terms.size();

    for (const auto& [lambda, u] : terms) {
        (void)lambda;
        if (u.dims() != dims) throw ShapeMismatch("terms have differing mode dimensions");
    }
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i; j < r; ++j) {
                Complex g = 0.0;
                for (std::size_t t = 0; t < dims[k]; ++t) {
                    g += std::conj(terms[i].second.vectors[k][t]) * terms[j].second.vectors[k][t];
                }
                double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(g - want) > 1e-10) {
                    throw NotOrthogonal("factor vectors are not orthonormal", k);
                }
            }
        }
    }

    ComplexTensor a(dims);
    for (const auto& [lambda, u] : terms) {
        ComplexTensor t = product_tensor(u);
        t *= Complex(lambda, 0.0);
        a += t;
    }
    HermitianTensor rho = hermitianize(a);

    std::vector<double> target;
    for (const auto& [lambda, u] : terms) {
        (void)u;
        target.push_back(lambda * lambda);
    }

    OrthogonalSpectraReport rep;
    for (std::size_t k = 0; k < m; ++k) {
        HermitianMatrix rho_k = partial_trace_matrix(rho, k);
        MatrixSpectrum spec = eigh(rho_k);
        rep.max_spectrum_deviation =
            std::max(rep.max_spectrum_deviation, spectrum_deviation(spec.eigenvalues, target));

        HermitianMatrix expect = HermitianMatrix::zero(dims[k]);
        for (const auto& [lambda, u] : terms) {
            for (std::size_t i = 0; i < dims[k]; ++i) {
                for (std::size_t j = 0; j < dims[k]; ++j) {
                    expect(i, j) += lambda * lambda * u.vectors[k][i] * std::conj(u.vectors[k][j]);
                }
            }
        }
        double dev = 0.0;
        for (std::size_t i = 0; i < dims[k] * dims[k]; ++i) {
            dev += std::norm(rho_k.data()[i] - expect.data()[i]);
        }
        rep.max_matrix_deviation = std::max(rep.max_matrix_deviation, std::sqrt(dev));
    }
    return rep;
}

RankOneReport is_rank_one(const ComplexTensor& a, double tol) {
    RankOneReport rep;
    double norm = a.norm();
    if (norm < 1e-12) throw ZeroTensor("rank-one test on a (near-)zero tensor");

    ComplexTensor work = a;
    if (std::abs(norm - 1.0) > 1e-8) {
        work *= Complex(1.0 / norm, 0.0);
        rep.normalized_input = true;
    }

    HermitianTensor rho = hermitianize(work);
    rep.rank_one = true;
    for (std::size_t k = 0; k < work.order(); ++k) {
        MatrixSpectrum spec = eigh(partial_trace_matrix(rho, k));
        double top = spec.eigenvalues.front();
        rep.top_eigenvalues.push_back(top);

        // |det(rho_k - I)| reported as the complementary view of the same test
        double det = 1.0;
        for (double w : spec.eigenvalues) det *= (w - 1.0);
        rep.det_residuals.push_back(std::abs(det));

        if (std::abs(top - 1.0) > tol) rep.rank_one = false;
    }
    return rep;
}

SpectraSimilarityReport partial_trace_spectra_similarity(const ComplexTensor& a,
                                                         const std::vector<ComplexMatrix>& q) {
    const std::size_t m = a.order();
    if (q.size() != m) throw ShapeMismatch("one matrix per mode is required");
    for (std::size_t k = 0; k < m; ++k) {
        if (q[k].rows() != a.dim(k) || q[k].cols() != a.dim(k)) {
            throw NotUnitary("matrix dimension does not match mode", k);
        }
        if (q[k].unitary_defect() > 1e-10) {
            throw NotUnitary("matrix is not unitary within 1e-10", k);
        }
    }

    ComplexTensor b = a;
    for (std::size_t k = 0; k < m; ++k) b = mode_product(b, k, q[k]);

    HermitianTensor rho_a = hermitianize(a);
    HermitianTensor rho_b = hermitianize(b);

    SpectraSimilarityReport rep;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> sa = eigh(partial_trace_matrix(rho_a, k)).eigenvalues;
        std::vector<double> sb = eigh(partial_trace_matrix(rho_b, k)).eigenvalues;
        for (std::size_t i = 0; i < sa.size(); ++i) {
            rep.max_deviation = std::max(rep.max_deviation, std::abs(sa[i] - sb[i]));
        }
    }
    return rep;
}

} // namespace hermitia
