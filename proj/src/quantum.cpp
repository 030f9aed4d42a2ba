#include "hermitia/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hermitia {

void MixedStateEnsemble::validate() const {
    if (probabilities.empty() || probabilities.size() != pure_states.size()) {
        throw InconsistentShapes("probabilities and pure states must pair up");
    }
    double sum = 0.0;
    for (double p : probabilities) {
        if (!(p > 0.0)) throw InconsistentShapes("probabilities must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw InconsistentShapes("probabilities must sum to 1");
    }
    const auto& dims = pure_states.front().dims();
    for (const auto& s : pure_states) {
        if (s.dims() != dims) throw InconsistentShapes("pure states have differing shapes");
        if (std::abs(s.norm() - 1.0) > 1e-10) {
            throw InconsistentShapes("pure states must have unit norm");
        }
    }
}

HermitianTensor density_tensor(const MixedStateEnsemble& e) {
    e.validate();
    const std::size_t n = e.pure_states.front().size();
    std::vector<Complex> acc(n * n, 0.0);
    for (std::size_t t = 0; t < e.pure_states.size(); ++t) {
        const auto& chi = e.pure_states[t];
        const double p = e.probabilities[t];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                acc[i * n + j] += p * chi[i] * std::conj(chi[j]);
            }
        }
    }
    return HermitianTensor(e.pure_states.front().dims(), std::move(acc),
                           HermitianTensor::Trusted{});
}

const char* to_string(Separability v) {
    switch (v) {
        case Separability::Entangled: return "Entangled";
        case Separability::Separable: return "Separable";
        default: return "Inconclusive";
    }
}

const char* certificate_kind(const Certificate& c) {
    if (std::holds_alternative<NegativeMatrixEigenvalue>(c)) return "NegativeMatrixEigenvalue";
    if (std::holds_alternative<NegativeHermitianEigenvalue>(c)) return "NegativeHermitianEigenvalue";
    if (std::holds_alternative<PositiveHermitianDecompositionCert>(c))
        return "PositiveHermitianDecomposition";
    if (std::holds_alternative<SpanObstruction>(c)) return "SpanObstruction";
    return "Reason";
}

namespace {

constexpr double kWitnessFloor = -1e-9;
constexpr double kSeparableResidual = 1e-8;
constexpr double kEntangledResidual = 1e-6;

// Rayleigh quotient of the flattened tensor at a folded vector; direct
// contraction, no eigensolver involved.
double flat_rayleigh(const HermitianTensor& h, const ComplexTensor& v) {
    const std::size_t n = h.flat_dim();
    if (v.size() != n) throw ShapeMismatch("vector length differs from the flattened dimension");
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += h.raw(i, j) * v[j];
        num += std::conj(v[i]) * row;
        den += std::norm(v[i]);
    }
    if (den < 1e-24) throw ZeroTensor("witness vector is zero");
    return num.real() / den;
}

} // namespace

std::optional<Certificate> witness_scan(const HermitianTensor& h, int starts, std::uint64_t seed) {
    MatrixSpectrum spec = eigh(flatten(h));
    const std::size_t n = h.flat_dim();
    if (spec.eigenvalues.back() < kWitnessFloor) {
        std::vector<Complex> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = spec.eigenvectors(r, n - 1);
        return Certificate{NegativeMatrixEigenvalue{spec.eigenvalues.back(),
                                                    fold_vector(col, h.mode_dims())}};
    }
    NonnegativityReport probe = nonnegativity_probe(h, starts, seed);
    if (probe.verdict == NonnegativityReport::Verdict::NegativeWitness) {
        return Certificate{NegativeHermitianEigenvalue{probe.min_value_found, probe.witness}};
    }
    return std::nullopt;
}

// --- rank-one rays of a 2 x 2 bipartite span -----------------------------------------

namespace {

Complex det2(const ComplexTensor& t) {
    return t[0] * t[3] - t[1] * t[2];
}

// bilinear term: det(A + B) = det A + det B + mixed(A, B)
Complex mixed_det2(const ComplexTensor& a, const ComplexTensor& b) {
    return a[0] * b[3] + b[0] * a[3] - a[1] * b[2] - b[1] * a[2];
}

// snap a numerically rank-one 2 x 2 tensor to an exact unit product e (x) f
ComplexTensor polish_to_product(const ComplexTensor& c) {
    SchmidtForm form = schmidt_polar(c);
    ModeVectorTuple u;
    u.vectors.push_back(form.left_vectors.front());
    u.vectors.push_back(form.right_vectors.front());
    return product_tensor(u);
}

void push_unique(std::vector<ComplexTensor>& out, ComplexTensor cand) {
    double n = cand.norm();
    if (n < 1e-12) return;
    cand *= Complex(1.0 / n, 0.0);
    for (const auto& prev : out) {
        if (std::abs(inner(prev, cand)) > 1.0 - 1e-8) return;  // same ray
    }
    out.push_back(polish_to_product(cand));
}

} // namespace

std::vector<ComplexTensor> rank_one_elements_in_span(const EigenMatrixDecomposition& eigen) {
    const std::vector<std::size_t> scope{2, 2};
    if (eigen.mode_dims != scope || eigen.s() > 2 || eigen.s() == 0) {
        throw OutOfScope("rank-one enumeration covers 2 x 2 bipartite spans of dimension <= 2");
    }

    std::vector<ComplexTensor> out;
    if (eigen.s() == 1) {
        const ComplexTensor& u1 = eigen.factors[0];
        if (std::abs(det2(u1)) <= 1e-8) push_unique(out, u1);
        return out;
    }

    const ComplexTensor& u1 = eigen.factors[0];
    const ComplexTensor& u2 = eigen.factors[1];
    const Complex d1 = det2(u1);
    const Complex d2 = det2(u2);
    const Complex dm = mixed_det2(u1, u2);

    const double scale = std::max({std::abs(d1), std::abs(d2), std::abs(dm)});
    if (scale <= 1e-12) {
        throw DegenerateSpan("every element of the span is rank-one");
    }

    if (std::abs(d2) > 1e-12 * scale) {
        // d2 t^2 + dm t + d1 = 0, solved via the stable split t1 = q/d2, t2 = d1/q
        Complex disc = dm * dm - 4.0 * d1 * d2;
        Complex sq = std::sqrt(disc);
        if ((std::conj(dm) * sq).real() < 0.0) sq = -sq;
        Complex q = -0.5 * (dm + sq);
        Complex t1, t2;
        if (std::abs(q) > 1e-300) {
            t1 = q / d2;
            t2 = d1 / q;
        } else {
            t1 = 0.0;  // dm = 0 and d1 d2 = 0 here, so both roots vanish
            t2 = 0.0;
        }
        push_unique(out, u1 + t1 * u2);
        push_unique(out, u1 + t2 * u2);
    } else {
        // k1 = 0 is a rank-one ray; the quadratic degenerates to a line
        push_unique(out, u2);
        if (std::abs(dm) > 1e-12 * scale) {
            Complex t = -d1 / dm;
            push_unique(out, u1 + t * u2);
        }
    }
    return out;
}

// --- weight fit over the candidate rays -----------------------------------------------

namespace {

struct FitResult {
    std::vector<double> weights;       // best nonnegative fit (zeros included)
    double residual = 0.0;             // of the best nonnegative fit
    std::vector<double> raw_weights;   // unconstrained fit
    double raw_residual = 0.0;
    bool raw_nonnegative = false;
};

double fit_residual(const HermitianTensor& h, const std::vector<HermitianTensor>& basis,
                    const std::vector<double>& w) {
    std::vector<Complex> acc(h.size(), 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (w[j] == 0.0) continue;
        for (std::size_t i = 0; i < h.size(); ++i) acc[i] += w[j] * basis[j].data()[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) s += std::norm(h.data()[i] - acc[i]);
    return std::sqrt(s);
}

std::vector<double> solve_gram(const std::vector<double>& gram, const std::vector<double>& rhs,
                               const std::vector<std::size_t>& subset, std::size_t total) {
    const std::size_t k = subset.size();
    std::vector<double> a(k * k), b(k);
    for (std::size_t r = 0; r < k; ++r) {
        b[r] = rhs[subset[r]];
        for (std::size_t c = 0; c < k; ++c) a[r * k + c] = gram[subset[r] * total + subset[c]];
    }
    RealLinearSolver solver(std::move(a), k);
    return solver.solve(b);
}

FitResult fit_nonnegative(const HermitianTensor& h, const std::vector<ComplexTensor>& candidates) {
    const std::size_t c = candidates.size();
    FitResult fit;
    fit.weights.assign(c, 0.0);
    fit.raw_weights.assign(c, 0.0);

    std::vector<HermitianTensor> basis;
    basis.reserve(c);
    for (const auto& cand : candidates) basis.push_back(hermitianize(cand));

    std::vector<double> gram(c * c), rhs(c);
    for (std::size_t i = 0; i < c; ++i) {
        rhs[i] = inner_product(basis[i], h).real();
        for (std::size_t j = 0; j < c; ++j) {
            gram[i * c + j] = inner_product(basis[i], basis[j]).real();
        }
    }

    if (c > 0) {
        std::vector<std::size_t> all(c);
        std::iota(all.begin(), all.end(), 0);
        try {
            std::vector<double> w = solve_gram(gram, rhs, all, c);
            fit.raw_weights = w;
            fit.raw_residual = fit_residual(h, basis, w);
            fit.raw_nonnegative =
                std::all_of(w.begin(), w.end(), [](double x) { return x >= -1e-10; });
        } catch (const SingularBasisSystem&) {
            fit.raw_residual = frobenius_norm(h);
        }
    } else {
        fit.raw_residual = frobenius_norm(h);
    }

    // best fit with nonnegative weights: the optimum lives on one of the
    // 2^c support sets, and c <= 3 here
    fit.residual = frobenius_norm(h);  // empty support
    for (std::size_t mask = 1; mask < (std::size_t(1) << c); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t j = 0; j < c; ++j) {
            if (mask & (std::size_t(1) << j)) subset.push_back(j);
        }
        std::vector<double> w;
        try {
            w = solve_gram(gram, rhs, subset, c);
        } catch (const SingularBasisSystem&) {
            continue;
        }
        bool ok = true;
        for (double x : w) {
            if (x < -1e-10) { ok = false; break; }
        }
        if (!ok) continue;
        std::vector<double> full(c, 0.0);
        for (std::size_t r = 0; r < subset.size(); ++r) full[subset[r]] = std::max(w[r], 0.0);
        double res = fit_residual(h, basis, full);
        if (res < fit.residual) {
            fit.residual = res;
            fit.weights = std::move(full);
        }
    }
    return fit;
}

HermitianDecomposition decomposition_from_fit(const std::vector<std::size_t>& mode_dims,
                                              const std::vector<ComplexTensor>& candidates,
                                              const std::vector<double>& weights) {
    HermitianDecomposition d;
    d.mode_dims = mode_dims;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        if (weights[j] <= 0.0) continue;
        SchmidtForm form = schmidt_polar(candidates[j]);
        ModeVectorTuple u;
        u.vectors.push_back(form.left_vectors.front());
        u.vectors.push_back(form.right_vectors.front());
        d.terms.push_back({weights[j], std::move(u)});
    }
    return d;
}

SeparabilityVerdict analyze_with_eigen(const HermitianTensor& h,
                                       const EigenMatrixDecomposition& eigen,
                                       const AnalyzerConfig& config) {
    if (auto cert = witness_scan(h, config.starts, config.seed)) {
        SeparabilityVerdict v{Separability::Entangled, *cert};
        if (!verify_certificate(h, v)) {
            return {Separability::Inconclusive,
                    Reason{"witness certificate failed independent re-verification"}};
        }
        return v;
    }

    const std::vector<std::size_t> scope{2, 2};
    if (h.mode_dims() != scope || eigen.s() > 2) {
        return {Separability::Inconclusive,
                Reason{"span enumeration out of scope: it covers 2 x 2 bipartite tensors "
                       "with flattened rank at most 2"}};
    }
    if (eigen.s() == 0) {
        // the zero tensor: the empty positive combination reconstructs it
        SeparabilityVerdict v{Separability::Separable,
                              PositiveHermitianDecompositionCert{
                                  HermitianDecomposition{h.mode_dims(), {}}}};
        return v;
    }

    std::vector<ComplexTensor> candidates;
    try {
        candidates = rank_one_elements_in_span(eigen);
    } catch (const DegenerateSpan&) {
        return {Separability::Inconclusive,
                Reason{"every span element is rank-one; the candidate set is not finite"}};
    }

    FitResult fit = fit_nonnegative(h, candidates);

    if (fit.raw_nonnegative && fit.raw_residual <= kSeparableResidual) {
        std::vector<double> clamped(fit.raw_weights.size());
        for (std::size_t j = 0; j < clamped.size(); ++j) {
            clamped[j] = std::max(fit.raw_weights[j], 0.0);
        }
        SeparabilityVerdict v{Separability::Separable,
                              PositiveHermitianDecompositionCert{
                                  decomposition_from_fit(h.mode_dims(), candidates, clamped)}};
        if (!verify_certificate(h, v)) {
            return {Separability::Inconclusive,
                    Reason{"positive decomposition failed independent re-verification"}};
        }
        return v;
    }

    if (fit.residual > kEntangledResidual) {
        SeparabilityVerdict v{Separability::Entangled,
                              SpanObstruction{candidates, fit.weights, fit.residual}};
        if (!verify_certificate(h, v)) {
            return {Separability::Inconclusive,
                    Reason{"span obstruction failed independent re-verification"}};
        }
        return v;
    }

    return {Separability::Inconclusive,
            Reason{"best fit falls between the separable acceptance (1e-8) and the "
                   "entangled floor (1e-6)"}};
}

HermitianTensor maybe_normalize_trace(const HermitianTensor& h, const AnalyzerConfig& config) {
    if (!config.normalize_trace) return h;
    double t = matrix_trace(h);
    if (std::abs(t) < 1e-12) return h;
    std::vector<Complex> scaled(h.data());
    for (Complex& z : scaled) z /= t;
    return HermitianTensor(h.mode_dims(), std::move(scaled), HermitianTensor::Trusted{},
                           h.hermiticity_tol());
}

} // namespace

SeparabilityVerdict separability_analyze(const HermitianTensor& h, const AnalyzerConfig& config) {
    HermitianTensor work = maybe_normalize_trace(h, config);
    return analyze_with_eigen(work, eigen_matrix_decompose(work), config);
}

SeparabilityVerdict separability_analyze(const MixedStateEnsemble& e,
                                         const AnalyzerConfig& config) {
    e.validate();
    HermitianTensor h = density_tensor(e);

    // an orthonormal ensemble is already an eigen decomposition of its own
    // density tensor; keep those factors so certificates reference the
    // physical states
    bool orthonormal = true;
    for (std::size_t i = 0; i < e.pure_states.size() && orthonormal; ++i) {
        for (std::size_t j = i + 1; j < e.pure_states.size(); ++j) {
            if (std::abs(inner(e.pure_states[i], e.pure_states[j])) > 1e-10) {
                orthonormal = false;
                break;
            }
        }
    }
    if (!orthonormal) return separability_analyze(h, config);

    EigenMatrixDecomposition eigen;
    eigen.mode_dims = h.mode_dims();
    std::vector<std::size_t> order(e.probabilities.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return e.probabilities[a] > e.probabilities[b];
    });
    for (std::size_t t : order) {
        if (e.probabilities[t] <= zero_eigenvalue_cutoff(1.0)) continue;
        eigen.lambdas.push_back(e.probabilities[t]);
        eigen.factors.push_back(e.pure_states[t]);
    }
    return analyze_with_eigen(h, eigen, config);
}

bool verify_certificate(const HermitianTensor& h, const SeparabilityVerdict& v) {
    switch (v.verdict) {
        case Separability::Entangled: {
            if (const auto* neg = std::get_if<NegativeMatrixEigenvalue>(&v.certificate)) {
                double r = flat_rayleigh(h, neg->eigenvector);
                return r < kWitnessFloor &&
                       std::abs(r - neg->lambda_min) <= 1e-8 * std::max(1.0, std::abs(r));
            }
            if (const auto* neg = std::get_if<NegativeHermitianEigenvalue>(&v.certificate)) {
                if (!neg->witness.is_normalized(1e-8)) return false;
                double val = evaluate(h, neg->witness);
                return val < kWitnessFloor &&
                       std::abs(val - neg->lambda) <= 1e-8 * std::max(1.0, std::abs(val));
            }
            if (const auto* obs = std::get_if<SpanObstruction>(&v.certificate)) {
                const std::vector<std::size_t> scope{2, 2};
                if (h.mode_dims() != scope) return false;
                EigenMatrixDecomposition eigen = eigen_matrix_decompose(h);
                if (eigen.s() > 2) return false;
                for (const auto& cand : obs->candidates) {
                    if (!is_rank_one(cand, 1e-8).rank_one) return false;
                }
                FitResult fresh = fit_nonnegative(h, obs->candidates);
                return fresh.residual > kEntangledResidual;
            }
            return false;
        }
        case Separability::Separable: {
            const auto* phd = std::get_if<PositiveHermitianDecompositionCert>(&v.certificate);
            if (phd == nullptr) return false;
            const HermitianDecomposition& d = phd->decomposition;
            for (const auto& term : d.terms) {
                if (!(term.weight > 0.0)) return false;
            }
            if (verify_decomposition(h, d) > kSeparableResidual) return false;
            if (!d.terms.empty()) {
                // factors must lie in the span of the eigen factors
                EigenMatrixDecomposition eigen = eigen_matrix_decompose(h);
                for (const auto& term : d.terms) {
                    ComplexTensor p = product_tensor(term.factors);
                    ComplexTensor proj(p.dims());
                    for (std::size_t j = 0; j < eigen.s(); ++j) {
                        Complex coeff = inner(eigen.factors[j], p);
                        ComplexTensor scaled = eigen.factors[j];
                        scaled *= coeff;
                        proj += scaled;
                    }
                    proj -= p;
                    if (proj.norm() > 1e-8) return false;
                }
            }
            return true;
        }
        default:
            return std::holds_alternative<Reason>(v.certificate);
    }
}

} // namespace hermitia
