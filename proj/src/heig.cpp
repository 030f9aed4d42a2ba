#include "hermitia/heig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hermitia {

namespace {

// contract `mode` of a dense array against a weight vector, removing it
void contract_mode(std::vector<Complex>& data, std::vector<std::size_t>& dims,
                   std::size_t mode, const std::vector<Complex>& w) {
    const std::size_t nk = dims[mode];
    std::size_t stride = 1;
    for (std::size_t l = mode + 1; l < dims.size(); ++l) stride *= dims[l];
    const std::size_t outer = data.size() / (nk * stride);

    std::vector<Complex> out(outer * stride, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t t = 0; t < nk; ++t) {
            const Complex wt = w[t];
            if (wt == 0.0) continue;
            const std::size_t src = (o * nk + t) * stride;
            const std::size_t dst = o * stride;
            for (std::size_t s = 0; s < stride; ++s) {
                out[dst + s] += data[src + s] * wt;
            }
        }
    }
    data = std::move(out);
    dims.erase(dims.begin() + mode);
}

void check_tuple_shape(const HermitianTensor& h, const ModeVectorTuple& x) {
    if (x.dims() != h.mode_dims()) {
        throw ShapeMismatch("mode vector lengths do not match the tensor");
    }
}

} // namespace

HermitianMatrix effective_mode_matrix(const HermitianTensor& h, const ModeVectorTuple& x,
                                      std::size_t k) {
    check_tuple_shape(h, x);
    const std::size_t m = h.modes();
    if (k >= m) throw ShapeMismatch("mode index out of range");

    std::vector<Complex> data(h.data());
    for (Complex& z : data) z = std::conj(z);
    std::vector<std::size_t> dims = h.doubled_dims();

    // contract from the highest mode down so indices stay stable;
    // i-side modes take x_l, conjugate-side modes take conj(x_l)
    for (std::size_t l = m; l-- > 0;) {
        if (l == k) continue;
        std::vector<Complex> wc(x.vectors[l]);
        for (Complex& z : wc) z = std::conj(z);
        contract_mode(data, dims, m + l, wc);
    }
    for (std::size_t l = m; l-- > 0;) {
        if (l == k) continue;
        contract_mode(data, dims, l, x.vectors[l]);
    }

    // data is now R[i_k, j_k] with H(x) = sum R[b,a] x_b conj(x_a) = x^H M x,
    // so M[a,b] = R[b,a]
    const std::size_t nk = h.mode_dims()[k];
    std::vector<Complex> mk(nk * nk);
    for (std::size_t b = 0; b < nk; ++b) {
        for (std::size_t a = 0; a < nk; ++a) {
            mk[a * nk + b] = data[b * nk + a];
        }
    }
    return HermitianMatrix::symmetrized(nk, std::move(mk));
}

std::vector<Complex> gradient_contraction(const HermitianTensor& h, const ModeVectorTuple& x,
                                          std::size_t k) {
    HermitianMatrix mk = effective_mode_matrix(h, x, k);
    const std::size_t n = mk.n();
    std::vector<Complex> g(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            g[a] += mk(a, b) * x.vectors[k][b];
        }
    }
    return g;
}

double evaluate(const HermitianTensor& h, const ModeVectorTuple& x) {
    check_tuple_shape(h, x);
    std::vector<Complex> g = gradient_contraction(h, x, 0);
    Complex val = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        val += std::conj(x.vectors[0][a]) * g[a];
    }
    if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val.real()))) {
        throw NonRealValue("conjugate polynomial value has a non-real residue");
    }
    return val.real();
}

namespace {

struct SweepState {
    double lambda = 0.0;
    double residual = 0.0;
};

SweepState residual_pass(const HermitianTensor& h, const ModeVectorTuple& x) {
    SweepState st;
    const std::size_t m = h.modes();
    for (std::size_t k = 0; k < m; ++k) {
        HermitianMatrix mk = effective_mode_matrix(h, x, k);
        const std::size_t n = mk.n();
        std::vector<Complex> g(n, 0.0);
        Complex rayleigh = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) g[a] += mk(a, b) * x.vectors[k][b];
            rayleigh += std::conj(x.vectors[k][a]) * g[a];
        }
        double lam = rayleigh.real();
        double res = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            res += std::norm(g[a] - lam * x.vectors[k][a]);
        }
        if (k == 0) st.lambda = lam;
        st.residual = std::max(st.residual, std::sqrt(res));
    }
    return st;
}

void gauge_tuple(ModeVectorTuple& x) {
    for (auto& vec : x.vectors) {
        for (const Complex& z : vec) {
            double mag = std::abs(z);
            if (mag > 1e-8) {
                Complex phase = std::conj(z) / mag;
                for (Complex& w : vec) w *= phase;
                break;
            }
        }
    }
}

} // namespace

HermitianEigenpair power_iterate(const HermitianTensor& h, const ModeVectorTuple& start,
                                 Objective objective, const PowerOptions& opts) {
    check_tuple_shape(h, start);
    ModeVectorTuple x = start.normalized();
    const std::size_t m = h.modes();

    HermitianEigenpair pair;
    double lambda_prev = evaluate(h, x);
    double residual_prev = std::numeric_limits<double>::infinity();

    for (int sweep = 1; sweep <= opts.max_iters; ++sweep) {
        for (std::size_t k = 0; k < m; ++k) {
            MatrixSpectrum spec = eigh(effective_mode_matrix(h, x, k));
            const std::size_t pick =
                (objective == Objective::Max) ? 0 : spec.eigenvalues.size() - 1;
            for (std::size_t a = 0; a < x.vectors[k].size(); ++a) {
                x.vectors[k][a] = spec.eigenvectors(a, pick);
            }
        }
        SweepState st = residual_pass(h, x);
        pair.iterations = sweep;
        pair.lambda = st.lambda;
        pair.residual = st.residual;
        if (st.residual <= opts.residual_tol) {
            pair.converged = true;
            break;
        }
        // lambda converges twice as fast as the residual, so a stalled
        // lambda alone is not a stop; give up only once the residual has
        // also stopped shrinking
        bool lambda_stalled = std::abs(st.lambda - lambda_prev) <= opts.lambda_tol;
        bool residual_stalled = st.residual > 0.9 * residual_prev;
        if (lambda_stalled && residual_stalled) break;
        lambda_prev = st.lambda;
        residual_prev = st.residual;
    }

    gauge_tuple(x);
    pair.x = std::move(x);
    pair.lambda = evaluate(h, pair.x);
    return pair;
}

std::pair<HermitianEigenpair, HermitianEigenpair> extreme_hermitian_eigenvalues(
    const HermitianTensor& h, int starts, std::uint64_t seed, const PowerOptions& opts) {
    if (starts < 1) throw ShapeMismatch("at least one start is required");

    HermitianEigenpair best_max, best_min;
    bool have = false;
    for (int s = 0; s < starts; ++s) {
        Rng rng = Rng::split(seed, static_cast<std::uint64_t>(s));
        ModeVectorTuple start = random_tuple(rng, h.mode_dims());

        HermitianEigenpair up = power_iterate(h, start, Objective::Max, opts);
        up.start_seed = static_cast<std::uint64_t>(s);
        HermitianEigenpair down = power_iterate(h, start, Objective::Min, opts);
        down.start_seed = static_cast<std::uint64_t>(s);

        if (!have || up.lambda > best_max.lambda) best_max = std::move(up);
        if (!have || down.lambda < best_min.lambda) best_min = std::move(down);
        have = true;
    }
    return {best_max, best_min};
}

NonnegativityReport nonnegativity_probe(const HermitianTensor& h, int starts, std::uint64_t seed) {
    auto [up, down] = extreme_hermitian_eigenvalues(h, starts, seed);
    (void)up;
    NonnegativityReport rep;
    rep.witness = down.x;
    rep.min_value_found = evaluate(h, rep.witness);  // fresh, independent of the search state
    rep.starts = starts;
    rep.verdict = (rep.min_value_found < -1e-9) ? NonnegativityReport::Verdict::NegativeWitness
                                                : NonnegativityReport::Verdict::NonnegativeSoFar;
    return rep;
}

// --- seeded random builders -----------------------------------------------------

std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n) {
    std::vector<Complex> v(n);
    double s = 0.0;
    do {
        for (Complex& z : v) z = rng.complex_gaussian();
        s = 0.0;
        for (const Complex& z : v) s += std::norm(z);
    } while (s < 1e-24);
    double inv = 1.0 / std::sqrt(s);
    for (Complex& z : v) z *= inv;
    return v;
}

ModeVectorTuple random_tuple(Rng& rng, const std::vector<std::size_t>& dims) {
    ModeVectorTuple t;
    for (std::size_t n : dims) t.vectors.push_back(random_unit_vector(rng, n));
    return t;
}

std::vector<std::vector<Complex>> random_orthonormal_set(Rng& rng, std::size_t n,
                                                         std::size_t count) {
    if (count > n) throw ShapeMismatch("cannot draw more orthonormal vectors than the dimension");
    std::vector<std::vector<Complex>> set;
    while (set.size() < count) {
        std::vector<Complex> v(n);
        for (Complex& z : v) z = rng.complex_gaussian();
        // Gram-Schmidt, applied twice
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : set) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(u[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
        }
        double s = 0.0;
        for (const Complex& z : v) s += std::norm(z);
        if (s < 1e-12) continue;  // draw again if the sample was (near-)dependent
        double inv = 1.0 / std::sqrt(s);
        for (Complex& z : v) z *= inv;
        set.push_back(std::move(v));
    }
    return set;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    std::vector<std::vector<Complex>> cols = random_orthonormal_set(rng, n, n);
    ComplexMatrix q(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) q(r, c) = cols[c][r];
    }
    return q;
}

ComplexTensor random_complex_tensor(Rng& rng, const std::vector<std::size_t>& dims) {
    ComplexTensor t(dims);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();
    return t;
}

HermitianTensor random_hermitian_tensor(Rng& rng, const std::vector<std::size_t>& mode_dims) {
    const std::size_t n = shape_size(mode_dims);
    std::vector<Complex> entries(n * n);
    for (Complex& z : entries) z = rng.complex_gaussian();
    return HermitianTensor::symmetrized(mode_dims, std::move(entries));
}

} // namespace hermitia
