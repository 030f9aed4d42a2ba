#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hermitia/decomposition.hpp"
#include "hermitia/heig.hpp"
#include "hermitia/partial_trace.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// {p_i, chi_i}: positive probabilities summing to 1, unit pure states of a
// common shape.
struct MixedStateEnsemble {
    std::vector<double> probabilities;
    std::vector<ComplexTensor> pure_states;

    void validate() const;  // throws InconsistentShapes on violation
};

// sum_i p_i rho(chi_i); Hermitian, unit matrix trace, PSD flattening
HermitianTensor density_tensor(const MixedStateEnsemble& e);

// --- certificates ---------------------------------------------------------------

struct NegativeMatrixEigenvalue {
    double lambda_min = 0.0;
    ComplexTensor eigenvector;  // folded, unit norm
};

struct NegativeHermitianEigenvalue {
    double lambda = 0.0;
    ModeVectorTuple witness;  // unit tuple with H(witness) < -1e-9
};

struct PositiveHermitianDecompositionCert {
    HermitianDecomposition decomposition;  // all weights positive
};

struct SpanObstruction {
    std::vector<ComplexTensor> candidates;  // every rank-one ray of the span
    std::vector<double> best_weights;       // best nonnegative fit
    double best_fit_residual = 0.0;         // exceeds the entangled floor
};

struct Reason {
    std::string text;
};

using Certificate = std::variant<NegativeMatrixEigenvalue, NegativeHermitianEigenvalue,
                                 PositiveHermitianDecompositionCert, SpanObstruction, Reason>;

enum class Separability { Entangled, Separable, Inconclusive };

struct SeparabilityVerdict {
    Separability verdict = Separability::Inconclusive;
    Certificate certificate = Reason{""};
};

const char* to_string(Separability v);
const char* certificate_kind(const Certificate& c);

// Negative matrix eigenvalue first, then the Hermitian eigenvalue probe;
// nullopt when neither fires. Certificates carry re-verifiable witnesses.
std::optional<Certificate> witness_scan(const HermitianTensor& h, int starts = 32,
                                        std::uint64_t seed = 1);

// All rank-one rays of span{U_1, U_2} for 2 x 2 bipartite spans with s <= 2,
// found from det(k_1 U_1 + k_2 U_2) = 0. Each returned tensor is normalized
// and passes the rank-one test. Throws OutOfScope beyond that shape and
// DegenerateSpan when the determinant vanishes identically.
std::vector<ComplexTensor> rank_one_elements_in_span(const EigenMatrixDecomposition& eigen);

struct AnalyzerConfig {
    double tol = 1e-8;          // rank-one test tolerance
    int starts = 32;            // witness scan starts
    std::uint64_t seed = 1;
    bool normalize_trace = false;
};

// Decision pipeline: eigen decomposition, witness scan, rank-one span
// enumeration, nonnegative weight fit. Anything outside the enumerable
// scope folds into Inconclusive with a reason.
SeparabilityVerdict separability_analyze(const HermitianTensor& h,
                                         const AnalyzerConfig& config = {});
SeparabilityVerdict separability_analyze(const MixedStateEnsemble& e,
                                         const AnalyzerConfig& config = {});

// Re-checks a certificate from the raw tensor and the certificate payload
// alone. Returns false if any claim fails to reproduce.
bool verify_certificate(const HermitianTensor& h, const SeparabilityVerdict& v);

} // namespace hermitia
