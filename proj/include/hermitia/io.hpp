#pragma once

#include <string>

#include <json.hpp>

#include "hermitia/quantum.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// Tensor JSON: {"kind": "complex"|"hermitian", "mode_dims": [n_1..n_m],
// "dense": [[re,im], ...]} or "sparse": [{"idx": [1-based], "val": [re,im]}].
// For the hermitian kind the dense array runs over the doubled shape and a
// sparse idx carries 2m entries.
struct ParsedTensor {
    std::string kind;      // "complex" or "hermitian"
    ComplexTensor tensor;  // doubled dims when kind == "hermitian"
    std::vector<std::size_t> mode_dims;
};

ParsedTensor parse_tensor_json(const nlohmann::json& j);
nlohmann::json complex_tensor_to_json(const ComplexTensor& t);
nlohmann::json hermitian_tensor_to_json(const HermitianTensor& h);

// Ensemble JSON: {"probabilities": [..], "pure_states": [tensor-json ..]}
bool looks_like_ensemble(const nlohmann::json& j);
MixedStateEnsemble parse_ensemble_json(const nlohmann::json& j);
nlohmann::json ensemble_to_json(const MixedStateEnsemble& e);

// HermitianTensor from a parsed "hermitian"-kind array: validates the
// defect against tol, then symmetrizes exactly.
HermitianTensor hermitian_from_parsed(const ParsedTensor& p, double tol = kDefaultHermiticityTol);

// 64-bit FNV-1a over raw bytes, rendered as "fnv1a64:<hex>"
std::string content_digest(const std::string& bytes);

} // namespace hermitia
