#include "hermitia/io.hpp"

#include <cstdio>

namespace hermitia {

namespace {

using nlohmann::json;

Complex parse_complex_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError(where + ": expected a [re, im] pair");
    }
    return Complex(v[0].get<double>(), v[1].get<double>());
}

json complex_pair(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

std::vector<std::size_t> parse_mode_dims(const json& j) {
    if (!j.contains("mode_dims") || !j["mode_dims"].is_array() || j["mode_dims"].empty()) {
        throw ParseError("mode_dims: expected a nonempty array of positive integers");
    }
    std::vector<std::size_t> dims;
    for (const auto& d : j["mode_dims"]) {
        if (!d.is_number_integer() || d.get<long long>() <= 0) {
            throw ParseError("mode_dims: entries must be positive integers");
        }
        dims.push_back(d.get<std::size_t>());
    }
    return dims;
}

} // namespace

ParsedTensor parse_tensor_json(const json& j) {
    if (!j.is_object()) throw ParseError("tensor: expected a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("kind: expected \"complex\" or \"hermitian\"");
    }
    ParsedTensor out;
    out.kind = j["kind"].get<std::string>();
    if (out.kind != "complex" && out.kind != "hermitian") {
        throw ParseError("kind: expected \"complex\" or \"hermitian\", got \"" + out.kind + "\"");
    }
    out.mode_dims = parse_mode_dims(j);

    std::vector<std::size_t> storage_dims = out.mode_dims;
    if (out.kind == "hermitian") {
        storage_dims.insert(storage_dims.end(), out.mode_dims.begin(), out.mode_dims.end());
    }
    const std::size_t count = shape_size(storage_dims);

    std::vector<Complex> entries(count, 0.0);
    if (j.contains("dense")) {
        const auto& dense = j["dense"];
        if (!dense.is_array() || dense.size() != count) {
            throw ParseError("dense: expected " + std::to_string(count) + " [re, im] pairs");
        }
        for (std::size_t i = 0; i < count; ++i) {
            entries[i] = parse_complex_pair(dense[i], "dense[" + std::to_string(i) + "]");
        }
    } else if (j.contains("sparse")) {
        const auto& sparse = j["sparse"];
        if (!sparse.is_array()) throw ParseError("sparse: expected an array of entries");
        for (std::size_t t = 0; t < sparse.size(); ++t) {
            const std::string where = "sparse[" + std::to_string(t) + "]";
            const auto& item = sparse[t];
            if (!item.is_object() || !item.contains("idx") || !item.contains("val")) {
                throw ParseError(where + ": expected {\"idx\": [...], \"val\": [re, im]}");
            }
            const auto& idx = item["idx"];
            if (!idx.is_array() || idx.size() != storage_dims.size()) {
                throw ParseError(where + ".idx: expected " +
                                 std::to_string(storage_dims.size()) + " indices");
            }
            std::vector<std::size_t> multi(storage_dims.size());
            for (std::size_t k = 0; k < storage_dims.size(); ++k) {
                if (!idx[k].is_number_integer()) {
                    throw ParseError(where + ".idx: indices must be integers");
                }
                long long v = idx[k].get<long long>();  // 1-based on the wire
                if (v < 1 || static_cast<std::size_t>(v) > storage_dims[k]) {
                    throw ParseError(where + ".idx: index " + std::to_string(v) +
                                     " out of range for mode of size " +
                                     std::to_string(storage_dims[k]));
                }
                multi[k] = static_cast<std::size_t>(v - 1);
            }
            entries[flat_index(storage_dims, multi)] =
                parse_complex_pair(item["val"], where + ".val");
        }
    } else {
        throw ParseError("tensor: expected a \"dense\" or \"sparse\" field");
    }
    out.tensor = ComplexTensor(storage_dims, std::move(entries));
    return out;
}

json complex_tensor_to_json(const ComplexTensor& t) {
    json j;
    j["kind"] = "complex";
    j["mode_dims"] = t.dims();
    json dense = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) dense.push_back(complex_pair(t[i]));
    j["dense"] = dense;
    return j;
}

json hermitian_tensor_to_json(const HermitianTensor& h) {
    json j;
    j["kind"] = "hermitian";
    j["mode_dims"] = h.mode_dims();
    json dense = json::array();
    for (const Complex& z : h.data()) dense.push_back(complex_pair(z));
    j["dense"] = dense;
    return j;
}

bool looks_like_ensemble(const json& j) {
    return j.is_object() && j.contains("probabilities") && j.contains("pure_states");
}

MixedStateEnsemble parse_ensemble_json(const json& j) {
    if (!looks_like_ensemble(j)) {
        throw ParseError("ensemble: expected \"probabilities\" and \"pure_states\"");
    }
    MixedStateEnsemble e;
    if (!j["probabilities"].is_array()) throw ParseError("probabilities: expected an array");
    for (const auto& p : j["probabilities"]) {
        if (!p.is_number()) throw ParseError("probabilities: entries must be numbers");
        e.probabilities.push_back(p.get<double>());
    }
    if (!j["pure_states"].is_array()) throw ParseError("pure_states: expected an array");
    for (std::size_t i = 0; i < j["pure_states"].size(); ++i) {
        ParsedTensor p = parse_tensor_json(j["pure_states"][i]);
        if (p.kind != "complex") {
            throw ParseError("pure_states[" + std::to_string(i) + "]: must have kind complex");
        }
        e.pure_states.push_back(std::move(p.tensor));
    }
    try {
        e.validate();
    } catch (const InconsistentShapes& ex) {
        throw ParseError(std::string("ensemble: ") + ex.what());
    }
    return e;
}

json ensemble_to_json(const MixedStateEnsemble& e) {
    json j;
    j["probabilities"] = e.probabilities;
    json states = json::array();
    for (const auto& s : e.pure_states) states.push_back(complex_tensor_to_json(s));
    j["pure_states"] = states;
    return j;
}

HermitianTensor hermitian_from_parsed(const ParsedTensor& p, double tol) {
    if (p.kind != "hermitian") throw ParseError("expected a tensor of kind hermitian");
    HermiticityReport rep = hermiticity_defect(p.tensor);
    if (rep.max_defect > tol) {
        throw NotHermitian("input violates conjugate pair-symmetry (defect " +
                           std::to_string(rep.max_defect) + ")");
    }
    return HermitianTensor::symmetrized(p.mode_dims, p.tensor.data(), tol);
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace hermitia
