#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermitia/quantum.hpp"
#include "hermitia/tensor.hpp"

namespace hermitia {

// Built-in inputs, generated from closed forms rather than stored blobs.

// 2 x 3 complex tensor with entries ((j+k) + (j-k)i)/sqrt(86), 1-based j,k;
// a small bipartite pure state whose non-1 partial trace equals A A^H.
ComplexTensor fixture_example_3_2();

// Unit-norm 3 x 3 x 3 real tensor mixing three rank-one terms with weights
// 0.371391 / 0.742781 / 0.557086 over spherical direction vectors; its three
// single-mode partial traces carry distinct spectra.
ComplexTensor fixture_example_3_4();

// Two-qubit mixed state over the pure states (|00> + |01> + i|11>)/sqrt(3)
// and (|00> - |01> + 4i|10>)/(3*sqrt(2)); entangled for any positive
// weights. Defaults to an even mixture.
MixedStateEnsemble fixture_example_6_2(double p1 = 0.5, double p2 = 0.5);

// seeded random unit rank-one tensor
ComplexTensor fixture_rank_one(const std::vector<std::size_t>& dims, std::uint64_t seed);

// seeded random mixture of product pure states
MixedStateEnsemble fixture_separable(const std::vector<std::size_t>& dims, std::size_t terms,
                                     std::uint64_t seed);

// Dispatch by name with optional parenthesized arguments:
//   example-3.2 | example-3.4 | example-6.2(p1,p2) |
//   rank-one([dims],seed) | separable([dims],terms,seed)
// Returns the tensor or ensemble JSON. Throws UnknownFixture.
nlohmann::json fixture_by_name(const std::string& name);

} // namespace hermitia
