#pragma once

// Exact ground truth for harness trials: set algebra for estimator targets
// and exhaustive enumeration for MAP-B agreement probabilities.

#include <cstdint>
#include <string_view>

#include <json.hpp>

namespace vsacap {

// Largest number of states an enumeration may visit.
inline constexpr std::uint64_t kMaxEnumerationStates = std::uint64_t{1} << 24;

// Pr[x_i S_ij = +1] for x = sign(sum of n independent signs, one of them S_ij),
// ties resolved by a fair coin. Enumerates all 2^(n-1) co-bundled sign patterns.
// Throws std::length_error when 2^(n-1) exceeds kMaxEnumerationStates.
double agreement_probability(unsigned n);

// Pr[x^(1) x = +1] after the chained fold x <- sign(x + x^(j)), j = 2..r, at one
// coordinate; enumerates every sign pattern and every tie branch.
double depth_agreement_probability(unsigned r);

// Dispatches on (arch, task):
//   any/intersection {x, y}    -> |X ∩ Y| (SymbolSet JSON)
//   any/wedgedot {x, y}        -> wedgedot
//   any/l1 {x, y}              -> l1 distance
//   any/norm {x}               -> ||x||_2^2
//   any/member {x, j}          -> 1 if j in X else 0
//   mapb/agreement {n}         -> agreement_probability(n)
//   mapb/depth-agreement {r}   -> depth_agreement_probability(r)
// Throws std::invalid_argument on unknown tasks and std::length_error on
// instances too large to enumerate.
double oracle_check(std::string_view arch, std::string_view task, const nlohmann::json& instance);

}  // namespace vsacap
