#ifndef EXTFORM_RANDGEN_HPP
#define EXTFORM_RANDGEN_HPP

#include "extform/csp.hpp"
#include "extform/reductions.hpp"

#include <random>

namespace extform {

/// Small random instance for the verification suites: n <= 8, |D_v| <= 3,
/// random binary/ternary hard and soft constraints, rational weights with
/// denominators <= 7. Deterministic for a fixed engine state.
CspInstance random_instance(std::mt19937_64& rng);

GraphInput random_graph(std::mt19937_64& rng, int max_n = 8);

}  // namespace extform

#endif
