#ifndef EXTFORM_ORACLES_HPP
#define EXTFORM_ORACLES_HPP

#include "extform/csp.hpp"
#include "extform/treedec.hpp"

#include <optional>

namespace extform {

struct OracleResult {
    bool feasible = false;
    Rat optimum = 0;                 // in the instance's sense
    Assignment witness;              // lexicographically smallest optimum
    std::optional<Int> count;        // feasible assignments (brute force only)
};

/// Exhaustive enumeration; throws CapExceeded when the assignment space
/// exceeds `cap`.
OracleResult brute_force(const CspInstance& q, const Int& cap = Int(10000000));

/// Bottom-up dynamic program over bag configurations.
OracleResult treewidth_dp(const CspInstance& q, const NiceTreeDecomposition& ntd);

}  // namespace extform

#endif
