#ifndef EXTFORM_SIMPLEX_HPP
#define EXTFORM_SIMPLEX_HPP

#include "extform/lp_model.hpp"

#include <optional>

namespace extform {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<Rat> values;   // parallel to model vars
    Rat objective = 0;
    std::vector<int> basis;    // basic column indices of the standard form
};

struct SolveOptions {
    long pivot_limit = 10'000'000;
    bool dump_tableau = false;
};

/// Two-phase dense tableau simplex over exact rationals, Bland's rule with
/// lowest-index tie-breaking. Optimal solutions are basic feasible (vertex)
/// solutions. Box bounds are materialized as explicit slack rows.
LpSolution solve(const LpModel& model, const SolveOptions& opts = {});

/// True iff every variable value is 0 or 1.
bool is_integral(const LpModel& model, const LpSolution& sol);
/// True iff every listed variable value is 0 or 1 (vacuously true when empty).
bool is_integral(const LpModel& model, const LpSolution& sol,
                 const std::vector<int>& var_subset);

/// Independent post-hoc check: exact feasibility of all rows and bounds.
bool verify_solution(const LpModel& model, const LpSolution& sol);

}  // namespace extform

#endif
