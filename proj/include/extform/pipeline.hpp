#ifndef EXTFORM_PIPELINE_HPP
#define EXTFORM_PIPELINE_HPP

#include "extform/formulation.hpp"
#include "extform/oracles.hpp"
#include "extform/simplex.hpp"

#include <optional>
#include <string>

namespace extform {

struct PipelineOptions {
    std::optional<TreeDecomposition> td;   // heuristic when absent
    long max_configs = 200000;             // f-variable guard
    bool with_oracles = true;              // cross-check against both oracles
    Int brute_cap = Int(10000000);
    bool dump_tableau = false;
    // Negative control: scales the right-hand side of every bag row to 1/2,
    // which no integral point can satisfy.
    bool inject_fault = false;
};

struct RunReport {
    // instance summary
    int n = 0;
    int max_domain = 0;
    long hard_count = 0;
    long soft_count = 0;
    // decomposition and formulation
    int width = 0;
    long ntd_nodes = 0;
    FormulationStats stats;
    // solve
    SolveStatus status = SolveStatus::Infeasible;
    Rat optimum = 0;
    bool integral = false;
    double wall_ms = 0;
    // oracle agreement (set when with_oracles)
    std::optional<bool> brute_agrees;
    std::optional<bool> dp_agrees;
    std::optional<ExtendedAssignment> witness;
};

/// validate -> tree decomposition -> make_nice -> extended LP -> solve ->
/// proj2 -> proj1.
RunReport run_solve(const CspInstance& q, const PipelineOptions& opts = {});

/// JSON text of the report; wall time is emitted only when include_timing.
std::string report_to_json(const CspInstance& q, const RunReport& r, bool include_timing = true);

}  // namespace extform

#endif
