#include "extform/pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace extform {

RunReport run_solve(const CspInstance& q, const PipelineOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport r;
    r.n = q.n;
    r.max_domain = q.max_domain_size();
    r.hard_count = static_cast<long>(q.hard.size());
    r.soft_count = static_cast<long>(q.soft.size());

    auto errs = validate(q);
    if (!errs.empty()) throw CspError("BadInstance", errs.front().code + ": " + errs.front().detail);

    auto g = constraint_graph(q);
    TreeDecomposition td = opts.td ? *opts.td : heuristic_tree_decomposition(g);
    if (opts.td) {
        auto td_errs = validate_td(g, td);
        if (!td_errs.empty())
            throw CspError("BadTd", td_errs.front().code + ": " + td_errs.front().detail);
    }
    auto ntd = make_nice(td);
    r.width = ntd.width();
    r.ntd_nodes = static_cast<long>(ntd.nodes.size());

    auto ext = build_extended_lp(q, ntd);
    r.stats = formulation_stats(q, ntd, ext);
    if (r.stats.f_variables > opts.max_configs)
        throw CspError("TooManyConfigs",
                       "formulation has " + std::to_string(r.stats.f_variables) +
                           " f-variables, above the --max-configs limit of " +
                           std::to_string(opts.max_configs));
    if (opts.inject_fault)
        for (auto& row : ext.model.rows)
            if (row.tag == RowTag::C4) row.rhs = Rat(1, 2);

    auto sol = solve(ext.model, {.dump_tableau = opts.dump_tableau});
    r.status = sol.status;
    if (sol.status == SolveStatus::Optimal) {
        r.optimum = sol.objective;
        r.integral = is_integral(ext.model, sol);
        if (r.integral) {
            auto base = build_base_lp(q);
            auto yg = proj2(q, base, ext, values_to_point(ext, sol.values));
            r.witness = proj1(q, base, yg);
        }
    }

    if (opts.with_oracles) {
        try {
            auto bf = brute_force(q, opts.brute_cap);
            r.brute_agrees = bf.feasible == (r.status == SolveStatus::Optimal) &&
                             (!bf.feasible || bf.optimum == r.optimum);
        } catch (const CspError&) {
            // CapExceeded: leave unset
        }
        auto dp = treewidth_dp(q, ntd);
        r.dp_agrees = dp.feasible == (r.status == SolveStatus::Optimal) &&
                      (!dp.feasible || dp.optimum == r.optimum);
    }

    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
}

std::string report_to_json(const CspInstance& q, const RunReport& r, bool include_timing) {
    nlohmann::json j;
    j["instance"] = {{"n", r.n},
                     {"max_domain", r.max_domain},
                     {"hard", r.hard_count},
                     {"soft", r.soft_count},
                     {"sense", q.sense == Sense::Max ? "max" : "min"}};
    j["decomposition"] = {{"width", r.width}, {"nodes", r.ntd_nodes}};
    j["formulation"] = {{"variables", r.stats.variables},
                        {"constraints", r.stats.constraints},
                        {"nonzeros", r.stats.nonzeros},
                        {"f_variables", r.stats.f_variables},
                        {"size_bound_ok", r.stats.var_bound_ok && r.stats.row_bound_ok}};
    j["status"] = r.status == SolveStatus::Optimal
                      ? "optimal"
                      : (r.status == SolveStatus::Infeasible ? "infeasible" : "unbounded");
    if (r.status == SolveStatus::Optimal) {
        j["optimum"] = rat_str(r.optimum);
        j["integral"] = r.integral;
    }
    if (r.witness) {
        j["witness"] = {{"z", r.witness->z.values}, {"h", r.witness->h}};
    }
    if (r.brute_agrees) j["brute_force_agrees"] = *r.brute_agrees;
    if (r.dp_agrees) j["treewidth_dp_agrees"] = *r.dp_agrees;
    if (include_timing) j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
}

}  // namespace extform
