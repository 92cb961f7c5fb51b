// Python bindings. Everything crosses the boundary as JSON / plain text, the
// same formats the CLI speaks, so the two front ends stay interchangeable.

#include "extform/json_io.hpp"
#include "extform/pipeline.hpp"
#include "extform/reductions.hpp"

#include <json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace extform;

namespace {

std::string solve_json(const std::string& instance_json, const std::string& td_text,
                       long max_configs, bool timing) {
    CspInstance q = instance_from_json(instance_json);
    PipelineOptions opts;
    opts.max_configs = max_configs;
    if (!td_text.empty()) opts.td = parse_td(td_text);
    return report_to_json(q, run_solve(q, opts), timing);
}

std::string oracle_json(const std::string& instance_json, bool use_dp) {
    CspInstance q = instance_from_json(instance_json);
    OracleResult res;
    if (use_dp) {
        res = treewidth_dp(q, make_nice(heuristic_tree_decomposition(constraint_graph(q))));
    } else {
        res = brute_force(q);
    }
    nlohmann::json j;
    j["status"] = res.feasible ? "feasible" : "infeasible";
    if (res.feasible) {
        j["optimum"] = rat_str(res.optimum);
        j["witness"] = res.witness.values;
    }
    if (res.count) j["feasible_count"] = res.count->str();
    return j.dump();
}

std::string emit_lp_text(const std::string& instance_json, bool base) {
    CspInstance q = instance_from_json(instance_json);
    if (base) return export_lp(build_base_lp(q).model);
    auto ntd = make_nice(heuristic_tree_decomposition(constraint_graph(q)));
    return export_lp(build_extended_lp(q, ntd).model);
}

std::string reduce_json(const std::string& problem, const std::string& graph_text,
                        const std::string& pattern_text, int colors) {
    GraphInput g = parse_graph(graph_text);
    if (!pattern_text.empty()) {
        GraphInput h = parse_graph(pattern_text, /*allow_loops=*/true);
        g.h_n = h.n;
        g.h_edges = h.edges;
    }
    ReductionOutput red;
    if (problem == "coloring")
        red = reduce_coloring(g, colors);
    else if (problem == "listhcol")
        red = reduce_list_h_coloring(g);
    else if (problem == "uniquegames")
        red = reduce_unique_games(g);
    else if (problem == "multiwaycut")
        red = reduce_multiway_cut(g);
    else if (problem == "maxcut")
        red = reduce_max_cut(g);
    else if (problem == "edgebipartization")
        red = reduce_edge_bipartization(g);
    else if (problem == "vertexcover")
        red = reduce_vertex_cover(g);
    else if (problem == "independentset")
        red = reduce_independent_set(g);
    else if (problem == "oct")
        red = reduce_oct(g);
    else
        throw CspError("BadInstance", "unknown problem: " + problem);
    nlohmann::json j;
    j["instance"] = nlohmann::json::parse(instance_to_json(red.instance));
    j["projection"] = red.projection;
    j["claimed_size"] = red.claimed_size;
    return j.dump();
}

std::vector<std::string> validate_json(const std::string& instance_json) {
    std::vector<std::string> out;
    try {
        instance_from_json(instance_json);
    } catch (const CspError& e) {
        out.push_back(e.what());
    }
    return out;
}

int chromatic_number_text(const std::string& graph_text) {
    return chromatic_number(parse_graph(graph_text));
}

}  // namespace

PYBIND11_MODULE(_extform, m) {
    m.doc() = "Exact extended-formulation LP pipeline for bounded-treewidth CSP";

    py::register_exception<CspError>(m, "CspError");

    m.def("solve", &solve_json, py::arg("instance_json"), py::arg("td_text") = "",
          py::arg("max_configs") = 200000L, py::arg("timing") = false,
          "Solve an instance through the extended LP; returns the run report as JSON.");
    m.def("oracle", &oracle_json, py::arg("instance_json"), py::arg("use_dp") = false,
          "Brute-force or treewidth-DP ground truth; returns JSON.");
    m.def("emit_lp", &emit_lp_text, py::arg("instance_json"), py::arg("base") = false,
          "CPLEX-LP text of the base or extended formulation.");
    m.def("reduce", &reduce_json, py::arg("problem"), py::arg("graph_text"),
          py::arg("pattern_text") = "", py::arg("colors") = 3,
          "Encode a graph problem as a CSP instance; returns JSON with the "
          "instance, recovery projection and size bound.");
    m.def("validate", &validate_json, py::arg("instance_json"),
          "Empty list when the instance parses and validates; error strings otherwise.");
    m.def("chromatic_number", &chromatic_number_text, py::arg("graph_text"));
}
