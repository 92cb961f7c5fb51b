#include "extform/json_io.hpp"
#include "extform/pipeline.hpp"
#include "extform/randgen.hpp"
#include "extform/reductions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 10;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw extform::CspError("BadInstance", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw extform::CspError("BadInstance", "cannot write " + path);
    out << text;
}

int cmd_solve(const std::string& instance_file, const std::string& td_file, long max_configs,
              bool dump_tableau, bool timing) {
    using namespace extform;
    CspInstance q = instance_from_json(read_file(instance_file));
    PipelineOptions opts;
    opts.max_configs = max_configs;
    opts.dump_tableau = dump_tableau;
    if (!td_file.empty()) opts.td = parse_td(read_file(td_file));
    RunReport r = run_solve(q, opts);
    std::cout << report_to_json(q, r, timing);
    return r.status == SolveStatus::Optimal ? kExitOk : kExitInfeasible;
}

int cmd_emit_lp(const std::string& instance_file, bool base, const std::string& td_file,
                const std::string& out) {
    using namespace extform;
    CspInstance q = instance_from_json(read_file(instance_file));
    std::ostringstream os;
    if (base) {
        auto b = build_base_lp(q);
        os << export_lp(b.model);
    } else {
        auto g = constraint_graph(q);
        TreeDecomposition td =
            td_file.empty() ? heuristic_tree_decomposition(g) : parse_td(read_file(td_file));
        auto ntd = make_nice(td);
        auto e = build_extended_lp(q, ntd);
        auto s = formulation_stats(q, ntd, e);
        os << "\\ stats: variables=" << s.variables << " constraints=" << s.constraints
           << " nonzeros=" << s.nonzeros << " f_variables=" << s.f_variables
           << " nodes=" << s.ntd_nodes << " width=" << s.width << "\n";
        os << export_lp(e.model);
    }
    write_output(out, os.str());
    return kExitOk;
}

int cmd_verify(const std::string& instance_file, long seeds, bool inject_fault) {
    using namespace extform;
    std::vector<CspInstance> suite;
    if (!instance_file.empty()) suite.push_back(instance_from_json(read_file(instance_file)));

    uint64_t seed = 12345;
    if (const char* env = std::getenv("EXTFORM_SEED")) seed = std::strtoull(env, nullptr, 10);
    std::mt19937_64 rng(seed);
    for (long i = 0; i < seeds; ++i) suite.push_back(random_instance(rng));

    long failures = 0;
    for (size_t i = 0; i < suite.size(); ++i) {
        PipelineOptions opts;
        opts.inject_fault = inject_fault;
        RunReport r = run_solve(suite[i], opts);
        bool integral_ok = r.status != SolveStatus::Optimal || r.integral;
        bool oracles_ok = r.brute_agrees.value_or(true) && r.dp_agrees.value_or(true);
        bool ok = integral_ok && oracles_ok;
        std::cout << "instance " << i << ": " << (ok ? "ok" : "FAIL")
                  << " (status=" << (r.status == SolveStatus::Optimal ? "optimal" : "infeasible")
                  << " integral=" << (integral_ok ? "yes" : "NO")
                  << " oracles=" << (oracles_ok ? "agree" : "DISAGREE") << ")\n";
        if (!ok) ++failures;
    }
    std::cout << suite.size() << " instance(s), " << failures << " failure(s)\n";
    return failures == 0 ? kExitOk : 1;
}

int cmd_reduce(const std::string& problem, const std::string& graph_file,
               const std::string& pattern_file, int colors, const std::string& out) {
    using namespace extform;
    GraphInput g = parse_graph(read_file(graph_file));
    if (!pattern_file.empty()) {
        GraphInput h = parse_graph(read_file(pattern_file), /*allow_loops=*/true);
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

    write_output(out, instance_to_json(red.instance));
    nlohmann::json meta = {{"problem", problem},
                           {"projection", red.projection},
                           {"claimed_size", red.claimed_size}};
    std::string meta_path = (out.empty() || out == "-") ? "" : out + ".meta.json";
    if (meta_path.empty())
        std::cerr << meta.dump() << "\n";
    else
        write_output(meta_path, meta.dump(2) + "\n");
    return kExitOk;
}

int cmd_oracle(const std::string& instance_file, const std::string& td_file, bool use_dp) {
    using namespace extform;
    CspInstance q = instance_from_json(read_file(instance_file));
    OracleResult res;
    if (use_dp) {
        auto g = constraint_graph(q);
        TreeDecomposition td =
            td_file.empty() ? heuristic_tree_decomposition(g) : parse_td(read_file(td_file));
        res = treewidth_dp(q, make_nice(td));
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
    std::cout << j.dump(2) << "\n";
    return res.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact extended-formulation LP solver for bounded-treewidth CSP"};
    app.require_subcommand(1);

    std::string instance_file, td_file, out, graph_file, pattern_file, problem;
    long max_configs = 200000;
    long seeds = 0;
    int colors = 3;
    bool base = false, extended = false, dump_tableau = false, inject_fault = false;
    bool no_timing = false, use_dp = false;

    auto* s = app.add_subcommand("solve", "solve an instance through the extended LP");
    s->add_option("instance", instance_file, "instance JSON file")->required();
    s->add_option("--td", td_file, "externally supplied tree decomposition");
    s->add_option("--max-configs", max_configs, "f-variable limit");
    s->add_flag("--dump-tableau", dump_tableau, "dump the final simplex tableau to stderr");
    s->add_flag("--no-timing", no_timing, "omit wall time from the report");

    auto* e = app.add_subcommand("emit-lp", "write the LP in CPLEX-LP text form");
    e->add_option("instance", instance_file, "instance JSON file")->required();
    e->add_flag("--base", base, "base y/g relaxation");
    e->add_flag("--extended", extended, "extended f formulation (default)");
    e->add_option("--td", td_file, "externally supplied tree decomposition");
    e->add_option("-o,--out", out, "output file (default stdout)");

    auto* v = app.add_subcommand("verify", "oracle agreement and vertex integrality checks");
    v->add_option("instance", instance_file, "optional instance JSON file");
    v->add_option("--seeds", seeds, "number of random instances");
    v->add_flag("--inject-fault", inject_fault, "negative control: corrupt the LP");

    auto* r = app.add_subcommand("reduce", "encode a graph problem as a CSP instance");
    r->add_option("problem", problem,
                  "coloring|listhcol|uniquegames|multiwaycut|maxcut|edgebipartization|"
                  "vertexcover|independentset|oct")
        ->required();
    r->add_option("graph", graph_file, "graph file")->required();
    r->add_option("--pattern", pattern_file, "pattern graph H (listhcol)");
    r->add_option("-q,--colors", colors, "color count (coloring)");
    r->add_option("-o,--out", out, "output file (default stdout)");

    auto* o = app.add_subcommand("oracle", "independent ground-truth solvers");
    o->add_option("instance", instance_file, "instance JSON file")->required();
    o->add_flag("--dp", use_dp, "use the treewidth DP instead of brute force");
    o->add_option("--td", td_file, "externally supplied tree decomposition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (s->parsed()) return cmd_solve(instance_file, td_file, max_configs, dump_tableau,
                                          !no_timing);
        if (e->parsed()) return cmd_emit_lp(instance_file, base && !extended, td_file, out);
        if (v->parsed()) return cmd_verify(instance_file, seeds, inject_fault);
        if (r->parsed()) return cmd_reduce(problem, graph_file, pattern_file, colors, out);
        if (o->parsed()) return cmd_oracle(instance_file, td_file, use_dp);
    } catch (const extform::CspError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
