// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include "extform/formulation.hpp"
#include "extform/json_io.hpp"
#include "extform/oracles.hpp"
#include "extform/pipeline.hpp"
#include "extform/randgen.hpp"
#include "extform/reductions.hpp"
#include "extform/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <queue>
#include <sstream>
#include <vector>

using namespace extform;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << criterion << " (" << name << "): " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

GraphInput complete_graph(int n) {
    GraphInput g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.edges.emplace_back(u, v);
    return g;
}

GraphInput path_graph(int n) {
    GraphInput g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

GraphInput cycle_graph(int n) {
    GraphInput g = path_graph(n);
    g.edges.emplace_back(1, n);
    return g;
}

std::vector<Assignment> feasible_assignments(const CspInstance& q, size_t limit) {
    std::vector<Assignment> out;
    Assignment z;
    z.values.assign(q.n, 0);
    std::function<void(int)> rec = [&](int v) {
        if (out.size() >= limit) return;
        if (v > q.n) {
            if (is_feasible(q, z)) out.push_back(z);
            return;
        }
        for (int a : q.domain(v)) {
            z.values[v - 1] = a;
            rec(v + 1);
        }
    };
    rec(1);
    return out;
}

// ---- independent direct enumerators for the problem table (criterion 6) ----
// These work on the graph alone and never touch the CSP encoding.

bool proper_colorable(const GraphInput& g, int q) {
    std::vector<int> col(g.n + 1, 0);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v > g.n) return true;
        for (int c = 1; c <= q; ++c) {
            bool ok = true;
            for (const auto& [a, b] : g.edges) {
                int other = (a == v) ? b : (b == v ? a : 0);
                if (other && other < v && col[other] == c) ok = false;
            }
            if (ok) {
                col[v] = c;
                if (rec(v + 1)) return true;
            }
        }
        return false;
    };
    return rec(1);
}

int direct_chromatic(const GraphInput& g) {
    for (int q = 1;; ++q)
        if (proper_colorable(g, q)) return q;
}

int direct_max_cut(const GraphInput& g) {
    int best = 0;
    for (int mask = 0; mask < (1 << g.n); ++mask) {
        int cut = 0;
        for (const auto& [u, v] : g.edges)
            cut += ((mask >> (u - 1)) & 1) != ((mask >> (v - 1)) & 1);
        best = std::max(best, cut);
    }
    return best;
}

int direct_vertex_cover(const GraphInput& g) {
    int best = g.n;
    for (int mask = 0; mask < (1 << g.n); ++mask) {
        bool covers = true;
        for (const auto& [u, v] : g.edges)
            if (!((mask >> (u - 1)) & 1) && !((mask >> (v - 1)) & 1)) covers = false;
        if (covers) best = std::min(best, __builtin_popcount(mask));
    }
    return best;
}

int direct_independent_set(const GraphInput& g) {
    int best = 0;
    for (int mask = 0; mask < (1 << g.n); ++mask) {
        bool indep = true;
        for (const auto& [u, v] : g.edges)
            if (((mask >> (u - 1)) & 1) && ((mask >> (v - 1)) & 1)) indep = false;
        if (indep) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

bool bipartite_without(const GraphInput& g, int removed_mask) {
    std::vector<std::vector<int>> adj(g.n + 1);
    for (const auto& [u, v] : g.edges)
        if (!((removed_mask >> (u - 1)) & 1) && !((removed_mask >> (v - 1)) & 1)) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    std::vector<int> color(g.n + 1, -1);
    for (int s = 1; s <= g.n; ++s) {
        if ((removed_mask >> (s - 1)) & 1 || color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> bfs;
        bfs.push(s);
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int v : adj[u]) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    bfs.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

int direct_oct(const GraphInput& g) {
    int best = g.n;
    for (int mask = 0; mask < (1 << g.n); ++mask)
        if (bipartite_without(g, mask)) best = std::min(best, __builtin_popcount(mask));
    return best;
}

int direct_multiway_cut(const GraphInput& g) {
    int t = static_cast<int>(g.terminals.size());
    std::vector<int> label(g.n + 1, 0);
    int best = static_cast<int>(g.edges.size());
    std::function<void(int)> rec = [&](int v) {
        if (v > g.n) {
            int cut = 0;
            for (const auto& [a, b] : g.edges) cut += label[a] != label[b];
            best = std::min(best, cut);
            return;
        }
        for (int i = 0; i < t; ++i) {
            bool terminal_mismatch = false;
            for (int j = 0; j < t; ++j)
                if (g.terminals[j] == v && j != i) terminal_mismatch = true;
            if (terminal_mismatch) continue;
            label[v] = i;
            rec(v + 1);
        }
    };
    rec(1);
    return best;
}

int direct_unique_games(const GraphInput& g) {
    std::vector<int> label(g.n + 1, 0);
    int best = 0;
    std::function<void(int)> rec = [&](int v) {
        if (v > g.n) {
            int sat = 0;
            for (const auto& [a, b] : g.edges) {
                std::vector<int> pi;
                if (auto it = g.perms.find({a, b}); it != g.perms.end()) {
                    pi = it->second;
                } else if (auto rit = g.perms.find({b, a}); rit != g.perms.end()) {
                    pi.assign(g.t, 0);
                    for (int i = 1; i <= g.t; ++i) pi[rit->second[i - 1] - 1] = i;
                } else {
                    for (int i = 1; i <= g.t; ++i) pi.push_back(i);
                }
                sat += pi[label[a] - 1] == label[b];
            }
            best = std::max(best, sat);
            return;
        }
        for (int i = 1; i <= g.t; ++i) {
            label[v] = i;
            rec(v + 1);
        }
    };
    rec(1);
    return best;
}

// ---------------------------------------------------------------------------

Rat lp_optimum(const CspInstance& q, bool* feasible = nullptr) {
    PipelineOptions opts;
    opts.with_oracles = false;
    auto r = run_solve(q, opts);
    if (feasible) *feasible = r.status == SolveStatus::Optimal;
    return r.optimum;
}

int criteria_1_2(uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int total = 200;
    int solved = 0, integral_fail = 0, agree_fail = 0, bound_fail = 0;
    for (int i = 0; i < total; ++i) {
        auto q = random_instance(rng);
        auto g = constraint_graph(q);
        auto ntd = make_nice(heuristic_tree_decomposition(g));
        auto ext = build_extended_lp(q, ntd);
        auto stats = formulation_stats(q, ntd, ext);
        if (!stats.var_bound_ok || !stats.row_bound_ok) ++bound_fail;

        auto sol = solve(ext.model);
        auto bf = brute_force(q);
        auto dp = treewidth_dp(q, ntd);
        bool lp_feasible = sol.status == SolveStatus::Optimal;
        if (lp_feasible != bf.feasible || lp_feasible != dp.feasible) {
            ++agree_fail;
            continue;
        }
        if (!lp_feasible) continue;
        ++solved;
        if (!is_integral(ext.model, sol)) ++integral_fail;
        if (sol.objective != bf.optimum || sol.objective != dp.optimum) ++agree_fail;
    }
    report(1, "vertex integrality on the random suite", integral_fail == 0,
           std::to_string(solved) + "/" + std::to_string(total) + " optimal, " +
               std::to_string(integral_fail) + " fractional");
    report(2, "three-way optimum agreement", agree_fail == 0,
           std::to_string(agree_fail) + " disagreement(s)");
    return bound_fail;
}

// size bound flags plus the linear-growth fit on path-graph IS counts
void criterion_4(int bound_fail) {
    bool fit_ok = true;
    std::vector<int> ns{5, 10, 20, 40};
    std::vector<long> counts;
    for (int n : ns) {
        auto red = reduce_independent_set(path_graph(n));
        auto g = constraint_graph(red.instance);
        auto ntd = make_nice(heuristic_tree_decomposition(g));
        auto ext = build_extended_lp(red.instance, ntd);
        auto stats = formulation_stats(red.instance, ntd, ext);
        if (!stats.var_bound_ok || !stats.row_bound_ok) ++bound_fail;
        if (stats.width != 1) fit_ok = false;
        counts.push_back(stats.f_variables);
    }
    std::ostringstream cs;
    for (size_t i = 0; i < counts.size(); ++i) cs << (i ? "," : "") << counts[i];
    for (size_t i = 1; i < ns.size(); ++i) {
        double r = static_cast<double>(counts[i]) / static_cast<double>(counts[i - 1]);
        double nr = static_cast<double>(ns[i]) / static_cast<double>(ns[i - 1]);
        if (std::abs(r / nr - 1.0) > 0.05) fit_ok = false;
    }
    report(4, "size bounds and linear path-growth fit", bound_fail == 0 && fit_ok,
           "path IS f-counts " + cs.str());
}

void criterion_3() {
    auto q = reduce_independent_set(complete_graph(3)).instance;
    auto base = build_base_lp(q);
    auto base_sol = solve(base.model);
    bool feas = false;
    Rat ext_opt = lp_optimum(q, &feas);
    auto bf = brute_force(q);
    bool ok = base_sol.status == SolveStatus::Optimal && base_sol.objective == Rat(3, 2) &&
              feas && ext_opt == Rat(1) && bf.feasible && bf.optimum == Rat(1);
    report(3, "IS(K3) base-LP gap 3/2 vs integral 1", ok,
           "base=" + rat_str(base_sol.objective) + " extended=" + rat_str(ext_opt));
}

void criterion_5(uint64_t seed) {
    std::mt19937_64 rng(seed);
    int done = 0, bad = 0;
    while (done < 50) {
        auto q = random_instance(rng);
        auto zs = feasible_assignments(q, 4);
        if (zs.empty()) continue;
        auto g = constraint_graph(q);
        auto ntd = make_nice(heuristic_tree_decomposition(g));
        auto ext = build_extended_lp(q, ntd);

        Int den = 0;
        std::vector<Int> nums(zs.size());
        for (auto& nu : nums) {
            nu = std::uniform_int_distribution<int>(1, 6)(rng);
            den += nu;
        }
        FractionalPoint f;
        for (size_t i = 0; i < zs.size(); ++i)
            for (const auto& [k, v] : encode_assignment(q, ext, zs[i]))
                f[k] += v * Rat(nums[i], den);

        auto d = decompose_lemma1(q, ntd, ext, f);
        Int total = 0;
        FractionalPoint avg;
        bool point_ok = true;
        for (const auto& [p, c] : d.points) {
            total += c;
            auto vals = point_to_values(ext, p);
            if (!ext.model.satisfied_by(vals)) point_ok = false;
            for (const auto& v : vals)
                if (v != 0 && v != 1) point_ok = false;
            for (const auto& [k, v] : p) avg[k] += v * Rat(c, 1) / Rat(d.m, 1);
        }
        if (total != d.m) point_ok = false;
        for (const auto& [k, v] : f)
            if ((avg.count(k) ? avg.at(k) : Rat(0)) != v) point_ok = false;
        for (const auto& [k, v] : avg)
            if ((f.count(k) ? f.at(k) : Rat(0)) != v) point_ok = false;
        if (!point_ok) ++bad;
        ++done;
    }
    report(5, "exact Lemma-1 decompositions", bad == 0,
           std::to_string(done) + " points, " + std::to_string(bad) + " failure(s)");
}

void criterion_6() {
    bool ok = true;
    std::ostringstream detail;
    auto check = [&](const std::string& name, bool pass) {
        if (!pass) {
            ok = false;
            detail << (detail.str().empty() ? "" : ",") << name;
        }
    };

    check("chromatic(K4)", direct_chromatic(complete_graph(4)) == 4 &&
                               chromatic_number(complete_graph(4)) == 4);
    check("maxcut(K3)", direct_max_cut(complete_graph(3)) == 2 &&
                            lp_optimum(reduce_max_cut(complete_graph(3)).instance) == Rat(2));
    check("maxcut(C4)", direct_max_cut(cycle_graph(4)) == 4 &&
                            lp_optimum(reduce_max_cut(cycle_graph(4)).instance) == Rat(4));
    check("vc(K3)", direct_vertex_cover(complete_graph(3)) == 2 &&
                        lp_optimum(reduce_vertex_cover(complete_graph(3)).instance) == Rat(2));
    check("is(K3)", direct_independent_set(complete_graph(3)) == 1 &&
                        lp_optimum(reduce_independent_set(complete_graph(3)).instance) == Rat(1));
    check("oct(C5)", direct_oct(cycle_graph(5)) == 1 &&
                         lp_optimum(reduce_oct(cycle_graph(5)).instance) == Rat(1));
    check("oct(K4)", direct_oct(complete_graph(4)) == 2 &&
                         lp_optimum(reduce_oct(complete_graph(4)).instance) == Rat(2));

    GraphInput mwc = path_graph(3);
    mwc.terminals = {1, 3};
    check("multiwaycut(path)", direct_multiway_cut(mwc) == 1 &&
                                   lp_optimum(reduce_multiway_cut(mwc).instance) == Rat(1));

    GraphInput ug = complete_graph(3);
    ug.t = 2;
    ug.perms[{2, 3}] = {2, 1};
    check("uniquegames(triangle)", direct_unique_games(ug) == 2 &&
                                       lp_optimum(reduce_unique_games(ug).instance) == Rat(2));

    report(6, "problem-table spot values", ok, ok ? "9 problems" : detail.str());
}

void criterion_7(uint64_t seed) {
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        auto g = random_graph(rng, 8);
        Rat edges(static_cast<long>(g.edges.size()));
        Rat mc = lp_optimum(reduce_max_cut(g).instance);
        Rat eb = lp_optimum(reduce_edge_bipartization(g).instance);
        Rat is = lp_optimum(reduce_independent_set(g).instance);
        Rat vc = lp_optimum(reduce_vertex_cover(g).instance);
        if (mc + eb != edges || is + vc != Rat(g.n)) ++bad;
    }
    report(7, "duality identities on 50 random graphs", bad == 0,
           std::to_string(bad) + " violation(s)");
}

void criterion_8() {
#ifndef EXTFORM_BIN
    report(8, "byte-identical cmd_solve runs", false, "solver binary path not configured");
#else
    const char* tmpdir = std::getenv("TMPDIR");
    std::string dir = tmpdir ? tmpdir : "/tmp";
    std::string inst = dir + "/extform_acceptance_instance.json";
    auto q = reduce_oct(cycle_graph(5)).instance;
    {
        std::ofstream out(inst);
        out << instance_to_json(q);
    }
    std::string out1 = dir + "/extform_acceptance_run1.txt";
    std::string out2 = dir + "/extform_acceptance_run2.txt";
    std::string cmd = std::string(EXTFORM_BIN) + " solve --no-timing " + inst;
    int rc1 = std::system((cmd + " > " + out1 + " 2>/dev/null").c_str());
    int rc2 = std::system((cmd + " > " + out2 + " 2>/dev/null").c_str());
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    std::string a = slurp(out1), b = slurp(out2);
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b &&
              a.find("\"witness\"") != std::string::npos;
    report(8, "byte-identical cmd_solve runs", ok);
    std::remove(inst.c_str());
    std::remove(out1.c_str());
    std::remove(out2.c_str());
#endif
}

}  // namespace

int main() {
    uint64_t seed = 424243;
    if (const char* env = std::getenv("EXTFORM_SEED")) seed = std::strtoull(env, nullptr, 10);

    int bound_fail = criteria_1_2(seed);
    criterion_3();
    criterion_4(bound_fail);
    criterion_5(seed + 1);
    criterion_6();
    criterion_7(seed + 2);
    criterion_8();

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
