#include "extform/reductions.hpp"

#include "extform/formulation.hpp"
#include "extform/simplex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace extform {

namespace {

std::vector<int> range_domain(int lo, int hi) {
    std::vector<int> d;
    for (int i = lo; i <= hi; ++i) d.push_back(i);
    return d;
}

void check_edges(const GraphInput& g) {
    for (const auto& [u, v] : g.edges)
        if (u < 1 || v < 1 || u > g.n || v > g.n || u >= v)
            throw CspError("BadGraph", "edge " + std::to_string(u) + "-" + std::to_string(v));
}

CspInstance edge_instance(const GraphInput& g, int dlo, int dhi, Sense sense) {
    CspInstance q;
    q.n = g.n;
    q.domains.assign(g.n, range_domain(dlo, dhi));
    q.sense = sense;
    return q;
}

}  // namespace

ReductionOutput reduce_coloring(const GraphInput& g, int colors) {
    if (colors < 1) throw CspError("BadGraph", "need at least one color");
    check_edges(g);
    CspInstance q = edge_instance(g, 1, colors, Sense::Max);
    for (const auto& [u, v] : g.edges) {
        HardConstraint h;
        h.scope = {u, v};
        for (int i = 1; i <= colors; ++i)
            for (int j = 1; j <= colors; ++j)
                if (i != j) h.allowed.insert({i, j});
        q.hard.push_back(std::move(h));
    }
    merge_hard_scopes(q);
    return {std::move(q), "proj_V", "q^tau n"};
}

ReductionOutput reduce_list_h_coloring(const GraphInput& g) {
    check_edges(g);
    if (static_cast<int>(g.lists.size()) != g.n)
        throw CspError("BadGraph", "need one list per vertex");
    std::set<std::pair<int, int>> he;
    for (auto [a, b] : g.h_edges) {
        if (a > b) std::swap(a, b);
        he.insert({a, b});
    }
    CspInstance q;
    q.n = g.n;
    q.sense = Sense::Max;
    for (const auto& l : g.lists) {
        auto d = l;
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        q.domains.push_back(std::move(d));
    }
    for (const auto& [u, v] : g.edges) {
        HardConstraint h;
        h.scope = {u, v};
        for (int i : q.domain(u))
            for (int j : q.domain(v)) {
                auto e = std::minmax(i, j);
                if (he.count({e.first, e.second})) h.allowed.insert({i, j});
            }
        q.hard.push_back(std::move(h));
    }
    merge_hard_scopes(q);
    return {std::move(q), "proj_V", "L^tau n"};
}

ReductionOutput reduce_unique_games(const GraphInput& g) {
    check_edges(g);
    if (g.t < 1) throw CspError("BadGraph", "label count must be positive");
    CspInstance q = edge_instance(g, 1, g.t, Sense::Max);
    int id = 0;
    for (const auto& [u, v] : g.edges) {
        std::vector<int> pi;
        auto check_perm = [&](const std::vector<int>& p) {
            std::vector<int> sorted = p;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != range_domain(1, g.t))
                throw CspError("BadGraph", "edge permutation is not a bijection on [t]");
        };
        if (auto it = g.perms.find({u, v}); it != g.perms.end()) {
            pi = it->second;
            check_perm(pi);
        } else if (auto rit = g.perms.find({v, u}); rit != g.perms.end()) {
            check_perm(rit->second);
            pi.assign(g.t, 0);  // stored for (v,u); invert
            for (int i = 1; i <= g.t; ++i) pi[rit->second[i - 1] - 1] = i;
        } else {
            pi = range_domain(1, g.t);  // identity may be omitted
        }
        SoftConstraint c;
        c.id = id++;
        c.scope = {u, v};
        for (int i = 1; i <= g.t; ++i) c.payoff[{i, pi[i - 1]}] = 1;
        q.soft.push_back(std::move(c));
    }
    return {std::move(q), "proj_id", "O(t^tau n)"};
}

ReductionOutput reduce_multiway_cut(const GraphInput& g) {
    check_edges(g);
    int t = static_cast<int>(g.terminals.size());
    if (t < 2) throw CspError("BadGraph", "need at least two terminals");
    std::set<int> seen;
    for (int s : g.terminals)
        if (s < 1 || s > g.n || !seen.insert(s).second)
            throw CspError("BadGraph", "terminals must be distinct vertices");
    CspInstance q = edge_instance(g, 1, t, Sense::Min);
    // terminals pinned by unary hard constraints; the constraint graph stays put
    for (int i = 0; i < t; ++i) {
        HardConstraint h;
        h.scope = {g.terminals[i]};
        h.allowed.insert({i + 1});
        q.hard.push_back(std::move(h));
    }
    int id = 0;
    for (const auto& [u, v] : g.edges) {
        SoftConstraint c;
        c.id = id++;
        c.scope = {u, v};
        for (int i = 1; i <= t; ++i) c.payoff[{i, i}] = 1;
        q.soft.push_back(std::move(c));
    }
    merge_hard_scopes(q);
    return {std::move(q), "proj_E", "O(t^tau n)"};
}

namespace {

ReductionOutput cut_reduction(const GraphInput& g, Sense sense, const char* proj) {
    check_edges(g);
    CspInstance q = edge_instance(g, 0, 1, sense);
    int id = 0;
    for (const auto& [u, v] : g.edges) {
        SoftConstraint c;
        c.id = id++;
        c.scope = {u, v};
        c.payoff[{0, 1}] = 1;
        c.payoff[{1, 0}] = 1;
        q.soft.push_back(std::move(c));
    }
    return {std::move(q), proj, "2^tau n"};
}

ReductionOutput cover_reduction(const GraphInput& g, Sense sense, const char* proj) {
    check_edges(g);
    CspInstance q = edge_instance(g, 0, 1, sense);
    for (const auto& [u, v] : g.edges) {
        HardConstraint h;
        h.scope = {u, v};
        h.allowed = {{0, 0}, {0, 1}, {1, 0}};
        q.hard.push_back(std::move(h));
    }
    merge_hard_scopes(q);
    for (int v = 1; v <= g.n; ++v) {
        SoftConstraint c;
        c.id = v - 1;
        c.scope = {v};
        c.payoff[{1}] = 1;
        q.soft.push_back(std::move(c));
    }
    return {std::move(q), proj, "2^tau n"};
}

}  // namespace

ReductionOutput reduce_max_cut(const GraphInput& g) {
    return cut_reduction(g, Sense::Max, "proj_E");
}

ReductionOutput reduce_edge_bipartization(const GraphInput& g) {
    return cut_reduction(g, Sense::Min, "proj_E");
}

ReductionOutput reduce_vertex_cover(const GraphInput& g) {
    return cover_reduction(g, Sense::Min, "proj_V");
}

ReductionOutput reduce_independent_set(const GraphInput& g) {
    return cover_reduction(g, Sense::Max, "proj_V");
}

ReductionOutput reduce_oct(const GraphInput& g) {
    check_edges(g);
    CspInstance q = edge_instance(g, 0, 2, Sense::Min);
    for (const auto& [u, v] : g.edges) {
        HardConstraint h;
        h.scope = {u, v};
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j)
                if (!(i == j && i <= 1)) h.allowed.insert({i, j});
        q.hard.push_back(std::move(h));
    }
    merge_hard_scopes(q);
    for (int v = 1; v <= g.n; ++v) {
        SoftConstraint c;
        c.id = v - 1;
        c.scope = {v};
        c.payoff[{0}] = 1;
        c.payoff[{1}] = 1;
        q.soft.push_back(std::move(c));
    }
    return {std::move(q), "proj_OCT . proj_2", "O(3^tau n)"};
}

int chromatic_number(const GraphInput& g) {
    check_edges(g);
    if (g.n == 0) return 0;
    // chi <= width + 1: bounded-treewidth graphs are width-degenerate
    ConstraintGraph cg;
    cg.n = g.n;
    for (const auto& e : g.edges) cg.edges.insert(e);
    auto ntd = make_nice(heuristic_tree_decomposition(cg));
    for (int colors = 1;; ++colors) {
        auto red = reduce_coloring(g, colors);
        auto ext = build_extended_lp(red.instance, ntd);
        auto sol = solve(ext.model);
        if (sol.status == SolveStatus::Optimal) return colors;
        if (colors > ntd.width() + 1)
            throw CspError("SolverDiagnostic", "chromatic search exceeded width bound");
    }
}

std::vector<int> recover_coloring(const Assignment& z) { return z.values; }

std::vector<int> recover_cut_side(const Assignment& z) { return z.values; }

std::vector<int> recover_vertex_cover(const Assignment& z) {
    std::vector<int> cover;
    for (size_t i = 0; i < z.values.size(); ++i)
        if (z.values[i] == 0) cover.push_back(static_cast<int>(i) + 1);
    return cover;
}

std::vector<int> recover_independent_set(const Assignment& z) {
    std::vector<int> set;
    for (size_t i = 0; i < z.values.size(); ++i)
        if (z.values[i] == 1) set.push_back(static_cast<int>(i) + 1);
    return set;
}

std::vector<int> recover_oct_deletion(const Assignment& z) {
    std::vector<int> del;
    for (size_t i = 0; i < z.values.size(); ++i)
        if (z.values[i] == 2) del.push_back(static_cast<int>(i) + 1);
    return del;
}

std::vector<std::vector<int>> recover_multiway_parts(const Assignment& z, int t) {
    std::vector<std::vector<int>> parts(t);
    for (size_t i = 0; i < z.values.size(); ++i)
        parts[z.values[i] - 1].push_back(static_cast<int>(i) + 1);
    return parts;
}

GraphInput parse_graph(const std::string& text, bool allow_loops) {
    GraphInput g;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#' || tag[0] == 'c') continue;
        if (tag == "p") {
            int m;
            if (!(ls >> g.n >> m) || g.n < 0) throw CspError("BadGraph", "bad header: " + line);
            have_header = true;
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v)) throw CspError("BadGraph", "bad edge line: " + line);
            if (u > v) std::swap(u, v);
            if (u == v && !allow_loops) throw CspError("BadGraph", "self-loop");
            g.edges.emplace_back(u, v);
        } else if (tag == "t") {
            int s;
            while (ls >> s) g.terminals.push_back(s);
        } else if (tag == "pi") {
            int u, v;
            if (!(ls >> u >> v)) throw CspError("BadGraph", "bad permutation line: " + line);
            std::vector<int> images;
            int x;
            while (ls >> x) images.push_back(x);
            g.t = std::max(g.t, static_cast<int>(images.size()));
            g.perms[{u, v}] = std::move(images);
        } else if (tag == "l") {
            int v;
            if (!(ls >> v)) throw CspError("BadGraph", "bad list line: " + line);
            if (static_cast<int>(g.lists.size()) < v) g.lists.resize(v);
            int c;
            while (ls >> c) {
                g.lists[v - 1].push_back(c);
                g.h_n = std::max(g.h_n, c);
            }
        } else {
            throw CspError("BadGraph", "unknown line tag: " + tag);
        }
    }
    if (!have_header) throw CspError("BadGraph", "missing 'p' header");
    if (!g.lists.empty()) g.lists.resize(g.n);
    if (allow_loops) {
        for (const auto& [u, v] : g.edges)
            if (u < 1 || v > g.n)
                throw CspError("BadGraph",
                               "edge " + std::to_string(u) + "-" + std::to_string(v));
    } else {
        check_edges(g);
    }
    return g;
}

}  // namespace extform
