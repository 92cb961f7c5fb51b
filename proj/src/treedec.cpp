#include "extform/treedec.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace extform {

int TreeDecomposition::width() const {
    size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

int NiceTreeDecomposition::width() const {
    size_t m = 0;
    for (const auto& nd : nodes) m = std::max(m, nd.bag.size());
    return static_cast<int>(m) - 1;
}

std::vector<int> NiceTreeDecomposition::preorder() const {
    std::vector<int> order;
    if (root < 0) return order;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        order.push_back(a);
        const auto& ch = nodes[a].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

TreeDecomposition heuristic_tree_decomposition(const ConstraintGraph& g) {
    TreeDecomposition td;
    if (g.n == 0) {
        td.bags.push_back({});
        return td;
    }

    std::vector<std::set<int>> adj(g.n + 1);
    for (const auto& [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }

    std::set<int> remaining;
    for (int v = 1; v <= g.n; ++v) remaining.insert(v);

    std::vector<int> elim_pos(g.n + 1, -1);
    std::vector<int> parent;  // per bag, -1 for component roots
    int step = 0;
    while (!remaining.empty()) {
        int best = -1;
        long best_fill = -1;
        for (int v : remaining) {
            long fill = 0;
            for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
                for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                    if (adj[*it].count(*jt) == 0) ++fill;
            if (best == -1 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        int v = best;
        std::vector<int> bag{v};
        bag.insert(bag.end(), adj[v].begin(), adj[v].end());
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        elim_pos[v] = step;
        parent.push_back(-1);  // fixed up below once the neighbor is eliminated

        for (int u : adj[v])
            for (int w : adj[v])
                if (u < w) {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
        for (int u : adj[v]) adj[u].erase(v);
        adj[v].clear();
        remaining.erase(v);
        ++step;
    }
    // Parent of bag k = bag of the earliest-eliminated vertex among the bag's
    // other members (all of them outlive v_k).
    for (size_t k = 0; k < td.bags.size(); ++k) {
        int p = -1;
        int v_k = -1;
        for (int u : td.bags[k])
            if (elim_pos[u] == static_cast<int>(k)) v_k = u;
        for (int u : td.bags[k]) {
            if (u == v_k) continue;
            if (p == -1 || elim_pos[u] < elim_pos[p]) p = u;
        }
        if (p != -1) {
            td.edges.emplace_back(static_cast<int>(k), elim_pos[p]);
        }
    }

    // Absorb bags that are subsets of a tree neighbor.
    std::vector<bool> alive(td.bags.size(), true);
    std::vector<std::set<int>> tadj(td.bags.size());
    for (const auto& [a, b] : td.edges) {
        tadj[a].insert(b);
        tadj[b].insert(a);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < td.bags.size() && !changed; ++a) {
            if (!alive[a]) continue;
            for (int b : tadj[a]) {
                if (!std::includes(td.bags[b].begin(), td.bags[b].end(), td.bags[a].begin(),
                                   td.bags[a].end()))
                    continue;
                // a subsumed by b: reattach a's other neighbors to b
                for (int c : tadj[a]) {
                    if (c == b) continue;
                    tadj[c].erase(static_cast<int>(a));
                    tadj[c].insert(b);
                    tadj[b].insert(c);
                }
                tadj[b].erase(static_cast<int>(a));
                tadj[a].clear();
                alive[a] = false;
                changed = true;
                break;
            }
        }
    }

    // Compact, preserving creation order.
    std::vector<int> newid(td.bags.size(), -1);
    TreeDecomposition out;
    for (size_t a = 0; a < td.bags.size(); ++a)
        if (alive[a]) {
            newid[a] = static_cast<int>(out.bags.size());
            out.bags.push_back(td.bags[a]);
        }
    std::set<std::pair<int, int>> eset;
    for (size_t a = 0; a < td.bags.size(); ++a)
        for (int b : tadj[a]) {
            int x = newid[a], y = newid[b];
            if (x > y) std::swap(x, y);
            if (x != y) eset.insert({x, y});
        }
    out.edges.assign(eset.begin(), eset.end());

    // Chain tree components so the node graph is a single tree.
    std::vector<int> comp(out.bags.size(), -1);
    int ncomp = 0;
    for (size_t s = 0; s < out.bags.size(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (const auto& [x, y] : out.edges) {
                int other = (x == a) ? y : (y == a ? x : -1);
                if (other >= 0 && comp[other] == -1) {
                    comp[other] = ncomp;
                    stack.push_back(other);
                }
            }
        }
        ++ncomp;
    }
    std::vector<int> rep(ncomp, -1);
    for (size_t a = 0; a < out.bags.size(); ++a)
        if (rep[comp[a]] == -1) rep[comp[a]] = static_cast<int>(a);
    for (int c = 1; c < ncomp; ++c) out.edges.emplace_back(rep[c - 1], rep[c]);

    return out;
}

std::vector<ValidationError> validate_td(const ConstraintGraph& g, const TreeDecomposition& td) {
    std::vector<ValidationError> errs;
    size_t nn = td.bags.size();
    if (nn == 0) {
        errs.push_back({"NotATree", "no nodes"});
        return errs;
    }
    for (const auto& [a, b] : td.edges)
        if (a < 0 || b < 0 || a >= static_cast<int>(nn) || b >= static_cast<int>(nn)) {
            errs.push_back({"NotATree", "edge endpoint out of range"});
            return errs;
        }

    // tree: connected and |E| = |V| - 1
    std::vector<std::vector<int>> adj(nn);
    for (const auto& [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(nn, false);
    std::vector<int> stack{0};
    seen[0] = true;
    size_t cnt = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[a])
            if (!seen[b]) {
                seen[b] = true;
                ++cnt;
                stack.push_back(b);
            }
    }
    if (cnt != nn || td.edges.size() != nn - 1)
        errs.push_back({"NotATree", "node graph is not a tree"});

    for (int v = 1; v <= g.n; ++v) {
        bool covered = false;
        for (const auto& b : td.bags)
            if (std::binary_search(b.begin(), b.end(), v)) {
                covered = true;
                break;
            }
        if (!covered) errs.push_back({"VertexUncovered", "vertex " + std::to_string(v)});
    }
    for (const auto& [u, v] : g.edges) {
        bool covered = false;
        for (const auto& b : td.bags)
            if (std::binary_search(b.begin(), b.end(), u) &&
                std::binary_search(b.begin(), b.end(), v)) {
                covered = true;
                break;
            }
        if (!covered)
            errs.push_back(
                {"EdgeUncovered", "edge " + std::to_string(u) + "-" + std::to_string(v)});
    }
    // connected occurrence subtrees
    if (cnt == nn) {
        for (int v = 1; v <= g.n; ++v) {
            int start = -1;
            size_t total = 0;
            for (size_t a = 0; a < nn; ++a)
                if (std::binary_search(td.bags[a].begin(), td.bags[a].end(), v)) {
                    ++total;
                    if (start == -1) start = static_cast<int>(a);
                }
            if (total == 0) continue;
            std::vector<bool> vis(nn, false);
            std::vector<int> st{start};
            vis[start] = true;
            size_t reach = 1;
            while (!st.empty()) {
                int a = st.back();
                st.pop_back();
                for (int b : adj[a]) {
                    if (vis[b] || !std::binary_search(td.bags[b].begin(), td.bags[b].end(), v))
                        continue;
                    vis[b] = true;
                    ++reach;
                    st.push_back(b);
                }
            }
            if (reach != total)
                errs.push_back({"DisconnectedOccurrence", "vertex " + std::to_string(v)});
        }
    }
    return errs;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
    NiceTreeDecomposition ntd;
    size_t nn = td.bags.size();
    if (nn == 1 && td.bags[0].empty()) {
        ntd.nodes.push_back({NodeKind::Leaf, -1, {}, {}});
        ntd.root = 0;
        return ntd;
    }
    std::vector<std::vector<int>> adj(nn);
    for (const auto& [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    auto add = [&ntd](NodeKind k, int vx, std::vector<int> bag, std::vector<int> ch) {
        ntd.nodes.push_back({k, vx, std::move(bag), std::move(ch)});
        return static_cast<int>(ntd.nodes.size() - 1);
    };

    // Builds the nice subtree for `node`; returns the id of a nice node whose
    // bag equals td.bags[node].
    std::function<int(int, int)> build = [&](int node, int parent) -> int {
        const std::vector<int>& target = td.bags[node];
        std::vector<int> tops;
        for (int ch : adj[node]) {
            if (ch == parent) continue;
            int t = build(ch, node);
            // morph child bag to target: forgets first, then introduces
            std::vector<int> cur = ntd.nodes[t].bag;
            std::vector<int> drop, gain;
            std::set_difference(cur.begin(), cur.end(), target.begin(), target.end(),
                                std::back_inserter(drop));
            std::set_difference(target.begin(), target.end(), cur.begin(), cur.end(),
                                std::back_inserter(gain));
            for (int v : drop) {
                cur.erase(std::find(cur.begin(), cur.end(), v));
                t = add(NodeKind::Forget, v, cur, {t});
            }
            for (int v : gain) {
                cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
                t = add(NodeKind::Introduce, v, cur, {t});
            }
            tops.push_back(t);
        }
        if (tops.empty()) {
            // leaf chain: singleton leaf then introduces, ascending
            std::vector<int> cur{target[0]};
            int t = add(NodeKind::Leaf, -1, cur, {});
            for (size_t i = 1; i < target.size(); ++i) {
                cur.insert(std::upper_bound(cur.begin(), cur.end(), target[i]), target[i]);
                t = add(NodeKind::Introduce, target[i], cur, {t});
            }
            return t;
        }
        int t = tops[0];
        for (size_t i = 1; i < tops.size(); ++i)
            t = add(NodeKind::Join, -1, target, {t, tops[i]});
        return t;
    };

    int root_bag = static_cast<int>(nn) - 1;
    int top = build(root_bag, -1);
    // forget down to an empty root, smallest vertices first
    std::vector<int> cur = ntd.nodes[top].bag;
    while (!cur.empty()) {
        int v = cur.front();
        cur.erase(cur.begin());
        top = add(NodeKind::Forget, v, cur, {top});
    }
    ntd.root = top;
    return ntd;
}

std::vector<ValidationError> validate_ntd(const ConstraintGraph& g,
                                          const NiceTreeDecomposition& ntd) {
    std::vector<ValidationError> errs;
    TreeDecomposition td;
    for (const auto& nd : ntd.nodes) td.bags.push_back(nd.bag);
    for (size_t a = 0; a < ntd.nodes.size(); ++a)
        for (int c : ntd.nodes[a].children) td.edges.emplace_back(static_cast<int>(a), c);
    errs = validate_td(g, td);

    for (size_t a = 0; a < ntd.nodes.size(); ++a) {
        const auto& nd = ntd.nodes[a];
        std::string at = "node " + std::to_string(a);
        switch (nd.kind) {
            case NodeKind::Leaf:
                if (!nd.children.empty()) errs.push_back({"BadNiceNode", at + ": leaf with children"});
                if (nd.bag.size() != 1 && g.n > 0)
                    errs.push_back({"BadNiceNode", at + ": leaf bag not a singleton"});
                break;
            case NodeKind::Introduce: {
                if (nd.children.size() != 1) {
                    errs.push_back({"BadNiceNode", at + ": introduce needs one child"});
                    break;
                }
                auto cb = ntd.nodes[nd.children[0]].bag;
                cb.insert(std::upper_bound(cb.begin(), cb.end(), nd.vertex), nd.vertex);
                if (cb != nd.bag) errs.push_back({"BadNiceNode", at + ": introduce bag mismatch"});
                break;
            }
            case NodeKind::Forget: {
                if (nd.children.size() != 1) {
                    errs.push_back({"BadNiceNode", at + ": forget needs one child"});
                    break;
                }
                auto cb = ntd.nodes[nd.children[0]].bag;
                auto it = std::find(cb.begin(), cb.end(), nd.vertex);
                if (it == cb.end()) {
                    errs.push_back({"BadNiceNode", at + ": forgotten vertex absent"});
                    break;
                }
                cb.erase(it);
                if (cb != nd.bag) errs.push_back({"BadNiceNode", at + ": forget bag mismatch"});
                break;
            }
            case NodeKind::Join:
                if (nd.children.size() != 2)
                    errs.push_back({"BadNiceNode", at + ": join needs two children"});
                else if (ntd.nodes[nd.children[0]].bag != nd.bag ||
                         ntd.nodes[nd.children[1]].bag != nd.bag)
                    errs.push_back({"BadNiceNode", at + ": join bags differ"});
                break;
        }
    }
    if (ntd.root < 0 || ntd.root >= static_cast<int>(ntd.nodes.size()))
        errs.push_back({"BadNiceNode", "missing root"});
    else if (!ntd.nodes[ntd.root].bag.empty())
        errs.push_back({"BadNiceNode", "root bag not empty"});
    return errs;
}

TreeDecomposition parse_td(const std::string& text) {
    TreeDecomposition td;
    std::map<int, int> id_map;
    std::vector<std::pair<int, int>> raw_edges;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
        if (tag == "b") {
            int id;
            if (!(ls >> id)) throw CspError("BadTdFile", "bad bag line: " + line);
            std::vector<int> bag;
            int v;
            while (ls >> v) bag.push_back(v);
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            if (id_map.count(id)) throw CspError("BadTdFile", "duplicate node id");
            id_map[id] = static_cast<int>(td.bags.size());
            td.bags.push_back(bag);
        } else if (tag == "e") {
            int a, b;
            if (!(ls >> a >> b)) throw CspError("BadTdFile", "bad edge line: " + line);
            raw_edges.emplace_back(a, b);
        } else {
            throw CspError("BadTdFile", "unknown line tag: " + tag);
        }
    }
    for (const auto& [a, b] : raw_edges) {
        if (!id_map.count(a) || !id_map.count(b))
            throw CspError("BadTdFile", "edge references unknown node");
        td.edges.emplace_back(id_map[a], id_map[b]);
    }
    return td;
}

std::string td_to_text(const TreeDecomposition& td) {
    std::ostringstream os;
    for (size_t a = 0; a < td.bags.size(); ++a) {
        os << "b " << a;
        for (int v : td.bags[a]) os << " " << v;
        os << "\n";
    }
    for (const auto& [a, b] : td.edges) os << "e " << a << " " << b << "\n";
    return os.str();
}

}  // namespace extform
