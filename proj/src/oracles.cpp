#include "extform/oracles.hpp"

#include "extform/configuration.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace extform {

OracleResult brute_force(const CspInstance& q, const Int& cap) {
    Int space = 1;
    for (const auto& d : q.domains) space *= static_cast<long>(d.size());
    if (space > cap) throw CspError("CapExceeded", "assignment space " + space.str());

    OracleResult res;
    res.count = 0;
    Assignment z;
    z.values.assign(q.n, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v > q.n) {
            if (!is_feasible(q, z)) return;
            *res.count += 1;
            Rat val = objective_value(q, z);
            bool better = !res.feasible || (q.sense == Sense::Max ? val > res.optimum
                                                                  : val < res.optimum);
            if (better) {  // lexicographic enumeration: first optimum is lex-smallest
                res.feasible = true;
                res.optimum = val;
                res.witness = z;
            }
            return;
        }
        for (int a : q.domain(v)) {
            z.values[v - 1] = a;
            rec(v + 1);
        }
    };
    rec(1);
    return res;
}

namespace {

// Max-sense DP value (total payoff) with optional pinned variables; nullopt
// when no feasible assignment respects the pins.
std::optional<Rat> dp_value(const CspInstance& q, const NiceTreeDecomposition& ntd,
                            const std::vector<int>& pin /* per var, INT_MIN = free */) {
    auto order = ntd.preorder();

    // first preorder node whose bag contains each constraint scope
    std::map<int, std::vector<size_t>> node_soft;
    std::vector<bool> placed(q.soft.size(), false);
    for (int a : order) {
        const auto& bag = ntd.nodes[a].bag;
        for (size_t i = 0; i < q.soft.size(); ++i) {
            if (placed[i]) continue;
            const auto& scope = q.soft[i].scope;
            if (std::includes(bag.begin(), bag.end(), scope.begin(), scope.end())) {
                node_soft[a].push_back(i);
                placed[i] = true;
            }
        }
    }
    for (bool p : placed)
        if (!p && !q.soft.empty())
            throw CspError("ScopeNotCovered", "soft scope not inside any bag");

    std::map<std::vector<int>, std::vector<Configuration>> cache;
    auto configs_of = [&](const std::vector<int>& bag) -> const std::vector<Configuration>& {
        auto it = cache.find(bag);
        if (it == cache.end()) {
            auto cfgs = enumerate_configurations(q, bag);
            std::vector<Configuration> kept;
            for (auto& k : cfgs) {
                bool ok = true;
                for (const auto& [v, a] : k.entries())
                    if (pin[v - 1] != INT_MIN && pin[v - 1] != a) {
                        ok = false;
                        break;
                    }
                if (ok) kept.push_back(std::move(k));
            }
            it = cache.emplace(bag, std::move(kept)).first;
        }
        return it->second;
    };

    auto local_payoff = [&](int node, const Configuration& k) {
        Rat p = 0;
        auto it = node_soft.find(node);
        if (it == node_soft.end()) return p;
        for (size_t i : it->second) {
            const auto& c = q.soft[i];
            p += c.weight * c.payoff_of(k.tuple_on(c.scope));
        }
        return p;
    };

    std::function<std::optional<std::map<Configuration, Rat>>(int)> run =
        [&](int node) -> std::optional<std::map<Configuration, Rat>> {
        const auto& nd = ntd.nodes[node];
        std::map<Configuration, Rat> table;
        switch (nd.kind) {
            case NodeKind::Leaf:
                for (const auto& k : configs_of(nd.bag)) table[k] = local_payoff(node, k);
                break;
            case NodeKind::Introduce: {
                auto sub = run(nd.children[0]);
                if (!sub) return std::nullopt;
                const auto& child_bag = ntd.nodes[nd.children[0]].bag;
                for (const auto& k : configs_of(nd.bag)) {
                    auto it = sub->find(k.restrict(child_bag));
                    if (it == sub->end()) continue;
                    table[k] = it->second + local_payoff(node, k);
                }
                break;
            }
            case NodeKind::Forget: {
                auto sub = run(nd.children[0]);
                if (!sub) return std::nullopt;
                for (const auto& [k, val] : *sub) {
                    Configuration kk = k.restrict(nd.bag);
                    Rat total = val + local_payoff(node, kk);
                    auto it = table.find(kk);
                    // local payoff at a forget node depends only on kk; max over children
                    if (it == table.end() || total > it->second) table[kk] = total;
                }
                break;
            }
            case NodeKind::Join: {
                auto sa = run(nd.children[0]);
                auto sb = run(nd.children[1]);
                if (!sa || !sb) return std::nullopt;
                for (const auto& [k, va] : *sa) {
                    auto it = sb->find(k);
                    if (it == sb->end()) continue;
                    table[k] = va + it->second + local_payoff(node, k);
                }
                break;
            }
        }
        if (table.empty()) return std::nullopt;
        return table;
    };

    auto root = run(ntd.root);
    if (!root) return std::nullopt;
    Rat best;
    bool first = true;
    for (const auto& [k, v] : *root)
        if (first || v > best) {
            best = v;
            first = false;
        }
    return best;
}

}  // namespace

OracleResult treewidth_dp(const CspInstance& q, const NiceTreeDecomposition& ntd) {
    OracleResult res;
    std::vector<int> pin(q.n, INT_MIN);
    auto base = dp_value(q, ntd, pin);
    if (!base) return res;
    res.feasible = true;

    Rat max_total = *base;
    if (q.sense == Sense::Max) {
        res.optimum = max_total;
    } else {
        Rat offset = 0;
        for (const auto& c : q.soft) offset += c.weight * q.max_payoff(c);
        res.optimum = offset - max_total;
    }

    // lexicographically smallest optimal witness by pinning one variable at a time
    for (int v = 1; v <= q.n; ++v) {
        for (int a : q.domain(v)) {
            pin[v - 1] = a;
            auto val = dp_value(q, ntd, pin);
            if (val && *val == max_total) break;
            pin[v - 1] = INT_MIN;
        }
        if (pin[v - 1] == INT_MIN)
            throw CspError("SolverDiagnostic", "witness reconstruction failed");
    }
    res.witness.values.assign(pin.begin(), pin.end());
    return res;
}

}  // namespace extform
