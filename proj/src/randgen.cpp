#include "extform/randgen.hpp"

#include <algorithm>
#include <set>

namespace extform {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<int> random_scope(std::mt19937_64& rng, int n, int arity) {
    std::set<int> s;
    while (static_cast<int>(s.size()) < arity) s.insert(pick(rng, 1, n));
    return {s.begin(), s.end()};
}

void product_tuples(const CspInstance& q, const std::vector<int>& scope,
                    std::vector<Tuple>& out) {
    Tuple t(scope.size());
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == scope.size()) {
            out.push_back(t);
            return;
        }
        for (int a : q.domain(scope[i])) {
            t[i] = a;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace

CspInstance random_instance(std::mt19937_64& rng) {
    CspInstance q;
    q.n = pick(rng, 2, 6);
    for (int v = 0; v < q.n; ++v) {
        int size = pick(rng, 1, 3);
        std::set<int> dom;
        while (static_cast<int>(dom.size()) < size) dom.insert(pick(rng, 0, 3));
        q.domains.emplace_back(dom.begin(), dom.end());
    }
    q.sense = pick(rng, 0, 1) ? Sense::Max : Sense::Min;

    int n_hard = pick(rng, 0, 2);
    std::set<std::vector<int>> used;
    for (int i = 0; i < n_hard; ++i) {
        int arity = std::min(q.n, pick(rng, 1, 10) <= 8 ? 2 : 3);
        auto scope = random_scope(rng, q.n, arity);
        if (!used.insert(scope).second) continue;
        HardConstraint h;
        h.scope = scope;
        std::vector<Tuple> all;
        product_tuples(q, scope, all);
        for (const auto& t : all)
            if (pick(rng, 1, 10) <= 7) h.allowed.insert(t);
        // empty allowed sets are kept: they exercise the infeasible path
        q.hard.push_back(std::move(h));
    }
    int n_soft = pick(rng, 1, 3);
    for (int i = 0; i < n_soft; ++i) {
        int arity = std::min(q.n, pick(rng, 1, 10) <= 3 ? 1 : (pick(rng, 1, 10) <= 8 ? 2 : 3));
        SoftConstraint c;
        c.id = i;
        c.scope = random_scope(rng, q.n, arity);
        c.weight = Rat(pick(rng, 0, 6), pick(rng, 1, 7));
        std::vector<Tuple> all;
        product_tuples(q, c.scope, all);
        if (pick(rng, 1, 10) <= 7) {
            c.relation_form = true;
            for (const auto& t : all)
                if (pick(rng, 1, 2) == 1) c.payoff[t] = 1;
        } else {
            c.relation_form = false;
            for (const auto& t : all)
                if (pick(rng, 1, 10) <= 8) c.payoff[t] = Rat(pick(rng, 0, 4), pick(rng, 1, 7));
        }
        q.soft.push_back(std::move(c));
    }
    merge_hard_scopes(q);
    return q;
}

GraphInput random_graph(std::mt19937_64& rng, int max_n) {
    GraphInput g;
    g.n = pick(rng, 2, max_n);
    for (int u = 1; u <= g.n; ++u)
        for (int v = u + 1; v <= g.n; ++v)
            if (pick(rng, 1, 10) <= 4) g.edges.emplace_back(u, v);
    return g;
}

}  // namespace extform
