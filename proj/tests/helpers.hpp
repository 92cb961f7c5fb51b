#ifndef EXTFORM_TESTS_HELPERS_HPP
#define EXTFORM_TESTS_HELPERS_HPP

#include "extform/csp.hpp"
#include "extform/reductions.hpp"

#include <vector>

namespace extform::testing {

inline GraphInput complete_graph(int n) {
    GraphInput g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.edges.emplace_back(u, v);
    return g;
}

inline GraphInput path_graph(int n) {
    GraphInput g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

inline GraphInput cycle_graph(int n) {
    GraphInput g = path_graph(n);
    g.edges.emplace_back(1, n);
    return g;
}

inline CspInstance is_k3() { return reduce_independent_set(complete_graph(3)).instance; }

inline CspInstance max_cut_k3() { return reduce_max_cut(complete_graph(3)).instance; }

inline Assignment asg(std::vector<int> values) { return Assignment{std::move(values)}; }

}  // namespace extform::testing

#endif
