#ifndef EXTFORM_TREEDEC_HPP
#define EXTFORM_TREEDEC_HPP

#include "extform/csp.hpp"

#include <string>
#include <vector>

namespace extform {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;        // sorted vertex lists
    std::vector<std::pair<int, int>> edges;    // node indices

    int width() const;
};

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    int vertex = -1;               // introduced/forgotten vertex, -1 otherwise
    std::vector<int> bag;          // sorted
    std::vector<int> children;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    /// Root-first traversal, children in stored order.
    std::vector<int> preorder() const;
};

/// Min-fill elimination ordering, lexicographic tie-breaking; subset bags are
/// absorbed into a neighbor. Components are chained by tree edges between
/// their representative bags so the node graph is a single tree.
TreeDecomposition heuristic_tree_decomposition(const ConstraintGraph& g);

std::vector<ValidationError> validate_td(const ConstraintGraph& g, const TreeDecomposition& td);

/// Leaves are singletons; the root forgets down to the empty bag, so f(Lambda)
/// is pinned to 1 and the per-node table sizes scale linearly in |V|.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

std::vector<ValidationError> validate_ntd(const ConstraintGraph& g,
                                          const NiceTreeDecomposition& ntd);

// "b <node> <v1> <v2> ..." / "e <a> <b>" text format.
TreeDecomposition parse_td(const std::string& text);
std::string td_to_text(const TreeDecomposition& td);

}  // namespace extform

#endif
