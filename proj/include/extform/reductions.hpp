#ifndef EXTFORM_REDUCTIONS_HPP
#define EXTFORM_REDUCTIONS_HPP

#include "extform/csp.hpp"

#include <map>
#include <string>
#include <vector>

namespace extform {

struct GraphInput {
    int n = 0;
    std::vector<std::pair<int, int>> edges;                  // 1-based, u < v
    std::vector<int> terminals;                              // multiway cut
    int t = 0;                                               // unique games label count
    std::map<std::pair<int, int>, std::vector<int>> perms;   // edge -> image list (1-based)
    std::vector<std::vector<int>> lists;                     // list-H-coloring, per vertex
    int h_n = 0;                                             // pattern graph
    std::vector<std::pair<int, int>> h_edges;                // may contain loops (u == v)
};

struct ReductionOutput {
    CspInstance instance;
    std::string projection;     // recovery projection name
    std::string claimed_size;   // symbolic size bound
};

ReductionOutput reduce_coloring(const GraphInput& g, int q);
ReductionOutput reduce_list_h_coloring(const GraphInput& g);
ReductionOutput reduce_unique_games(const GraphInput& g);
ReductionOutput reduce_multiway_cut(const GraphInput& g);
ReductionOutput reduce_max_cut(const GraphInput& g);
ReductionOutput reduce_edge_bipartization(const GraphInput& g);
ReductionOutput reduce_vertex_cover(const GraphInput& g);
ReductionOutput reduce_independent_set(const GraphInput& g);
ReductionOutput reduce_oct(const GraphInput& g);

/// Smallest q for which the coloring instance is feasible, decided through the
/// extended LP pipeline.
int chromatic_number(const GraphInput& g);

// Solution recovery from a feasible assignment of the reduced instance.
std::vector<int> recover_coloring(const Assignment& z);            // per-vertex colors
std::vector<int> recover_cut_side(const Assignment& z);            // 0/1 per vertex
std::vector<int> recover_vertex_cover(const Assignment& z);        // vertices with value 0
std::vector<int> recover_independent_set(const Assignment& z);     // vertices with value 1
std::vector<int> recover_oct_deletion(const Assignment& z);        // vertices with value 2
std::vector<std::vector<int>> recover_multiway_parts(const Assignment& z, int t);

// "p n m" / "e u v" / "t s1 s2 ..." / "pi u v i1 ... it" / "l v c1 c2 ..."
// Loops are accepted only for pattern graphs (list-H-coloring).
GraphInput parse_graph(const std::string& text, bool allow_loops = false);

}  // namespace extform

#endif
