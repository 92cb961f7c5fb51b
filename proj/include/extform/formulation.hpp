#ifndef EXTFORM_FORMULATION_HPP
#define EXTFORM_FORMULATION_HPP

#include "extform/configuration.hpp"
#include "extform/lp_model.hpp"
#include "extform/treedec.hpp"

#include <map>
#include <string>
#include <vector>

namespace extform {

/// Fractional point in the f-variable space; missing configurations are 0.
using FractionalPoint = std::map<Configuration, Rat>;

/// y/g relaxation over constraint-scope configurations.
struct BaseFormulation {
    LpModel model;
    // y variable per (v, i); g variable per (constraint tag, configuration).
    // Tags are "h<index>" for hard and "s<id>" for soft constraints.
    std::map<std::pair<int, int>, int> y_index;
    std::map<std::pair<std::string, Configuration>, int> g_index;
    std::vector<std::string> constraint_tags;               // hards first, then softs
    std::map<std::string, std::vector<int>> tag_scope;
};

/// f-variable formulation over nice-tree-decomposition bag configurations.
/// f-variables are keyed by the configuration itself, so nodes with equal bags
/// share variables and join nodes need no coupling rows.
struct ExtendedFormulation {
    LpModel model;
    std::map<Configuration, int> f_index;
    std::vector<std::vector<int>> distinct_bags;            // first-seen preorder order
    std::map<std::vector<int>, std::vector<Configuration>> bag_configs;
    std::map<int, std::vector<int>> vertex_bag;             // v -> designated bag
    std::map<std::string, std::vector<int>> designated_bag; // constraint tag -> bag
};

BaseFormulation build_base_lp(const CspInstance& q);
ExtendedFormulation build_extended_lp(const CspInstance& q, const NiceTreeDecomposition& ntd);

FormulationStats formulation_stats(const CspInstance& q, const NiceTreeDecomposition& ntd,
                                   const ExtendedFormulation& ext);

/// f-values aligned to the extended model's variable order.
std::vector<Rat> point_to_values(const ExtendedFormulation& ext, const FractionalPoint& f);
FractionalPoint values_to_point(const ExtendedFormulation& ext, const std::vector<Rat>& values);

/// Integral point of P(Q) encoding a feasible assignment.
FractionalPoint encode_assignment(const CspInstance& q, const ExtendedFormulation& ext,
                                  const Assignment& z);

/// proj2: f -> (y, g), aligned to the base model's variable order.
std::vector<Rat> proj2(const CspInstance& q, const BaseFormulation& base,
                       const ExtendedFormulation& ext, const FractionalPoint& f);

/// proj1: integral (y, g) -> extended feasible assignment.
ExtendedAssignment proj1(const CspInstance& q, const BaseFormulation& base,
                         const std::vector<Rat>& yg);

// Trivial projections.
inline Assignment proj_v(const ExtendedAssignment& ex) { return ex.z; }
inline std::vector<int> proj_e(const ExtendedAssignment& ex) { return ex.h; }
inline ExtendedAssignment proj_id(const ExtendedAssignment& ex) { return ex; }

/// (y_1^2, ..., y_n^2): the deletion-set indicator for the odd-cycle instance.
std::vector<Rat> proj_oct(const CspInstance& q, const BaseFormulation& base,
                          const std::vector<Rat>& yg);

struct Decomposition {
    Int m = 1;  // common denominator: the average of the points, weighted by
                // multiplicity/m, equals the input exactly
    std::vector<std::pair<FractionalPoint, Int>> points;  // integral, with multiplicities
};

/// Rewrites a feasible rational point of P(Q) as an exact average of integral
/// points, following the bottom-up leaf/join/introduce/forget construction.
Decomposition decompose_lemma1(const CspInstance& q, const NiceTreeDecomposition& ntd,
                               const ExtendedFormulation& ext, const FractionalPoint& f);

}  // namespace extform

#endif
