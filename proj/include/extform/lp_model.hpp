#ifndef EXTFORM_LP_MODEL_HPP
#define EXTFORM_LP_MODEL_HPP

#include "extform/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace extform {

enum class VarKind { Y, G, F };

/// Constraint family the row came from: variable sum-to-one (C1), y/g
/// consistency (C2), bag sum-to-one (C4), introduce coupling (C5), forget
/// coupling (C6).
enum class RowTag { C1, C2, C4, C5, C6 };

enum class LpSense { Maximize, Minimize };

struct LpVariable {
    std::string name;
    VarKind kind = VarKind::Y;
};

struct LpRow {
    std::vector<std::pair<int, Rat>> terms;  // (variable index, coefficient)
    Rat rhs = 0;
    RowTag tag = RowTag::C1;
};

/// Equality system over [0,1]-bounded variables.
struct LpModel {
    LpSense sense = LpSense::Maximize;
    std::vector<LpVariable> vars;
    std::vector<LpRow> rows;
    std::vector<Rat> objective;  // parallel to vars

    int add_var(const std::string& name, VarKind kind) {
        auto [it, fresh] = index.emplace(name, static_cast<int>(vars.size()));
        if (!fresh) return it->second;
        vars.push_back({name, kind});
        objective.push_back(0);
        return it->second;
    }
    int var_index(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }

    /// Exact substitution check of every row and bound.
    bool satisfied_by(const std::vector<Rat>& values) const;

    std::map<std::string, int> index;
};

struct FormulationStats {
    long variables = 0;
    long constraints = 0;
    long nonzeros = 0;
    long f_variables = 0;
    long ntd_nodes = 0;
    int max_domain = 0;
    int width = 0;
    bool var_bound_ok = true;   // #f-vars <= nodes * D^{tau+1}
    bool row_bound_ok = true;   // #rows  <= nodes * (D^{tau+1} + 1)
};

/// CPLEX-LP style text export; rows with non-decimal rationals are scaled to
/// integers and annotated with p/q comments.
std::string export_lp(const LpModel& m);

}  // namespace extform

#endif
