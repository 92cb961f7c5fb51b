#ifndef EXTFORM_CSP_HPP
#define EXTFORM_CSP_HPP

#include "extform/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace extform {

/// Error with a stable machine-readable code ("DomainViolation", ...).
class CspError : public std::runtime_error {
public:
    CspError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class Sense { Max, Min };

using Tuple = std::vector<int>;

struct HardConstraint {
    std::vector<int> scope;        // strictly increasing variable indices (1-based)
    std::set<Tuple> allowed;
};

struct SoftConstraint {
    int id = 0;                    // unique across the instance
    std::vector<int> scope;
    std::map<Tuple, Rat> payoff;   // missing tuples pay 0
    Rat weight = 1;
    bool relation_form = true;     // payoff values restricted to {0,1}

    bool satisfies(const Tuple& t) const {
        auto it = payoff.find(t);
        return it != payoff.end() && it->second != 0;
    }
    Rat payoff_of(const Tuple& t) const {
        auto it = payoff.find(t);
        return it == payoff.end() ? Rat(0) : it->second;
    }
};

struct Assignment {
    std::vector<int> values;       // values[v-1] = z_v
};

struct ExtendedAssignment {
    Assignment z;
    std::vector<int> h;            // indexed parallel to instance.soft
};

struct CspInstance {
    int n = 0;
    std::vector<std::vector<int>> domains;  // sorted, distinct
    std::vector<HardConstraint> hard;
    std::vector<SoftConstraint> soft;
    Sense sense = Sense::Max;

    const std::vector<int>& domain(int v) const { return domains[v - 1]; }
    int max_domain_size() const;
    /// Largest payoff over the full domain product of the scope (0 for missing tuples).
    Rat max_payoff(const SoftConstraint& c) const;
};

struct ConstraintGraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;    // u < v, 1-based

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return edges.count({u, v}) != 0;
    }
};

struct ValidationError {
    std::string code;     // EmptyDomain, UnsortedScope, TupleOutOfDomain, DuplicateHardScope
    std::string detail;
};

std::vector<ValidationError> validate(const CspInstance& q);

/// Intersects allowed sets of hard constraints sharing a scope; call at ingest.
void merge_hard_scopes(CspInstance& q);

ConstraintGraph constraint_graph(const CspInstance& q);

bool in_domains(const CspInstance& q, const Assignment& z);
bool is_feasible(const CspInstance& q, const Assignment& z);

/// z restricted to a sorted scope.
Tuple project_tuple(const Assignment& z, const std::vector<int>& scope);

ExtendedAssignment extend(const CspInstance& q, const Assignment& z);
Rat objective_value(const CspInstance& q, const Assignment& z);

}  // namespace extform

#endif
