#include "extform/csp.hpp"

#include <algorithm>
#include <sstream>

namespace extform {

namespace {

std::string scope_str(const std::vector<int>& scope) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < scope.size(); ++i) os << (i ? "," : "") << scope[i];
    os << ")";
    return os.str();
}

bool scope_ok(int n, const std::vector<int>& scope) {
    if (scope.empty()) return false;
    for (size_t i = 0; i < scope.size(); ++i) {
        if (scope[i] < 1 || scope[i] > n) return false;
        if (i > 0 && scope[i] <= scope[i - 1]) return false;
    }
    return true;
}

bool tuple_in_domains(const CspInstance& q, const std::vector<int>& scope, const Tuple& t) {
    if (t.size() != scope.size()) return false;
    for (size_t i = 0; i < scope.size(); ++i) {
        const auto& d = q.domain(scope[i]);
        if (!std::binary_search(d.begin(), d.end(), t[i])) return false;
    }
    return true;
}

}  // namespace

int CspInstance::max_domain_size() const {
    size_t m = 0;
    for (const auto& d : domains) m = std::max(m, d.size());
    return static_cast<int>(m);
}

Rat CspInstance::max_payoff(const SoftConstraint& c) const {
    if (c.relation_form) return 1;
    Rat best = 0;
    for (const auto& [t, v] : c.payoff) best = std::max(best, v);
    // A tuple absent from the map pays 0; 0 is already the floor of `best`.
    return best;
}

std::vector<ValidationError> validate(const CspInstance& q) {
    std::vector<ValidationError> errs;
    if (static_cast<int>(q.domains.size()) != q.n)
        errs.push_back({"EmptyDomain", "domain list size differs from n"});
    for (int v = 1; v <= q.n && v <= static_cast<int>(q.domains.size()); ++v) {
        const auto& d = q.domain(v);
        if (d.empty()) errs.push_back({"EmptyDomain", "variable " + std::to_string(v)});
        for (size_t i = 1; i < d.size(); ++i)
            if (d[i] <= d[i - 1]) {
                errs.push_back({"EmptyDomain", "domain of variable " + std::to_string(v) +
                                                   " not sorted/distinct"});
                break;
            }
    }
    if (!errs.empty()) return errs;  // later checks dereference domains

    std::set<std::vector<int>> hard_scopes;
    for (const auto& h : q.hard) {
        if (!scope_ok(q.n, h.scope)) {
            errs.push_back({"UnsortedScope", "hard scope " + scope_str(h.scope)});
            continue;
        }
        if (!hard_scopes.insert(h.scope).second)
            errs.push_back({"DuplicateHardScope", "hard scope " + scope_str(h.scope)});
        for (const auto& t : h.allowed)
            if (!tuple_in_domains(q, h.scope, t))
                errs.push_back({"TupleOutOfDomain", "hard scope " + scope_str(h.scope)});
    }
    std::set<int> soft_ids;
    for (const auto& c : q.soft) {
        if (!scope_ok(q.n, c.scope)) {
            errs.push_back({"UnsortedScope", "soft scope " + scope_str(c.scope)});
            continue;
        }
        if (!soft_ids.insert(c.id).second)
            errs.push_back({"DuplicateSoftId", "soft id " + std::to_string(c.id)});
        if (c.weight < 0)
            errs.push_back({"NegativeWeight", "soft id " + std::to_string(c.id)});
        for (const auto& [t, val] : c.payoff) {
            if (!tuple_in_domains(q, c.scope, t))
                errs.push_back({"TupleOutOfDomain", "soft scope " + scope_str(c.scope)});
            if (c.relation_form && val != 0 && val != 1)
                errs.push_back({"NonBinaryPayoff", "soft id " + std::to_string(c.id)});
        }
    }
    return errs;
}

void merge_hard_scopes(CspInstance& q) {
    std::map<std::vector<int>, std::set<Tuple>> by_scope;
    std::vector<std::vector<int>> order;
    for (const auto& h : q.hard) {
        auto it = by_scope.find(h.scope);
        if (it == by_scope.end()) {
            by_scope.emplace(h.scope, h.allowed);
            order.push_back(h.scope);
        } else {
            std::set<Tuple> inter;
            std::set_intersection(it->second.begin(), it->second.end(), h.allowed.begin(),
                                  h.allowed.end(), std::inserter(inter, inter.begin()));
            it->second = std::move(inter);
        }
    }
    q.hard.clear();
    for (const auto& s : order) q.hard.push_back({s, by_scope.at(s)});
}

ConstraintGraph constraint_graph(const CspInstance& q) {
    ConstraintGraph g;
    g.n = q.n;
    auto add_scope = [&g](const std::vector<int>& scope) {
        for (size_t i = 0; i < scope.size(); ++i)
            for (size_t j = i + 1; j < scope.size(); ++j)
                g.edges.insert({scope[i], scope[j]});
    };
    for (const auto& h : q.hard) add_scope(h.scope);
    for (const auto& c : q.soft) add_scope(c.scope);
    return g;
}

bool in_domains(const CspInstance& q, const Assignment& z) {
    if (static_cast<int>(z.values.size()) != q.n) return false;
    for (int v = 1; v <= q.n; ++v) {
        const auto& d = q.domain(v);
        if (!std::binary_search(d.begin(), d.end(), z.values[v - 1])) return false;
    }
    return true;
}

Tuple project_tuple(const Assignment& z, const std::vector<int>& scope) {
    Tuple t;
    t.reserve(scope.size());
    for (int v : scope) t.push_back(z.values[v - 1]);
    return t;
}

bool is_feasible(const CspInstance& q, const Assignment& z) {
    if (!in_domains(q, z)) throw CspError("DomainViolation", "assignment outside domains");
    for (const auto& h : q.hard)
        if (h.allowed.count(project_tuple(z, h.scope)) == 0) return false;
    return true;
}

ExtendedAssignment extend(const CspInstance& q, const Assignment& z) {
    if (!is_feasible(q, z)) throw CspError("Infeasible", "assignment violates a hard constraint");
    ExtendedAssignment ex;
    ex.z = z;
    ex.h.reserve(q.soft.size());
    for (const auto& c : q.soft) ex.h.push_back(c.satisfies(project_tuple(z, c.scope)) ? 1 : 0);
    return ex;
}

Rat objective_value(const CspInstance& q, const Assignment& z) {
    if (!is_feasible(q, z)) throw CspError("Infeasible", "assignment violates a hard constraint");
    Rat total = 0;
    for (const auto& c : q.soft) {
        Rat p = c.payoff_of(project_tuple(z, c.scope));
        if (q.sense == Sense::Max)
            total += c.weight * p;
        else
            total += c.weight * (q.max_payoff(c) - p);
    }
    return total;
}

}  // namespace extform
