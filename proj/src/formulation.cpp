#include "extform/formulation.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace extform {

namespace {

std::string y_name(int v, int i) { return "y_" + std::to_string(v) + "_" + std::to_string(i); }

Rat soft_coeff(const CspInstance& q, const SoftConstraint& c, const Tuple& t) {
    Rat p = c.payoff_of(t);
    return q.sense == Sense::Max ? c.weight * p : c.weight * (q.max_payoff(c) - p);
}

}  // namespace

BaseFormulation build_base_lp(const CspInstance& q) {
    BaseFormulation b;
    b.model.sense = q.sense == Sense::Max ? LpSense::Maximize : LpSense::Minimize;

    for (int v = 1; v <= q.n; ++v)
        for (int i : q.domain(v))
            b.y_index[{v, i}] = b.model.add_var(y_name(v, i), VarKind::Y);

    for (size_t i = 0; i < q.hard.size(); ++i) {
        std::string tag = "h" + std::to_string(i);
        b.constraint_tags.push_back(tag);
        b.tag_scope[tag] = q.hard[i].scope;
    }
    for (const auto& c : q.soft) {
        std::string tag = "s" + std::to_string(c.id);
        b.constraint_tags.push_back(tag);
        b.tag_scope[tag] = c.scope;
    }

    std::map<std::string, std::vector<Configuration>> scope_configs;
    for (const auto& tag : b.constraint_tags) {
        auto configs = enumerate_configurations(q, b.tag_scope[tag]);
        for (const auto& k : configs)
            b.g_index[{tag, k}] = b.model.add_var("g_" + tag + "_" + k.str(), VarKind::G);
        scope_configs[tag] = std::move(configs);
    }

    // (1): each variable takes exactly one value
    for (int v = 1; v <= q.n; ++v) {
        LpRow row;
        row.tag = RowTag::C1;
        row.rhs = 1;
        for (int i : q.domain(v)) row.terms.emplace_back(b.y_index.at({v, i}), Rat(1));
        b.model.rows.push_back(std::move(row));
    }
    // (2): y/g consistency per constraint, scope variable and value
    for (const auto& tag : b.constraint_tags) {
        const auto& scope = b.tag_scope[tag];
        const auto& configs = scope_configs[tag];
        for (int v : scope)
            for (int i : q.domain(v)) {
                LpRow row;
                row.tag = RowTag::C2;
                row.rhs = 0;
                for (const auto& k : configs)
                    if (k.value(v) == i) row.terms.emplace_back(b.g_index.at({tag, k}), Rat(1));
                row.terms.emplace_back(b.y_index.at({v, i}), Rat(-1));
                b.model.rows.push_back(std::move(row));
            }
    }

    for (const auto& c : q.soft) {
        std::string tag = "s" + std::to_string(c.id);
        for (const auto& k : scope_configs[tag]) {
            Rat coef = soft_coeff(q, c, k.tuple_on(c.scope));
            if (coef != 0) b.model.objective[b.g_index.at({tag, k})] += coef;
        }
    }
    return b;
}

ExtendedFormulation build_extended_lp(const CspInstance& q, const NiceTreeDecomposition& ntd) {
    ExtendedFormulation e;
    e.model.sense = q.sense == Sense::Max ? LpSense::Maximize : LpSense::Minimize;

    auto order = ntd.preorder();
    for (int a : order) {
        const auto& bag = ntd.nodes[a].bag;
        if (e.bag_configs.count(bag)) continue;
        auto configs = enumerate_configurations(q, bag);
        for (const auto& k : configs)
            e.f_index[k] = e.model.add_var("f_" + k.str(), VarKind::F);
        e.bag_configs.emplace(bag, std::move(configs));
        e.distinct_bags.push_back(bag);
        for (int v : bag)
            if (!e.vertex_bag.count(v)) e.vertex_bag[v] = bag;
    }

    // (4): one configuration per distinct bag
    for (const auto& bag : e.distinct_bags) {
        LpRow row;
        row.tag = RowTag::C4;
        row.rhs = 1;
        for (const auto& k : e.bag_configs.at(bag))
            row.terms.emplace_back(e.f_index.at(k), Rat(1));
        e.model.rows.push_back(std::move(row));
    }
    // (5)/(6): introduce and forget couplings
    for (int c : order) {
        const auto& nd = ntd.nodes[c];
        if (nd.kind != NodeKind::Introduce && nd.kind != NodeKind::Forget) continue;
        int b = nd.children[0];
        const auto& small_bag = nd.kind == NodeKind::Introduce ? ntd.nodes[b].bag : nd.bag;
        const auto& big_bag = nd.kind == NodeKind::Introduce ? nd.bag : ntd.nodes[b].bag;
        for (const auto& k : e.bag_configs.at(small_bag)) {
            LpRow row;
            row.tag = nd.kind == NodeKind::Introduce ? RowTag::C5 : RowTag::C6;
            row.rhs = 0;
            for (const auto& kk : e.bag_configs.at(big_bag))
                if (kk.restrict(small_bag) == k)
                    row.terms.emplace_back(e.f_index.at(kk), Rat(1));
            row.terms.emplace_back(e.f_index.at(k), Rat(-1));
            e.model.rows.push_back(std::move(row));
        }
    }

    // objective over the designated bag of each soft constraint
    auto designate = [&](const std::vector<int>& scope) -> const std::vector<int>* {
        for (const auto& bag : e.distinct_bags)
            if (std::includes(bag.begin(), bag.end(), scope.begin(), scope.end())) return &bag;
        return nullptr;
    };
    for (size_t i = 0; i < q.hard.size(); ++i) {
        const auto* bag = designate(q.hard[i].scope);
        if (!bag) throw CspError("ScopeNotCovered", "hard constraint " + std::to_string(i));
        e.designated_bag["h" + std::to_string(i)] = *bag;
    }
    for (const auto& c : q.soft) {
        const auto* bag = designate(c.scope);
        if (!bag) throw CspError("ScopeNotCovered", "soft constraint " + std::to_string(c.id));
        e.designated_bag["s" + std::to_string(c.id)] = *bag;
        for (const auto& k : e.bag_configs.at(*bag)) {
            Rat coef = soft_coeff(q, c, k.tuple_on(c.scope));
            if (coef != 0) e.model.objective[e.f_index.at(k)] += coef;
        }
    }
    return e;
}

FormulationStats formulation_stats(const CspInstance& q, const NiceTreeDecomposition& ntd,
                                   const ExtendedFormulation& ext) {
    FormulationStats s;
    s.variables = static_cast<long>(ext.model.vars.size());
    s.constraints = static_cast<long>(ext.model.rows.size());
    for (const auto& row : ext.model.rows) s.nonzeros += static_cast<long>(row.terms.size());
    s.f_variables = static_cast<long>(ext.f_index.size());
    s.ntd_nodes = static_cast<long>(ntd.nodes.size());
    s.max_domain = q.max_domain_size();
    s.width = ntd.width();
    Int cap = 1;
    for (int i = 0; i <= s.width; ++i) cap *= s.max_domain;
    s.var_bound_ok = Int(s.f_variables) <= cap * s.ntd_nodes;
    s.row_bound_ok = Int(s.constraints) <= (cap + 1) * s.ntd_nodes;
    return s;
}

std::vector<Rat> point_to_values(const ExtendedFormulation& ext, const FractionalPoint& f) {
    std::vector<Rat> values(ext.model.vars.size(), Rat(0));
    for (const auto& [k, v] : f) {
        auto it = ext.f_index.find(k);
        if (it == ext.f_index.end()) {
            if (v != 0)
                throw CspError("InfeasibleInput", "mass on unknown configuration " + k.str());
            continue;
        }
        values[it->second] = v;
    }
    return values;
}

FractionalPoint values_to_point(const ExtendedFormulation& ext, const std::vector<Rat>& values) {
    FractionalPoint f;
    for (const auto& [k, j] : ext.f_index)
        if (values[j] != 0) f[k] = values[j];
    return f;
}

FractionalPoint encode_assignment(const CspInstance& q, const ExtendedFormulation& ext,
                                  const Assignment& z) {
    if (!is_feasible(q, z)) throw CspError("Infeasible", "cannot encode an infeasible assignment");
    FractionalPoint f;
    for (const auto& bag : ext.distinct_bags) {
        std::vector<std::pair<int, int>> entries;
        for (int v : bag) entries.emplace_back(v, z.values[v - 1]);
        f[Configuration(std::move(entries))] = 1;
    }
    return f;
}

std::vector<Rat> proj2(const CspInstance& q, const BaseFormulation& base,
                       const ExtendedFormulation& ext, const FractionalPoint& f) {
    auto fv = point_to_values(ext, f);
    std::vector<Rat> out(base.model.vars.size(), Rat(0));
    for (int v = 1; v <= q.n; ++v) {
        const auto& bag = ext.vertex_bag.at(v);
        for (const auto& k : ext.bag_configs.at(bag))
            out[base.y_index.at({v, k.value(v)})] += fv[ext.f_index.at(k)];
    }
    for (const auto& tag : base.constraint_tags) {
        const auto& scope = base.tag_scope.at(tag);
        const auto& bag = ext.designated_bag.at(tag);
        for (const auto& k : ext.bag_configs.at(bag))
            out[base.g_index.at({tag, k.restrict(scope)})] += fv[ext.f_index.at(k)];
    }
    return out;
}

ExtendedAssignment proj1(const CspInstance& q, const BaseFormulation& base,
                         const std::vector<Rat>& yg) {
    for (const auto& v : yg)
        if (!is_zero_one(v)) throw CspError("NonIntegralInput", "proj1 requires an integral point");
    ExtendedAssignment ex;
    ex.z.values.assign(q.n, 0);
    for (int v = 1; v <= q.n; ++v) {
        bool found = false;
        for (int i : q.domain(v))
            if (yg[base.y_index.at({v, i})] == 1) {
                ex.z.values[v - 1] = i;
                found = true;
                break;
            }
        if (!found) throw CspError("NonIntegralInput", "no value selected for variable " +
                                                           std::to_string(v));
    }
    for (const auto& c : q.soft) {
        std::string tag = "s" + std::to_string(c.id);
        Tuple t = project_tuple(ex.z, c.scope);
        ex.h.push_back(c.satisfies(t) ? 1 : 0);
        // consistency with g: the selected configuration must carry the mass
        auto it = base.g_index.find({tag, Configuration::from_tuple(c.scope, t)});
        if (it == base.g_index.end() || yg[it->second] != 1)
            throw CspError("NonIntegralInput", "g inconsistent with y for soft constraint " +
                                                   std::to_string(c.id));
    }
    return ex;
}

std::vector<Rat> proj_oct(const CspInstance& q, const BaseFormulation& base,
                          const std::vector<Rat>& yg) {
    std::vector<Rat> out;
    out.reserve(q.n);
    for (int v = 1; v <= q.n; ++v) {
        auto it = base.y_index.find({v, 2});
        out.push_back(it == base.y_index.end() ? Rat(0) : yg[it->second]);
    }
    return out;
}

namespace {

using Choice = std::map<int, Configuration>;  // nice node -> chosen configuration

bool choice_less(const Choice& a, const Choice& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Decomposition decompose_lemma1(const CspInstance& q, const NiceTreeDecomposition& ntd,
                               const ExtendedFormulation& ext, const FractionalPoint& f) {
    auto values = point_to_values(ext, f);
    if (!ext.model.satisfied_by(values))
        throw CspError("InfeasibleInput", "point violates the extended LP");

    Int m = 1;
    for (const auto& v : values) m = lcm(m, denominator(v));
    if (m > 100000)
        throw CspError("SolverDiagnostic", "common denominator too large: " + m.str());
    const long mm = m.convert_to<long>();

    auto scaled = [&](const Configuration& k) -> long {
        Rat s = values[ext.f_index.at(k)] * m;
        return numerator(s).convert_to<long>();
    };

    std::function<std::vector<Choice>(int)> decomp = [&](int node) -> std::vector<Choice> {
        const auto& nd = ntd.nodes[node];
        const auto& configs = ext.bag_configs.at(nd.bag);
        switch (nd.kind) {
            case NodeKind::Leaf: {
                std::vector<Choice> out;
                out.reserve(mm);
                for (const auto& k : configs)
                    for (long c = scaled(k); c > 0; --c) out.push_back({{node, k}});
                return out;
            }
            case NodeKind::Forget: {
                auto out = decomp(nd.children[0]);
                for (auto& ch : out) ch.emplace(node, ch.at(nd.children[0]).restrict(nd.bag));
                return out;
            }
            case NodeKind::Introduce: {
                int b = nd.children[0];
                auto sub = decomp(b);
                std::map<Configuration, std::vector<Choice>> groups;
                for (auto& ch : sub) groups[ch.at(b)].push_back(std::move(ch));
                std::set<Configuration> valid(configs.begin(), configs.end());
                std::vector<Choice> out;
                out.reserve(mm);
                for (auto& [k, group] : groups) {
                    std::sort(group.begin(), group.end(), choice_less);
                    size_t at = 0;
                    for (int j : q.domain(nd.vertex)) {
                        Configuration kk = k.assigned(nd.vertex, j);
                        if (!valid.count(kk)) continue;
                        for (long c = scaled(kk); c > 0; --c) {
                            Choice ch = std::move(group[at++]);
                            ch.emplace(node, kk);
                            out.push_back(std::move(ch));
                        }
                    }
                    if (at != group.size())
                        throw CspError("SolverDiagnostic", "introduce split mismatch");
                }
                return out;
            }
            case NodeKind::Join: {
                int a = nd.children[0], b = nd.children[1];
                auto la = decomp(a);
                auto lb = decomp(b);
                std::map<Configuration, std::vector<Choice>> ga, gb;
                for (auto& ch : la) ga[ch.at(a)].push_back(std::move(ch));
                for (auto& ch : lb) gb[ch.at(b)].push_back(std::move(ch));
                std::vector<Choice> out;
                out.reserve(mm);
                for (const auto& k : configs) {
                    auto& va = ga[k];
                    auto& vb = gb[k];
                    if (va.size() != vb.size())
                        throw CspError("SolverDiagnostic", "join group size mismatch");
                    std::sort(va.begin(), va.end(), choice_less);
                    std::sort(vb.begin(), vb.end(), choice_less);
                    for (size_t i = 0; i < va.size(); ++i) {
                        Choice ch = std::move(va[i]);
                        ch.insert(vb[i].begin(), vb[i].end());
                        ch.emplace(node, k);
                        out.push_back(std::move(ch));
                    }
                }
                return out;
            }
        }
        return {};
    };

    auto choices = decomp(ntd.root);
    if (static_cast<long>(choices.size()) != mm)
        throw CspError("SolverDiagnostic", "decomposition count mismatch");

    std::map<FractionalPoint, Int> mult;
    for (const auto& ch : choices) {
        FractionalPoint p;
        for (const auto& [node, k] : ch) p[k] = 1;
        mult[p] += 1;
    }
    Decomposition d;
    d.m = m;
    for (auto& [p, c] : mult) d.points.emplace_back(p, c);
    return d;
}

}  // namespace extform
