#include "extform/formulation.hpp"
#include "extform/json_io.hpp"
#include "extform/oracles.hpp"
#include "extform/simplex.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>

using namespace extform;
using namespace extform::testing;

namespace {

NiceTreeDecomposition one_bag_ntd(std::vector<int> bag) {
    TreeDecomposition td;
    td.bags = {std::move(bag)};
    return make_nice(td);
}

long rows_with_tag(const LpModel& m, RowTag tag) {
    long c = 0;
    for (const auto& r : m.rows) c += r.tag == tag;
    return c;
}

}  // namespace

TEST_CASE("base LP of IS(K3) has the expected shape") {
    auto base = build_base_lp(is_k3());
    CHECK(base.y_index.size() == 6);
    // 3 hard edges with 3 allowed pairs each, 3 unary softs with 2 values each
    CHECK(base.g_index.size() == 9 + 6);
    CHECK(rows_with_tag(base.model, RowTag::C1) == 3);
    // (2) per constraint, scope variable, domain value: 3*2*2 hard + 3*1*2 soft
    CHECK(rows_with_tag(base.model, RowTag::C2) == 12 + 6);
    CHECK(base.model.sense == LpSense::Maximize);
}

TEST_CASE("base LP of a lone variable is y = 1") {
    CspInstance q;
    q.n = 1;
    q.domains = {{5}};
    auto base = build_base_lp(q);
    CHECK(base.model.vars.size() == 1);
    REQUIRE(base.model.rows.size() == 1);
    CHECK(base.model.rows[0].rhs == Rat(1));
    auto sol = solve(base.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.values[0] == Rat(1));
}

TEST_CASE("base LP optimum of IS(K3) is the fractional 3/2") {
    auto base = build_base_lp(is_k3());
    auto sol = solve(base.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == Rat(3, 2));
    CHECK(verify_solution(base.model, sol));
}

TEST_CASE("extended LP of IS(K3) closes the gap") {
    auto q = is_k3();
    auto ntd = one_bag_ntd({1, 2, 3});
    auto ext = build_extended_lp(q, ntd);
    REQUIRE(ext.bag_configs.count({1, 2, 3}) == 1);
    CHECK(ext.bag_configs.at({1, 2, 3}).size() == 4);
    auto sol = solve(ext.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == Rat(1));
    CHECK(is_integral(ext.model, sol));
    CHECK(verify_solution(ext.model, sol));
}

TEST_CASE("extended LP of a free binary variable") {
    CspInstance q;
    q.n = 1;
    q.domains = {{0, 1}};
    auto ext = build_extended_lp(q, one_bag_ntd({1}));
    // two configurations on {1} plus the blank configuration of the empty root
    CHECK(ext.f_index.size() == 3);
    CHECK(ext.bag_configs.at({1}).size() == 2);
    long c4 = 0, c6 = 0;
    for (const auto& r : ext.model.rows) {
        c4 += r.tag == RowTag::C4;
        c6 += r.tag == RowTag::C6;
    }
    CHECK(c4 == 2);
    CHECK(c6 == 1);
}

TEST_CASE("formulation_stats certifies the size bounds") {
    CspInstance q;
    q.n = 1;
    q.domains = {{0, 1}};
    auto ntd = one_bag_ntd({1});
    auto ext = build_extended_lp(q, ntd);
    auto st = formulation_stats(q, ntd, ext);
    CHECK(st.f_variables == 3);
    CHECK(st.constraints == 3);
    CHECK(st.var_bound_ok);
    CHECK(st.row_bound_ok);

    auto q3 = is_k3();
    auto ntd3 = one_bag_ntd({1, 2, 3});
    auto ext3 = build_extended_lp(q3, ntd3);
    auto st3 = formulation_stats(q3, ntd3, ext3);
    CHECK(st3.var_bound_ok);
    CHECK(st3.row_bound_ok);
    long dedup = static_cast<long>(ext3.f_index.size());
    CHECK(st3.f_variables == dedup);
}

TEST_CASE("encode/proj2/proj1 round-trips an integral point") {
    auto q = is_k3();
    auto ntd = one_bag_ntd({1, 2, 3});
    auto ext = build_extended_lp(q, ntd);
    auto base = build_base_lp(q);
    Assignment z = asg({1, 0, 0});
    auto f = encode_assignment(q, ext, z);
    CHECK(ext.model.satisfied_by(point_to_values(ext, f)));
    auto yg = proj2(q, base, ext, f);
    CHECK(base.model.satisfied_by(yg));
    CHECK(yg[base.y_index.at({1, 1})] == Rat(1));
    CHECK(yg[base.y_index.at({1, 0})] == Rat(0));
    CHECK(yg[base.y_index.at({2, 0})] == Rat(1));
    CHECK(yg[base.y_index.at({3, 0})] == Rat(1));
    auto ex = proj1(q, base, yg);
    CHECK(ex.z.values == z.values);
    CHECK(ex.h == extend(q, z).h);
}

TEST_CASE("proj2 averages fractional points configuration-wise") {
    auto q = is_k3();
    auto ntd = one_bag_ntd({1, 2, 3});
    auto ext = build_extended_lp(q, ntd);
    auto base = build_base_lp(q);
    FractionalPoint f;
    for (const auto& z : {asg({0, 0, 0}), asg({1, 0, 0}), asg({0, 1, 0}), asg({0, 0, 1})})
        for (const auto& [k, v] : encode_assignment(q, ext, z)) f[k] += v / 4;
    CHECK(ext.model.satisfied_by(point_to_values(ext, f)));
    auto yg = proj2(q, base, ext, f);
    CHECK(base.model.satisfied_by(yg));
    for (int v = 1; v <= 3; ++v) CHECK(yg[base.y_index.at({v, 1})] == Rat(1, 4));
    CHECK_THROWS_AS(proj1(q, base, yg), CspError);  // NonIntegralInput
}

TEST_CASE("proj2 on a lone variable") {
    CspInstance q;
    q.n = 1;
    q.domains = {{0, 1}};
    auto ext = build_extended_lp(q, one_bag_ntd({1}));
    auto base = build_base_lp(q);
    FractionalPoint f;
    f[Configuration({{1, 0}})] = 1;
    auto yg = proj2(q, base, ext, f);
    CHECK(yg[base.y_index.at({1, 0})] == Rat(1));
    CHECK(yg[base.y_index.at({1, 1})] == Rat(0));
}

TEST_CASE("trivial projections") {
    ExtendedAssignment ex;
    ex.z = asg({1, 0});
    ex.h = {1, 1, 0};
    CHECK(proj_v(ex).values == ex.z.values);
    CHECK(proj_e(ex) == ex.h);
    CHECK(proj_id(ex).z.values == ex.z.values);
    CHECK(proj_id(ex).h == ex.h);
}

TEST_CASE("proj_oct reads off the deletion indicator") {
    auto red = reduce_oct(cycle_graph(5));
    const auto& q = red.instance;
    auto g = constraint_graph(q);
    auto ntd = make_nice(heuristic_tree_decomposition(g));
    auto ext = build_extended_lp(q, ntd);
    auto base = build_base_lp(q);
    Assignment z = asg({0, 1, 0, 1, 2});
    REQUIRE(is_feasible(q, z));
    auto yg = proj2(q, base, ext, encode_assignment(q, ext, z));
    auto ind = proj_oct(q, base, yg);
    CHECK(ind == std::vector<Rat>{0, 0, 0, 0, 1});
}

TEST_CASE("integral points of the extended LP biject with feasible assignments") {
    auto q = is_k3();
    auto ntd = one_bag_ntd({1, 2, 3});
    auto ext = build_extended_lp(q, ntd);
    auto base = build_base_lp(q);
    std::set<std::vector<Rat>> seen;
    int feasible = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                Assignment z = asg({a, b, c});
                if (!is_feasible(q, z)) continue;
                ++feasible;
                auto vals = point_to_values(ext, encode_assignment(q, ext, z));
                CHECK(ext.model.satisfied_by(vals));
                CHECK(seen.insert(vals).second);
                auto back = proj1(q, base, proj2(q, base, ext, values_to_point(ext, vals)));
                CHECK(back.z.values == z.values);
            }
    CHECK(feasible == 4);
}

TEST_CASE("LP export is deterministic and sectioned") {
    auto base = build_base_lp(is_k3());
    auto text = export_lp(base.model);
    CHECK(text == export_lp(base.model));
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("Bounds") != std::string::npos);
    CHECK(text.rfind("End\n") == text.size() - 4);
}

TEST_CASE("non-decimal rationals are exported as scaled integer rows") {
    LpModel m;
    m.add_var("x", VarKind::Y);
    m.objective = {Rat(1)};
    m.rows.push_back({{{0, Rat(1, 3)}}, Rat(1, 3), RowTag::C1});
    auto text = export_lp(m);
    CHECK(text.find("1/3") != std::string::npos);   // comment carries the exact value
    CHECK(text.find("0.333") == std::string::npos);  // never a rounded decimal
}

TEST_CASE("instance JSON round-trips") {
    auto q = is_k3();
    auto back = instance_from_json(instance_to_json(q));
    CHECK(back.n == q.n);
    CHECK(back.domains == q.domains);
    CHECK(back.sense == q.sense);
    REQUIRE(back.hard.size() == q.hard.size());
    for (size_t i = 0; i < q.hard.size(); ++i) CHECK(back.hard[i].allowed == q.hard[i].allowed);
    REQUIRE(back.soft.size() == q.soft.size());
    for (size_t i = 0; i < q.soft.size(); ++i) {
        CHECK(back.soft[i].scope == q.soft[i].scope);
        CHECK(back.soft[i].weight == q.soft[i].weight);
        CHECK(back.soft[i].payoff == q.soft[i].payoff);
    }
    CHECK_THROWS_AS(instance_from_json("{"), CspError);
    CHECK_THROWS_AS(instance_from_json("{\"n\": 1, \"domains\": [[]]}"), CspError);
}
