#include "extform/formulation.hpp"
#include "extform/oracles.hpp"
#include "extform/randgen.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace extform;
using namespace extform::testing;

namespace {

struct Setup {
    CspInstance q;
    NiceTreeDecomposition ntd;
    ExtendedFormulation ext;
};

Setup setup(CspInstance q) {
    auto g = constraint_graph(q);
    auto ntd = make_nice(heuristic_tree_decomposition(g));
    auto ext = build_extended_lp(q, ntd);
    return {std::move(q), std::move(ntd), std::move(ext)};
}

FractionalPoint combine(const Setup& s, const std::vector<std::pair<Assignment, Rat>>& mix) {
    FractionalPoint f;
    for (const auto& [z, lambda] : mix)
        for (const auto& [k, v] : encode_assignment(s.q, s.ext, z)) f[k] += lambda * v;
    return f;
}

void check_roundtrip(const Setup& s, const FractionalPoint& f) {
    auto d = decompose_lemma1(s.q, s.ntd, s.ext, f);
    Int total = 0;
    FractionalPoint avg;
    for (const auto& [p, c] : d.points) {
        total += c;
        auto vals = point_to_values(s.ext, p);
        CHECK(s.ext.model.satisfied_by(vals));
        for (const auto& v : vals) CHECK((v == 0 || v == 1));
        for (const auto& [k, v] : p) avg[k] += v * Rat(c, 1) / Rat(d.m, 1);
    }
    CHECK(total == d.m);
    for (const auto& [k, v] : f)
        if (v != 0) CHECK(avg[k] == v);
    for (const auto& [k, v] : avg) CHECK(v == (f.count(k) ? f.at(k) : Rat(0)));
}

}  // namespace

TEST_CASE("an integral point decomposes into itself") {
    auto s = setup(is_k3());
    auto f = encode_assignment(s.q, s.ext, asg({1, 0, 0}));
    auto d = decompose_lemma1(s.q, s.ntd, s.ext, f);
    CHECK(d.m == 1);
    REQUIRE(d.points.size() == 1);
    CHECK(d.points[0].second == 1);
    CHECK(d.points[0].first == f);
}

TEST_CASE("a half/half mixture splits into its two generators") {
    auto s = setup(is_k3());
    auto f = combine(s, {{asg({1, 0, 0}), Rat(1, 2)}, {asg({0, 1, 0}), Rat(1, 2)}});
    auto d = decompose_lemma1(s.q, s.ntd, s.ext, f);
    CHECK(d.m == 2);
    CHECK(d.points.size() == 2);
    for (const auto& [p, c] : d.points) CHECK(c == 1);
    check_roundtrip(s, f);
}

TEST_CASE("the uniform mixture over the four IS(K3) assignments needs M=4") {
    auto s = setup(is_k3());
    auto f = combine(s, {{asg({0, 0, 0}), Rat(1, 4)},
                         {asg({1, 0, 0}), Rat(1, 4)},
                         {asg({0, 1, 0}), Rat(1, 4)},
                         {asg({0, 0, 1}), Rat(1, 4)}});
    auto d = decompose_lemma1(s.q, s.ntd, s.ext, f);
    CHECK(d.m == 4);
    CHECK(d.points.size() == 4);
    check_roundtrip(s, f);
}

TEST_CASE("points violating the LP are rejected") {
    auto s = setup(is_k3());
    auto f = encode_assignment(s.q, s.ext, asg({1, 0, 0}));
    f.begin()->second = Rat(1, 2);  // breaks a sum-to-one row
    CHECK_THROWS_AS(decompose_lemma1(s.q, s.ntd, s.ext, f), CspError);
}

TEST_CASE("random convex combinations round-trip exactly") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 25) {
        auto q = random_instance(rng);
        auto bf = brute_force(q);
        if (!bf.feasible) continue;
        auto s = setup(q);

        // collect up to 4 distinct feasible assignments
        std::vector<Assignment> zs;
        std::vector<int> idx(q.n, 0);
        for (bool more = true; more && zs.size() < 4;) {
            Assignment z;
            for (int v = 1; v <= q.n; ++v) z.values.push_back(q.domain(v)[idx[v - 1]]);
            if (is_feasible(q, z)) zs.push_back(z);
            more = false;
            for (int v = q.n - 1; v >= 0; --v) {
                if (++idx[v] < static_cast<int>(q.domains[v].size())) {
                    more = true;
                    break;
                }
                idx[v] = 0;
            }
        }

        std::vector<std::pair<Assignment, Rat>> mix;
        Int den = 0;
        std::vector<Int> nums(zs.size());
        for (auto& nu : nums) {
            nu = std::uniform_int_distribution<int>(1, 5)(rng);
            den += nu;
        }
        for (size_t i = 0; i < zs.size(); ++i) mix.emplace_back(zs[i], Rat(nums[i], den));
        check_roundtrip(s, combine(s, mix));
        ++done;
    }
}
