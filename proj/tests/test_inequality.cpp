#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <tuple>

#include "cks/inequality.hpp"
#include "support/fixtures.hpp"

using namespace cks;
namespace fx = cks::fixtures;

namespace {

LinearInequality single_class(IneqFamily fam, const std::vector<std::pair<int, long long>>& terms,
                              long long rhs, int cls = 0) {
    LinearInequality out;
    out.family = fam;
    out.rhs = Rat(rhs);
    for (auto [v, c] : terms) out.set(v, cls, Rat(c));
    return out;
}

}  // namespace

TEST_CASE("sparse storage never keeps zeros") {
    LinearInequality ineq;
    ineq.set(0, 0, Rat(1));
    ineq.set(0, 0, Rat(0));
    CHECK(ineq.coef.empty());
    CHECK(ineq.at(0, 0) == Rat(0));
}

TEST_CASE("make_cover sums one vertex over all classes") {
    auto ineq = make_cover(2, 3);
    CHECK(ineq.family == IneqFamily::cover);
    CHECK(ineq.rhs == Rat(1));
    CHECK(ineq.coef.size() == 3);
    for (int c = 0; c < 3; ++c) CHECK(ineq.at(2, c) == Rat(1));
}

TEST_CASE("make_connectivity builds and validates") {
    auto g = fx::path(3);
    auto ineq = make_connectivity(g, 0, 2, {1}, 0, 2);
    CHECK(ineq == single_class(IneqFamily::connectivity, {{0, 1}, {2, 1}, {1, -1}}, 1));

    Graph two_comp(4, {{0, 1}, {2, 3}});
    auto empty_z = make_connectivity(two_comp, 0, 2, {}, 1, 2);
    CHECK(empty_z.at(0, 1) == Rat(1));
    CHECK(empty_z.at(2, 1) == Rat(1));
    CHECK(empty_z.coef.size() == 2);

    CHECK_THROWS_AS(make_connectivity(g, 0, 1, {2}, 0, 1), std::invalid_argument);  // adjacent
    CHECK_THROWS_AS(make_connectivity(g, 0, 2, {}, 0, 1), std::invalid_argument);   // no separator
    CHECK_THROWS_AS(make_connectivity(g, 0, 2, {2}, 0, 1), std::invalid_argument);  // touches v
    CHECK_THROWS_AS(make_connectivity(g, 0, 2, {1}, 1, 1), std::invalid_argument);  // bad class
}

TEST_CASE("make_indegree requires a full orientation") {
    auto g = fx::path(3);
    Orientation both_into_middle{{{0, 1}, {2, 1}}};
    auto ineq = make_indegree(g, both_into_middle, 0, 1);
    CHECK(ineq == single_class(IneqFamily::indegree, {{0, 1}, {1, -1}, {2, 1}}, 1));

    Orientation chain{{{0, 1}, {1, 2}}};
    auto ineq2 = make_indegree(g, chain, 0, 1);
    CHECK(ineq2 == single_class(IneqFamily::indegree, {{0, 1}}, 1));  // zero coefs dropped

    CHECK_THROWS_AS(make_indegree(g, Orientation{{{0, 1}}}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_indegree(g, Orientation{{{0, 1}, {1, 0}}}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_indegree(g, Orientation{{{0, 1}, {0, 2}, {1, 2}}}, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("gencon on the 5-path alternating partition") {
    auto g = fx::path(5);
    GenConSpec spec;
    spec.w.blocks = {{0, 1}, {2}, {3, 4}};
    spec.s = {0, 2, 4};
    spec.orient.arcs = {{2, 1}, {2, 3}};
    auto ineq = make_gencon(g, spec, 1);
    CHECK(ineq == single_class(IneqFamily::gencon, {{0, 1}, {1, -1}, {2, 1}, {3, -1}, {4, 1}}, 1));
    CHECK(evaluate(ineq, fx::path5_halves()) == Rat(3, 2));
}

TEST_CASE("gencon on the twin-triangle partition") {
    auto g = fx::twin_triangles();
    GenConSpec spec;
    spec.w.blocks = {{0, 1, 2}, {3}, {4, 5, 6}};
    spec.s = {0, 3, 6};
    spec.orient.arcs = {{3, 1}, {3, 2}, {3, 4}, {3, 5}};
    auto ineq = make_gencon(g, spec, 1);
    CHECK(ineq == single_class(IneqFamily::gencon,
                               {{0, 1}, {1, -1}, {2, -1}, {3, 1}, {4, -1}, {5, -1}, {6, 1}}, 1));
    CHECK(evaluate(ineq, fx::twin_triangles_point()) == Rat(9, 8));
}

TEST_CASE("gencon validation") {
    auto g = fx::path(3);
    GenConSpec spec;
    spec.w.blocks = {{0, 1}, {2}};
    spec.s = {0, 2};
    spec.orient.arcs = {{2, 1}};
    CHECK_NOTHROW(make_gencon(g, spec, 1));

    auto bad = spec;
    bad.s = {0, 1};  // two s-vertices in block 0
    CHECK_THROWS_AS(make_gencon(g, bad, 1), std::invalid_argument);
    bad = spec;
    bad.w.blocks = {{0, 1}};  // does not cover V
    bad.s = {0};
    CHECK_THROWS_AS(make_gencon(g, bad, 1), std::invalid_argument);
    bad = spec;
    bad.orient.arcs = {};  // must orient the crossing edge
    CHECK_THROWS_AS(make_gencon(g, bad, 1), std::invalid_argument);
    bad = spec;
    bad.orient.arcs = {{2, 1}, {1, 0}};  // {0,1} is not a crossing edge
    CHECK_THROWS_AS(make_gencon(g, bad, 1), std::invalid_argument);
}

TEST_CASE("connectivity equals gencon built from a minimal separator") {
    // blocks {component of u in g - z} and {rest}, arcs pointing out of u's side
    auto build_from_separator = [](const Graph& g, int u, int v, const VertexSet& z, int cls,
                                   int k) {
        std::vector<char> alive(g.n(), 1);
        for (int x : z) alive[x] = 0;
        VertexSet rest;
        for (int w = 0; w < g.n(); ++w)
            if (alive[w]) rest.push_back(w);
        VertexSet u_side;
        for (const auto& comp : components_within(g, rest))
            if (contains(comp, u)) u_side = comp;
        VertexSet other;
        for (int w = 0; w < g.n(); ++w)
            if (!contains(u_side, w)) other.push_back(w);
        GenConSpec spec;
        spec.w.blocks = {u_side, other};
        VertexSet s{u, v};
        std::sort(s.begin(), s.end());
        spec.s = s;
        spec.cls = cls;
        for (auto [a, b] : crossing_edges(g, spec.w))
            spec.orient.arcs.emplace_back(contains(u_side, a) ? std::pair(a, b)
                                                              : std::pair(b, a));
        auto out = make_gencon(g, spec, k);
        out.family = IneqFamily::connectivity;  // compare payloads only
        return out;
    };

    for (auto [g, u, v] : {std::tuple{fx::path(5), 0, 4}, std::tuple{fx::cycle(6), 0, 3},
                           std::tuple{fx::k23_minus_edge(), 2, 4}}) {
        VertexSet z_all;
        for (int w = 0; w < g.n(); ++w)
            if (w != u && w != v) z_all.push_back(w);
        auto z = minimalize_separator(g, u, v, z_all);
        CHECK(make_connectivity(g, u, v, z, 0, 2) == build_from_separator(g, u, v, z, 0, 2));
    }
}

TEST_CASE("indegree equals gencon with singleton blocks") {
    auto g = fx::twin_triangles();
    Orientation orient;
    for (size_t e = 0; e < g.edges().size(); ++e) {
        auto [a, b] = g.edges()[e];
        if (e % 2) orient.arcs.emplace_back(b, a);
        else orient.arcs.emplace_back(a, b);
    }
    GenConSpec spec;
    for (int v = 0; v < g.n(); ++v) {
        spec.w.blocks.push_back({v});
        spec.s.push_back(v);
    }
    spec.orient = orient;
    auto from_gencon = make_gencon(g, spec, 2);
    from_gencon.family = IneqFamily::indegree;
    CHECK(make_indegree(g, orient, 0, 2) == from_gencon);
}

TEST_CASE("multiway on the 3-star") {
    auto g = fx::star(3);
    MultiwaySpec spec{{0, 1}, {0, 1, 2}, {3}};
    auto ineq = make_multiway(g, spec, 2);
    CHECK(ineq.rhs == Rat(2));
    for (int c = 0; c < 2; ++c) {
        for (int v = 0; v < 3; ++v) CHECK(ineq.at(v, c) == Rat(1));
        CHECK(ineq.at(3, c) == Rat(-1));
    }
    CHECK(evaluate(ineq, fx::star3_saturated_point()) == Rat(5, 2));

    MultiwaySpec no_beta{{0, 1}, {0, 1}, {3}};
    auto weak = make_multiway(g, no_beta, 2);
    CHECK(weak.coef.size() == 4);  // beta = 0 drops the z terms

    CHECK_THROWS_AS(make_multiway(g, MultiwaySpec{{0, 1}, {0, 3}, {}}, 2),
                    std::invalid_argument);  // s not stable
    CHECK_THROWS_AS(make_multiway(g, MultiwaySpec{{0, 1}, {0, 1, 2}, {}}, 2),
                    std::invalid_argument);  // z not a multiway cut
    CHECK_THROWS_AS(make_multiway(g, MultiwaySpec{{0, 1}, {0, 1, 2}, {2, 3}}, 2),
                    std::invalid_argument);  // s and z overlap
    CHECK_THROWS_AS(make_multiway(g, MultiwaySpec{{1, 0}, {0, 1, 2}, {3}}, 2),
                    std::invalid_argument);  // cset not sorted
}

TEST_CASE("pairing on the 5-path") {
    auto g = fx::path(5);
    PairingSpec spec;
    spec.cset = {0, 1};
    spec.delegates = {{0, 4}, {1, 3}};
    spec.z = {2};
    spec.gamma[{2, 0}] = 0;
    spec.gamma[{2, 1}] = 1;
    auto ineq = make_pairing(g, spec, 2);
    CHECK(ineq.rhs == Rat(2));
    CHECK(ineq.at(0, 0) == Rat(1));
    CHECK(ineq.at(4, 0) == Rat(1));
    CHECK(ineq.at(1, 1) == Rat(1));
    CHECK(ineq.at(3, 1) == Rat(1));
    CHECK(ineq.at(2, 1) == Rat(-1));
    CHECK(ineq.coef.size() == 5);

    auto bad = spec;
    bad.delegates = {{0, 4}, {1, 2}};  // adjacent pair
    CHECK_THROWS_AS(make_pairing(g, bad, 2), std::invalid_argument);
    bad = spec;
    bad.z = {1};  // does not separate 0 from 4
    bad.gamma.clear();
    CHECK_THROWS_AS(make_pairing(g, bad, 2), std::invalid_argument);
    bad = spec;
    bad.delegates = {{0, 4}, {0, 3}};  // delegate reused
    CHECK_THROWS_AS(make_pairing(g, bad, 2), std::invalid_argument);
    bad = spec;
    bad.gamma[{2, 0}] = 2;  // gamma must be 0/1
    CHECK_THROWS_AS(make_pairing(g, bad, 2), std::invalid_argument);
}

TEST_CASE("evaluate over incidence vectors") {
    auto g = fx::path(3);
    auto ineq = make_connectivity(g, 0, 2, {1}, 0, 2);
    Subpartition sp{{{0, 2}, {1}}};
    auto chi = incidence_vector(sp, 3, 2);
    CHECK(evaluate(ineq, chi, 3, 2) == Rat(2));  // violated by the disconnected class
    Subpartition ok{{{0, 1, 2}, {}}};
    CHECK(evaluate(ineq, incidence_vector(ok, 3, 2), 3, 2) == Rat(1));
}

TEST_CASE("evaluate rejects dimension mismatches") {
    auto ineq = make_cover(5, 2);
    FractionalPoint x(3, 2);
    CHECK_THROWS_AS(evaluate(ineq, x), std::invalid_argument);
}

TEST_CASE("serialize and parse round-trip") {
    auto g = fx::path(5);
    GenConSpec spec;
    spec.w.blocks = {{0, 1}, {2}, {3, 4}};
    spec.s = {0, 2, 4};
    spec.orient.arcs = {{2, 1}, {2, 3}};
    auto ineq = make_gencon(g, spec, 2);
    auto text = serialize_inequality(ineq);
    CHECK(text == "ineq gencon 1 { (1,1):1 (2,1):-1 (3,1):1 (4,1):-1 (5,1):1 }");
    CHECK(parse_inequality(text) == ineq);

    LinearInequality frac;
    frac.family = IneqFamily::other;
    frac.rhs = Rat(5, 2);
    frac.set(0, 1, Rat(-7, 3));
    CHECK(parse_inequality(serialize_inequality(frac)) == frac);

    CHECK_THROWS_AS(parse_inequality("ineq bogus 1 { }"), std::invalid_argument);
    CHECK_THROWS_AS(parse_inequality("ineq cover 1 { (1,1):1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_inequality("ineq cover 1 { (0,1):1 }"), std::invalid_argument);
    CHECK_THROWS_AS(parse_inequality("ineq cover 1 { (1,1):1 (1,1):2 }"), std::invalid_argument);
}
