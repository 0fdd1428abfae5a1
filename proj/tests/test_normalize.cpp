#include <doctest.h>

#include "isomatch/enumerate.hpp"
#include "isomatch/generate.hpp"
#include "isomatch/normalize.hpp"
#include "isomatch/psg.hpp"

using namespace isomatch;

TEST_CASE("an edge crossing two pairs splits into three segments") {
    EmbeddedGraph g = gen_torus_cycle(4, {{1, {{1, true}, {2, true}}}});
    auto [norm, map] = normalize(g);
    REQUIRE(map.path(1).size() == 3);
    const auto& path = map.path(1);
    CHECK(norm.edge(path[0]).crossings.size() == 1);
    CHECK(norm.edge(path[0]).crossings[0].pair == 1);
    CHECK(norm.edge(path[1]).is_planar());
    CHECK(norm.edge(path[2]).crossings.size() == 1);
    CHECK(norm.edge(path[2]).crossings[0].pair == 2);
    CHECK(norm.is_normalized());
    CHECK(norm.n == g.n + 2);
    CHECK(map.first_dummy == g.n + 1);
    // segments chain u -> v through the dummies
    CHECK(norm.edge(path[0]).u == g.edge(1).u);
    CHECK(norm.edge(path[2]).v == g.edge(1).v);
    validate(norm);
}

TEST_CASE("already-normalized graphs come back unchanged") {
    EmbeddedGraph g = gen_torus_cycle(4, {{1, {{1, true}}}});
    auto [norm, map] = normalize(g);
    CHECK(map.identity());
    CHECK(serialize_psg(norm) == serialize_psg(g));
}

TEST_CASE("normalize is idempotent") {
    for (const EmbeddedGraph& g : {gen_k33_torus(), gen_torus_grid(4, 4, 5, 85)}) {
        auto first = normalize(g);
        auto second = normalize(first.graph);
        CHECK(second.map.identity());
        CHECK(serialize_psg(second.graph) == serialize_psg(first.graph));
    }
}

TEST_CASE("crossing edges sharing an endpoint get separated") {
    // 6-cycle whose edges 1 and 2 both cross pair 1 and meet at vertex 2.
    EmbeddedGraph g = gen_torus_cycle(6, {{1, {{1, false}}}, {2, {{1, true}}}});
    std::size_t before = enumerate_pms(g).size();
    auto [norm, map] = normalize(g);
    CHECK(norm.is_normalized());
    CHECK(map.path(1).size() + map.path(2).size() == 4);  // one edge gained 2 dummies
    std::size_t after = enumerate_pms(norm).size();
    CHECK(before == after);
    validate(norm);
}

TEST_CASE("matching correspondence follows the odd-segment rule") {
    EmbeddedGraph g = gen_torus_cycle(4, {{1, {{1, true}, {2, true}}}});
    auto [norm, map] = normalize(g);
    auto pms = enumerate_pms(norm);
    REQUIRE(pms.size() == 2);
    for (const Matching& m : pms) {
        Matching back = matchings_correspond(g, norm, map, m);
        CHECK(is_perfect(g, back));
        const auto& path = map.path(1);
        bool seg_matched = m.contains(path[0]);
        CHECK(back.contains(1) == seg_matched);
        if (seg_matched) CHECK(m.contains(path[2]));  // all odd segments together
    }
    SUBCASE("non-perfect input is rejected") {
        Matching empty = make_matching(norm, {});
        CHECK_THROWS_AS(matchings_correspond(g, norm, map, empty), std::invalid_argument);
    }
    SUBCASE("inconsistent segment pattern is rejected") {
        // Perfect by size but mixes odd and even segments of edge 1's path.
        const auto& path = map.path(1);
        Matching bogus;
        bogus.edges = {path[0], path[1]};
        std::sort(bogus.edges.begin(), bogus.edges.end());
        bogus.sig = Signature::zero(2);
        if (static_cast<int>(bogus.edges.size()) * 2 == norm.n)
            CHECK_THROWS_AS(matchings_correspond(g, norm, map, bogus), std::invalid_argument);
    }
}

TEST_CASE("perfect matchings biject across normalization on an 8-vertex genus-1 instance") {
    EmbeddedGraph g = gen_torus_cycle(8, {{1, {{1, true}, {2, false}}}, {2, {{1, false}}}});
    auto [norm, map] = normalize(g);
    auto orig = enumerate_pms(g);
    auto pms = enumerate_pms(norm);
    REQUIRE(orig.size() == pms.size());
    std::set<std::vector<EdgeId>> seen;
    for (const Matching& m : pms) seen.insert(matchings_correspond(g, norm, map, m).edges);
    CHECK(seen.size() == pms.size());  // injective, hence a bijection
}

TEST_CASE("corpus instances preserve matching counts through normalize") {
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        EmbeddedGraph g = gen_torus_grid(4, 4, seed, 80);
        auto [norm, map] = normalize(g);
        CHECK(enumerate_pms(g).size() == enumerate_pms(norm).size());
    }
    EmbeddedGraph k33 = gen_k33_torus();
    auto [norm, map] = normalize(k33);
    CHECK(enumerate_pms(k33).size() == enumerate_pms(norm).size());
}
