#include <doctest.h>

#include "isomatch/generate.hpp"
#include "isomatch/normalize.hpp"
#include "isomatch/oracle.hpp"

using namespace isomatch;

namespace {

EmbeddedGraph k2() {
    EmbeddedGraph g;
    g.n = 2;
    g.edges = {Edge{1, 1, 2, {}, {}}};
    g.rotation = {{}, {1}, {1}};
    g.partition = std::vector<Part>{Part::L, Part::L, Part::R};
    validate(g);
    return g;
}

// U-shaped 4-cycle: edges 1 and 3 cross pair 1 in opposite directions, so
// both matchings share class "00" and only w_side separates them.
EmbeddedGraph u4() { return gen_torus_cycle(4, {{1, {{1, false}}}, {3, {{1, true}}}}); }

WeightFunction ablated(const WeighResult& wr) {
    WeightFunction w = wr.wpl;
    for (std::size_t i = 1; i < w.val.size(); ++i) w.val[i] *= wr.family.scale_inner;
    w.name = "w_comb[ablated]";
    return to_undirected(w);
}

}  // namespace

TEST_CASE("enumerate_pms counts the classics") {
    CHECK(enumerate_pms(k2()).size() == 1);
    CHECK(enumerate_pms(gen_k33_torus()).size() == 6);
    CHECK(enumerate_pms(gen_torus_cycle(6, {})).size() == 2);
    CHECK_THROWS_AS(enumerate_pms(gen_planar_grid(5, 6)), std::invalid_argument);  // over the limit
    CHECK(enumerate_pms(gen_planar_grid(5, 6), 30).size() > 0);
}

TEST_CASE("partition_classes groups by signature") {
    SUBCASE("genus 0 has the single empty-signature class") {
        auto pms = enumerate_pms(gen_planar_grid(2, 3));
        auto part = partition_classes(pms, 0);
        CHECK(part.classes.size() == 1);
    }
    SUBCASE("torus 4-cycle with one crossing splits into two singleton classes") {
        auto g = gen_torus_cycle(4, {{1, {{1, true}}}});
        auto pms = enumerate_pms(g);
        REQUIRE(pms.size() == 2);
        auto part = partition_classes(pms, 1);
        REQUIRE(part.classes.size() == 2);
        for (const auto& [bits, idxs] : part.classes) CHECK(idxs.size() == 1);
        CHECK(part.classes.count(Signature::from_index(2, 0).bits));  // "00"
        CHECK(part.classes.count(Signature::from_index(2, 2).bits));  // "10"
    }
    SUBCASE("sizes follow multiplicity") {
        auto g = u4();
        auto pms = enumerate_pms(g);
        auto part = partition_classes(pms, 1);
        REQUIRE(part.classes.size() == 1);  // both matchings in class "00"
        CHECK(part.classes.begin()->second.size() == 2);
    }
}

TEST_CASE("lemma 2: same-class symmetric differences have zero signature") {
    WeighResult wr = weigh(u4(), {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() == 2);
    SUBCASE("identical matchings give the empty difference") {
        auto r = check_lemma2(wr.graph, pms[0], pms[0]);
        CHECK(r.pass);
    }
    SUBCASE("distinct same-class matchings still cancel") {
        auto r = check_lemma2(wr.graph, pms[0], pms[1]);
        CHECK(r.pass);
        CHECK(r.diff_sig.is_zero());
    }
    SUBCASE("different classes violate the precondition") {
        WeighResult hex = weigh(gen_torus_hexagon_tie(), {});
        auto hpms = enumerate_pms(hex.graph);
        CHECK_THROWS_WITH_AS(check_lemma2(hex.graph, hpms[0], hpms[1]), doctest::Contains("different classes"),
                             std::invalid_argument);
    }
}

TEST_CASE("lemma 2 holds across a genus-1 corpus") {
    for (unsigned seed : {2u, 5u, 8u}) {
        WeighResult wr = weigh(normalize(gen_torus_grid(4, 4, seed, 75)).graph, {});
        auto pms = enumerate_pms(wr.graph);
        auto part = partition_classes(pms, 1);
        for (const auto& [bits, idxs] : part.classes)
            for (std::size_t a = 0; a < idxs.size(); ++a)
                for (std::size_t b = a + 1; b < idxs.size(); ++b)
                    CHECK(check_lemma2(wr.graph, pms[static_cast<std::size_t>(idxs[a])],
                                       pms[static_cast<std::size_t>(idxs[b])])
                              .pass);
    }
}

TEST_CASE("lemma 1 passes on honest weights and fails on the ablated control") {
    SUBCASE("random planar instances") {
        for (unsigned seed : {1u, 4u, 9u}) {
            WeighResult wr = weigh(gen_planar_grid(3, 4, seed, 90), {});
            CHECK(check_lemma1(wr.graph, enumerate_pms(wr.graph), wr.wcomb_und).pass);
        }
    }
    SUBCASE("equal minima in different classes do not trip the per-class claim") {
        WeighResult wr = weigh(gen_torus_hexagon_tie(), {});
        auto pms = enumerate_pms(wr.graph);
        REQUIRE(wr.wcomb_und.of_matching(pms[0]) == wr.wcomb_und.of_matching(pms[1]));
        CHECK(check_lemma1(wr.graph, pms, wr.wcomb_und).pass);
    }
    SUBCASE("zeroing w_side breaks uniqueness inside class 00") {
        WeighResult wr = weigh(u4(), {});
        auto pms = enumerate_pms(wr.graph);
        CHECK(check_lemma1(wr.graph, pms, wr.wcomb_und).pass);
        auto broken = check_lemma1(wr.graph, pms, ablated(wr));
        REQUIRE_FALSE(broken.pass);
        REQUIRE(broken.counterexample.has_value());
        CHECK(broken.sig.is_zero());
        CHECK(broken.counterexample->cycles.size() == 1);
        CHECK(broken.counterexample->cycles[0].edges.size() == 4);
    }
    SUBCASE("two parallel non-separating loops tie the same way") {
        EmbeddedGraph g = gen_torus_cycles(
            {CycleSpec{4, {{1, {{1, false}}}}}, CycleSpec{4, {{1, {{1, false}}}}}});
        WeighResult wr = weigh(g, {});
        auto pms = enumerate_pms(wr.graph);
        REQUIRE(pms.size() == 4);
        CHECK(check_lemma1(wr.graph, pms, wr.wcomb_und).pass);
        CHECK_FALSE(check_lemma1(wr.graph, pms, ablated(wr)).pass);
    }
}

TEST_CASE("a two-cycle wrapping the torus keeps parallel edges apart by class") {
    EmbeddedGraph g = gen_torus_cycle(2, {{1, {{1, true}}}});
    WeighResult wr = weigh(g, {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() == 2);
    CHECK_FALSE(pms[0].sig == pms[1].sig);
    CHECK(check_lemma1(wr.graph, pms, wr.wcomb_und).pass);
    CHECK(check_isolation(wr.graph, pms, wr.family).pass());
}

TEST_CASE("claim 1: minimum pairs split cycles evenly, others yield a lighter exchange") {
    WeighResult wr = weigh(u4(), {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() == 2);
    SUBCASE("identical matchings are vacuous") {
        auto r = check_claim1(wr.graph, pms[0], pms[0], wr.wcomb_und);
        CHECK(r.pass);
        CHECK(r.decomp.cycles.empty());
    }
    SUBCASE("equal minima under the ablated weights balance every cycle") {
        WeightFunction abl = ablated(wr);
        REQUIRE(abl.of_matching(pms[0]) == abl.of_matching(pms[1]));
        auto r = check_claim1(wr.graph, pms[0], pms[1], abl);
        CHECK(r.pass);
    }
    SUBCASE("a non-minimum input surfaces the strictly lighter matching") {
        Int w0 = wr.wcomb_und.of_matching(pms[0]), w1 = wr.wcomb_und.of_matching(pms[1]);
        REQUIRE(w0 != w1);
        auto r = check_claim1(wr.graph, pms[0], pms[1], wr.wcomb_und);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.lighter.has_value());
        CHECK(r.lighter_weight == std::min(w0, w1));
        CHECK(r.lighter_weight < std::max(w0, w1));
    }
}

TEST_CASE("symmetric differences decompose into even alternating cycles") {
    WeighResult wr = weigh(normalize(gen_torus_grid(4, 4, 3, 80)).graph, {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() >= 2);
    for (std::size_t a = 0; a < std::min<std::size_t>(pms.size(), 8); ++a)
        for (std::size_t b = a + 1; b < std::min<std::size_t>(pms.size(), 8); ++b) {
            auto d = sym_diff_decompose(wr.graph, pms[a], pms[b]);  // throws when structure breaks
            for (const AltCycle& c : d.cycles) {
                CHECK(c.edges.size() % 2 == 0);
                CHECK(c.edges.size() == c.verts.size());
            }
        }
}

TEST_CASE("reorientation argument: all-planar families take the area-law branch") {
    WeighResult wr = weigh(gen_planar_grid(2, 4, 3, 100), {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() >= 2);
    auto d = sym_diff_decompose(wr.graph, pms[0], pms[1]);
    auto r = proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, d);
    CHECK(r.pass);
    CHECK(r.planar_branch);
    for (const Int& w : r.cycle_wcomb) CHECK(w != 0);
}

TEST_CASE("reorientation argument on one cycle crossing T1 twice") {
    WeighResult wr = weigh(u4(), {});
    auto pms = enumerate_pms(wr.graph);
    auto d = sym_diff_decompose(wr.graph, pms[0], pms[1]);
    auto r = proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, d);
    CHECK(r.pass);
    CHECK_FALSE(r.planar_branch);
    CHECK(r.tau_parity_odd);
    CHECK(r.heads_pair_tails);
    CHECK(r.step2_directed);
    CHECK(r.chain_inequality);
    // Step 1 gives +1 to the odd edge and -2 to the even one.
    CHECK(r.w_side_total == -1);
    CHECK(r.some_wcomb_nonzero);
}

TEST_CASE("reorientation argument on two cycles each crossing T1 once") {
    // 12 vertices: two disjoint hexagons, each with one crossing edge.
    EmbeddedGraph g = gen_torus_cycles(
        {CycleSpec{6, {{1, {{1, false}}}}}, CycleSpec{6, {{1, {{1, false}}}}}});
    WeighResult wr = weigh(g, {});
    auto pms = enumerate_pms(wr.graph);
    REQUIRE(pms.size() == 4);
    // take the pair whose difference is both full cycles
    auto part = partition_classes(pms, 1);
    bool found = false;
    for (const auto& [bits, idxs] : part.classes) {
        for (std::size_t a = 0; a < idxs.size(); ++a)
            for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                auto d = sym_diff_decompose(wr.graph, pms[static_cast<std::size_t>(idxs[a])],
                                            pms[static_cast<std::size_t>(idxs[b])]);
                if (d.cycles.size() != 2) continue;
                CHECK(set_signature(wr.graph, d.all_edges()).is_zero());
                auto r = proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, d);
                CHECK(r.pass);
                CHECK(r.w_side_total != 0);
                found = true;
            }
    }
    CHECK(found);
}

TEST_CASE("interleaved boundary crossings surface as a finding, side-by-side ones pass") {
    auto make = [] {
        return gen_torus_cycles({CycleSpec{4, {{1, {{1, false}}}, {3, {{1, true}}}}},
                                 CycleSpec{4, {{1, {{1, false}}}, {3, {{1, true}}}}}});
    };
    auto full_family_check = [](const EmbeddedGraph& g) {
        WeighResult wr = weigh(g, {});
        auto pms = enumerate_pms(wr.graph);
        auto part = partition_classes(pms, 1);
        std::optional<ProofCheckResult> out;
        for (const auto& [bits, idxs] : part.classes)
            for (std::size_t a = 0; a < idxs.size(); ++a)
                for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                    auto d = sym_diff_decompose(wr.graph, pms[static_cast<std::size_t>(idxs[a])],
                                                pms[static_cast<std::size_t>(idxs[b])]);
                    if (d.cycles.size() == 2)
                        out = proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, d);
                }
        REQUIRE(out.has_value());
        return *out;
    };
    // Two U-cycles poking through the pair-1 seam one after the other: fine.
    CHECK(full_family_check(make()).pass);
    // Interleaving their boundary crossings cannot come from disjoint drawn
    // cycles; the tau parity check reports it instead of repairing it.
    EmbeddedGraph bad = make();
    std::swap(bad.side_cross[0][1], bad.side_cross[0][2]);
    bad.side_cross[2].assign(bad.side_cross[0].rbegin(), bad.side_cross[0].rend());
    validate(bad);
    auto pr = full_family_check(bad);
    CHECK_FALSE(pr.pass);
    CHECK_FALSE(pr.tau_parity_odd);
}

TEST_CASE("proof check rejects nonzero-signature families") {
    WeighResult wr = weigh(gen_torus_hexagon_tie(), {});
    auto pms = enumerate_pms(wr.graph);
    auto d = sym_diff_decompose(wr.graph, pms[0], pms[1]);  // classes differ: signature "10"
    CHECK_THROWS_WITH_AS(proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, d),
                         doctest::Contains("not zero"), std::invalid_argument);
}

TEST_CASE("global minimum count stays within 2^2g") {
    SUBCASE("genus 0") {
        WeighResult wr = weigh(gen_planar_grid(2, 4, 7, 95), {});
        auto r = check_global_bound(wr.graph, enumerate_pms(wr.graph), wr.wcomb_und);
        CHECK(r.pass);
        CHECK(r.bound == 1);
        CHECK(r.count <= 1);
    }
    SUBCASE("genus 1") {
        for (unsigned seed : {1u, 6u}) {
            WeighResult wr = weigh(normalize(gen_torus_grid(4, 4, seed, 80)).graph, {});
            auto r = check_global_bound(wr.graph, enumerate_pms(wr.graph), wr.wcomb_und);
            CHECK(r.pass);
            CHECK(r.bound == 4);
        }
    }
}

TEST_CASE("isolation reports") {
    SUBCASE("unique matching: every member isolates") {
        EmbeddedGraph g = k2();
        WeighResult wr = weigh(g, {FamilyMode::constructive, false, 24});
        auto rep = check_isolation(wr.graph, enumerate_pms(wr.graph), wr.family);
        CHECK(rep.pass());
        for (const MemberIsolation& m : rep.members) CHECK(m.achievers == 1);
    }
    SUBCASE("K33 on the torus gets isolated by some member") {
        WeighResult wr = weigh(normalize(gen_k33_torus()).graph, {});
        auto rep = check_isolation(wr.graph, enumerate_pms(wr.graph), wr.family);
        CHECK(rep.pass());
        CHECK(rep.witness_prime.has_value());
    }
    SUBCASE("no matchings is vacuous") {
        WeighResult wr = weigh(gen_planar_grid(3, 3, 2, 100), {});
        auto rep = check_isolation(wr.graph, enumerate_pms(wr.graph), wr.family);
        CHECK(rep.vacuous);
        CHECK(rep.pass());
    }
}
