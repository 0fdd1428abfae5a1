#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isomatch/enumerate.hpp"
#include "isomatch/weights.hpp"

namespace isomatch {

// --- signature classes -------------------------------------------------------

// Matchings grouped by signature (class A_i holds signature bin(i)).
struct ClassPartition {
    int genus = 0;
    std::map<std::uint64_t, std::vector<int>> classes;  // signature bits -> indices
};

inline ClassPartition partition_classes(const std::vector<Matching>& ms, int genus) {
    ClassPartition p{genus, {}};
    for (std::size_t i = 0; i < ms.size(); ++i) p.classes[ms[i].sig.bits].push_back(static_cast<int>(i));
    return p;
}

struct ClassMinima {
    Signature sig;
    Int min_weight;
    std::vector<int> achievers;  // indices into the matching list
};

inline std::vector<ClassMinima> class_minima(const ClassPartition& p, const std::vector<Matching>& ms,
                                             const WeightFunction& w) {
    std::vector<ClassMinima> out;
    for (const auto& [bits, idxs] : p.classes) {
        ClassMinima cm{Signature{2 * p.genus, bits}, 0, {}};
        for (int i : idxs) {
            Int wt = w.of_matching(ms[static_cast<std::size_t>(i)]);
            if (cm.achievers.empty() || wt < cm.min_weight) {
                cm.min_weight = wt;
                cm.achievers = {i};
            } else if (wt == cm.min_weight) {
                cm.achievers.push_back(i);
            }
        }
        out.push_back(std::move(cm));
    }
    return out;
}

// --- symmetric difference ------------------------------------------------------

// One alternating cycle of E_{M1 delta M2}: edges in cyclic order, verts[i]
// the vertex entered before edges[i], from_m1[i] tagging the source matching.
struct AltCycle {
    std::vector<EdgeId> edges;
    std::vector<VertexId> verts;
    std::vector<char> from_m1;

    std::vector<EdgeId> side(bool m1) const {
        std::vector<EdgeId> out;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (static_cast<bool>(from_m1[i]) == m1) out.push_back(edges[i]);
        return out;
    }
};

struct SymDiffDecomposition {
    std::vector<AltCycle> cycles;

    std::vector<EdgeId> all_edges() const {
        std::vector<EdgeId> out;
        for (const AltCycle& c : cycles) out.insert(out.end(), c.edges.begin(), c.edges.end());
        return out;
    }
};

// Decomposes E_{M1 delta M2} into vertex-disjoint even alternating cycles.
// Structural facts (degree two everywhere, alternation, even length) are
// verified, not assumed.
inline SymDiffDecomposition sym_diff_decompose(const EmbeddedGraph& g, const Matching& m1, const Matching& m2) {
    std::set<EdgeId> s1(m1.edges.begin(), m1.edges.end()), s2(m2.edges.begin(), m2.edges.end());
    std::vector<EdgeId> diff;
    for (EdgeId e : m1.edges)
        if (!s2.count(e)) diff.push_back(e);
    for (EdgeId e : m2.edges)
        if (!s1.count(e)) diff.push_back(e);
    std::sort(diff.begin(), diff.end());

    std::map<VertexId, std::vector<EdgeId>> inc;
    for (EdgeId e : diff) {
        inc[g.edge(e).u].push_back(e);
        inc[g.edge(e).v].push_back(e);
    }
    for (const auto& [v, es] : inc)
        if (es.size() != 2)
            throw std::logic_error("symmetric difference is not a disjoint union of cycles at vertex " +
                                   std::to_string(v));

    SymDiffDecomposition out;
    std::set<EdgeId> used;
    for (EdgeId start : diff) {
        if (used.count(start)) continue;
        AltCycle cyc;
        VertexId at = std::min(g.edge(start).u, g.edge(start).v);
        VertexId origin = at;
        EdgeId e = start;
        do {
            used.insert(e);
            cyc.verts.push_back(at);
            cyc.edges.push_back(e);
            cyc.from_m1.push_back(s1.count(e) ? 1 : 0);
            at = g.edge(e).other(at);
            const auto& cand = inc.at(at);
            e = cand[0] == e ? cand[1] : cand[0];
        } while (at != origin);
        if (cyc.edges.size() % 2 != 0) throw std::logic_error("alternating cycle of odd length");
        for (std::size_t i = 0; i < cyc.edges.size(); ++i)
            if (cyc.from_m1[i] == cyc.from_m1[(i + 1) % cyc.edges.size()])
                throw std::logic_error("cycle does not alternate between the matchings");
        out.cycles.push_back(std::move(cyc));
    }
    return out;
}

// --- Lemma checks ----------------------------------------------------------------

// Signature of the symmetric difference of two same-class matchings is zero.
struct Lemma2Result {
    bool pass = false;
    Signature diff_sig;
};

inline Lemma2Result check_lemma2(const EmbeddedGraph& g, const Matching& m1, const Matching& m2) {
    if (!(m1.sig == m2.sig))
        throw std::invalid_argument("check_lemma2: matchings are from different classes (" + m1.sig.str() +
                                    " vs " + m2.sig.str() + ")");
    std::set<EdgeId> s1(m1.edges.begin(), m1.edges.end()), s2(m2.edges.begin(), m2.edges.end());
    std::vector<EdgeId> diff;
    for (EdgeId e : m1.edges)
        if (!s2.count(e)) diff.push_back(e);
    for (EdgeId e : m2.edges)
        if (!s1.count(e)) diff.push_back(e);
    Signature s = set_signature(g, diff);
    return Lemma2Result{s.is_zero(), s};
}

// At most one minimum-weight perfect matching per signature class.
struct Lemma1Result {
    bool pass = false;
    // Populated on failure: a violating pair and its cycle decomposition.
    Signature sig;
    std::optional<Matching> m1, m2;
    std::optional<SymDiffDecomposition> counterexample;
};

inline Lemma1Result check_lemma1(const EmbeddedGraph& g, const std::vector<Matching>& ms,
                                 const WeightFunction& w) {
    Lemma1Result res;
    res.sig = Signature::zero(2 * g.genus);
    auto part = partition_classes(ms, g.genus);
    for (const ClassMinima& cm : class_minima(part, ms, w)) {
        if (cm.achievers.size() <= 1) continue;
        res.pass = false;
        res.sig = cm.sig;
        res.m1 = ms[static_cast<std::size_t>(cm.achievers[0])];
        res.m2 = ms[static_cast<std::size_t>(cm.achievers[1])];
        res.counterexample = sym_diff_decompose(g, *res.m1, *res.m2);
        return res;
    }
    res.pass = true;
    return res;
}

// Claim: two minimum matchings of one class split every cycle of their
// symmetric difference into equal-weight halves; otherwise the exchange
// produces a strictly lighter perfect matching (returned as witness).
struct Claim1Result {
    bool pass = false;
    SymDiffDecomposition decomp;
    int bad_cycle = -1;
    std::optional<Matching> lighter;  // the exchange witness on failure
    Int lighter_weight;
};

inline Claim1Result check_claim1(const EmbeddedGraph& g, const Matching& m1, const Matching& m2,
                                 const WeightFunction& w) {
    if (!(m1.sig == m2.sig)) throw std::invalid_argument("check_claim1: matchings are from different classes");
    Claim1Result res;
    res.decomp = sym_diff_decompose(g, m1, m2);
    for (std::size_t i = 0; i < res.decomp.cycles.size(); ++i) {
        const AltCycle& c = res.decomp.cycles[i];
        Int w1 = w.of_set(c.side(true)), w2 = w.of_set(c.side(false));
        if (w1 == w2) continue;
        res.bad_cycle = static_cast<int>(i);
        // Exchange the heavier half out of its matching.
        const Matching& donor = w1 > w2 ? m1 : m2;
        auto heavy = c.side(w1 > w2);
        auto light = c.side(!(w1 > w2));
        std::set<EdgeId> next(donor.edges.begin(), donor.edges.end());
        for (EdgeId e : heavy) next.erase(e);
        for (EdgeId e : light) next.insert(e);
        res.lighter = make_matching(g, std::vector<EdgeId>(next.begin(), next.end()));
        if (!is_perfect(g, *res.lighter)) throw std::logic_error("exchange did not produce a perfect matching");
        res.lighter_weight = w.of_matching(*res.lighter);
        res.pass = false;
        return res;
    }
    res.pass = true;
    return res;
}

// Number of globally minimum matchings is at most 2^2g.
struct GlobalBoundResult {
    bool pass = false;
    Int min_weight;
    int count = 0;
    long long bound = 0;
};

inline GlobalBoundResult check_global_bound(const EmbeddedGraph& g, const std::vector<Matching>& ms,
                                            const WeightFunction& w) {
    GlobalBoundResult res;
    res.bound = 1LL << (2 * g.genus);
    if (ms.empty()) {
        res.pass = true;
        return res;
    }
    res.min_weight = w.of_matching(ms[0]);
    for (const Matching& m : ms) res.min_weight = std::min(res.min_weight, w.of_matching(m));
    for (const Matching& m : ms)
        if (w.of_matching(m) == res.min_weight) ++res.count;
    res.pass = res.count <= res.bound;
    return res;
}

// --- the reorientation argument ----------------------------------------------------

// Executes the proof construction on a zero-signature cycle family: Step 1
// orients the crossing edges alternately along the boundary order, Step 2
// chains the planar paths head-to-tail, then the w_side sum over the
// resulting directed cycles must be nonzero (so some cycle has nonzero
// w_comb). All-planar families take the area-law branch instead.
struct ProofCheckResult {
    bool pass = false;
    bool planar_branch = false;
    bool tau_parity_odd = true;    // |i-j| odd for every planar path of the family
    bool heads_pair_tails = true;  // each planar path joins one head to one tail
    bool step2_directed = true;    // Step 2 produced directed cycles
    bool chain_inequality = true;  // w_side(e_i) < -w_side(e_{i+1}) for odd i
    Int w_side_total;
    std::vector<Int> cycle_wside, cycle_wcomb;
    bool some_wcomb_nonzero = false;
    std::string detail;
};

inline ProofCheckResult proof_orientation_check(const EmbeddedGraph& g, const GridEmbedding& emb,
                                                const SigmaOrder& sigma, const WeightFunction& wcomb,
                                                const SymDiffDecomposition& decomp) {
    std::vector<EdgeId> all = decomp.all_edges();
    if (!set_signature(g, all).is_zero())
        throw std::invalid_argument("proof_orientation_check: cycle family signature is not zero");

    std::vector<EdgeId> crossing;
    for (EdgeId e : all)
        if (!g.edge(e).is_planar()) crossing.push_back(e);

    ProofCheckResult res;
    if (crossing.empty()) {
        // Area-law branch: every cycle is planar and weighs +-2*Area != 0.
        res.planar_branch = true;
        for (const AltCycle& c : decomp.cycles) {
            DirectedWalk walk;
            VertexId at = c.verts[0];
            for (std::size_t i = 0; i < c.edges.size(); ++i) {
                const Edge& e = g.edge(c.edges[i]);
                walk.push_back({c.edges[i], e.u == at});
                at = e.other(at);
            }
            Int w = cycle_area_check(g, emb, walk);  // throws if the area law fails
            res.cycle_wside.push_back(0);
            res.cycle_wcomb.push_back(wcomb.of_walk(walk));
            if (w == 0) throw std::logic_error("planar cycle of zero area");
        }
        res.some_wcomb_nonzero =
            std::any_of(res.cycle_wcomb.begin(), res.cycle_wcomb.end(), [](const Int& v) { return v != 0; });
        res.pass = res.some_wcomb_nonzero &&
                   std::all_of(res.cycle_wcomb.begin(), res.cycle_wcomb.end(), [](const Int& v) { return v != 0; });
        res.w_side_total = 0;
        return res;
    }

    // Crossing edges must be pairwise endpoint-disjoint (normalize first).
    std::set<VertexId> ends;
    for (EdgeId e : crossing)
        for (VertexId v : {g.edge(e).u, g.edge(e).v})
            if (!ends.insert(v).second)
                throw std::invalid_argument("proof_orientation_check: crossing edges share endpoint " +
                                            std::to_string(v));

    // Local index 1..2l in sigma order.
    std::sort(crossing.begin(), crossing.end(), [&](EdgeId a, EdgeId b) {
        const SigmaEntry* sa = sigma.find(a);
        const SigmaEntry* sb = sigma.find(b);
        if (!sa || !sb) throw std::invalid_argument("crossing edge missing from sigma order");
        return sa->index < sb->index;
    });
    if (crossing.size() % 2 != 0) throw std::logic_error("zero-signature family with odd crossing count");

    std::map<EdgeId, int> local;  // 1-based
    for (std::size_t i = 0; i < crossing.size(); ++i) local[crossing[i]] = static_cast<int>(i) + 1;

    // Step 1: odd local index points away from the unprimed endpoint.
    // forward == traversal in the stored direction.
    std::map<EdgeId, bool> step1_forward;
    for (EdgeId e : crossing) {
        bool unprimed_is_tail = g.edge(e).crossings[0].unprimed_first;
        bool odd = local[e] % 2 == 1;
        step1_forward[e] = odd ? unprimed_is_tail : !unprimed_is_tail;
    }

    // X: boundary-ordered endpoint occurrences of the family's crossing edges.
    std::map<VertexId, int> xpos;
    {
        int pos = 0;
        for (std::size_t i = 0; i < g.sides.size(); ++i)
            for (const CrossRef& r : g.side_cross[i]) {
                if (!local.count(r.edge)) continue;
                const Edge& e = g.edge(r.edge);
                VertexId incident = g.sides[i].primed ? e.other(e.unprimed_endpoint()) : e.unprimed_endpoint();
                xpos[incident] = ++pos;
            }
    }

    // Walk each cycle, cutting it at crossing edges into planar arcs, and
    // assemble the Step 2 orientation.
    res.w_side_total = 0;
    WeightFunction wside = make_w_side(g, sigma);
    for (const AltCycle& c : decomp.cycles) {
        std::size_t len = c.edges.size();
        auto is_cross = [&](std::size_t i) { return local.count(c.edges[i]) > 0; };
        std::vector<std::size_t> cross_at;
        for (std::size_t i = 0; i < len; ++i)
            if (is_cross(i)) cross_at.push_back(i);
        if (cross_at.empty()) {
            // Planar cycle inside a mixed family: any traversal direction.
            DirectedWalk walk;
            VertexId at = c.verts[0];
            for (std::size_t i = 0; i < len; ++i) {
                const Edge& e = g.edge(c.edges[i]);
                walk.push_back({c.edges[i], e.u == at});
                at = e.other(at);
            }
            res.cycle_wside.push_back(0);
            res.cycle_wcomb.push_back(wcomb.of_walk(walk));
            continue;
        }

        // Directions per edge position, then verify head-to-tail chaining.
        std::vector<bool> fwd(len, true);
        // verts[i] is the vertex before edge i in the reference traversal.
        auto ref_forward = [&](std::size_t i) { return g.edge(c.edges[i]).u == c.verts[i]; };
        for (std::size_t ci = 0; ci < cross_at.size(); ++ci) {
            std::size_t i = cross_at[ci];
            fwd[i] = step1_forward[c.edges[i]];
            // Planar arc from the end of this crossing edge to the start of
            // the next one, following the reference cyclic order.
            std::size_t j = cross_at[(ci + 1) % cross_at.size()];
            // Step 2: the planar arc between this crossing edge and the next
            // one chains onto whatever direction Step 1 chose here; the
            // degree check below catches any inconsistency.
            bool along_ref = fwd[i] == ref_forward(i);
            std::size_t k = (i + 1) % len;
            while (k != j) {
                fwd[k] = along_ref ? ref_forward(k) : !ref_forward(k);
                k = (k + 1) % len;
            }
        }

        // tau pairing and head/tail compatibility per planar arc.
        for (std::size_t ci = 0; ci < cross_at.size(); ++ci) {
            std::size_t i = cross_at[ci];
            std::size_t j = cross_at[(ci + 1) % cross_at.size()];
            // Arc endpoints in the reference direction: after edge i, before edge j.
            VertexId a = c.verts[(i + 1) % len];
            VertexId b = c.verts[j];
            if (!xpos.count(a) || !xpos.count(b)) throw std::logic_error("arc endpoint missing from X");
            if ((std::abs(xpos[a] - xpos[b]) % 2) != 1) res.tau_parity_odd = false;
            // Step-1 heads: head of edge i, and head of edge j.
            VertexId head_i = step1_forward[c.edges[i]] ? g.edge(c.edges[i]).v : g.edge(c.edges[i]).u;
            VertexId tail_j = step1_forward[c.edges[j]] ? g.edge(c.edges[j]).u : g.edge(c.edges[j]).v;
            bool head_at_a = head_i == a;
            bool tail_at_b = tail_j == b;
            if (head_at_a != tail_at_b) res.heads_pair_tails = false;
        }

        // The directed cycle: in-degree = out-degree = 1 at every vertex.
        DirectedWalk walk;
        for (std::size_t i = 0; i < len; ++i) walk.push_back({c.edges[i], fwd[i]});
        std::map<VertexId, int> indeg, outdeg;
        for (std::size_t i = 0; i < len; ++i) {
            const Edge& e = g.edge(c.edges[i]);
            outdeg[fwd[i] ? e.u : e.v] += 1;
            indeg[fwd[i] ? e.v : e.u] += 1;
        }
        for (VertexId v : c.verts)
            if (indeg[v] != 1 || outdeg[v] != 1) res.step2_directed = false;
        Int ws = wside.of_walk(walk);
        res.cycle_wside.push_back(ws);
        res.cycle_wcomb.push_back(wcomb.of_walk(walk));
        res.w_side_total += ws;
    }

    // Chain inequality under Step-1 orientation: +i for odd i, -(i+1) after.
    for (std::size_t i = 0; i + 1 < crossing.size(); i += 2) {
        Int wi = step1_forward[crossing[i]] ? wside(crossing[i]) : Int(-wside(crossing[i]));
        Int wj = step1_forward[crossing[i + 1]] ? wside(crossing[i + 1]) : Int(-wside(crossing[i + 1]));
        if (!(wi < -wj)) res.chain_inequality = false;
    }

    res.some_wcomb_nonzero =
        std::any_of(res.cycle_wcomb.begin(), res.cycle_wcomb.end(), [](const Int& v) { return v != 0; });
    res.pass = res.tau_parity_odd && res.heads_pair_tails && res.step2_directed && res.chain_inequality &&
               res.w_side_total != 0 && res.some_wcomb_nonzero;
    return res;
}

// --- isolation --------------------------------------------------------------------

struct MemberIsolation {
    Int prime;
    Int min_weight;
    int achievers = 0;
};

struct IsolationReport {
    bool vacuous = false;   // no perfect matching at all
    bool isolated = false;  // some member has a unique minimum
    std::optional<Int> witness_prime;
    std::vector<MemberIsolation> members;

    bool pass() const { return vacuous || isolated; }
};

inline IsolationReport check_isolation(const EmbeddedGraph& g, const std::vector<Matching>& ms,
                                       const WeightFamily& family) {
    (void)g;
    IsolationReport rep;
    if (ms.empty()) {
        rep.vacuous = true;
        return rep;
    }
    for (const FamilyMember& fm : family.members) {
        MemberIsolation mi{fm.prime, fm.w.of_matching(ms[0]), 0};
        for (const Matching& m : ms) mi.min_weight = std::min(mi.min_weight, fm.w.of_matching(m));
        for (const Matching& m : ms)
            if (fm.w.of_matching(m) == mi.min_weight) ++mi.achievers;
        if (mi.achievers == 1 && !rep.isolated) {
            rep.isolated = true;
            rep.witness_prime = fm.prime;
        }
        rep.members.push_back(std::move(mi));
    }
    return rep;
}

}  // namespace isomatch
