#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isomatch/embed.hpp"
#include "isomatch/enumerate.hpp"
#include "isomatch/ints.hpp"
#include "isomatch/normalize.hpp"
#include "isomatch/schema.hpp"

namespace isomatch {

// Exact edge weighting. Directed semantics: the stored value applies to the
// edge walked u->v; the reverse walk weighs the negation (skew-symmetry).
struct WeightFunction {
    std::string name;
    bool directed = true;
    std::vector<Int> val;  // [1..m], index 0 unused

    const Int& operator()(EdgeId e) const {
        if (e < 1 || e >= static_cast<EdgeId>(val.size())) throw std::out_of_range("weight: unknown edge id");
        return val[static_cast<std::size_t>(e)];
    }

    Int of_set(const std::vector<EdgeId>& ids) const {
        Int s = 0;
        for (EdgeId e : ids) s += (*this)(e);
        return s;
    }
    Int of_matching(const Matching& m) const { return of_set(m.edges); }
    Int of_walk(const DirectedWalk& w) const {
        Int s = 0;
        for (const Step& st : w) s += st.forward ? (*this)(st.edge) : Int(-(*this)(st.edge));
        return s;
    }
};

inline WeightFunction to_undirected(const WeightFunction& w) {
    WeightFunction u = w;
    u.directed = false;
    u.name += "^und";
    return u;
}

// --- orientation -----------------------------------------------------------

// Computes a 2-coloring by graph search when no partition is declared.
inline std::vector<Part> bipartition(const EmbeddedGraph& g) {
    if (g.partition) return *g.partition;
    std::vector<int> color(static_cast<std::size_t>(g.n) + 1, -1);
    for (VertexId s = 1; s <= g.n; ++s) {
        if (color[static_cast<std::size_t>(s)] != -1) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::vector<VertexId> stack{s};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId eid : g.rot(v)) {
                VertexId w = g.edge(eid).other(v);
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    throw std::runtime_error("graph is not bipartite (odd cycle through vertex " +
                                             std::to_string(w) + ")");
                }
            }
        }
    }
    std::vector<Part> p(static_cast<std::size_t>(g.n) + 1, Part::L);
    for (VertexId v = 1; v <= g.n; ++v) p[static_cast<std::size_t>(v)] = color[static_cast<std::size_t>(v)] == 0 ? Part::L : Part::R;
    return p;
}

// Stores every edge in its L->R direction (crossing flags follow the swap).
inline EmbeddedGraph orient_bipartite(const EmbeddedGraph& g) {
    EmbeddedGraph out = g;
    out.partition = bipartition(g);
    for (Edge& e : out.edges)
        if (out.part(e.u) == Part::R) e = e.reversed();
    return out;
}

// --- sigma order and w_side -------------------------------------------------

// Crossing edges indexed 1..k along the clockwise boundary walk over the
// unprimed sides T_1..T_2g, starting at the tail of T_1. Each edge appears
// exactly once (it crosses exactly one pair after normalization).
struct SigmaEntry {
    EdgeId edge = 0;
    int index = 0;
    bool tail_on_unprimed = false;  // stored tail u incident on T_j
};

struct SigmaOrder {
    std::vector<SigmaEntry> entries;
    std::map<EdgeId, int> pos;  // edge -> entries index

    const SigmaEntry* find(EdgeId e) const {
        auto it = pos.find(e);
        return it == pos.end() ? nullptr : &entries[static_cast<std::size_t>(it->second)];
    }
};

inline SigmaOrder sigma_order(const EmbeddedGraph& g) {
    if (!g.is_normalized())
        throw std::invalid_argument("sigma_order: graph must be normalized first");
    SigmaOrder sigma;
    int idx = 0;
    for (std::size_t i = 0; i < g.sides.size(); ++i) {
        if (g.sides[i].primed) continue;
        for (const CrossRef& r : g.side_cross[i]) {
            const Edge& e = g.edge(r.edge);
            sigma.pos[r.edge] = static_cast<int>(sigma.entries.size());
            sigma.entries.push_back({r.edge, ++idx, e.crossings[0].unprimed_first});
        }
    }
    return sigma;
}

// +-index weight: +i when the stored tail sits on an unprimed side, -i when
// the head does; 0 on planar edges.
inline Int w_side_value(const SigmaOrder& sigma, EdgeId e) {
    const SigmaEntry* s = sigma.find(e);
    if (!s) return 0;
    return s->tail_on_unprimed ? Int(s->index) : Int(-s->index);
}

inline WeightFunction make_w_side(const EmbeddedGraph& g, const SigmaOrder& sigma) {
    WeightFunction w{"w_side", true, std::vector<Int>(static_cast<std::size_t>(g.num_edges()) + 1, Int(0))};
    for (const SigmaEntry& s : sigma.entries) w.val[static_cast<std::size_t>(s.edge)] = w_side_value(sigma, s.edge);
    return w;
}

inline WeightFunction make_w_pl(const EmbeddedGraph& g, const GridEmbedding& emb) {
    WeightFunction w{"w_pl", true, std::vector<Int>(static_cast<std::size_t>(g.num_edges()) + 1, Int(0))};
    for (const Edge& e : g.edges) w.val[static_cast<std::size_t>(e.id)] = w_pl(emb, e.id);
    return w;
}

// --- combination ------------------------------------------------------------

inline Int sum_abs(const WeightFunction& w) {
    Int s = 0;
    for (std::size_t i = 1; i < w.val.size(); ++i) s += abs(w.val[i]);
    return s;
}

// scale must strictly dominate every subset sum of the low-order part, i.e.
// exceed 2 * sum |low|; then w(E1) == w(E2) iff both components agree.
inline WeightFunction combine_scaled(const std::string& name, const WeightFunction& high,
                                     const WeightFunction& low, const Int& scale) {
    Int bound = 2 * sum_abs(low);
    if (scale <= bound)
        throw std::invalid_argument(name + ": scale too small (<= 2*sum|" + low.name + "| = " +
                                    to_string(bound) + ")");
    WeightFunction w{name, high.directed, std::vector<Int>(high.val.size(), Int(0))};
    for (std::size_t i = 1; i < w.val.size(); ++i) w.val[i] = high.val[i] * scale + low.val[i];
    return w;
}

inline WeightFunction make_w_comb(const EmbeddedGraph& g, const GridEmbedding& emb, const SigmaOrder& sigma,
                                  const Int& scale) {
    return combine_scaled("w_comb", make_w_pl(g, emb), make_w_side(g, sigma), scale);
}

// --- w_b and FKS hashing ------------------------------------------------------

inline Int w_b_value(const EmbeddedGraph& g, int edge_index) {
    if (edge_index < 1 || edge_index > g.num_edges()) throw std::out_of_range("w_b: edge index out of range");
    return pow2(static_cast<unsigned long>(edge_index));
}

inline WeightFunction make_w_b(const EmbeddedGraph& g) {
    WeightFunction w{"w_b", false, std::vector<Int>(static_cast<std::size_t>(g.num_edges()) + 1, Int(0))};
    for (int i = 1; i <= g.num_edges(); ++i) w.val[static_cast<std::size_t>(i)] = w_b_value(g, i);
    return w;
}

struct FksBudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime_ul(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Starting budget for the O(log n + log k) prime bound; doubled on exhaustion.
inline int fks_bit_budget(std::size_t k, std::size_t maxbits) {
    double v = std::max<double>(1.0, static_cast<double>(k) * static_cast<double>(k) * static_cast<double>(maxbits));
    return static_cast<int>(std::ceil(std::log2(v))) + 4;
}

// Smallest prime within the bit budget leaving all values in distinct
// residue classes; equivalently dividing no pairwise difference.
inline Int find_fks_prime(const std::vector<Int>& values, int bit_budget) {
    std::set<Int> uniq(values.begin(), values.end());
    if (uniq.size() != values.size()) throw std::invalid_argument("find_fks_prime: values must be distinct");
    for (unsigned long p = 2;; ++p) {
        if (bit_length(Int(p)) > static_cast<std::size_t>(bit_budget))
            throw FksBudgetExhausted("no prime within " + std::to_string(bit_budget) + " bits separates the values");
        if (!is_prime_ul(p)) continue;
        std::set<unsigned long> residues;
        bool ok = true;
        for (const Int& v : values) {
            Int r = v % p;
            if (r < 0) r += p;
            if (!residues.insert(r.get_ui()).second) {
                ok = false;
                break;
            }
        }
        if (ok) return Int(p);
    }
}

// --- the isolating family -----------------------------------------------------

struct FamilyMember {
    Int prime;
    WeightFunction w;  // w_p = w_comb^und * S_outer + (w_b mod p)
};

struct WeightFamily {
    WeightFunction base;  // w_comb^und
    std::vector<FamilyMember> members;
    Int scale_inner = 0, scale_outer = 0;
    bool vacuous = false;  // oracle-assisted mode found no perfect matching
    int fks_bit_budget = 0;
    int fks_doublings = 0;
};

enum class FamilyMode { constructive, oracle_assisted };

struct WeighOptions {
    FamilyMode mode = FamilyMode::oracle_assisted;
    bool tight_scales = false;
    int enum_limit = 24;
};

namespace weights_detail {

inline WeightFunction make_w_fks(const EmbeddedGraph& g, const Int& p) {
    WeightFunction w{"w_fks[p=" + to_string(p) + "]", false,
                     std::vector<Int>(static_cast<std::size_t>(g.num_edges()) + 1, Int(0))};
    for (int i = 1; i <= g.num_edges(); ++i) {
        Int r = w_b_value(g, i) % p;
        if (r < 0) r += p;
        w.val[static_cast<std::size_t>(i)] = r;
    }
    return w;
}

}  // namespace weights_detail

// Everything the weighting pipeline produces for one instance.
struct WeighResult {
    EmbeddedGraph graph;  // normalized input, stored L->R
    GridEmbedding emb;
    SigmaOrder sigma;
    WeightFunction wpl, wside, wcomb, wcomb_und, wb;
    WeightFamily family;
};

// Full pipeline on a normalized bipartite graph: orient, embed, sigma,
// w_comb, then the FKS family.
inline WeighResult weigh(const EmbeddedGraph& normalized, WeighOptions opt = {}) {
    if (!normalized.is_normalized()) throw std::invalid_argument("weigh: graph must be normalized first");
    WeighResult r;
    r.graph = orient_bipartite(normalized);
    r.emb = embed_planar_subgraph(r.graph);
    r.sigma = sigma_order(r.graph);
    r.wpl = make_w_pl(r.graph, r.emb);
    r.wside = make_w_side(r.graph, r.sigma);

    const EmbeddedGraph& g = r.graph;
    Int n10 = ipow(static_cast<unsigned long>(std::max(g.n, 2)), 10);
    Int s_inner = opt.tight_scales ? Int(1 + 2 * sum_abs(r.wside)) : n10;
    r.wcomb = combine_scaled("w_comb", r.wpl, r.wside, s_inner);
    r.wcomb_und = to_undirected(r.wcomb);
    r.wb = make_w_b(g);

    WeightFamily& fam = r.family;
    fam.base = r.wcomb_und;
    fam.scale_inner = s_inner;

    auto add_member = [&](const Int& p) {
        WeightFunction wfks = weights_detail::make_w_fks(g, p);
        if (fam.scale_outer == 0) {
            Int tight = 1 + 2 * sum_abs(wfks);
            fam.scale_outer = opt.tight_scales ? tight : n10;
        }
        FamilyMember m{p, combine_scaled("w_p[p=" + to_string(p) + "]", r.wcomb_und, wfks, fam.scale_outer)};
        m.w.directed = false;
        fam.members.push_back(std::move(m));
    };

    if (opt.mode == FamilyMode::oracle_assisted) {
        auto pms = enumerate_pms(g, opt.enum_limit);
        if (pms.empty()) {
            fam.vacuous = true;
            fam.scale_outer = opt.tight_scales ? Int(1) : n10;
            return r;
        }
        Int best = r.wcomb_und.of_matching(pms[0]);
        for (const Matching& m : pms) best = std::min(best, r.wcomb_und.of_matching(m));
        std::vector<Int> values;
        for (const Matching& m : pms)
            if (r.wcomb_und.of_matching(m) == best) values.push_back(r.wb.of_matching(m));
        std::size_t maxbits = 1;
        for (const Int& v : values) maxbits = std::max(maxbits, bit_length(v));
        fam.fks_bit_budget = fks_bit_budget(values.size(), maxbits);
        for (;;) {
            try {
                add_member(find_fks_prime(values, fam.fks_bit_budget));
                break;
            } catch (const FksBudgetExhausted&) {
                fam.fks_bit_budget *= 2;
                fam.fks_doublings += 1;
                if (fam.fks_doublings > 8) throw;
            }
        }
    } else {
        // One member per prime inside the a-priori budget: k candidate
        // minima bounded by 2^2g, values below 2^(m+1).
        double k = std::pow(2.0, 2 * std::min(g.genus, 15));
        fam.fks_bit_budget = fks_bit_budget(static_cast<std::size_t>(k), static_cast<std::size_t>(g.num_edges()) + 1);
        // Outer scale must cover every member; w_fks < p <= 2^budget.
        if (opt.tight_scales) {
            Int max_tight = 1;
            for (unsigned long p = 2; bit_length(Int(p)) <= static_cast<std::size_t>(fam.fks_bit_budget); ++p)
                if (is_prime_ul(p)) max_tight = std::max(max_tight, Int(1 + 2 * sum_abs(weights_detail::make_w_fks(g, Int(p)))));
            fam.scale_outer = max_tight;
        } else {
            fam.scale_outer = n10;
        }
        for (unsigned long p = 2; bit_length(Int(p)) <= static_cast<std::size_t>(fam.fks_bit_budget); ++p)
            if (is_prime_ul(p)) add_member(Int(p));
        if (fam.members.empty()) throw std::logic_error("constructive family is empty");
    }
    return r;
}

// Family construction alone, when the rest of the pipeline is not needed.
inline WeightFamily build_family(const EmbeddedGraph& normalized, FamilyMode mode, bool tight_scales = false,
                                 int enum_limit = 24) {
    return weigh(normalized, {mode, tight_scales, enum_limit}).family;
}

// --- weight transfer across normalization --------------------------------------

// Induced original-edge weights: w(M_norm) = offset + sum of induced weights
// over the corresponding original matching, so minima transfer exactly.
struct PulledBackWeights {
    WeightFunction induced;
    Int offset = 0;
};

inline PulledBackWeights pull_back_weights(const EmbeddedGraph& original, const CorrespondenceMap& map,
                                           const WeightFunction& w) {
    PulledBackWeights out;
    out.induced = WeightFunction{w.name + "<-pullback", false,
                                 std::vector<Int>(static_cast<std::size_t>(original.num_edges()) + 1, Int(0))};
    for (EdgeId e = 1; e <= original.num_edges(); ++e) {
        Int odd = 0, even = 0;
        const auto& path = map.path(e);
        for (std::size_t s = 0; s < path.size(); ++s) (s % 2 == 0 ? odd : even) += w(path[s]);
        out.induced.val[static_cast<std::size_t>(e)] = odd - even;
        out.offset += even;
    }
    return out;
}

}  // namespace isomatch
