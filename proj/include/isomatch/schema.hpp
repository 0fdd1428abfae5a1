#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isomatch/signature.hpp"

namespace isomatch {

using VertexId = int;  // 1..n
using EdgeId = int;    // 1..m

// One traversal of a side pair. Walking the edge curve from endpoint u,
// unprimed_first means the curve leaves the polygon through T_pair (and
// re-enters through T_pair'); otherwise the other way round. Equivalently,
// for a single-crossing edge, u is the endpoint incident on T_pair iff
// unprimed_first holds.
struct Crossing {
    int pair = 0;
    bool unprimed_first = true;
    bool operator==(const Crossing&) const = default;
};

struct EdgeOrigin {
    EdgeId edge = 0;  // pre-normalization edge id
    int segment = 0;  // 1-based position on the subdivision path
    bool operator==(const EdgeOrigin&) const = default;
};

struct Edge {
    EdgeId id = 0;
    VertexId u = 0, v = 0;
    std::vector<Crossing> crossings;  // in curve order from u; empty for planar edges
    std::optional<EdgeOrigin> origin;

    bool is_planar() const { return crossings.empty(); }

    VertexId other(VertexId w) const {
        if (w == u) return v;
        if (w == v) return u;
        throw std::invalid_argument("Edge::other: vertex not an endpoint");
    }

    // Same edge walked from v to u.
    Edge reversed() const {
        Edge r = *this;
        std::swap(r.u, r.v);
        std::reverse(r.crossings.begin(), r.crossings.end());
        for (auto& c : r.crossings) c.unprimed_first = !c.unprimed_first;
        return r;
    }

    // Endpoint incident on the unprimed side (single-crossing edges only).
    VertexId unprimed_endpoint() const {
        if (crossings.size() != 1)
            throw std::logic_error("unprimed_endpoint: edge does not cross exactly one pair");
        return crossings[0].unprimed_first ? u : v;
    }
};

// Sides are stored in clockwise boundary order starting at the tail of T_1:
// T_1, T_2, T_1', T_2', T_3, T_4, T_3', T_4', ...
struct SideRef {
    int pair = 0;
    bool primed = false;
    int tail_corner = 0;  // 1..4g, clockwise
    std::string label() const { return "T" + std::to_string(pair) + (primed ? "'" : ""); }
};

// Reference to the k-th crossing (0-based) of an edge, as listed on a side.
struct CrossRef {
    EdgeId edge = 0;
    int k = 0;
    bool operator==(const CrossRef&) const = default;
};

enum class Part : unsigned char { L, R };

inline Part flip(Part p) { return p == Part::L ? Part::R : Part::L; }

struct EmbeddedGraph {
    int n = 0;
    int genus = 0;
    std::vector<Edge> edges;                        // edge with id i at index i-1
    std::vector<SideRef> sides;                     // 4g entries
    std::vector<std::vector<CrossRef>> side_cross;  // parallel to sides
    std::vector<std::vector<EdgeId>> rotation;      // [v] counter-clockwise, v in 1..n
    std::optional<std::vector<Part>> partition;     // [v], v in 1..n

    int num_edges() const { return static_cast<int>(edges.size()); }

    const Edge& edge(EdgeId id) const {
        if (id < 1 || id > num_edges()) throw std::out_of_range("unknown edge id " + std::to_string(id));
        return edges[static_cast<std::size_t>(id - 1)];
    }
    Edge& edge(EdgeId id) {
        if (id < 1 || id > num_edges()) throw std::out_of_range("unknown edge id " + std::to_string(id));
        return edges[static_cast<std::size_t>(id - 1)];
    }

    const std::vector<EdgeId>& rot(VertexId v) const {
        if (v < 1 || v > n) throw std::out_of_range("unknown vertex id " + std::to_string(v));
        return rotation[static_cast<std::size_t>(v)];
    }

    Part part(VertexId v) const {
        if (!partition) throw std::logic_error("graph has no bipartition");
        return (*partition)[static_cast<std::size_t>(v)];
    }

    int side_index(int pair, bool primed) const {
        for (std::size_t i = 0; i < sides.size(); ++i)
            if (sides[i].pair == pair && sides[i].primed == primed) return static_cast<int>(i);
        throw std::out_of_range("no such side");
    }

    // Every edge crosses at most one pair and no two crossing edges share an
    // endpoint: the form the weight construction assumes.
    bool is_normalized() const {
        std::set<VertexId> cross_ends;
        for (const Edge& e : edges) {
            if (e.crossings.size() > 1) return false;
            if (e.crossings.size() == 1) {
                if (cross_ends.count(e.u) || cross_ends.count(e.v)) return false;
                cross_ends.insert(e.u);
                cross_ends.insert(e.v);
            }
        }
        return true;
    }
};

// --- signatures --------------------------------------------------------

inline Signature edge_signature(const EmbeddedGraph& g, EdgeId id) {
    const Edge& e = g.edge(id);
    Signature s = Signature::zero(2 * g.genus);
    for (const Crossing& c : e.crossings) s.flip_pair(c.pair);  // parity per pair
    return s;
}

inline Signature set_signature(const EmbeddedGraph& g, std::span<const EdgeId> ids) {
    Signature s = Signature::zero(2 * g.genus);
    for (EdgeId id : ids) s ^= edge_signature(g, id);
    return s;
}

inline Signature set_signature(const EmbeddedGraph& g, const std::vector<EdgeId>& ids) {
    return set_signature(g, std::span<const EdgeId>(ids));
}

// --- matchings ----------------------------------------------------------

struct Matching {
    std::vector<EdgeId> edges;  // sorted ascending
    Signature sig;

    bool operator==(const Matching& o) const { return edges == o.edges; }
    bool contains(EdgeId id) const { return std::binary_search(edges.begin(), edges.end(), id); }
};

inline Matching make_matching(const EmbeddedGraph& g, std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    std::set<VertexId> seen;
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        if (!seen.insert(e.u).second || !seen.insert(e.v).second)
            throw std::invalid_argument("matching edges share vertex " + std::to_string(seen.count(e.u) ? e.u : e.v));
    }
    Signature s = set_signature(g, ids);
    return Matching{std::move(ids), s};
}

inline bool is_perfect(const EmbeddedGraph& g, const Matching& m) {
    return static_cast<int>(m.edges.size()) * 2 == g.n;
}

// --- validation ---------------------------------------------------------

namespace detail {

inline void fail(const std::string& what) { throw std::runtime_error("invalid embedded graph: " + what); }

}  // namespace detail

// Checks every structural invariant of the data model. Throws on violation.
inline void validate(const EmbeddedGraph& g) {
    using detail::fail;
    if (g.n < 0 || g.genus < 0) fail("negative size");
    if (g.rotation.size() != static_cast<std::size_t>(g.n) + 1) fail("rotation table size");
    if (g.partition && g.partition->size() != static_cast<std::size_t>(g.n) + 1) fail("partition table size");
    if (g.sides.size() != static_cast<std::size_t>(4 * g.genus)) fail("expected 4g sides");
    if (g.side_cross.size() != g.sides.size()) fail("side crossing-list count");

    // Canonical clockwise side order T_(2k+1), T_(2k+2), T_(2k+1)', T_(2k+2)'.
    for (int i = 0; i < 4 * g.genus; ++i) {
        const SideRef& s = g.sides[static_cast<std::size_t>(i)];
        int block = i / 4, off = i % 4;
        int want_pair = 2 * block + 1 + (off % 2);
        bool want_primed = off >= 2;
        if (s.pair != want_pair || s.primed != want_primed)
            fail("side " + std::to_string(i + 1) + " out of canonical order, expected T" +
                 std::to_string(want_pair) + (want_primed ? "'" : ""));
        if (s.tail_corner != i + 1)
            fail("side " + s.label() + " tail corner must be " + std::to_string(i + 1));
    }

    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edges[static_cast<std::size_t>(i)];
        if (e.id != i + 1) fail("edge ids must be 1..m in order");
        if (e.u < 1 || e.u > g.n || e.v < 1 || e.v > g.n) fail("edge " + std::to_string(e.id) + " endpoint out of range");
        if (e.u == e.v) fail("edge " + std::to_string(e.id) + " is a self-loop");
        for (const Crossing& c : e.crossings)
            if (c.pair < 1 || c.pair > 2 * g.genus) fail("edge " + std::to_string(e.id) + " crosses unknown pair");
        if (g.partition && g.part(e.u) == g.part(e.v))
            fail("edge " + std::to_string(e.id) + " joins two " + (g.part(e.u) == Part::L ? std::string("L") : std::string("R")) + " vertices");
    }

    // Rotation lists each incident edge exactly once per endpoint.
    std::vector<std::multiset<EdgeId>> incident(static_cast<std::size_t>(g.n) + 1);
    for (const Edge& e : g.edges) {
        incident[static_cast<std::size_t>(e.u)].insert(e.id);
        incident[static_cast<std::size_t>(e.v)].insert(e.id);
    }
    for (VertexId v = 1; v <= g.n; ++v) {
        std::multiset<EdgeId> listed(g.rot(v).begin(), g.rot(v).end());
        if (listed != incident[static_cast<std::size_t>(v)])
            fail("rotation of vertex " + std::to_string(v) + " does not list its incident edges exactly once");
    }

    // Each crossing of each edge appears exactly once on both sides of its
    // pair, and the primed list mirrors the unprimed one.
    std::map<std::pair<int, bool>, std::vector<CrossRef>> listed;
    for (std::size_t i = 0; i < g.sides.size(); ++i) {
        const SideRef& s = g.sides[i];
        for (const CrossRef& r : g.side_cross[i]) {
            if (r.edge < 1 || r.edge > g.num_edges()) fail("side " + s.label() + " lists unknown edge");
            const Edge& e = g.edge(r.edge);
            if (r.k < 0 || r.k >= static_cast<int>(e.crossings.size()))
                fail("side " + s.label() + " lists crossing " + std::to_string(r.k + 1) + " of edge " +
                     std::to_string(r.edge) + " which has " + std::to_string(e.crossings.size()));
            if (e.crossings[static_cast<std::size_t>(r.k)].pair != s.pair)
                fail("edge " + std::to_string(r.edge) + " crossing " + std::to_string(r.k + 1) +
                     " listed on side " + s.label() + " but crosses pair " +
                     std::to_string(e.crossings[static_cast<std::size_t>(r.k)].pair));
            listed[{s.pair, s.primed}].push_back(r);
        }
    }
    for (int pair = 1; pair <= 2 * g.genus; ++pair) {
        std::vector<CrossRef> un = listed[{pair, false}], pr = listed[{pair, true}];
        std::vector<CrossRef> rev(pr.rbegin(), pr.rend());
        if (un != rev)
            fail("crossing lists of pair T" + std::to_string(pair) +
                 ": T" + std::to_string(pair) + "' must mirror T" + std::to_string(pair));
        std::set<std::pair<EdgeId, int>> seen;
        for (const CrossRef& r : un)
            if (!seen.insert({r.edge, r.k}).second)
                fail("duplicate crossing entry on T" + std::to_string(pair));
    }
    std::map<std::pair<EdgeId, int>, int> want;
    for (const Edge& e : g.edges)
        for (std::size_t k = 0; k < e.crossings.size(); ++k) want[{e.id, static_cast<int>(k)}] = e.crossings[k].pair;
    for (const auto& [key, pair] : want) {
        const auto& lst = listed[{pair, false}];
        bool found = std::find(lst.begin(), lst.end(), CrossRef{key.first, key.second}) != lst.end();
        if (!found)
            fail("crossing " + std::to_string(key.second + 1) + " of edge " + std::to_string(key.first) +
                 " missing from the T" + std::to_string(pair) + " list");
    }
    std::size_t total_listed = 0;
    for (const auto& [k, v] : listed) total_listed += v.size();
    if (total_listed != 2 * want.size()) fail("side lists carry entries for no existing crossing");
}

}  // namespace isomatch
