#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "isomatch/schema.hpp"

namespace isomatch {

// Maps each pre-normalization edge to its subdivision path in the
// normalized graph, in order from the original u endpoint.
struct CorrespondenceMap {
    std::vector<std::vector<EdgeId>> segments;  // [1..m_orig], index 0 unused
    VertexId first_dummy = 0;                   // dummies are first_dummy..n; 0 if none

    bool identity() const {
        for (std::size_t i = 1; i < segments.size(); ++i)
            if (segments[i].size() != 1 || segments[i][0] != static_cast<EdgeId>(i)) return false;
        return true;
    }
    const std::vector<EdgeId>& path(EdgeId orig) const {
        if (orig < 1 || orig >= static_cast<EdgeId>(segments.size()))
            throw std::out_of_range("unknown original edge id");
        return segments[static_cast<std::size_t>(orig)];
    }
};

struct NormalizeResult {
    EmbeddedGraph graph;
    CorrespondenceMap map;
};

namespace normalize_detail {

// Splits edge `id` into `parts` consecutive segments through fresh dummy
// vertices; crossing_of[s] gives the index into the edge's crossing list
// carried by segment s (or -1). First segment keeps the old id so ids stay
// dense; the rest are appended. Returns the path of segment ids.
inline std::vector<EdgeId> subdivide(EmbeddedGraph& g, EdgeId id, int parts,
                                     const std::vector<int>& crossing_of) {
    Edge old = g.edge(id);
    std::vector<VertexId> chain{old.u};
    for (int i = 1; i < parts; ++i) {
        g.n += 1;
        chain.push_back(g.n);
        g.rotation.push_back({});
        if (g.partition) g.partition->push_back(flip(g.part(chain[static_cast<std::size_t>(i - 1)])));
    }
    chain.push_back(old.v);

    std::vector<EdgeId> path;
    for (int s = 0; s < parts; ++s) {
        Edge seg;
        seg.u = chain[static_cast<std::size_t>(s)];
        seg.v = chain[static_cast<std::size_t>(s + 1)];
        if (crossing_of[static_cast<std::size_t>(s)] >= 0)
            seg.crossings = {old.crossings[static_cast<std::size_t>(crossing_of[static_cast<std::size_t>(s)])]};
        if (s == 0) {
            seg.id = id;
            g.edge(id) = seg;
        } else {
            seg.id = g.num_edges() + 1;
            g.edges.push_back(seg);
        }
        path.push_back(seg.id);
    }

    // Rotations: endpoints keep the edge slot, dummies see their two segments.
    for (EdgeId& r : g.rotation[static_cast<std::size_t>(old.v)])
        if (r == id) r = path.back();
    for (int i = 1; i < parts; ++i)
        g.rotation[static_cast<std::size_t>(chain[static_cast<std::size_t>(i)])] = {
            path[static_cast<std::size_t>(i - 1)], path[static_cast<std::size_t>(i)]};

    // Side lists: crossing k of the old edge now lives on its segment.
    std::vector<EdgeId> seg_of_crossing(old.crossings.size(), 0);
    for (int s = 0; s < parts; ++s)
        if (crossing_of[static_cast<std::size_t>(s)] >= 0)
            seg_of_crossing[static_cast<std::size_t>(crossing_of[static_cast<std::size_t>(s)])] =
                path[static_cast<std::size_t>(s)];
    for (auto& lst : g.side_cross)
        for (CrossRef& r : lst)
            if (r.edge == id) r = CrossRef{seg_of_crossing[static_cast<std::size_t>(r.k)], 0};

    return path;
}

inline void splice(CorrespondenceMap& map, std::vector<EdgeId>& where_is, EdgeId id,
                   const std::vector<EdgeId>& path) {
    EdgeId root = where_is[static_cast<std::size_t>(id)];
    auto& seq = map.segments[static_cast<std::size_t>(root)];
    auto it = std::find(seq.begin(), seq.end(), id);
    it = seq.erase(it);
    seq.insert(it, path.begin(), path.end());
    where_is.resize(where_is.size() + path.size() - 1, 0);
    for (EdgeId s : path) where_is[static_cast<std::size_t>(s)] = root;
}

}  // namespace normalize_detail

// Makes every edge cross at most one pair (odd subdivision of multi-crossing
// edges) and crossing edges pairwise endpoint-disjoint (two extra dummies,
// crossing moved to the fresh middle segment).
inline NormalizeResult normalize(const EmbeddedGraph& input) {
    validate(input);
    NormalizeResult res{input, {}};
    EmbeddedGraph& g = res.graph;
    CorrespondenceMap& map = res.map;
    VertexId orig_n = g.n;

    map.segments.assign(static_cast<std::size_t>(g.num_edges()) + 1, {});
    std::vector<EdgeId> where_is(static_cast<std::size_t>(g.num_edges()) + 1, 0);
    for (EdgeId e = 1; e <= g.num_edges(); ++e) {
        map.segments[static_cast<std::size_t>(e)] = {e};
        where_is[static_cast<std::size_t>(e)] = e;
    }

    // Multi-crossing edges: one crossing per segment, odd segment count. For
    // an even number of crossings an empty segment goes in the middle.
    for (EdgeId id = 1; id <= g.num_edges(); ++id) {
        int t = static_cast<int>(g.edge(id).crossings.size());
        if (t < 2) continue;
        std::vector<int> crossing_of;
        if (t % 2 == 1) {
            for (int c = 0; c < t; ++c) crossing_of.push_back(c);
        } else {
            for (int c = 0; c < t / 2; ++c) crossing_of.push_back(c);
            crossing_of.push_back(-1);
            for (int c = t / 2; c < t; ++c) crossing_of.push_back(c);
        }
        auto path = normalize_detail::subdivide(g, id, static_cast<int>(crossing_of.size()), crossing_of);
        normalize_detail::splice(map, where_is, id, path);
    }

    // Endpoint-sharing crossing edges: keep the first (in rotation order) at
    // each conflicted vertex, subdivide the next one.
    for (;;) {
        VertexId bad = 0;
        EdgeId victim = 0;
        for (VertexId v = 1; v <= g.n && !bad; ++v) {
            std::vector<EdgeId> crossing;
            for (EdgeId id : g.rot(v))
                if (!g.edge(id).is_planar()) crossing.push_back(id);
            if (crossing.size() >= 2) {
                bad = v;
                victim = crossing[1];
            }
        }
        if (!bad) break;
        auto path = normalize_detail::subdivide(g, victim, 3, {-1, 0, -1});
        normalize_detail::splice(map, where_is, victim, path);
    }

    map.first_dummy = g.n > orig_n ? orig_n + 1 : 0;
    for (EdgeId orig = 1; orig < static_cast<EdgeId>(map.segments.size()); ++orig) {
        const auto& path = map.segments[static_cast<std::size_t>(orig)];
        if (path.size() == 1 && path[0] == orig) continue;
        for (std::size_t s = 0; s < path.size(); ++s)
            g.edge(path[s]).origin = EdgeOrigin{orig, static_cast<int>(s) + 1};
    }

    validate(g);
    if (!g.is_normalized()) throw std::logic_error("normalize: postcondition failed");
    return res;
}

// Pulls a perfect matching of the normalized graph back to the original:
// a subdivided edge is matched iff all odd segments of its path are.
inline Matching matchings_correspond(const EmbeddedGraph& original, const EmbeddedGraph& normalized,
                                     const CorrespondenceMap& map, const Matching& m) {
    if (!is_perfect(normalized, m))
        throw std::invalid_argument("matchings_correspond: matching is not perfect");
    std::vector<EdgeId> out;
    for (EdgeId orig = 1; orig <= original.num_edges(); ++orig) {
        const auto& path = map.path(orig);
        if (path.size() == 1) {
            if (m.contains(path[0])) out.push_back(orig);
            continue;
        }
        bool all_odd = true, all_even = true;  // exactly the odd / even positions matched
        for (std::size_t s = 0; s < path.size(); ++s) {
            bool in = m.contains(path[s]);
            if (s % 2 == 0) { all_odd &= in;  all_even &= !in; }
            else            { all_odd &= !in; all_even &= in; }
        }
        if (all_odd == all_even)
            throw std::invalid_argument("matchings_correspond: matching inconsistent on the path of edge " +
                                        std::to_string(orig));
        if (all_odd) out.push_back(orig);
    }
    Matching result = make_matching(original, std::move(out));
    if (!is_perfect(original, result))
        throw std::logic_error("matchings_correspond: pulled-back matching is not perfect");
    return result;
}

}  // namespace isomatch
