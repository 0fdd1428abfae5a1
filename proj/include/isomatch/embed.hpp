#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>
#include <boost/property_map/property_map.hpp>

#include "isomatch/ints.hpp"
#include "isomatch/schema.hpp"

namespace isomatch {

struct Point {
    long long x = 0, y = 0;
    bool operator==(const Point&) const = default;
};

struct Segment {
    Point a, b;  // in the stored direction of the edge
};

// Integer straight-line drawing of the planar subgraph. Crossing edges carry
// an empty segment list; every vertex gets coordinates.
struct GridEmbedding {
    std::vector<Point> coord;                   // [1..n], index 0 unused
    std::vector<std::vector<Segment>> segments; // [1..m], index 0 unused

    const Point& at(VertexId v) const {
        if (v < 1 || v >= static_cast<VertexId>(coord.size())) throw std::out_of_range("vertex not embedded");
        return coord[static_cast<std::size_t>(v)];
    }
    const std::vector<Segment>& segs(EdgeId e) const {
        if (e < 1 || e >= static_cast<EdgeId>(segments.size())) throw std::out_of_range("edge absent from embedding");
        return segments[static_cast<std::size_t>(e)];
    }
};

// Traversal step: an edge walked forward (stored u->v) or backward.
struct Step {
    EdgeId edge = 0;
    bool forward = true;
};
using DirectedWalk = std::vector<Step>;

// --- w_pl ----------------------------------------------------------------

inline Int w_pl_segment(const Point& tail, const Point& head) {
    return Int(static_cast<long>(head.y - tail.y)) * Int(static_cast<long>(tail.x + head.x));
}

// Signed-area weight of an edge in its stored direction; 0 for crossing edges.
inline Int w_pl(const GridEmbedding& emb, EdgeId e) {
    Int s = 0;
    for (const Segment& seg : emb.segs(e)) s += w_pl_segment(seg.a, seg.b);
    return s;
}

inline Int w_pl_traversed(const GridEmbedding& emb, EdgeId e, bool forward) {
    Int s = w_pl(emb, e);
    return forward ? s : Int(-s);
}

inline Int w_pl_walk(const GridEmbedding& emb, const DirectedWalk& walk) {
    Int s = 0;
    for (const Step& st : walk) s += w_pl_traversed(emb, st.edge, st.forward);
    return s;
}

// --- geometry predicates ---------------------------------------------------

namespace geom {

inline long long cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int sgn(long long v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

inline bool on_segment(const Point& p, const Point& a, const Point& b) {
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed segments [a,b] and [c,d] intersect anywhere except at a point that
// is an endpoint of both.
inline bool improper_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    int d1 = sgn(cross(c, d, a)), d2 = sgn(cross(c, d, b));
    int d3 = sgn(cross(a, b, c)), d4 = sgn(cross(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;  // proper crossing
    if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
        // Collinear: any overlap longer than a shared endpoint is improper.
        auto key = [](const Point& p) { return std::pair<long long, long long>{p.x, p.y}; };
        auto lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
        auto lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
        auto lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi) return false;
        if (lo != hi) return true;                      // overlap segment
        Point p{lo.first, lo.second};
        bool end1 = p == a || p == b, end2 = p == c || p == d;
        return !(end1 && end2);
    }
    // Touching: every touch point must be an endpoint of both segments.
    if (d1 == 0 && on_segment(a, c, d) && !(a == c || a == d)) return true;
    if (d2 == 0 && on_segment(b, c, d) && !(b == c || b == d)) return true;
    if (d3 == 0 && on_segment(c, a, b) && !(c == a || c == b)) return true;
    if (d4 == 0 && on_segment(d, a, b) && !(d == a || d == b)) return true;
    return false;
}

}  // namespace geom

// --- planarity of a rotation system ---------------------------------------

namespace embed_detail {

// Scratch graph: local 0-based vertices, undirected edges, CCW rotations.
struct RotGraph {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> rot;  // edge indices

    int nv() const { return static_cast<int>(rot.size()); }
    int ne() const { return static_cast<int>(edges.size()); }
    int add_vertex() {
        rot.push_back({});
        return nv() - 1;
    }
    int other(int e, int v) const { return edges[static_cast<std::size_t>(e)].first == v ? edges[static_cast<std::size_t>(e)].second : edges[static_cast<std::size_t>(e)].first; }

    int rot_index(int v, int e) const {
        const auto& r = rot[static_cast<std::size_t>(v)];
        auto it = std::find(r.begin(), r.end(), e);
        if (it == r.end()) throw std::logic_error("rotation lookup failed");
        return static_cast<int>(it - r.begin());
    }

    // Half-edge h = 2e + d; d == 0 travels first->second.
    int half_target(int h) const {
        const auto& e = edges[static_cast<std::size_t>(h / 2)];
        return h % 2 == 0 ? e.second : e.first;
    }
    int half_source(int h) const {
        const auto& e = edges[static_cast<std::size_t>(h / 2)];
        return h % 2 == 0 ? e.first : e.second;
    }
    int half_of(int e, int from) const { return 2 * e + (edges[static_cast<std::size_t>(e)].first == from ? 0 : 1); }

    // Face successor: continue from the target along the next edge CCW.
    int next_half(int h) const {
        int w = half_target(h);
        const auto& r = rot[static_cast<std::size_t>(w)];
        int pos = rot_index(w, h / 2);
        int e2 = r[static_cast<std::size_t>((pos + 1) % r.size())];
        return half_of(e2, w);
    }

    // Orbits of next_half: each is one face boundary walk.
    std::vector<std::vector<int>> faces() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(static_cast<std::size_t>(2 * ne()), 0);
        for (int h0 = 0; h0 < 2 * ne(); ++h0) {
            if (seen[static_cast<std::size_t>(h0)]) continue;
            std::vector<int> face;
            int h = h0;
            do {
                seen[static_cast<std::size_t>(h)] = 1;
                face.push_back(h);
                h = next_half(h);
            } while (h != h0);
            out.push_back(std::move(face));
        }
        return out;
    }
};

// Genus of the rotation system of a connected graph (Euler):
// V - E + F = 2 - 2*genus.
inline int rotation_genus(const RotGraph& g) {
    int f = static_cast<int>(g.faces().size());
    int chi = g.nv() - g.ne() + f;
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler defect");
    return (2 - chi) / 2;
}

inline std::vector<int> biconnected_component_of_edge(const RotGraph& g) {
    // Iterative lowpoint DFS assigning a component id to every edge.
    int n = g.nv(), m = g.ne();
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<int> estack;
    int timer = 0, comps = 0;

    struct Frame {
        int v, parent_edge;
        std::size_t i;
    };
    for (int s = 0; s < n; ++s) {
        if (disc[static_cast<std::size_t>(s)] != -1) continue;
        std::vector<Frame> st{{s, -1, 0}};
        disc[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& r = g.rot[static_cast<std::size_t>(f.v)];
            if (f.i < r.size()) {
                int e = r[f.i++];
                if (e == f.parent_edge) continue;
                int w = g.other(e, f.v);
                if (disc[static_cast<std::size_t>(w)] == -1) {
                    estack.push_back(e);
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    st.push_back({w, e, 0});
                } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(f.v)]) {
                    estack.push_back(e);
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                st.pop_back();
                if (st.empty()) continue;
                Frame& p = st.back();
                low[static_cast<std::size_t>(p.v)] = std::min(low[static_cast<std::size_t>(p.v)], low[static_cast<std::size_t>(f.v)]);
                if (low[static_cast<std::size_t>(f.v)] >= disc[static_cast<std::size_t>(p.v)]) {
                    while (true) {
                        int e = estack.back();
                        estack.pop_back();
                        comp[static_cast<std::size_t>(e)] = comps;
                        if (e == f.parent_edge) break;
                    }
                    ++comps;
                }
            }
        }
    }
    return comp;
}

// Inserts edge {x,y} as a path x-d-y through a fresh dummy so no parallel
// edge can arise; the path hugs the face corner between half-edges h1, h2.
inline void bridge_corner(RotGraph& g, int h1, int h2) {
    int x = g.half_source(h1), c = g.half_target(h1), y = g.half_target(h2);
    if (c != g.half_source(h2) || x == y) throw std::logic_error("bridge_corner: bad corner");
    int d = g.add_vertex();
    g.edges.emplace_back(x, d);
    int exd = g.ne() - 1;
    g.edges.emplace_back(d, y);
    int edy = g.ne() - 1;
    auto& rx = g.rot[static_cast<std::size_t>(x)];
    rx.insert(rx.begin() + g.rot_index(x, h1 / 2), exd);
    auto& ry = g.rot[static_cast<std::size_t>(y)];
    ry.insert(ry.begin() + g.rot_index(y, h2 / 2) + 1, edy);
    g.rot[static_cast<std::size_t>(d)] = {exd, edy};
}

inline void make_biconnected(RotGraph& g) {
    if (g.ne() == 0) return;
    for (;;) {
        auto comp = biconnected_component_of_edge(g);
        bool changed = false;
        for (const auto& face : g.faces()) {
            for (std::size_t i = 0; i < face.size(); ++i) {
                int h1 = face[i], h2 = face[(i + 1) % face.size()];
                if (comp[static_cast<std::size_t>(h1 / 2)] != comp[static_cast<std::size_t>(h2 / 2)]) {
                    bridge_corner(g, h1, h2);
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
        if (!changed) return;
    }
}

// Triangulates every face longer than 3: a chord fan from one corner when
// no chord collides with an existing edge, else a fresh star center (which
// can never collide). Fans keep the vertex count, and with it the grid and
// the w_pl magnitudes, small.
inline void triangulate(RotGraph& g) {
    std::set<std::pair<int, int>> present;
    for (const auto& [a, b] : g.edges) present.insert(std::minmax(a, b));
    for (;;) {
        auto fs = g.faces();
        auto it = std::find_if(fs.begin(), fs.end(), [](const auto& f) { return f.size() > 3; });
        if (it == fs.end()) return;
        const std::vector<int> face = *it;
        std::size_t k = face.size();

        std::vector<int> corner;  // corner[i] = source of face[i]
        for (int h : face) corner.push_back(g.half_source(h));
        std::set<int> uniq(corner.begin(), corner.end());
        bool fan_ok = uniq.size() == k;
        for (std::size_t i = 2; i + 1 < k && fan_ok; ++i)
            fan_ok = !present.count(std::minmax(corner[0], corner[static_cast<std::size_t>(i)]));

        if (fan_ok) {
            // Fan from corner[0]: chords to corners 2..k-2, each sitting in
            // its corner between the face edges; at corner[0] the chords go
            // between the arriving and leaving face edges, innermost last.
            std::vector<int> chords;
            for (std::size_t i = 2; i + 1 < k; ++i) {
                int x = corner[static_cast<std::size_t>(i)];
                g.edges.emplace_back(corner[0], x);
                int c = g.ne() - 1;
                present.insert(std::minmax(corner[0], x));
                auto& rx = g.rot[static_cast<std::size_t>(x)];
                rx.insert(rx.begin() + g.rot_index(x, face[static_cast<std::size_t>(i)] / 2), c);
                chords.push_back(c);
            }
            auto& r0 = g.rot[static_cast<std::size_t>(corner[0])];
            int pos0 = g.rot_index(corner[0], face[0] / 2);
            r0.insert(r0.begin() + pos0, chords.rbegin(), chords.rend());
        } else {
            int c = g.add_vertex();
            std::vector<int> spokes;
            for (int h : face) {
                int x = g.half_source(h);
                g.edges.emplace_back(x, c);
                int s = g.ne() - 1;
                auto& rx = g.rot[static_cast<std::size_t>(x)];
                rx.insert(rx.begin() + g.rot_index(x, h / 2), s);
                spokes.push_back(s);
            }
            auto& rc = g.rot[static_cast<std::size_t>(c)];
            rc.assign(spokes.rbegin(), spokes.rend());
        }
    }
}

// Straight-line grid drawing of a connected triangulation-ready component.
inline std::vector<Point> draw_component(RotGraph g, int keep) {
    if (g.nv() == 1) return {Point{0, 0}};
    if (g.nv() == 2) return {Point{0, 0}, Point{1, 0}};
    make_biconnected(g);
    triangulate(g);
    if (rotation_genus(g) != 0) throw std::logic_error("triangulation destroyed planarity");

    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
    using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
    using BVertex = boost::graph_traits<BGraph>::vertex_descriptor;

    BGraph bg(static_cast<std::size_t>(g.nv()));
    std::vector<BEdge> bedge(static_cast<std::size_t>(g.ne()));
    for (int e = 0; e < g.ne(); ++e) {
        auto [it, ok] = boost::add_edge(static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].first),
                                        static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].second),
                                        e, bg);
        bedge[static_cast<std::size_t>(e)] = it;
        (void)ok;
    }
    std::vector<std::vector<BEdge>> embedding(static_cast<std::size_t>(g.nv()));
    for (int v = 0; v < g.nv(); ++v)
        for (int e : g.rot[static_cast<std::size_t>(v)]) embedding[static_cast<std::size_t>(v)].push_back(bedge[static_cast<std::size_t>(e)]);
    auto embedding_map = boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg));

    std::vector<BVertex> ordering;
    boost::planar_canonical_ordering(bg, embedding_map, std::back_inserter(ordering));
    if (ordering.size() != static_cast<std::size_t>(g.nv()))
        throw std::logic_error("canonical ordering incomplete");

    struct BCoord {
        std::size_t x = 0, y = 0;
    };
    std::vector<BCoord> coords(static_cast<std::size_t>(g.nv()));
    auto drawing = boost::make_iterator_property_map(coords.begin(), boost::get(boost::vertex_index, bg));
    boost::chrobak_payne_straight_line_drawing(bg, embedding_map, ordering.begin(), ordering.end(), drawing);

    std::vector<Point> out;
    for (int v = 0; v < keep; ++v)
        out.push_back(Point{static_cast<long long>(coords[static_cast<std::size_t>(v)].x),
                            static_cast<long long>(coords[static_cast<std::size_t>(v)].y)});
    return out;
}

}  // namespace embed_detail

// Checks the drawing is a proper straight-line planar drawing: distinct
// vertex coordinates, no vertex interior to a segment, no two segments
// meeting outside a shared endpoint.
inline void validate_drawing(const EmbeddedGraph& g, const GridEmbedding& emb) {
    std::set<std::pair<long long, long long>> pts;
    for (VertexId v = 1; v <= g.n; ++v)
        if (!pts.insert({emb.at(v).x, emb.at(v).y}).second)
            throw std::logic_error("drawing: coincident vertex coordinates");
    std::vector<Segment> all;
    for (const Edge& e : g.edges)
        for (const Segment& s : emb.segs(e.id)) all.push_back(s);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (geom::improper_intersection(all[i].a, all[i].b, all[j].a, all[j].b))
                throw std::logic_error("drawing: segments intersect improperly");
        for (VertexId v = 1; v <= g.n; ++v) {
            const Point& p = emb.at(v);
            if (p == all[i].a || p == all[i].b) continue;
            if (geom::on_segment(p, all[i].a, all[i].b))
                throw std::logic_error("drawing: vertex lies on a segment");
        }
    }
}

// Straight-line integer-grid drawing of the planar subgraph, one horizontal
// band per connected component, compatible with the stored rotations.
inline GridEmbedding embed_planar_subgraph(const EmbeddedGraph& g) {
    // Planar subgraph adjacency, rotation order preserved.
    std::set<std::pair<VertexId, VertexId>> planar_pairs;
    for (const Edge& e : g.edges) {
        if (!e.is_planar()) continue;
        auto key = std::minmax(e.u, e.v);
        if (!planar_pairs.insert({key.first, key.second}).second)
            throw std::runtime_error("parallel planar edges admit no straight-line drawing");
    }

    // Connected components over planar edges; isolated vertices included.
    std::vector<int> comp(static_cast<std::size_t>(g.n) + 1, -1);
    std::vector<std::vector<VertexId>> members;
    for (VertexId s = 1; s <= g.n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        int id = static_cast<int>(members.size());
        members.push_back({});
        std::vector<VertexId> queue{s};
        comp[static_cast<std::size_t>(s)] = id;
        while (!queue.empty()) {
            VertexId v = queue.back();
            queue.pop_back();
            members[static_cast<std::size_t>(id)].push_back(v);
            for (EdgeId eid : g.rot(v)) {
                const Edge& e = g.edge(eid);
                if (!e.is_planar()) continue;
                VertexId w = e.other(v);
                if (comp[static_cast<std::size_t>(w)] == -1) {
                    comp[static_cast<std::size_t>(w)] = id;
                    queue.push_back(w);
                }
            }
        }
        std::sort(members.back().begin(), members.back().end());
    }

    GridEmbedding emb;
    emb.coord.assign(static_cast<std::size_t>(g.n) + 1, Point{});
    emb.segments.assign(static_cast<std::size_t>(g.num_edges()) + 1, {});

    long long y_offset = 0;
    for (const auto& verts : members) {
        embed_detail::RotGraph local;
        std::map<VertexId, int> lid;
        for (VertexId v : verts) lid[v] = local.add_vertex();
        std::map<EdgeId, int> leid;
        for (VertexId v : verts)
            for (EdgeId eid : g.rot(v)) {
                const Edge& e = g.edge(eid);
                if (!e.is_planar() || leid.count(eid)) continue;
                leid[eid] = static_cast<int>(local.edges.size());
                local.edges.emplace_back(lid.at(e.u), lid.at(e.v));
            }
        for (VertexId v : verts)
            for (EdgeId eid : g.rot(v))
                if (g.edge(eid).is_planar()) local.rot[static_cast<std::size_t>(lid.at(v))].push_back(leid.at(eid));

        if (local.ne() > 0 && embed_detail::rotation_genus(local) != 0)
            throw std::runtime_error("rotation system of planar edges is not planar");

        auto pts = embed_detail::draw_component(local, local.nv());
        long long height = 0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            emb.coord[static_cast<std::size_t>(verts[i])] = Point{pts[i].x, pts[i].y + y_offset};
            height = std::max(height, pts[i].y);
        }
        y_offset += height + 2;
    }

    for (const Edge& e : g.edges)
        if (e.is_planar())
            emb.segments[static_cast<std::size_t>(e.id)] = {Segment{emb.at(e.u), emb.at(e.v)}};

    validate_drawing(g, emb);
    return emb;
}

// --- cycle checks ----------------------------------------------------------

// Walks a directed cycle, validating it is simple and closed; returns the
// traversal-ordered vertex sequence.
inline std::vector<VertexId> cycle_vertices(const EmbeddedGraph& g, const DirectedWalk& c) {
    if (c.empty()) throw std::invalid_argument("empty cycle");
    std::vector<VertexId> vs;
    for (const Step& st : c) {
        const Edge& e = g.edge(st.edge);
        vs.push_back(st.forward ? e.u : e.v);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Edge& e = g.edge(c[i].edge);
        VertexId head = c[i].forward ? e.v : e.u;
        if (head != vs[(i + 1) % vs.size()]) throw std::invalid_argument("walk is not head-to-tail");
    }
    std::set<VertexId> uniq(vs.begin(), vs.end());
    if (uniq.size() != vs.size()) throw std::invalid_argument("cycle is not simple");
    return vs;
}

// 2 * signed area of the traversal polygon (positive for counter-clockwise).
inline Int twice_signed_area(const std::vector<Point>& poly) {
    Int a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        a += Int(static_cast<long>(p.x)) * Int(static_cast<long>(q.y)) -
             Int(static_cast<long>(q.x)) * Int(static_cast<long>(p.y));
    }
    return a;
}

// Returns w_pl(C) for a simple directed cycle of planar edges and checks the
// area law: +2*Area counter-clockwise, -2*Area clockwise, never zero.
inline Int cycle_area_check(const EmbeddedGraph& g, const GridEmbedding& emb, const DirectedWalk& c) {
    auto vs = cycle_vertices(g, c);
    for (const Step& st : c)
        if (!g.edge(st.edge).is_planar()) throw std::invalid_argument("cycle contains a crossing edge");
    Int w = w_pl_walk(emb, c);
    std::vector<Point> poly;
    for (VertexId v : vs) poly.push_back(emb.at(v));
    Int shoelace = twice_signed_area(poly);
    if (w != shoelace || w == 0)
        throw std::logic_error("area law violated: w_pl=" + to_string(w) + " shoelace=" + to_string(shoelace));
    return w;
}

}  // namespace isomatch
