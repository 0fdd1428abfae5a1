#pragma once

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "isomatch/schema.hpp"

namespace isomatch {

// Deterministic instance generators for test corpora. Every generator is a
// pure function of its parameters and seed.

namespace gen_detail {

// Builders index vertices (row, col) on a grid, row 0 at the bottom.
struct GridIndex {
    int rows, cols;
    VertexId id(int r, int c) const { return r * cols + c + 1; }
};

inline void push_rotation_ccw(EmbeddedGraph& g, const GridIndex& gi,
                              const std::map<std::pair<VertexId, VertexId>, EdgeId>& eid, bool wrap) {
    for (int r = 0; r < gi.rows; ++r)
        for (int c = 0; c < gi.cols; ++c) {
            VertexId v = gi.id(r, c);
            // counter-clockwise from the positive x direction: right, up, left, down
            std::vector<std::pair<int, int>> nbr;
            if (wrap || c + 1 < gi.cols) nbr.push_back({r, (c + 1) % gi.cols});
            if (wrap || r + 1 < gi.rows) nbr.push_back({(r + 1) % gi.rows, c});
            if (wrap || c > 0) nbr.push_back({r, (c + gi.cols - 1) % gi.cols});
            if (wrap || r > 0) nbr.push_back({(r + gi.rows - 1) % gi.rows, c});
            for (auto [nr, nc] : nbr) {
                VertexId w = gi.id(nr, nc);
                auto it = eid.find(std::minmax(v, w));
                if (it != eid.end()) g.rotation[static_cast<std::size_t>(v)].push_back(it->second);
            }
        }
}

inline void push_partition(EmbeddedGraph& g, const GridIndex& gi) {
    std::vector<Part> p(static_cast<std::size_t>(g.n) + 1, Part::L);
    for (int r = 0; r < gi.rows; ++r)
        for (int c = 0; c < gi.cols; ++c)
            p[static_cast<std::size_t>(gi.id(r, c))] = (r + c) % 2 == 0 ? Part::L : Part::R;
    g.partition = std::move(p);
}

inline void make_sides(EmbeddedGraph& g) {
    g.sides.clear();
    for (int block = 0; block < g.genus; ++block) {
        int p1 = 2 * block + 1, p2 = 2 * block + 2;
        int base = 4 * block;
        g.sides.push_back({p1, false, base + 1});
        g.sides.push_back({p2, false, base + 2});
        g.sides.push_back({p1, true, base + 3});
        g.sides.push_back({p2, true, base + 4});
    }
    g.side_cross.assign(g.sides.size(), {});
}

// Fills the primed lists as mirror images of the unprimed ones.
inline void mirror_primed_lists(EmbeddedGraph& g) {
    for (std::size_t i = 0; i < g.sides.size(); ++i) {
        if (!g.sides[i].primed) continue;
        const auto& un = g.side_cross[static_cast<std::size_t>(g.side_index(g.sides[i].pair, false))];
        g.side_cross[i].assign(un.rbegin(), un.rend());
    }
}

}  // namespace gen_detail

// Genus-0 bipartite grid, each edge kept independently with probability
// keep_num/keep_den (all vertices stay).
inline EmbeddedGraph gen_planar_grid(int rows, int cols, unsigned seed = 0, int keep_percent = 100) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gen_planar_grid: empty grid");
    EmbeddedGraph g;
    g.genus = 0;
    gen_detail::GridIndex gi{rows, cols};
    g.n = rows * cols;
    g.rotation.assign(static_cast<std::size_t>(g.n) + 1, {});
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(1, 100);
    std::map<std::pair<VertexId, VertexId>, EdgeId> eid;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            for (int dir = 0; dir < 2; ++dir) {  // right, then up
                int nr = r + (dir == 1), nc = c + (dir == 0);
                if (nr >= rows || nc >= cols) continue;
                bool keep = dist(rng) <= keep_percent;
                if (!keep) continue;
                Edge e;
                e.id = g.num_edges() + 1;
                e.u = gi.id(r, c);
                e.v = gi.id(nr, nc);
                g.edges.push_back(e);
                eid[std::minmax(e.u, e.v)] = e.id;
            }
        }
    gen_detail::push_rotation_ccw(g, gi, eid, false);
    gen_detail::push_partition(g, gi);
    gen_detail::make_sides(g);
    validate(g);
    return g;
}

// Genus-1 random instance: a subgraph of an even toroidal grid. The planar
// part is the grid, the wrap edges cross pair 1 (horizontal seam crossings)
// or pair 2 (vertical), listed along the seam in coordinate order.
inline EmbeddedGraph gen_torus_grid(int rows, int cols, unsigned seed = 0, int keep_percent = 100) {
    // Below 4 a wrap edge would duplicate an interior edge.
    if (rows < 4 || cols < 4 || rows % 2 != 0 || cols % 2 != 0)
        throw std::invalid_argument("gen_torus_grid: rows and cols must be even and >= 4");
    EmbeddedGraph g;
    g.genus = 1;
    gen_detail::GridIndex gi{rows, cols};
    g.n = rows * cols;
    g.rotation.assign(static_cast<std::size_t>(g.n) + 1, {});
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(1, 100);
    std::map<std::pair<VertexId, VertexId>, EdgeId> eid;
    std::map<int, EdgeId> wrap_row, wrap_col;  // surviving seam edges by coordinate
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            for (int dir = 0; dir < 2; ++dir) {
                bool keep = dist(rng) <= keep_percent;  // drawn for every slot, kept or not
                if (!keep) continue;
                Edge e;
                e.u = gi.id(r, c);
                if (dir == 0) {  // rightward, wraps through the vertical seam
                    e.v = gi.id(r, (c + 1) % cols);
                    if (c + 1 == cols) {
                        e.crossings = {{1, false}};  // leaves through T1', re-enters T1
                        wrap_row[r] = g.num_edges() + 1;
                    }
                } else {  // upward, wraps through the horizontal seam
                    e.v = gi.id((r + 1) % rows, c);
                    if (r + 1 == rows) {
                        e.crossings = {{2, true}};  // leaves through T2
                        wrap_col[c] = g.num_edges() + 1;
                    }
                }
                e.id = g.num_edges() + 1;
                g.edges.push_back(e);
                eid[std::minmax(e.u, e.v)] = e.id;
            }
        }
    gen_detail::push_rotation_ccw(g, gi, eid, true);
    gen_detail::push_partition(g, gi);
    gen_detail::make_sides(g);
    for (auto& [r, id] : wrap_row) g.side_cross[0].push_back({id, 0});  // T1 upward
    for (auto& [c, id] : wrap_col) g.side_cross[1].push_back({id, 0});  // T2 rightward
    gen_detail::mirror_primed_lists(g);
    validate(g);
    return g;
}

// Even cycles crossing chosen side pairs. Within one pair, crossings are
// placed along the boundary in the order given (first spec nearest the tail
// of the side). Callers pick realizable patterns.
struct CycleSpec {
    int length = 4;
    // edge_index (1-based within the cycle) -> crossings in curve order
    std::map<int, std::vector<Crossing>> crossings;
};

inline EmbeddedGraph gen_torus_cycles(const std::vector<CycleSpec>& specs, int genus = 1) {
    EmbeddedGraph g;
    g.genus = genus;
    g.rotation.assign(1, {});
    std::vector<Part> part{Part::L};
    std::vector<std::pair<int, CrossRef>> by_pair;  // (pair, ref) in spec order
    for (const CycleSpec& spec : specs) {
        if (spec.length < 2 || spec.length % 2 != 0)
            throw std::invalid_argument("gen_torus_cycles: cycle length must be even and >= 2");
        VertexId base = g.n;
        for (int i = 0; i < spec.length; ++i) {
            g.n += 1;
            g.rotation.push_back({});
            part.push_back(i % 2 == 0 ? Part::L : Part::R);
        }
        EdgeId first = g.num_edges() + 1;
        for (int i = 1; i <= spec.length; ++i) {
            Edge e;
            e.id = g.num_edges() + 1;
            e.u = base + i;
            e.v = base + (i % spec.length) + 1;
            auto it = spec.crossings.find(i);
            if (it != spec.crossings.end()) {
                e.crossings = it->second;
                for (std::size_t k = 0; k < e.crossings.size(); ++k) {
                    if (e.crossings[k].pair < 1 || e.crossings[k].pair > 2 * genus)
                        throw std::invalid_argument("gen_torus_cycles: crossing pair out of range");
                    by_pair.push_back({e.crossings[k].pair, CrossRef{e.id, static_cast<int>(k)}});
                }
            }
            g.edges.push_back(e);
        }
        for (int i = 1; i <= spec.length; ++i) {
            EdgeId prev = first + (i + spec.length - 2) % spec.length;
            EdgeId next = first + i - 1;
            g.rotation[static_cast<std::size_t>(base + i)] = {prev, next};
        }
    }
    g.partition = std::move(part);
    gen_detail::make_sides(g);
    for (auto& [pair, ref] : by_pair)
        g.side_cross[static_cast<std::size_t>(g.side_index(pair, false))].push_back(ref);
    gen_detail::mirror_primed_lists(g);
    validate(g);
    return g;
}

inline EmbeddedGraph gen_torus_cycle(int length, const std::map<int, std::vector<Crossing>>& crossings,
                                     int genus = 1) {
    return gen_torus_cycles({CycleSpec{length, crossings}}, genus);
}

// Two perfect matchings tied exactly under w_comb across classes "10"/"00":
// sigma weights +1 +2 -3 on one side, all-planar on the other, every planar
// edge an isolated band. The FKS layer has to break this tie.
inline EmbeddedGraph gen_torus_hexagon_tie() {
    return gen_torus_cycle(6, {{1, {{1, true}}}, {3, {{2, true}}}, {5, {{2, false}}}});
}

// K_3,3 embedded on the torus; edge 9 crosses two pairs, so normalization
// has real work to do on this instance.
inline EmbeddedGraph gen_k33_torus() {
    EmbeddedGraph g;
    g.genus = 1;
    g.n = 6;
    auto add = [&](VertexId u, VertexId v, std::vector<Crossing> cr = {}) {
        Edge e;
        e.id = g.num_edges() + 1;
        e.u = u;
        e.v = v;
        e.crossings = std::move(cr);
        g.edges.push_back(e);
    };
    add(1, 4);                        // 1
    add(2, 4);                        // 2
    add(2, 5);                        // 3
    add(3, 5);                        // 4
    add(3, 6);                        // 5
    add(1, 6, {{1, true}});           // 6
    add(1, 5, {{2, true}});           // 7
    add(2, 6, {{2, true}});           // 8
    add(3, 4, {{2, true}, {1, false}});  // 9
    g.rotation = {{}, {1, 7, 6}, {3, 8, 2}, {5, 9, 4}, {2, 1, 9}, {4, 3, 7}, {6, 5, 8}};
    g.partition = std::vector<Part>{Part::L, Part::L, Part::L, Part::L, Part::R, Part::R, Part::R};
    gen_detail::make_sides(g);
    g.side_cross[0] = {{9, 1}, {6, 0}};          // T1, upward
    g.side_cross[1] = {{7, 0}, {8, 0}, {9, 0}};  // T2, rightward
    gen_detail::mirror_primed_lists(g);
    validate(g);
    return g;
}

// K_5 on the torus: vertices a..e = 1..5, edges {1,3} and {2,4} crossing
// pairs 1 and 2. Not bipartite; exercises the schema layer only.
inline EmbeddedGraph gen_k5_torus() {
    EmbeddedGraph g;
    g.genus = 1;
    g.n = 5;
    auto add = [&](VertexId u, VertexId v, std::vector<Crossing> cr = {}) {
        Edge e;
        e.id = g.num_edges() + 1;
        e.u = u;
        e.v = v;
        e.crossings = std::move(cr);
        g.edges.push_back(e);
    };
    add(1, 2);               // 1: a-b
    add(2, 3);               // 2: b-c
    add(3, 4);               // 3: c-d
    add(4, 1);               // 4: d-a
    add(1, 5);               // 5: a-e
    add(2, 5);               // 6: b-e
    add(3, 5);               // 7: c-e
    add(4, 5);               // 8: d-e
    add(1, 3, {{1, true}});  // 9: a-c through T1
    add(2, 4, {{2, false}}); // 10: b-d through T2'
    g.rotation = {{}, {1, 5, 4, 9}, {2, 6, 1, 10}, {3, 7, 2, 9}, {3, 10, 4, 8}, {7, 8, 5, 6}};
    gen_detail::make_sides(g);
    g.side_cross[0] = {{9, 0}};   // T1
    g.side_cross[1] = {{10, 0}};  // T2
    gen_detail::mirror_primed_lists(g);
    validate(g);
    return g;
}

// Random planar grid with one edge per extra pair rerouted through it; the
// g = 1 case delegates to the geometrically faithful toroidal grid.
inline EmbeddedGraph gen_genus_g_random(int genus, int rows, int cols, unsigned seed = 0,
                                        int keep_percent = 100) {
    if (genus == 0) return gen_planar_grid(rows, cols, seed, keep_percent);
    if (genus == 1) return gen_torus_grid(rows, cols, seed, keep_percent);
    EmbeddedGraph g = gen_planar_grid(rows, cols, seed, keep_percent);
    if (g.num_edges() < 2 * genus) throw std::invalid_argument("gen_genus_g_random: too few edges to reroute");
    g.genus = genus;
    gen_detail::make_sides(g);
    std::mt19937 rng(seed ^ 0x9e3779b9u);
    std::set<EdgeId> taken;
    for (int pair = 1; pair <= 2 * genus; ++pair) {
        std::uniform_int_distribution<EdgeId> pick(1, g.num_edges());
        EdgeId e = pick(rng);
        while (taken.count(e)) e = e % g.num_edges() + 1;
        taken.insert(e);
        g.edge(e).crossings = {{pair, rng() % 2 == 0}};
        g.side_cross[static_cast<std::size_t>(g.side_index(pair, false))].push_back({e, 0});
    }
    gen_detail::mirror_primed_lists(g);
    validate(g);
    return g;
}

}  // namespace isomatch
