#pragma once

#include <sstream>
#include <string>

#include "isomatch/embed.hpp"
#include "isomatch/schema.hpp"

namespace isomatch {

// Plain-text plots of the planar subgraph for human inspection.

inline std::string draw_svg(const EmbeddedGraph& g, const GridEmbedding& emb) {
    long long maxx = 1, maxy = 1;
    for (VertexId v = 1; v <= g.n; ++v) {
        maxx = std::max(maxx, emb.at(v).x);
        maxy = std::max(maxy, emb.at(v).y);
    }
    const long long unit = 40, pad = 20;
    auto X = [&](long long x) { return pad + x * unit; };
    auto Y = [&](long long y) { return pad + (maxy - y) * unit; };  // y axis up

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(maxx) + pad << "\" height=\""
        << Y(0) + pad << "\">\n";
    for (const Edge& e : g.edges)
        for (const Segment& s : emb.segs(e.id))
            out << "  <line x1=\"" << X(s.a.x) << "\" y1=\"" << Y(s.a.y) << "\" x2=\"" << X(s.b.x)
                << "\" y2=\"" << Y(s.b.y) << "\" stroke=\"black\"/>\n";
    for (VertexId v = 1; v <= g.n; ++v) {
        out << "  <circle cx=\"" << X(emb.at(v).x) << "\" cy=\"" << Y(emb.at(v).y)
            << "\" r=\"4\" fill=\"black\"/>\n";
        out << "  <text x=\"" << X(emb.at(v).x) + 6 << "\" y=\"" << Y(emb.at(v).y) - 6
            << "\" font-size=\"12\">" << v << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

inline std::string draw_dot(const EmbeddedGraph& g, const GridEmbedding& emb) {
    std::ostringstream out;
    out << "graph planar_subgraph {\n  node [shape=point];\n";
    for (VertexId v = 1; v <= g.n; ++v)
        out << "  " << v << " [pos=\"" << emb.at(v).x << "," << emb.at(v).y << "!\" xlabel=\"" << v
            << "\"];\n";
    for (const Edge& e : g.edges)
        if (e.is_planar()) out << "  " << e.u << " -- " << e.v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace isomatch
