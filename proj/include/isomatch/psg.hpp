#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isomatch/schema.hpp"

namespace isomatch {

// Plain line-oriented instance format ("PSG"). Canonical layout:
//
//   psg 1
//   genus <g>
//   vertices <n>
//   side <label> tail <corner>        4g lines, clockwise from the tail of T1
//   cross <label> [<edge>[.<k>] ...]  4g lines, same order; k is the 1-based
//                                     crossing ordinal for multi-crossing edges
//   edge <id> <u> <v> [cross <pair><u|p> ...]
//   rot <v> [<edge id> ...]           counter-clockwise around v
//   partition [L|R ...]               optional, one token per vertex
//
// '#' starts a comment; blank lines are ignored. parse accepts sections in
// any order; serialize emits the canonical one.

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace psg_detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline int to_int(const std::string& s, int lineno, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": expected " + what + ", got '" + s + "'");
    }
}

// "T3" -> (3,false), "T3'" -> (3,true)
inline std::pair<int, bool> side_label(const std::string& s, int lineno) {
    std::string body = s;
    bool primed = false;
    if (!body.empty() && body.back() == '\'') {
        primed = true;
        body.pop_back();
    }
    if (body.size() < 2 || body[0] != 'T')
        throw ParseError("line " + std::to_string(lineno) + ": bad side label '" + s + "'");
    return {to_int(body.substr(1), lineno, "side pair number"), primed};
}

inline CrossRef cross_token(const std::string& s, int lineno) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return CrossRef{to_int(s, lineno, "edge id"), 0};
    return CrossRef{to_int(s.substr(0, dot), lineno, "edge id"),
                    to_int(s.substr(dot + 1), lineno, "crossing ordinal") - 1};
}

}  // namespace psg_detail

inline EmbeddedGraph parse_psg(const std::string& text) {
    using namespace psg_detail;
    EmbeddedGraph g;
    bool saw_magic = false, saw_genus = false, saw_vertices = false;
    std::vector<std::pair<SideRef, int>> sides;                          // with line numbers
    std::map<std::pair<int, bool>, std::vector<CrossRef>> cross_lists;   // by (pair, primed)
    std::map<std::pair<int, bool>, int> cross_line;
    std::vector<Edge> edges;
    std::map<VertexId, std::vector<EdgeId>> rots;
    std::optional<std::vector<Part>> partition;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        auto need = [&](std::size_t k) {
            if (tok.size() < k)
                throw ParseError("line " + std::to_string(lineno) + ": '" + kw + "' needs more fields");
        };
        if (kw == "psg") {
            need(2);
            if (tok[1] != "1") throw ParseError("line " + std::to_string(lineno) + ": unsupported format version");
            saw_magic = true;
        } else if (kw == "genus") {
            need(2);
            g.genus = to_int(tok[1], lineno, "genus");
            saw_genus = true;
        } else if (kw == "vertices") {
            need(2);
            g.n = to_int(tok[1], lineno, "vertex count");
            saw_vertices = true;
        } else if (kw == "side") {
            need(4);
            if (tok[2] != "tail") throw ParseError("line " + std::to_string(lineno) + ": expected 'tail'");
            auto [pair, primed] = side_label(tok[1], lineno);
            sides.push_back({SideRef{pair, primed, to_int(tok[3], lineno, "corner")}, lineno});
        } else if (kw == "cross") {
            need(2);
            auto key = side_label(tok[1], lineno);
            if (cross_lists.count(key))
                throw ParseError("line " + std::to_string(lineno) + ": duplicate cross list for " + tok[1]);
            std::vector<CrossRef> refs;
            for (std::size_t i = 2; i < tok.size(); ++i) refs.push_back(cross_token(tok[i], lineno));
            cross_lists[key] = std::move(refs);
            cross_line[key] = lineno;
        } else if (kw == "edge") {
            need(4);
            Edge e;
            e.id = to_int(tok[1], lineno, "edge id");
            e.u = to_int(tok[2], lineno, "vertex id");
            e.v = to_int(tok[3], lineno, "vertex id");
            if (tok.size() > 4) {
                if (tok[4] != "cross")
                    throw ParseError("line " + std::to_string(lineno) + ": expected 'cross'");
                for (std::size_t i = 5; i < tok.size(); ++i) {
                    std::string t = tok[i];
                    if (t.size() < 2 || (t.back() != 'u' && t.back() != 'p'))
                        throw ParseError("line " + std::to_string(lineno) +
                                         ": crossing token must be <pair>u or <pair>p, got '" + t + "'");
                    bool unprimed_first = t.back() == 'u';
                    t.pop_back();
                    e.crossings.push_back({to_int(t, lineno, "pair number"), unprimed_first});
                }
                if (e.crossings.empty())
                    throw ParseError("line " + std::to_string(lineno) + ": 'cross' with no crossings");
            }
            edges.push_back(std::move(e));
        } else if (kw == "rot") {
            need(2);
            VertexId v = to_int(tok[1], lineno, "vertex id");
            if (rots.count(v)) throw ParseError("line " + std::to_string(lineno) + ": duplicate rotation for vertex " + tok[1]);
            std::vector<EdgeId>& r = rots[v];
            for (std::size_t i = 2; i < tok.size(); ++i) r.push_back(to_int(tok[i], lineno, "edge id"));
        } else if (kw == "partition") {
            if (partition) throw ParseError("line " + std::to_string(lineno) + ": duplicate partition");
            std::vector<Part> p{Part::L};  // index 0 unused
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (tok[i] == "L") p.push_back(Part::L);
                else if (tok[i] == "R") p.push_back(Part::R);
                else throw ParseError("line " + std::to_string(lineno) + ": partition tokens must be L or R");
            }
            partition = std::move(p);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    if (!saw_magic) throw ParseError("missing 'psg 1' header");
    if (!saw_genus || !saw_vertices) throw ParseError("missing genus or vertices header");

    if (sides.size() != static_cast<std::size_t>(4 * g.genus))
        throw ParseError("expected " + std::to_string(4 * g.genus) + " side lines, got " + std::to_string(sides.size()));
    for (auto& [s, ln] : sides) g.sides.push_back(s);
    g.side_cross.resize(g.sides.size());
    for (std::size_t i = 0; i < g.sides.size(); ++i) {
        auto key = std::make_pair(g.sides[i].pair, g.sides[i].primed);
        auto it = cross_lists.find(key);
        if (it == cross_lists.end()) throw ParseError("missing cross list for side " + g.sides[i].label());
        g.side_cross[i] = it->second;
        cross_lists.erase(it);
    }
    if (!cross_lists.empty())
        throw ParseError("line " + std::to_string(cross_line[cross_lists.begin()->first]) +
                         ": cross list names a side that was never declared");

    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id != static_cast<EdgeId>(i + 1))
            throw ParseError("edge ids must be exactly 1..m (missing or duplicate id " + std::to_string(i + 1) + ")");
    g.edges = std::move(edges);

    g.rotation.assign(static_cast<std::size_t>(g.n) + 1, {});
    for (auto& [v, r] : rots) {
        if (v < 1 || v > g.n) throw ParseError("rotation for unknown vertex " + std::to_string(v));
        g.rotation[static_cast<std::size_t>(v)] = std::move(r);
    }
    if (partition) {
        if (partition->size() != static_cast<std::size_t>(g.n) + 1)
            throw ParseError("partition must list one token per vertex");
        g.partition = std::move(partition);
    }

    try {
        validate(g);
    } catch (const std::runtime_error& e) {
        throw ParseError(e.what());
    }
    return g;
}

inline std::string serialize_psg(const EmbeddedGraph& g) {
    std::ostringstream out;
    out << "psg 1\n";
    out << "genus " << g.genus << "\n";
    out << "vertices " << g.n << "\n";
    for (const SideRef& s : g.sides) out << "side " << s.label() << " tail " << s.tail_corner << "\n";
    for (std::size_t i = 0; i < g.sides.size(); ++i) {
        out << "cross " << g.sides[i].label();
        for (const CrossRef& r : g.side_cross[i]) {
            out << " " << r.edge;
            if (g.edge(r.edge).crossings.size() > 1) out << "." << r.k + 1;
        }
        out << "\n";
    }
    for (const Edge& e : g.edges) {
        out << "edge " << e.id << " " << e.u << " " << e.v;
        if (!e.crossings.empty()) {
            out << " cross";
            for (const Crossing& c : e.crossings) out << " " << c.pair << (c.unprimed_first ? "u" : "p");
        }
        out << "\n";
    }
    for (VertexId v = 1; v <= g.n; ++v) {
        out << "rot " << v;
        for (EdgeId id : g.rot(v)) out << " " << id;
        out << "\n";
    }
    if (g.partition) {
        out << "partition";
        for (VertexId v = 1; v <= g.n; ++v) out << " " << (g.part(v) == Part::L ? "L" : "R");
        out << "\n";
    }
    return out.str();
}

}  // namespace isomatch
