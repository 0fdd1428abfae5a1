#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "isomatch/schema.hpp"

namespace isomatch {

// All perfect matchings, by backtracking over the lowest-id uncovered vertex
// with candidate edges tried in rotation order. Deterministic, so reports
// and regression files are diffable.
inline std::vector<Matching> enumerate_pms(const EmbeddedGraph& g, int vertex_limit = 24) {
    if (g.n > vertex_limit)
        throw std::invalid_argument("enumerate_pms: " + std::to_string(g.n) + " vertices exceed the limit of " +
                                    std::to_string(vertex_limit));
    std::vector<Matching> out;
    std::vector<char> covered(static_cast<std::size_t>(g.n) + 1, 0);
    std::vector<EdgeId> chosen;

    std::function<void()> go = [&]() {
        VertexId v = 0;
        for (VertexId w = 1; w <= g.n; ++w)
            if (!covered[static_cast<std::size_t>(w)]) {
                v = w;
                break;
            }
        if (v == 0) {
            out.push_back(make_matching(g, chosen));
            return;
        }
        for (EdgeId eid : g.rot(v)) {
            VertexId w = g.edge(eid).other(v);
            if (covered[static_cast<std::size_t>(w)]) continue;
            covered[static_cast<std::size_t>(v)] = covered[static_cast<std::size_t>(w)] = 1;
            chosen.push_back(eid);
            go();
            chosen.pop_back();
            covered[static_cast<std::size_t>(v)] = covered[static_cast<std::size_t>(w)] = 0;
        }
    };
    go();
    return out;
}

}  // namespace isomatch
