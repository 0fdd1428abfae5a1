#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "isomatch/ints.hpp"
#include "isomatch/weights.hpp"

namespace isomatch {

// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
// Every division is exact; a missing pivot means a zero determinant.
inline Int exact_determinant(std::vector<std::vector<Int>> a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("exact_determinant: matrix not square");
    if (n == 0) return 1;
    Int denom = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), denom.get_mpz_t());
            }
            a[i][k] = 0;
        }
        denom = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

// Maximum-matching existence via augmenting paths; the decider's
// determinant-free cross-check.
inline bool cross_check_max_matching(const EmbeddedGraph& g) {
    std::vector<Part> part = bipartition(g);
    std::vector<VertexId> left;
    for (VertexId v = 1; v <= g.n; ++v)
        if (part[static_cast<std::size_t>(v)] == Part::L) left.push_back(v);
    if (left.size() * 2 != static_cast<std::size_t>(g.n)) return false;

    std::vector<VertexId> match(static_cast<std::size_t>(g.n) + 1, 0);
    std::function<bool(VertexId, std::vector<char>&)> augment = [&](VertexId u, std::vector<char>& seen) {
        for (EdgeId eid : g.rot(u)) {
            VertexId w = g.edge(eid).other(u);
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            if (match[static_cast<std::size_t>(w)] == 0 || augment(match[static_cast<std::size_t>(w)], seen)) {
                match[static_cast<std::size_t>(w)] = u;
                match[static_cast<std::size_t>(u)] = w;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (VertexId u : left) {
        std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
        if (augment(u, seen)) ++size;
    }
    return size * 2 == g.n;
}

// L x R matrix with entries 2^(w(e) + shift), zero where no edge exists.
// The shift makes all exponents nonnegative; a perfect matching of shifted
// weight t contributes +-2^t to the determinant.
struct WeightedBiadjacencyMatrix {
    std::vector<VertexId> left, right;       // ascending vertex ids
    std::vector<std::vector<Int>> entries;   // [row][col]
    Int shift = 0;                           // added to every edge weight
};

inline WeightedBiadjacencyMatrix build_biadjacency(const EmbeddedGraph& g, const WeightFunction& w) {
    WeightedBiadjacencyMatrix m;
    std::vector<Part> part = bipartition(g);
    for (VertexId v = 1; v <= g.n; ++v)
        (part[static_cast<std::size_t>(v)] == Part::L ? m.left : m.right).push_back(v);
    if (m.left.size() != m.right.size())
        throw std::invalid_argument("build_biadjacency: sides of the bipartition differ in size");

    Int minw = 0;
    for (const Edge& e : g.edges) minw = std::min(minw, w(e.id));
    m.shift = -minw;  // 0 when all weights already nonnegative

    std::map<VertexId, std::size_t> lrow, rcol;
    for (std::size_t i = 0; i < m.left.size(); ++i) lrow[m.left[i]] = i;
    for (std::size_t j = 0; j < m.right.size(); ++j) rcol[m.right[j]] = j;
    m.entries.assign(m.left.size(), std::vector<Int>(m.right.size(), Int(0)));
    constexpr unsigned long kMaxExponent = 20'000'000;  // keep entries in the few-megabyte range
    for (const Edge& e : g.edges) {
        VertexId l = part[static_cast<std::size_t>(e.u)] == Part::L ? e.u : e.v;
        VertexId r = e.other(l);
        Int exp = w(e.id) + m.shift;
        if (!fits_ulong(exp) || exp.get_ui() > kMaxExponent)
            throw std::runtime_error("build_biadjacency: shifted weight " + to_string(exp) +
                                     " is too large to exponentiate; rebuild the family with tight scales");
        m.entries[lrow.at(l)][rcol.at(r)] += pow2(exp.get_ui());
    }
    return m;
}

struct DecideMemberOutcome {
    Int prime;
    bool det_zero = true;
    Int det_bits;        // bit length of |det|, 0 when zero
    Int lowest_bit;      // position of the lowest set bit, when nonzero
    Int witness_weight;  // unshifted minimum weight, when nonzero
};

struct DecideReport {
    bool has_pm = false;
    bool alarm = false;  // every determinant vanished yet a matching exists
    bool unbalanced = false;
    std::optional<Int> witness_weight;
    std::optional<Int> witness_prime;
    bool matching_cross_check = false;
    std::vector<DecideMemberOutcome> members;
};

// Determinant decision for perfect-matching existence. Family members are
// tried in order until one has a nonzero determinant; its lowest set bit
// gives the minimum matching weight under that member. The augmenting-path
// search stays the independent soundness oracle on the negative side.
inline DecideReport decide_pm(const EmbeddedGraph& g, const WeightFamily& family) {
    DecideReport rep;
    rep.matching_cross_check = cross_check_max_matching(g);

    std::vector<Part> part = bipartition(g);
    std::size_t nl = 0, nr = 0;
    for (VertexId v = 1; v <= g.n; ++v) (part[static_cast<std::size_t>(v)] == Part::L ? nl : nr) += 1;
    if (nl != nr) {
        rep.unbalanced = true;
        rep.has_pm = false;
        if (rep.matching_cross_check) rep.alarm = true;
        return rep;
    }

    for (const FamilyMember& fm : family.members) {
        WeightedBiadjacencyMatrix m = build_biadjacency(g, fm.w);
        Int det = exact_determinant(m.entries);
        DecideMemberOutcome out{fm.prime, det == 0, Int(0), Int(0), Int(0)};
        if (det != 0) {
            out.det_bits = static_cast<long>(bit_length(det));
            out.lowest_bit = static_cast<long>(lowest_set_bit(det));
            out.witness_weight = out.lowest_bit - m.shift * Int(g.n / 2);
            rep.has_pm = true;
            rep.witness_weight = out.witness_weight;
            rep.witness_prime = fm.prime;
            rep.members.push_back(std::move(out));
            break;
        }
        rep.members.push_back(std::move(out));
    }
    if (!rep.has_pm && rep.matching_cross_check) rep.alarm = true;  // isolation failed everywhere
    if (rep.has_pm && !rep.matching_cross_check) rep.alarm = true;  // cannot happen with exact arithmetic
    return rep;
}

}  // namespace isomatch
