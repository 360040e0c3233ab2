#pragma once

// Polytropes as systems of difference constraints x_j - x_k <= a[j][k],
// closed under all-pairs shortest paths over (min, +).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "troptree/covector.hpp"
#include "troptree/errors.hpp"
#include "troptree/torus.hpp"

namespace troptree {

// A missing constraint is +infinity; the sentinel never enters BigM
// arithmetic, it only absorbs in the min/plus steps below.
using Bound = std::optional<BigM>;

inline bool bound_less(const Bound& a, const Bound& b) {
    if (!b) return a.has_value();
    if (!a) return false;
    return *a < *b;
}

inline Bound bound_add(const Bound& a, const Bound& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

struct Polytrope {
    // a[j][k] bounds x_j - x_k from above
    std::vector<std::vector<Bound>> a;

    std::size_t dim() const { return a.size(); }

    bool is_finite() const {
        for (const auto& row : a)
            for (const Bound& b : row)
                if (!b) return false;
        return true;
    }
};

// Each edge (i,j) of the graph pins coordinate j as an argmax of row i, which
// bounds x_j - x_k by v_ij - v_ik for every k.  Coordinates with no incident
// edge stay unconstrained.
inline Polytrope polytrope_from_covector_graph(const CovectorGraph& g, const PointConfig& v) {
    if (g.edges.empty()) throw InputError("empty covector graph");
    if (g.num_points != v.num_points() || g.num_coords != v.num_coords())
        throw InputError("covector graph does not match configuration");
    std::size_t n = v.num_coords();
    Polytrope p;
    p.a.assign(n, std::vector<Bound>(n));
    for (std::size_t j = 0; j < n; ++j) p.a[j][j] = BigM(0);
    for (const auto& [i, j] : g.edges) {
        for (std::size_t k = 0; k < n; ++k) {
            BigM cand = v.rows[i][j] - v.rows[i][k];
            std::size_t ju = static_cast<std::size_t>(j);
            if (!p.a[ju][k] || cand < *p.a[ju][k]) p.a[ju][k] = cand;
        }
    }
    return p;
}

namespace detail {

// Follows next-hop pointers from j back to j; any repeated node closes the
// witness cycle.
inline std::vector<int> walk_cycle(const std::vector<std::vector<int>>& nxt, int j) {
    std::vector<int> seq;
    int u = j;
    for (std::size_t steps = 0; steps <= nxt.size(); ++steps) {
        for (std::size_t t = 0; t < seq.size(); ++t)
            if (seq[t] == u) return {seq.begin() + static_cast<long>(t), seq.end()};
        seq.push_back(u);
        int next = nxt[u][j];
        if (next < 0) break;
        u = next;
    }
    return seq;
}

} // namespace detail

// Floyd-Warshall over (min, +).  Throws InfeasibleCell with a witness cycle
// if any diagonal entry turns negative.
inline Polytrope kleene_closure(const Polytrope& p) {
    std::size_t n = p.dim();
    for (const auto& row : p.a)
        if (row.size() != n) throw InputError("closure needs a square matrix");
    Polytrope c = p;
    for (std::size_t j = 0; j < n; ++j) {
        if (!c.a[j][j] || BigM(0) < *c.a[j][j]) c.a[j][j] = BigM(0);
    }
    std::vector<std::vector<int>> nxt(n, std::vector<int>(n, -1));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (c.a[j][k]) nxt[j][k] = static_cast<int>(k);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Bound cand = bound_add(c.a[j][l], c.a[l][k]);
                if (bound_less(cand, c.a[j][k])) {
                    c.a[j][k] = cand;
                    nxt[j][k] = nxt[j][l];
                }
            }
    for (std::size_t j = 0; j < n; ++j)
        if (*c.a[j][j] < BigM(0)) {
            std::vector<int> cycle = detail::walk_cycle(nxt, static_cast<int>(j));
            throw InfeasibleCell("infeasible cell: negative cycle in difference constraints", cycle);
        }
    return c;
}

// Tropical vertices of a closed, bounded polytrope.  Vertex k maximizes the
// functional N*e_k - 1; reading the closed matrix, it is the point with
// x_j = -a[k][j].  Duplicates collapse when the polytrope is not
// full-dimensional.  Returned points are canonical (coordinate sum zero).
inline std::vector<TorusPoint> tropical_vertices(const Polytrope& p) {
    std::size_t n = p.dim();
    if (n == 0) throw InputError("empty polytrope");
    if (!p.is_finite()) throw InputError("tropical vertices need a bounded polytrope");
    std::vector<TorusPoint> out;
    for (std::size_t k = 0; k < n; ++k) {
        TorusPoint x;
        x.coords.reserve(n);
        for (std::size_t j = 0; j < n; ++j) x.coords.push_back(-*p.a[k][j]);
        TorusPoint canon = canonicalize(x);
        bool dup = false;
        for (const TorusPoint& seen : out)
            if (seen.coords == canon.coords) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(canon));
    }
    return out;
}

// Exact membership test against every finite constraint.
inline bool satisfies(const Polytrope& p, const TorusPoint& x) {
    std::size_t n = p.dim();
    if (x.dim() != n) return false;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (p.a[j][k] && *p.a[j][k] < x.coords[j] - x.coords[k]) return false;
    return true;
}

} // namespace troptree
