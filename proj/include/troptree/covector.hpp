#pragma once

// Covector graphs: bipartite incidence between the m points of a
// configuration and the N coordinate directions, recording which coordinates
// attain each point's shifted maximum.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "troptree/errors.hpp"
#include "troptree/torus.hpp"

namespace troptree {

struct CovectorGraph {
    std::size_t num_points = 0;
    std::size_t num_coords = 0;
    std::vector<std::pair<int, int>> edges;  // (point, coord), 0-based, sorted

    void normalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    bool has_edge(int i, int j) const {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
    }

    // coords incident to point i
    std::vector<int> point_row(int i) const {
        std::vector<int> out;
        for (const auto& [p, c] : edges)
            if (p == i) out.push_back(c);
        return out;
    }

    // points incident to coord j
    std::vector<int> coord_column(int j) const {
        std::vector<int> out;
        for (const auto& [p, c] : edges)
            if (c == j) out.push_back(p);
        return out;
    }

    friend bool operator==(const CovectorGraph& a, const CovectorGraph& b) = default;
};

// 1-based edge list like "(1,1) (2,3)"; stable across runs.
inline std::string format_graph(const CovectorGraph& g) {
    std::string s;
    for (const auto& [i, j] : g.edges) {
        if (!s.empty()) s += ' ';
        s += '(' + std::to_string(i + 1) + ',' + std::to_string(j + 1) + ')';
    }
    return s;
}

// Edge (i,j) present iff coordinate j attains max_k (v_ik - x_k).
inline CovectorGraph covector_graph_of_point(const TorusPoint& x, const PointConfig& v) {
    if (x.dim() != v.num_coords())
        throw InputError("covector graph: dimension mismatch");
    CovectorGraph g;
    g.num_points = v.num_points();
    g.num_coords = v.num_coords();
    for (std::size_t i = 0; i < v.num_points(); ++i) {
        std::vector<BigM> shifted;
        shifted.reserve(x.dim());
        for (std::size_t j = 0; j < x.dim(); ++j)
            shifted.push_back(v.rows[i][j] - x.coords[j]);
        BigM top = max_value(shifted);
        for (std::size_t j = 0; j < x.dim(); ++j)
            if (shifted[j] == top)
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    g.normalize();
    return g;
}

} // namespace troptree
