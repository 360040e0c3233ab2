#pragma once

// Fermat-Weber sets for the asymmetric tropical distance.  The set of
// minimizers is the central covector cell; we extract it as a closed
// difference-constraint system, read off the tropical vertices, and take the
// tropical median as the ordinary average of the distinct vertices.

#include <cstddef>
#include <vector>

#include "troptree/covector.hpp"
#include "troptree/errors.hpp"
#include "troptree/polytrope.hpp"
#include "troptree/torus.hpp"
#include "troptree/transport.hpp"

namespace troptree {

struct FermatWeberResult {
    CovectorGraph central_graph;
    Polytrope polytrope;              // closed
    std::vector<TorusPoint> vertices; // distinct, canonical representatives
    TorusPoint median;                // canonical representative
    BigM objective;
};

inline FermatWeberResult fermat_weber(const PointConfig& v) {
    FermatWeberResult r;
    r.central_graph = central_covector_graph(v);

    Polytrope cell = polytrope_from_covector_graph(r.central_graph, v);
    try {
        r.polytrope = kleene_closure(cell);
    } catch (const InfeasibleCell&) {
        throw InternalError("Fermat-Weber cell is infeasible; this contradicts its nonemptiness");
    }
    if (!r.polytrope.is_finite())
        throw InternalError("Fermat-Weber cell is unbounded; this contradicts its boundedness");

    r.vertices = tropical_vertices(r.polytrope);

    TorusPoint sum;
    sum.coords.assign(v.num_coords(), BigM(0));
    for (const TorusPoint& t : r.vertices)
        for (std::size_t j = 0; j < sum.coords.size(); ++j) sum.coords[j] += t.coords[j];
    Rational inv(1, static_cast<long>(r.vertices.size()));
    for (BigM& c : sum.coords) c = inv * c;
    r.median = canonicalize(sum);

    r.objective = fw_objective(r.median, v);
    for (const TorusPoint& t : r.vertices)
        if (fw_objective(t, v) != r.objective)
            throw InternalError("a tropical vertex misses the optimal objective value");
    return r;
}

// Theorem-style stabilization bound: binom(m+N-2, m-1) * ||U||_1 for the
// affine family U + M*W with integral W.  Beyond this value of M the central
// covector graph no longer changes.
inline Rational stabilization_threshold(const std::vector<std::vector<Rational>>& u,
                                        const std::vector<std::vector<Rational>>& w,
                                        std::size_t m, std::size_t n) {
    if (u.size() != m || w.size() != m)
        throw InputError("threshold: matrix shapes do not match m");
    Rational norm1 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (u[i].size() != n || w[i].size() != n)
            throw InputError("threshold: matrix shapes do not match n");
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_integral(w[i][j]))
                throw InputError("threshold: the direction matrix W must be integral");
            norm1 += rat_abs(u[i][j]);
        }
    }
    return Rational(binomial(static_cast<unsigned>(m + n - 2), static_cast<unsigned>(m - 1))) * norm1;
}

inline Rational stabilization_threshold(const PointConfig& v) {
    std::vector<std::vector<Rational>> u, w;
    for (const auto& row : v.rows) {
        std::vector<Rational> ur, wr;
        for (const BigM& x : row) {
            ur.push_back(x.constant());
            wr.push_back(x.slope());
        }
        u.push_back(std::move(ur));
        w.push_back(std::move(wr));
    }
    return stabilization_threshold(u, w, v.num_points(), v.num_coords());
}

} // namespace troptree
