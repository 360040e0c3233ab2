#pragma once

// Exact transportation solver.  The central covector graph of a point
// configuration is the union of supports of all optimal solutions of the
// transportation problem that maximizes <cost, flow> with uniform margins;
// its dual cell is the Fermat-Weber set.

#include <cstddef>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "troptree/covector.hpp"
#include "troptree/errors.hpp"
#include "troptree/torus.hpp"

namespace troptree {

struct TransportationInstance {
    std::vector<std::vector<BigM>> cost;  // m x n
    std::vector<std::int64_t> supply;     // per row node, positive
    std::vector<std::int64_t> demand;     // per column node, positive
};

// Uniform-margin instance encoding the vertex barycenter of the product of
// simplices, scaled by m*n so every margin is integral: each of the m rows
// supplies n units, each of the n columns demands m.
inline TransportationInstance central_instance(const PointConfig& v) {
    TransportationInstance t;
    t.cost = v.rows;
    t.supply.assign(v.num_points(), static_cast<std::int64_t>(v.num_coords()));
    t.demand.assign(v.num_coords(), static_cast<std::int64_t>(v.num_points()));
    return t;
}

struct TransportOptimum {
    std::vector<std::vector<std::int64_t>> flow;  // one optimal basic solution
    std::vector<BigM> row_potential;
    std::vector<BigM> col_potential;
    BigM objective;

    BigM reduced_cost(const TransportationInstance& t, std::size_t i, std::size_t j) const {
        return t.cost[i][j] - row_potential[i] - col_potential[j];
    }
};

namespace detail {

// Primal network simplex for the (maximizing) transportation problem.
// Pivots use only BigM add/subtract/compare on costs; flows stay integral.
// Entering and leaving arcs follow Bland's rule, so the walk terminates.
class NetworkSimplex {
public:
    explicit NetworkSimplex(const TransportationInstance& t) : t_(t) {
        m_ = t.supply.size();
        n_ = t.demand.size();
        std::int64_t total_supply = 0, total_demand = 0;
        for (std::int64_t s : t.supply) {
            if (s <= 0) throw InputError("transportation: supplies must be positive");
            total_supply += s;
        }
        for (std::int64_t d : t.demand) {
            if (d <= 0) throw InputError("transportation: demands must be positive");
            total_demand += d;
        }
        if (total_supply != total_demand)
            throw InputError("transportation: supply and demand must balance");
        if (t.cost.size() != m_) throw InputError("transportation: cost matrix shape");
        for (const auto& row : t.cost)
            if (row.size() != n_) throw InputError("transportation: cost matrix shape");
    }

    TransportOptimum solve() {
        northwest_corner();
        for (;;) {
            compute_potentials();
            int entering = find_entering();
            if (entering < 0) break;
            pivot(static_cast<std::size_t>(entering));
        }
        TransportOptimum out;
        out.flow = flow_;
        out.row_potential = u_;
        out.col_potential = w_;
        out.objective = BigM(0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (flow_[i][j] != 0)
                    out.objective += Rational(flow_[i][j]) * t_.cost[i][j];
        return out;
    }

private:
    std::size_t arc_id(std::size_t i, std::size_t j) const { return i * n_ + j; }

    void northwest_corner() {
        flow_.assign(m_, std::vector<std::int64_t>(n_, 0));
        basic_.assign(m_ * n_, false);
        std::vector<std::int64_t> s = t_.supply, d = t_.demand;
        std::size_t i = 0, j = 0;
        while (i < m_ && j < n_) {
            std::int64_t q = std::min(s[i], d[j]);
            flow_[i][j] = q;
            basic_[arc_id(i, j)] = true;
            s[i] -= q;
            d[j] -= q;
            if (s[i] == 0 && d[j] == 0) {
                // keep the basis a spanning tree: step only one index,
                // leaving a degenerate zero on the next arc
                if (i + 1 < m_)
                    ++i;
                else
                    ++j;
            } else if (s[i] == 0) {
                ++i;
            } else {
                ++j;
            }
        }
    }

    // node ids: rows 0..m-1, columns m..m+n-1
    std::vector<std::vector<std::pair<int, std::size_t>>> tree_adjacency() const {
        std::vector<std::vector<std::pair<int, std::size_t>>> adj(m_ + n_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (basic_[arc_id(i, j)]) {
                    adj[i].emplace_back(static_cast<int>(m_ + j), arc_id(i, j));
                    adj[m_ + j].emplace_back(static_cast<int>(i), arc_id(i, j));
                }
        return adj;
    }

    void compute_potentials() {
        u_.assign(m_, BigM(0));
        w_.assign(n_, BigM(0));
        auto adj = tree_adjacency();
        std::vector<char> seen(m_ + n_, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            for (const auto& [other, arc] : adj[static_cast<std::size_t>(node)]) {
                if (seen[static_cast<std::size_t>(other)]) continue;
                seen[static_cast<std::size_t>(other)] = 1;
                std::size_t i = arc / n_, j = arc % n_;
                if (other >= static_cast<int>(m_))
                    w_[j] = t_.cost[i][j] - u_[i];
                else
                    u_[i] = t_.cost[i][j] - w_[j];
                stack.push_back(other);
            }
        }
        for (char c : seen)
            if (!c) throw InternalError("transportation basis is not a spanning tree");
    }

    int find_entering() const {
        for (std::size_t a = 0; a < m_ * n_; ++a) {
            if (basic_[a]) continue;
            std::size_t i = a / n_, j = a % n_;
            if (u_[i] + w_[j] < t_.cost[i][j]) return static_cast<int>(a);
        }
        return -1;
    }

    void pivot(std::size_t entering) {
        std::size_t ei = entering / n_, ej = entering % n_;
        // unique tree path from the entering arc's row node to its column node
        auto adj = tree_adjacency();
        std::size_t nn = m_ + n_;
        std::vector<int> parent(nn, -1);
        std::vector<std::size_t> parent_arc(nn, 0);
        std::vector<char> seen(nn, 0);
        std::queue<int> q;
        q.push(static_cast<int>(ei));
        seen[ei] = 1;
        int target = static_cast<int>(m_ + ej);
        while (!q.empty()) {
            int node = q.front();
            q.pop();
            if (node == target) break;
            for (const auto& [other, arc] : adj[static_cast<std::size_t>(node)]) {
                if (seen[static_cast<std::size_t>(other)]) continue;
                seen[static_cast<std::size_t>(other)] = 1;
                parent[static_cast<std::size_t>(other)] = node;
                parent_arc[static_cast<std::size_t>(other)] = arc;
                q.push(other);
            }
        }
        if (!seen[static_cast<std::size_t>(target)])
            throw InternalError("transportation basis is disconnected");

        // path arcs from the row end to the column end; even positions lose
        // flow when the entering arc gains
        std::vector<std::size_t> path;
        for (int node = target; node != static_cast<int>(ei); node = parent[static_cast<std::size_t>(node)])
            path.push_back(parent_arc[static_cast<std::size_t>(node)]);
        std::vector<std::size_t> losing, gaining;
        for (std::size_t t = 0; t < path.size(); ++t) {
            std::size_t arc = path[path.size() - 1 - t];
            if (t % 2 == 0)
                losing.push_back(arc);
            else
                gaining.push_back(arc);
        }

        std::int64_t theta = -1;
        std::size_t leaving = 0;
        for (std::size_t arc : losing) {
            std::int64_t f = flow_[arc / n_][arc % n_];
            if (theta < 0 || f < theta || (f == theta && arc < leaving)) {
                theta = f;
                leaving = arc;
            }
        }
        if (theta < 0) throw InternalError("transportation pivot found no leaving arc");

        flow_[ei][ej] += theta;
        for (std::size_t arc : gaining) flow_[arc / n_][arc % n_] += theta;
        for (std::size_t arc : losing) flow_[arc / n_][arc % n_] -= theta;
        basic_[entering] = true;
        basic_[leaving] = false;
    }

    const TransportationInstance& t_;
    std::size_t m_ = 0, n_ = 0;
    std::vector<std::vector<std::int64_t>> flow_;
    std::vector<char> basic_;
    std::vector<BigM> u_;
    std::vector<BigM> w_;
};

// Max-flow feasibility probe on the zero-reduced-cost subgraph: is there a
// transportation plan that still routes everything after one unit is forced
// through (i0, j0)?  Plain Edmonds-Karp on a dense residual matrix.
class TightSubgraphProbe {
public:
    TightSubgraphProbe(std::vector<std::vector<char>> tight,
                       std::vector<std::int64_t> supply,
                       std::vector<std::int64_t> demand)
        : tight_(std::move(tight)), supply_(std::move(supply)), demand_(std::move(demand)) {
        m_ = supply_.size();
        n_ = demand_.size();
    }

    bool admits_flow_through(std::size_t i0, std::size_t j0) const {
        std::size_t nn = m_ + n_ + 2;
        std::size_t src = m_ + n_, snk = m_ + n_ + 1;
        std::vector<std::vector<std::int64_t>> cap(nn, std::vector<std::int64_t>(nn, 0));
        std::int64_t total = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            cap[src][i] = supply_[i] - (i == i0 ? 1 : 0);
            total += cap[src][i];
        }
        for (std::size_t j = 0; j < n_; ++j)
            cap[m_ + j][snk] = demand_[j] - (j == j0 ? 1 : 0);
        std::int64_t big = total + 1;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (tight_[i][j]) cap[i][m_ + j] = big;

        std::int64_t pushed = 0;
        for (;;) {
            std::vector<int> parent(nn, -1);
            parent[src] = static_cast<int>(src);
            std::queue<std::size_t> q;
            q.push(src);
            while (!q.empty() && parent[snk] < 0) {
                std::size_t node = q.front();
                q.pop();
                for (std::size_t other = 0; other < nn; ++other)
                    if (parent[other] < 0 && cap[node][other] > 0) {
                        parent[other] = static_cast<int>(node);
                        q.push(other);
                    }
            }
            if (parent[snk] < 0) break;
            std::int64_t bottleneck = big;
            for (std::size_t node = snk; node != src;) {
                std::size_t prev = static_cast<std::size_t>(parent[node]);
                bottleneck = std::min(bottleneck, cap[prev][node]);
                node = prev;
            }
            for (std::size_t node = snk; node != src;) {
                std::size_t prev = static_cast<std::size_t>(parent[node]);
                cap[prev][node] -= bottleneck;
                cap[node][prev] += bottleneck;
                node = prev;
            }
            pushed += bottleneck;
        }
        return pushed == total;
    }

private:
    std::vector<std::vector<char>> tight_;
    std::vector<std::int64_t> supply_;
    std::vector<std::int64_t> demand_;
    std::size_t m_ = 0, n_ = 0;
};

} // namespace detail

inline TransportOptimum solve_transportation(const TransportationInstance& t) {
    return detail::NetworkSimplex(t).solve();
}

// Union of supports of all optimal transportation plans for the central
// instance.  An arc belongs iff it has zero reduced cost against the one
// optimal dual we hold and some optimal plan puts mass on it; the latter is
// decided by the feasibility probe unless the arc already carries flow.
inline CovectorGraph central_covector_graph(const PointConfig& v) {
    TransportationInstance t = central_instance(v);
    TransportOptimum opt = solve_transportation(t);
    std::size_t m = v.num_points(), n = v.num_coords();

    std::vector<std::vector<char>> tight(m, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            tight[i][j] = opt.reduced_cost(t, i, j).is_zero() ? 1 : 0;

    detail::TightSubgraphProbe probe(tight, t.supply, t.demand);
    CovectorGraph g;
    g.num_points = m;
    g.num_coords = n;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!tight[i][j]) continue;
            if (opt.flow[i][j] > 0 || probe.admits_flow_through(i, j))
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    g.normalize();
    return g;
}

} // namespace troptree
