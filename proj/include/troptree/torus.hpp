#pragma once

// Points and point configurations in the tropical projective torus R^N / R1.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "troptree/bigm.hpp"
#include "troptree/errors.hpp"

namespace troptree {

// A point of the torus, carried as one concrete representative.  Equality is
// modulo the all-ones direction; the canonical representative has coordinate
// sum zero.
struct TorusPoint {
    std::vector<BigM> coords;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<BigM> c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }
};

inline TorusPoint canonicalize(const TorusPoint& x) {
    if (x.coords.empty()) throw InputError("empty point");
    BigM sum(0);
    for (const BigM& c : x.coords) sum += c;
    Rational inv_n(1, static_cast<int>(x.coords.size()));
    BigM shift = inv_n * sum;
    TorusPoint out;
    out.coords.reserve(x.coords.size());
    for (const BigM& c : x.coords) out.coords.push_back(c - shift);
    return out;
}

inline bool torus_equal(const TorusPoint& x, const TorusPoint& y) {
    if (x.dim() != y.dim()) return false;
    return canonicalize(x).coords == canonicalize(y).coords;
}

// Asymmetric tropical distance: sum_i(x_i - y_i) - n * min_j(x_j - y_j).
// Invariant under shifting either argument along the all-ones direction.
inline BigM asym_distance(const TorusPoint& x, const TorusPoint& y) {
    if (x.dim() != y.dim() || x.dim() == 0)
        throw InputError("asym_distance: dimension mismatch");
    BigM sum(0);
    std::vector<BigM> diff;
    diff.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        diff.push_back(x.coords[i] - y.coords[i]);
        sum += diff.back();
    }
    BigM lo = min_value(diff);
    return sum - Rational(static_cast<int>(x.dim())) * lo;
}

// m points in the torus as rows of an m x N matrix; in symbolic mode the
// slopes house W and the constants U of the affine family V(M) = U + M*W.
struct PointConfig {
    std::vector<std::vector<BigM>> rows;

    PointConfig() = default;
    explicit PointConfig(std::vector<std::vector<BigM>> r) : rows(std::move(r)) {
        validate();
    }

    std::size_t num_points() const { return rows.size(); }
    std::size_t num_coords() const { return rows.empty() ? 0 : rows[0].size(); }

    TorusPoint point(std::size_t i) const { return TorusPoint(rows[i]); }

    bool is_numeric() const {
        for (const auto& row : rows)
            for (const BigM& v : row)
                if (v.slope() != 0) return false;
        return true;
    }

    PointConfig eval_at(const Rational& m0) const {
        PointConfig out;
        out.rows.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<BigM> r;
            r.reserve(row.size());
            for (const BigM& v : row) r.emplace_back(v.eval(m0));
            out.rows.push_back(std::move(r));
        }
        return out;
    }

private:
    void validate() const {
        if (rows.empty()) throw InputError("point configuration needs at least one point");
        std::size_t n = rows[0].size();
        if (n == 0) throw InputError("point configuration needs at least one coordinate");
        for (const auto& row : rows)
            if (row.size() != n) throw InputError("ragged point configuration");
    }
};

// Sum of asymmetric distances between x and the rows of V, with x in the
// first slot of the distance.  This is the orientation under which the
// minimizer set is the central covector cell for the max convention: the
// rows of the running 3x3 family all attain the optimum this way round, and
// the transportation dual of this objective is the maximization problem.
inline BigM fw_objective(const TorusPoint& x, const PointConfig& v) {
    if (x.dim() != v.num_coords()) throw InputError("fw_objective: dimension mismatch");
    BigM total(0);
    for (std::size_t i = 0; i < v.num_points(); ++i)
        total += asym_distance(x, v.point(i));
    return total;
}

} // namespace troptree
