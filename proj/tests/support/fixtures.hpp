#pragma once

// Shared test data and small generators.

#include <random>
#include <vector>

#include "troptree/bigm.hpp"
#include "troptree/torus.hpp"

namespace troptree::testing {

// The running 3x3 affine family: rows (M+2, -M-3, 1), (-6, 2, 4),
// (-M+4, -M-10, 2M+6).  Its median is (0, (-2M-11)/3, (2M+11)/3) and its
// Fermat-Weber set is the tropical hull of the rows.
inline PointConfig example5() {
    return PointConfig({
        {BigM(2, 1), BigM(-3, -1), BigM(1, 0)},
        {BigM(-6, 0), BigM(2, 0), BigM(4, 0)},
        {BigM(4, -1), BigM(-10, -1), BigM(6, 2)},
    });
}

inline Rational random_rational(std::mt19937& rng, int lo = -20, int hi = 20, int maxden = 6) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
    return Rational(num(rng), den(rng));
}

inline PointConfig random_numeric_config(std::mt19937& rng, std::size_t m, std::size_t n,
                                         int lo = -20, int hi = 20) {
    std::uniform_int_distribution<int> entry(lo, hi);
    std::vector<std::vector<BigM>> rows(m);
    for (auto& row : rows) {
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.emplace_back(entry(rng));
    }
    return PointConfig(std::move(rows));
}

// Integral affine family U + M*W.
inline PointConfig random_affine_config(std::mt19937& rng, std::size_t m, std::size_t n,
                                        int ulo = -8, int uhi = 8, int wlo = -3, int whi = 3) {
    std::uniform_int_distribution<int> ue(ulo, uhi), we(wlo, whi);
    std::vector<std::vector<BigM>> rows(m);
    for (auto& row : rows) {
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.emplace_back(BigM(ue(rng), we(rng)));
    }
    return PointConfig(std::move(rows));
}

// A random point of tconv(V): a tropical combination of the rows.
inline TorusPoint random_hull_point(std::mt19937& rng, const PointConfig& v) {
    std::uniform_int_distribution<int> coef(-10, 10);
    TorusPoint x;
    x.coords.assign(v.num_coords(), BigM());
    bool first = true;
    for (std::size_t i = 0; i < v.num_points(); ++i) {
        BigM lambda(coef(rng));
        for (std::size_t j = 0; j < v.num_coords(); ++j) {
            BigM cand = lambda + v.rows[i][j];
            if (first || x.coords[j] < cand) x.coords[j] = cand;
        }
        first = false;
    }
    return x;
}

} // namespace troptree::testing
