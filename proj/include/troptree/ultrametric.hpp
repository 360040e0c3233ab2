#pragma once

// Ultrametrics over a fixed taxa list, their equivalence with equidistant
// trees, rooted triplets, and nestings.  Coordinates of tree space are the
// unordered taxon pairs in lexicographic order, which fixes the bijection
// with torus points.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "troptree/bigm.hpp"
#include "troptree/errors.hpp"
#include "troptree/phylo_tree.hpp"
#include "troptree/torus.hpp"

namespace troptree {

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// index of pair (i, j), i < j, in lexicographic order
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

struct TripleWitness {
    std::size_t i, j, k;  // D_ij > max(D_ik, D_jk)
};

// Checks the ultrametric inequality on every triple under the eventual
// order; returns a violating triple if there is one.
inline std::optional<TripleWitness> ultrametric_violation(std::size_t n,
                                                          const std::vector<BigM>& values) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const BigM& dij = values[pair_index(n, i, j)];
                const BigM& dik = values[pair_index(n, i, k)];
                const BigM& djk = values[pair_index(n, j, k)];
                if (dik < dij && djk < dij) return TripleWitness{i, j, k};
                if (dij < dik && djk < dik) return TripleWitness{i, k, j};
                if (dij < djk && dik < djk) return TripleWitness{j, k, i};
            }
    return std::nullopt;
}

// Symmetric dissimilarity map with zero diagonal, stored as the upper
// triangle in pair order.  Construction validates nonnegativity and the
// ultrametric inequality exactly.
class Ultrametric {
public:
    Ultrametric(std::vector<std::string> taxa, std::vector<BigM> values)
        : taxa_(std::move(taxa)), values_(std::move(values)) {
        if (taxa_.size() < 2) throw InputError("an ultrametric needs at least two taxa");
        for (std::size_t i = 0; i < taxa_.size(); ++i) {
            if (!valid_taxon_name(taxa_[i])) throw InputError("invalid taxon '" + taxa_[i] + "'");
            if (i > 0 && !(taxa_[i - 1] < taxa_[i]))
                throw InputError("taxa must be strictly sorted");
        }
        if (values_.size() != pair_count(taxa_.size()))
            throw InputError("ultrametric value count does not match the taxa");
        for (const BigM& v : values_)
            if (v < BigM(0)) throw InputError("ultrametric entries must be nonnegative");
        if (auto w = ultrametric_violation(taxa_.size(), values_))
            throw InputError("not an ultrametric: D(" + taxa_[w->i] + "," + taxa_[w->j] +
                             ") exceeds both D(" + taxa_[w->i] + "," + taxa_[w->k] +
                             ") and D(" + taxa_[w->j] + "," + taxa_[w->k] + ")");
    }

    const std::vector<std::string>& taxa() const { return taxa_; }
    std::size_t num_taxa() const { return taxa_.size(); }
    const std::vector<BigM>& values() const { return values_; }

    const BigM& at(std::size_t i, std::size_t j) const {
        return values_[pair_index(taxa_.size(), i, j)];
    }

    std::size_t taxon_index(const std::string& name) const {
        auto it = std::lower_bound(taxa_.begin(), taxa_.end(), name);
        if (it == taxa_.end() || *it != name) throw InputError("unknown taxon '" + name + "'");
        return static_cast<std::size_t>(it - taxa_.begin());
    }

    TorusPoint as_torus_point() const { return TorusPoint(values_); }

    friend bool operator==(const Ultrametric& a, const Ultrametric& b) {
        return a.taxa_ == b.taxa_ && a.values_ == b.values_;
    }

private:
    std::vector<std::string> taxa_;
    std::vector<BigM> values_;
};

// Cophenetic distances of an equidistant tree: leaves across distinct child
// subtrees of a node at height h sit at distance 2h.
inline Ultrametric tree_to_ultrametric(const PhyloTree& t) {
    std::vector<std::string> taxa = taxa_of(t);
    std::size_t n = taxa.size();
    if (n < 2) throw InputError("tree needs at least two taxa");
    auto index_of = [&](const std::string& name) {
        return static_cast<std::size_t>(
            std::lower_bound(taxa.begin(), taxa.end(), name) - taxa.begin());
    };
    BigM height = tree_height(t);
    std::vector<BigM> values(pair_count(n), BigM(0));
    std::function<std::vector<std::size_t>(int, const BigM&)> walk =
        [&](int node, const BigM& depth) -> std::vector<std::size_t> {
        if (t.at(node).is_leaf()) return {index_of(t.at(node).taxon)};
        BigM pair_dist = Rational(2) * (height - depth);
        std::vector<std::size_t> mine;
        for (int c : t.at(node).children) {
            auto sub = walk(c, depth + t.at(c).length);
            for (std::size_t a : mine)
                for (std::size_t b : sub) values[pair_index(n, a, b)] = pair_dist;
            mine.insert(mine.end(), sub.begin(), sub.end());
        }
        return mine;
    };
    walk(t.root, BigM(0));
    return Ultrametric(std::move(taxa), std::move(values));
}

// Single-linkage construction: merge clusters in increasing order of the
// distinct values, placing each merge node at half the value.  Exact inverse
// of tree_to_ultrametric on canonical forms.
inline PhyloTree ultrametric_to_tree(const Ultrametric& d) {
    std::size_t n = d.num_taxa();
    PhyloTree out;
    std::vector<int> cluster_node(n);
    std::vector<BigM> cluster_height(n, BigM(0));
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) {
        parent[i] = i;
        cluster_node[i] = static_cast<int>(out.nodes.size());
        out.nodes.emplace_back();
        out.at(cluster_node[i]).taxon = d.taxa()[i];
    }
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::vector<BigM> levels = d.values();
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    for (const BigM& level : levels) {
        // components of the "distance == level" relation on current clusters
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (d.at(i, j) == level) {
                    std::size_t a = find(i), b = find(j);
                    if (a != b) parent[a] = b;
                }
        for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

        BigM node_height = Rational(1, 2) * level;
        for (auto& [rep, members] : groups) {
            std::set<int> child_nodes;
            for (std::size_t i : members) child_nodes.insert(cluster_node[i]);
            if (child_nodes.size() < 2) continue;
            int id = static_cast<int>(out.nodes.size());
            out.nodes.emplace_back();
            for (int c : child_nodes) {
                out.at(id).children.push_back(c);
                // child cluster heights are equal within a cluster
            }
            for (int c : out.at(id).children) {
                BigM child_h(0);
                for (std::size_t i : members)
                    if (cluster_node[i] == c) child_h = cluster_height[i];
                out.at(c).length = node_height - child_h;
            }
            for (std::size_t i : members) {
                cluster_node[i] = id;
                cluster_height[i] = node_height;
            }
        }
    }

    std::set<int> tops;
    for (std::size_t i = 0; i < n; ++i) tops.insert(cluster_node[i]);
    if (tops.size() != 1)
        throw InternalError("single linkage did not converge to a single tree");
    out.root = *tops.begin();
    return canonical(out);
}

struct Triplet {
    std::size_t a, b, c;  // pair {a, b} below, with a < b; c the outgroup

    friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

inline std::string format_triplet(const Triplet& t, const std::vector<std::string>& taxa) {
    return taxa[t.a] + "," + taxa[t.b] + "|" + taxa[t.c];
}

// ab|c exactly when D_ab is strictly below the two equal larger values;
// equilateral triples stay unresolved.
inline std::vector<Triplet> rooted_triplets(const Ultrametric& d) {
    std::size_t n = d.num_taxa();
    std::vector<Triplet> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const BigM& dij = d.at(i, j);
                const BigM& dik = d.at(i, k);
                const BigM& djk = d.at(j, k);
                if (dij < dik && dij < djk)
                    out.push_back({i, j, k});
                else if (dik < dij && dik < djk)
                    out.push_back({i, k, j});
                else if (djk < dij && djk < dik)
                    out.push_back({j, k, i});
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Nesting X < Y as the strict tropical half-space condition
// max over pairs in X  <  max over pairs in X union Y, with the max over
// fewer than two taxa defined as 0.
inline bool displays_nesting(const Ultrametric& d, const std::vector<std::size_t>& x,
                             const std::vector<std::size_t>& y) {
    if (x.empty() || y.empty()) throw InputError("nesting parts must be nonempty");
    std::set<std::size_t> xs(x.begin(), x.end());
    std::set<std::size_t> xy = xs;
    xy.insert(y.begin(), y.end());
    auto pair_max = [&](const std::set<std::size_t>& s) {
        BigM best(0);
        for (auto it = s.begin(); it != s.end(); ++it)
            for (auto jt = std::next(it); jt != s.end(); ++jt)
                if (best < d.at(*it, *jt)) best = d.at(*it, *jt);
        return best;
    };
    return pair_max(xs) < pair_max(xy);
}

inline bool displays_nesting(const Ultrametric& d, const std::vector<std::string>& x,
                             const std::vector<std::string>& y) {
    std::vector<std::size_t> xi, yi;
    for (const std::string& s : x) xi.push_back(d.taxon_index(s));
    for (const std::string& s : y) yi.push_back(d.taxon_index(s));
    return displays_nesting(d, xi, yi);
}

} // namespace troptree
