#pragma once

// The supertree pipeline: extend each input tree's ultrametric to the
// combined taxa with big-M entries, take the tropical median of the
// resulting configuration, and read the median back as an equidistant tree.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "troptree/errors.hpp"
#include "troptree/fermat_weber.hpp"
#include "troptree/phylo_tree.hpp"
#include "troptree/ultrametric.hpp"

namespace troptree {

enum class SupertreeMode { symbolic, numeric };

struct SupertreeProblem {
    std::vector<PhyloTree> trees;
    SupertreeMode mode = SupertreeMode::symbolic;
    Rational m0;                   // numeric mode only
    bool rescale_heights = false;  // scale every tree to the maximum height
};

struct SupertreeResult {
    PhyloTree tree;  // canonical form
    std::vector<std::string> taxa;
    std::vector<BigM> median;  // the supertree's ultrametric values
    std::vector<TorusPoint> vertices;
    CovectorGraph central_graph;
    BigM objective;
    Rational theorem_threshold;  // stabilization bound of the symbolic family
    Rational algorithm_m;        // the pipeline's own generous numeric bound
};

inline std::vector<std::string> combined_taxa(const std::vector<PhyloTree>& trees) {
    std::vector<std::string> all;
    for (const PhyloTree& t : trees) {
        std::vector<std::string> mine = taxa_of(t);
        all.insert(all.end(), mine.begin(), mine.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Distance matrix of the tree on the combined taxa: the tree's own
// cophenetic distance where both taxa are present, the parameter otherwise.
inline Ultrametric extend_ultrametric(const PhyloTree& tree, const std::vector<std::string>& taxa,
                                      const BigM& m_entry) {
    Ultrametric own = tree_to_ultrametric(tree);
    std::size_t n = taxa.size();
    std::vector<long> own_index(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(own.taxa().begin(), own.taxa().end(), taxa[i]);
        if (it != own.taxa().end() && *it == taxa[i])
            own_index[i] = it - own.taxa().begin();
    }
    std::size_t found = 0;
    for (long ix : own_index)
        if (ix >= 0) ++found;
    if (found != own.num_taxa())
        throw InputError("tree has taxa outside the combined set");
    std::vector<BigM> values(pair_count(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            values[pair_index(n, i, j)] =
                (own_index[i] >= 0 && own_index[j] >= 0)
                    ? own.at(static_cast<std::size_t>(own_index[i]),
                             static_cast<std::size_t>(own_index[j]))
                    : m_entry;
    return Ultrametric(taxa, std::move(values));
}

// The pipeline's explicit numeric parameter:
//   2^(m + C(n,2) - 1) * sum_k ||D^(k)||_1 + 1,
// where each ||D^(k)||_1 runs over the full symmetric matrix of tree k and n
// is the combined number of taxa.  Deliberately generous; it always exceeds
// the stabilization threshold of the induced family.
inline Rational algorithm1_numeric_M(const std::vector<PhyloTree>& trees) {
    if (trees.empty()) throw InputError("need at least one tree");
    std::size_t n = combined_taxa(trees).size();
    Rational norm_sum = 0;
    for (const PhyloTree& t : trees) {
        Ultrametric d = tree_to_ultrametric(t);
        for (const BigM& v : d.values()) {
            if (!v.is_numeric())
                throw InputError("input trees must have numeric branch lengths");
            norm_sum += 2 * rat_abs(v.constant());  // both matrix triangles
        }
    }
    unsigned expo = static_cast<unsigned>(trees.size()) +
                    static_cast<unsigned>(pair_count(n)) - 1;
    return Rational(pow2(expo)) * norm_sum + 1;
}

namespace detail {

inline PhyloTree scale_tree(const PhyloTree& t, const Rational& factor) {
    PhyloTree out = t;
    for (TreeNode& n : out.nodes) n.length = factor * n.length;
    return out;
}

inline void require_numeric(const std::vector<PhyloTree>& trees) {
    for (const PhyloTree& t : trees)
        for (const TreeNode& n : t.nodes)
            if (!n.length.is_numeric())
                throw InputError("input trees must have numeric branch lengths");
}

} // namespace detail

// Validated copy of the input trees: numeric lengths, at least two taxa
// each, equal heights (after the optional rescale).
inline std::vector<PhyloTree> prepare_trees(const SupertreeProblem& problem) {
    if (problem.trees.empty()) throw InputError("need at least one tree");
    detail::require_numeric(problem.trees);
    std::vector<PhyloTree> trees = problem.trees;
    for (const PhyloTree& t : trees)
        if (taxa_of(t).size() < 2) throw InputError("every tree needs at least two taxa");
    BigM hmax = tree_height(trees[0]);
    for (const PhyloTree& t : trees) hmax = std::max(hmax, tree_height(t));
    for (PhyloTree& t : trees) {
        BigM h = tree_height(t);
        if (h == hmax) continue;
        if (!problem.rescale_heights) {
            throw InputError("trees differ in height (" + format_bigm(h) + " vs " +
                             format_bigm(hmax) + "); pass --rescale-heights to normalize");
        }
        if (h == BigM(0)) throw InputError("cannot rescale a tree of height zero");
        t = detail::scale_tree(t, hmax.constant() / h.constant());
    }
    return trees;
}

inline SupertreeResult tropical_supertree(const SupertreeProblem& problem) {
    std::vector<PhyloTree> trees = prepare_trees(problem);
    std::vector<std::string> taxa = combined_taxa(trees);
    if (taxa.size() < 2) throw InputError("need at least two combined taxa");

    BigM m_entry = BigM::m();
    if (problem.mode == SupertreeMode::numeric) {
        for (const PhyloTree& t : trees) {
            BigM diameter = Rational(2) * tree_height(t);
            if (!(diameter < BigM(problem.m0)))
                throw InputError("numeric M must exceed every pairwise tree distance");
        }
        m_entry = BigM(problem.m0);
    }

    std::vector<Ultrametric> extended;
    extended.reserve(trees.size());
    for (const PhyloTree& t : trees) extended.push_back(extend_ultrametric(t, taxa, m_entry));

    std::vector<std::vector<BigM>> rows;
    rows.reserve(extended.size());
    for (const Ultrametric& d : extended) rows.push_back(d.values());
    PointConfig config(rows);

    SupertreeResult r;
    r.taxa = taxa;
    r.algorithm_m = algorithm1_numeric_M(trees);
    {
        // the stabilization bound always refers to the symbolic family
        std::vector<std::vector<BigM>> sym_rows;
        for (const PhyloTree& t : trees)
            sym_rows.push_back(extend_ultrametric(t, taxa, BigM::m()).values());
        r.theorem_threshold = stabilization_threshold(PointConfig(sym_rows));
    }

    FermatWeberResult fw = fermat_weber(config);
    r.central_graph = fw.central_graph;
    r.vertices = fw.vertices;
    r.objective = fw.objective;

    // The median is a torus class; the tree needs one representative.  Pin
    // it by the largest entry of the inputs, so a lone tree comes back
    // unchanged and same-taxa inputs keep their common height.
    BigM anchor = max_value(extended[0].values());
    for (const Ultrametric& d : extended) anchor = std::max(anchor, max_value(d.values()));
    BigM median_max = max_value(fw.median.coords);
    BigM shift = anchor - median_max;
    r.median.reserve(fw.median.coords.size());
    for (const BigM& c : fw.median.coords) r.median.push_back(c + shift);
    for (const BigM& c : r.median)
        if (c < BigM(0))
            throw InternalError("median has a negative entry after anchoring");
    try {
        Ultrametric median_metric(taxa, r.median);
        r.tree = ultrametric_to_tree(median_metric);
    } catch (const InputError& e) {
        throw InternalError(std::string("median is not an ultrametric: ") + e.what());
    }
    return r;
}

// ---- Pareto audit ----------------------------------------------------------

struct NestingSpec {
    std::vector<std::string> x, y;
};

struct ParetoReport {
    std::vector<std::string> taxa;
    std::vector<Triplet> common;         // triplets displayed by every input
    std::vector<bool> triplet_pass;      // parallel to common
    std::vector<NestingSpec> nestings;   // user-supplied pairs
    std::vector<bool> nesting_common;    // displayed by every input
    std::vector<bool> nesting_pass;      // displayed by the output
    std::size_t failures = 0;
};

// Every triplet (and requested nesting) displayed by all extended inputs
// must be displayed by the output tree.
inline ParetoReport pareto_audit(const std::vector<PhyloTree>& inputs, const PhyloTree& output,
                                 const std::vector<NestingSpec>& nestings = {}) {
    if (inputs.empty()) throw InputError("need at least one input tree");
    ParetoReport rep;
    rep.taxa = taxa_of(output);
    std::vector<Ultrametric> extended;
    for (const PhyloTree& t : inputs) extended.push_back(extend_ultrametric(t, rep.taxa, BigM::m()));

    std::vector<Triplet> common = rooted_triplets(extended[0]);
    for (std::size_t l = 1; l < extended.size() && !common.empty(); ++l) {
        std::vector<Triplet> mine = rooted_triplets(extended[l]);
        std::vector<Triplet> keep;
        std::set_intersection(common.begin(), common.end(), mine.begin(), mine.end(),
                              std::back_inserter(keep));
        common = std::move(keep);
    }
    rep.common = std::move(common);

    Ultrametric out_metric = tree_to_ultrametric(output);
    std::vector<Triplet> displayed = rooted_triplets(out_metric);
    for (const Triplet& t : rep.common) {
        bool ok = std::binary_search(displayed.begin(), displayed.end(), t);
        rep.triplet_pass.push_back(ok);
        if (!ok) ++rep.failures;
    }

    for (const NestingSpec& spec : nestings) {
        bool is_common = true;
        for (const Ultrametric& d : extended)
            if (!displays_nesting(d, spec.x, spec.y)) {
                is_common = false;
                break;
            }
        bool pass = displays_nesting(out_metric, spec.x, spec.y);
        rep.nestings.push_back(spec);
        rep.nesting_common.push_back(is_common);
        rep.nesting_pass.push_back(pass);
        if (is_common && !pass) ++rep.failures;
    }
    return rep;
}

// ---- Stability probe -------------------------------------------------------

struct StabilityReport {
    Rational algorithm_m;
    std::vector<Rational> samples;
    std::vector<bool> triplets_match;
    std::vector<bool> graph_match;
    bool all_match = true;
};

// Reruns the pipeline numerically at each sample (all beyond the pipeline's
// own M) and compares tree topology and central graph with the symbolic run.
inline StabilityReport topology_stability_probe(const SupertreeProblem& problem,
                                                const std::vector<Rational>& samples) {
    SupertreeProblem sym = problem;
    sym.mode = SupertreeMode::symbolic;
    SupertreeResult base = tropical_supertree(sym);

    StabilityReport rep;
    rep.algorithm_m = base.algorithm_m;
    for (const Rational& m0 : samples)
        if (!(m0 > rep.algorithm_m))
            throw InputError("probe sample " + format_rational(m0) +
                             " does not exceed the numeric bound " +
                             format_rational(rep.algorithm_m));

    Ultrametric base_metric(base.taxa, base.median);
    std::vector<Triplet> base_triplets = rooted_triplets(base_metric);
    for (const Rational& m0 : samples) {
        SupertreeProblem num = problem;
        num.mode = SupertreeMode::numeric;
        num.m0 = m0;
        SupertreeResult sampled = tropical_supertree(num);
        Ultrametric sampled_metric(sampled.taxa, sampled.median);
        bool triplets_ok = rooted_triplets(sampled_metric) == base_triplets;
        bool graph_ok = sampled.central_graph == base.central_graph;
        rep.samples.push_back(m0);
        rep.triplets_match.push_back(triplets_ok);
        rep.graph_match.push_back(graph_ok);
        if (!triplets_ok || !graph_ok) rep.all_match = false;
    }
    return rep;
}

} // namespace troptree
