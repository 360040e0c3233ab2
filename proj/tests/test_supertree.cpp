#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "support/trees.hpp"
#include "troptree/supertree.hpp"

using namespace troptree;
using troptree::testing::letters;
using troptree::testing::random_equidistant_tree;
using troptree::testing::random_supertree_instance;

namespace {

PhyloTree rename_taxa(const PhyloTree& t, const std::map<std::string, std::string>& names) {
    PhyloTree out = t;
    for (TreeNode& n : out.nodes)
        if (n.is_leaf()) n.taxon = names.at(n.taxon);
    return out;
}

} // namespace

TEST_CASE("extending an ultrametric fills missing pairs with M") {
    PhyloTree cherry = parse_newick("(a:1,b:1);");
    Ultrametric same = extend_ultrametric(cherry, {"a", "b"}, BigM::m());
    CHECK(same == tree_to_ultrametric(cherry));

    Ultrametric ext = extend_ultrametric(cherry, {"a", "b", "c"}, BigM::m());
    CHECK(ext.at(0, 1) == BigM(2));
    CHECK(ext.at(0, 2) == BigM::m());
    CHECK(ext.at(1, 2) == BigM::m());

    CHECK_THROWS_AS(extend_ultrametric(cherry, {"a", "c"}, BigM::m()), InputError);
}

TEST_CASE("extensions of random trees are ultrametrics") {
    std::mt19937 rng(10101);
    std::uniform_int_distribution<std::size_t> extra(0, 3);
    for (int round = 0; round < 60; ++round) {
        std::size_t base = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        PhyloTree t = random_equidistant_tree(rng, letters(base), Rational(4));
        std::vector<std::string> combined = letters(base + extra(rng));
        CHECK_NOTHROW(extend_ultrametric(t, combined, BigM::m()));
    }
}

TEST_CASE("the numeric parameter follows the displayed formula") {
    PhyloTree cherry = parse_newick("(a:1,b:1);");
    CHECK(algorithm1_numeric_M({cherry}) == 9);

    std::mt19937 rng(777);
    for (int round = 0; round < 15; ++round) {
        auto trees = random_supertree_instance(rng, 3, 5, Rational(4));
        SupertreeProblem problem{trees};
        SupertreeResult r = tropical_supertree(problem);
        CHECK(r.algorithm_m > r.theorem_threshold);
    }
}

TEST_CASE("identical inputs come back unchanged") {
    PhyloTree t = parse_newick("((a:1,b:1):1,c:2);");
    SupertreeProblem problem{{t, t, t}};
    SupertreeResult r = tropical_supertree(problem);
    CHECK(write_newick(r.tree) == "((a:1,b:1):1,c:2);");
    CHECK(r.objective == BigM(0));

    SupertreeProblem lone{{t}};
    CHECK(write_newick(tropical_supertree(lone).tree) == "((a:1,b:1):1,c:2);");
}

TEST_CASE("same-taxa inputs reduce to the plain median consensus") {
    std::mt19937 rng(9090);
    for (int round = 0; round < 20; ++round) {
        std::vector<PhyloTree> trees;
        for (int k = 0; k < 3; ++k)
            trees.push_back(random_equidistant_tree(rng, letters(5), Rational(4)));
        SupertreeResult r = tropical_supertree(SupertreeProblem{trees});

        // no parameter anywhere in the result
        for (const BigM& e : r.median) CHECK(e.is_numeric());
        CHECK(tree_height(r.tree) == BigM(4));

        // equals the anchored Fermat-Weber median of the raw ultrametrics
        std::vector<std::vector<BigM>> rows;
        for (const PhyloTree& t : trees) rows.push_back(tree_to_ultrametric(t).values());
        FermatWeberResult fw = fermat_weber(PointConfig(rows));
        BigM shift = BigM(8) - max_value(fw.median.coords);
        std::vector<BigM> anchored;
        for (const BigM& c : fw.median.coords) anchored.push_back(c + shift);
        CHECK(anchored == r.median);
    }
}

TEST_CASE("height mismatches are rejected unless rescaling is requested") {
    PhyloTree small = parse_newick("(a:1,b:1);");
    PhyloTree tall = parse_newick("((a:1,c:1):1,d:2);");
    SupertreeProblem problem{{small, tall}};
    CHECK_THROWS_AS(tropical_supertree(problem), InputError);

    problem.rescale_heights = true;
    SupertreeResult r = tropical_supertree(problem);
    CHECK(r.taxa == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(tree_height(r.tree).slope() > 0);  // the root merges at M scale
}

TEST_CASE("numeric mode must dominate every tree distance") {
    PhyloTree t = parse_newick("((a:1,b:1):1,c:2);");
    PhyloTree u = parse_newick("(a:2,d:2);");
    SupertreeProblem problem{{t, u}, SupertreeMode::numeric, Rational(4)};
    CHECK_THROWS_AS(tropical_supertree(problem), InputError);
    problem.m0 = 100;
    CHECK_NOTHROW(tropical_supertree(problem));
}

TEST_CASE("overlapping-taxa instance displays all common triplets") {
    // three trees on five combined taxa; the cherry {a,b} is in all of them
    PhyloTree t1 = parse_newick("(((a:1,b:1):1,c:2):1,d:3);");
    PhyloTree t2 = parse_newick("(((a:1,b:1):1,d:2):1,e:3);");
    PhyloTree t3 = parse_newick("((a:1,b:1):2,e:3);");
    SupertreeProblem problem{{t1, t2, t3}};
    SupertreeResult r = tropical_supertree(problem);
    CHECK(r.taxa == std::vector<std::string>{"a", "b", "c", "d", "e"});

    ParetoReport rep = pareto_audit(problem.trees, r.tree);
    CHECK(rep.failures == 0);
    CHECK(!rep.common.empty());
}

TEST_CASE("audit of a single input covers every one of its triplets") {
    std::mt19937 rng(5150);
    for (int round = 0; round < 10; ++round) {
        PhyloTree t = random_equidistant_tree(rng, letters(6), Rational(4));
        SupertreeResult r = tropical_supertree(SupertreeProblem{{t}});
        ParetoReport rep = pareto_audit({t}, r.tree);
        CHECK(rep.failures == 0);
        CHECK(rep.common == rooted_triplets(tree_to_ultrametric(t)));
    }
}

TEST_CASE("disjoint taxa sets have no common triplets") {
    PhyloTree t1 = parse_newick("(a:2,b:2);");
    PhyloTree t2 = parse_newick("(c:2,d:2);");
    SupertreeResult r = tropical_supertree(SupertreeProblem{{t1, t2}});
    ParetoReport rep = pareto_audit({t1, t2}, r.tree);
    CHECK(rep.common.empty());
    CHECK(rep.failures == 0);
}

TEST_CASE("pareto audit on random instances never fails") {
    std::mt19937 rng(246810);
    for (int round = 0; round < 40; ++round) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(5, 7)(rng);
        auto trees = random_supertree_instance(rng, 3, n, Rational(4));
        SupertreeResult r = tropical_supertree(SupertreeProblem{trees});
        ParetoReport rep = pareto_audit(trees, r.tree);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("user nestings are audited through the half-space test") {
    PhyloTree t1 = parse_newick("((a:1,b:1):1,c:2);");
    PhyloTree t2 = parse_newick("((a:1,b:1):2,d:3);");
    SupertreeProblem problem{{t1, t2}, SupertreeMode::symbolic, 0, true};
    SupertreeResult r = tropical_supertree(problem);
    std::vector<NestingSpec> specs = {{{"a", "b"}, {"c", "d"}}, {{"a", "c"}, {"b"}}};
    ParetoReport rep = pareto_audit(prepare_trees(problem), r.tree, specs);
    REQUIRE(rep.nestings.size() == 2);
    CHECK(rep.nesting_common[0]);
    CHECK(rep.nesting_pass[0]);
    CHECK(!rep.nesting_common[1]);
    CHECK(rep.failures == 0);
}

TEST_CASE("stability probe sees one topology beyond the bound") {
    std::mt19937 rng(11235);
    for (int round = 0; round < 8; ++round) {
        auto trees = random_supertree_instance(rng, 3, 5, Rational(4));
        SupertreeProblem problem{trees};
        Rational m = algorithm1_numeric_M(trees);
        StabilityReport rep = topology_stability_probe(problem, {m + 1, m * 2 + 7});
        CHECK(rep.all_match);

        CHECK_THROWS_AS(topology_stability_probe(problem, {m - 1}), InputError);
    }
}

TEST_CASE("probing the same sample twice is trivially identical") {
    PhyloTree t1 = parse_newick("((a:1,b:1):1,c:2);");
    PhyloTree t2 = parse_newick("(b:2,d:2);");
    SupertreeProblem problem{{t1, t2}};
    Rational m = algorithm1_numeric_M({t1, t2});
    StabilityReport rep = topology_stability_probe(problem, {m + 1, m + 1});
    CHECK(rep.all_match);
    CHECK(rep.samples.size() == 2);
}

TEST_CASE("the symbolic median evaluates to the numeric-mode median") {
    std::mt19937 rng(424243);
    for (int round = 0; round < 12; ++round) {
        auto trees = random_supertree_instance(rng, 3, 5, Rational(4));
        SupertreeResult sym = tropical_supertree(SupertreeProblem{trees});
        Rational m0 = sym.algorithm_m + 1;
        SupertreeResult num =
            tropical_supertree(SupertreeProblem{trees, SupertreeMode::numeric, m0});
        REQUIRE(sym.median.size() == num.median.size());
        for (std::size_t p = 0; p < sym.median.size(); ++p)
            CHECK(BigM(sym.median[p].eval(m0)) == num.median[p]);
        CHECK(write_newick(sym.tree, numeric_formatter(m0)) == write_newick(num.tree));
    }
}

TEST_CASE("the pipeline is equivariant under reordering and renaming") {
    std::mt19937 rng(999);
    for (int round = 0; round < 10; ++round) {
        auto trees = random_supertree_instance(rng, 3, 5, Rational(4));
        SupertreeResult base = tropical_supertree(SupertreeProblem{trees});

        std::vector<PhyloTree> shuffled = {trees[2], trees[0], trees[1]};
        SupertreeResult reordered = tropical_supertree(SupertreeProblem{shuffled});
        CHECK(write_newick(base.tree) == write_newick(reordered.tree));

        std::map<std::string, std::string> fwd = {
            {"a", "w"}, {"b", "q"}, {"c", "z"}, {"d", "k"}, {"e", "m"}};
        std::map<std::string, std::string> back;
        for (const auto& [k, v] : fwd) back[v] = k;
        std::vector<PhyloTree> renamed;
        for (const PhyloTree& t : trees) renamed.push_back(rename_taxa(t, fwd));
        SupertreeResult renamed_result = tropical_supertree(SupertreeProblem{renamed});
        PhyloTree mapped_back = rename_taxa(renamed_result.tree, back);
        CHECK(tree_equal(base.tree, mapped_back));
    }
}

TEST_CASE("supertree edge lengths are eventually nonnegative and affine") {
    std::mt19937 rng(31415);
    for (int round = 0; round < 10; ++round) {
        auto trees = random_supertree_instance(rng, 3, 6, Rational(4));
        SupertreeResult r = tropical_supertree(SupertreeProblem{trees});
        for (const TreeNode& n : r.tree.nodes)
            CHECK(!(n.length < BigM(0)));
        // triplet sets are constant along the median ray
        Rational m1 = r.algorithm_m + 1, m2 = r.algorithm_m * 3 + 11;
        std::vector<BigM> at1, at2;
        for (const BigM& e : r.median) {
            at1.emplace_back(e.eval(m1));
            at2.emplace_back(e.eval(m2));
        }
        Ultrametric d1(r.taxa, at1), d2(r.taxa, at2);
        CHECK(rooted_triplets(d1) == rooted_triplets(d2));
    }
}
