#pragma once

// Rooted equidistant trees with taxon-labeled leaves and exact edge lengths.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "troptree/bigm.hpp"
#include "troptree/errors.hpp"

namespace troptree {

inline bool valid_taxon_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

struct TreeNode {
    std::vector<int> children;  // empty for leaves
    BigM length;                // edge to the parent; unused for the root
    std::string taxon;          // leaves only

    bool is_leaf() const { return children.empty(); }
};

struct PhyloTree {
    std::vector<TreeNode> nodes;
    int root = -1;

    const TreeNode& at(int i) const { return nodes[static_cast<std::size_t>(i)]; }
    TreeNode& at(int i) { return nodes[static_cast<std::size_t>(i)]; }
};

inline std::vector<std::string> taxa_of(const PhyloTree& t) {
    std::vector<std::string> out;
    for (const TreeNode& n : t.nodes)
        if (n.is_leaf()) out.push_back(n.taxon);
    std::sort(out.begin(), out.end());
    return out;
}

// Root-to-leaf distance; parse and construction guarantee it is the same for
// every leaf.
inline BigM tree_height(const PhyloTree& t) {
    BigM h(0);
    int node = t.root;
    while (!t.at(node).is_leaf()) {
        int child = t.at(node).children[0];
        h += t.at(child).length;
        node = child;
    }
    return h;
}

namespace detail {

struct NewickCursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void expect(char c) {
        if (done() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
};

inline int parse_subtree(NewickCursor& cur, PhyloTree& tree, bool is_root) {
    if (cur.done()) throw ParseError("unexpected end of tree text", cur.pos);
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (cur.peek() == '(') {
        cur.expect('(');
        std::vector<int> children;
        children.push_back(parse_subtree(cur, tree, false));
        while (!cur.done() && cur.peek() == ',') {
            cur.expect(',');
            children.push_back(parse_subtree(cur, tree, false));
        }
        cur.expect(')');
        if (children.size() < 2)
            throw ParseError("internal node needs at least two children", cur.pos);
        tree.at(id).children = std::move(children);
    } else {
        std::size_t start = cur.pos;
        while (!cur.done() && cur.peek() != ':' && cur.peek() != ',' && cur.peek() != ')' &&
               cur.peek() != ';' && cur.peek() != '(')
            ++cur.pos;
        std::string name(cur.text.substr(start, cur.pos - start));
        if (!valid_taxon_name(name))
            throw ParseError("invalid taxon name '" + name + "'", start);
        tree.at(id).taxon = std::move(name);
    }
    if (!is_root) {
        cur.expect(':');
        std::size_t start = cur.pos;
        while (!cur.done() && cur.peek() != ',' && cur.peek() != ')' && cur.peek() != ';')
            ++cur.pos;
        if (cur.pos == start) throw ParseError("missing branch length", start);
        BigM len;
        try {
            len = parse_bigm(cur.text.substr(start, cur.pos - start));
        } catch (const ParseError& e) {
            throw ParseError("bad branch length", start + e.position());
        }
        if (len < BigM(0)) throw ParseError("negative branch length", start);
        tree.at(id).length = len;
    } else if (!cur.done() && cur.peek() == ':') {
        throw ParseError("the root must not carry a branch length", cur.pos);
    }
    return id;
}

inline void check_equidistant(const PhyloTree& t) {
    struct LeafDepth {
        std::string taxon;
        BigM depth;
    };
    std::vector<LeafDepth> leaves;
    std::function<void(int, const BigM&)> walk = [&](int node, const BigM& depth) {
        if (t.at(node).is_leaf()) {
            leaves.push_back({t.at(node).taxon, depth});
            return;
        }
        for (int c : t.at(node).children) walk(c, depth + t.at(c).length);
    };
    walk(t.root, BigM(0));
    for (std::size_t i = 1; i < leaves.size(); ++i)
        if (leaves[i].depth != leaves[0].depth)
            throw InputError("tree is not equidistant: leaf '" + leaves[0].taxon +
                             "' has root distance " + format_bigm(leaves[0].depth) +
                             " but leaf '" + leaves[i].taxon + "' has " +
                             format_bigm(leaves[i].depth));
}

} // namespace detail

// Strict Newick: branch lengths on every non-root edge, unique leaf labels,
// no internal labels, two or more children per internal node, equidistant.
inline PhyloTree parse_newick(std::string_view text) {
    // trim surrounding whitespace
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    std::size_t end = text.find_last_not_of(" \t\r\n");
    if (begin == std::string_view::npos) throw ParseError("empty tree text", 0);
    detail::NewickCursor cur{text.substr(begin, end - begin + 1), 0};

    PhyloTree tree;
    if (cur.peek() != '(') throw ParseError("a tree needs at least two leaves", cur.pos);
    tree.root = detail::parse_subtree(cur, tree, true);
    cur.expect(';');
    if (!cur.done()) throw ParseError("trailing characters after ';'", cur.pos);

    std::vector<std::string> taxa = taxa_of(tree);
    for (std::size_t i = 1; i < taxa.size(); ++i)
        if (taxa[i] == taxa[i - 1]) throw InputError("duplicate taxon '" + taxa[i] + "'");
    detail::check_equidistant(tree);
    return tree;
}

using ScalarFormatter = std::function<std::string(const BigM&)>;

inline ScalarFormatter symbolic_formatter() {
    return [](const BigM& x) { return format_bigm(x); };
}

inline ScalarFormatter numeric_formatter(Rational m0) {
    return [m0 = std::move(m0)](const BigM& x) { return format_rational(x.eval(m0)); };
}

inline std::string write_newick(const PhyloTree& t, const ScalarFormatter& fmt = symbolic_formatter()) {
    std::string out;
    std::function<void(int, bool)> emit = [&](int node, bool is_root) {
        const TreeNode& n = t.at(node);
        if (n.is_leaf()) {
            out += n.taxon;
        } else {
            out += '(';
            bool first = true;
            for (int c : n.children) {
                if (!first) out += ',';
                first = false;
                emit(c, false);
            }
            out += ')';
        }
        if (!is_root) {
            out += ':';
            out += fmt(n.length);
        }
    };
    emit(t.root, true);
    out += ';';
    return out;
}

// Canonical form: zero-length internal edges collapsed, children ordered by
// their smallest descendant taxon, nodes renumbered in traversal order.
inline PhyloTree canonical(const PhyloTree& t) {
    PhyloTree out;
    struct Built {
        int id;
        std::string min_taxon;
    };
    // returns the new subtree roots a node contributes: itself, or (when its
    // edge has length zero and it is internal) its own children, spliced up
    std::function<std::vector<Built>(int, bool)> build = [&](int node, bool is_root) {
        const TreeNode& n = t.at(node);
        if (n.is_leaf()) {
            int id = static_cast<int>(out.nodes.size());
            out.nodes.emplace_back();
            out.at(id).taxon = n.taxon;
            out.at(id).length = n.length;
            return std::vector<Built>{{id, n.taxon}};
        }
        std::vector<Built> parts;
        for (int c : n.children) {
            auto sub = build(c, false);
            parts.insert(parts.end(), sub.begin(), sub.end());
        }
        if (!is_root && n.length == BigM(0))
            return parts;  // splice into the parent
        std::sort(parts.begin(), parts.end(),
                  [](const Built& a, const Built& b) { return a.min_taxon < b.min_taxon; });
        int id = static_cast<int>(out.nodes.size());
        out.nodes.emplace_back();
        out.at(id).length = n.length;
        for (const Built& p : parts) out.at(id).children.push_back(p.id);
        return std::vector<Built>{{id, parts.front().min_taxon}};
    };
    auto roots = build(t.root, true);
    out.root = roots.front().id;
    return out;
}

inline bool tree_equal(const PhyloTree& a, const PhyloTree& b) {
    return write_newick(canonical(a)) == write_newick(canonical(b));
}

} // namespace troptree
