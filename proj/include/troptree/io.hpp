#pragma once

// File formats: point-configuration matrices (one row per line, big-M scalar
// literals) and Newick tree files (one tree per line).

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "troptree/bigm.hpp"
#include "troptree/errors.hpp"
#include "troptree/phylo_tree.hpp"
#include "troptree/torus.hpp"

namespace troptree {

// Whitespace-separated scalars, one matrix row per line; blank lines and
// lines starting with '#' are ignored.
inline PointConfig read_point_config(std::istream& in) {
    std::vector<std::vector<BigM>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string token;
        std::vector<BigM> row;
        while (fields >> token) {
            if (token[0] == '#') break;
            try {
                row.push_back(parse_bigm(token));
            } catch (const ParseError& e) {
                throw InputError("line " + std::to_string(lineno) + ": bad scalar '" + token +
                                 "': " + e.what());
            }
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows[0].size())
            throw InputError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(rows[0].size()) + " entries, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("configuration file has no rows");
    if (rows[0].size() < 2) throw InputError("a configuration needs at least two coordinates");
    return PointConfig(std::move(rows));
}

inline std::vector<PhyloTree> read_newick_file(std::istream& in) {
    std::vector<PhyloTree> trees;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            trees.push_back(parse_newick(line));
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (trees.empty()) throw InputError("tree file has no trees");
    return trees;
}

} // namespace troptree
