#pragma once

#include <iosfwd>
#include <string>

#include "lowreg/graph.hpp"
#include "lowreg/tree.hpp"

namespace lowreg {

// Edge-list file: first line "a_size b_size edge_count", then one
// "a_index b_index" pair per line, 0-based ASCII, '\n' terminated.
// Canonical form sorts pairs lexicographically; write emits canonical form.
BipartiteGraph read_edge_list(const std::string& path);
void write_edge_list(const BipartiteGraph& g, const std::string& path);

BipartiteGraph parse_edge_list(std::istream& in);
void format_edge_list(const BipartiteGraph& g, std::ostream& out);

// Tree file: first line "vertex_count root_index", then "child parent" per
// edge, 0-based ASCII.
RootedTree read_tree(const std::string& path);
void write_tree(const RootedTree& t, const std::string& path);

RootedTree parse_tree(std::istream& in);
void format_tree(const RootedTree& t, std::ostream& out);

}  // namespace lowreg
