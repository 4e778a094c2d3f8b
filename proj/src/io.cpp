#include "lowreg/io.hpp"

#include <fstream>
#include <sstream>

namespace lowreg {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

BipartiteGraph parse_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    ++line_no;
    std::istringstream head(line);
    long long a_size, b_size, edge_count;
    if (!(head >> a_size >> b_size >> edge_count) || a_size < 0 || b_size < 0 || edge_count < 0)
        throw ParseError("header must be 'a_size b_size edge_count'", line_no);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(edge_count));
    for (long long i = 0; i < edge_count; ++i) {
        if (!std::getline(in, line))
            throw ParseError("expected " + std::to_string(edge_count) + " edges, file ended",
                             line_no + 1);
        ++line_no;
        std::istringstream row(line);
        long long a, b;
        if (!(row >> a >> b)) throw ParseError("expected 'a_index b_index'", line_no);
        std::string tail;
        if (row >> tail) throw ParseError("trailing tokens after edge", line_no);
        if (a < 0 || a >= a_size || b < 0 || b >= b_size)
            throw IndexOutOfRange("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") out of range at line " + std::to_string(line_no));
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    return BipartiteGraph(static_cast<int>(a_size), static_cast<int>(b_size), edges);
}

void format_edge_list(const BipartiteGraph& g, std::ostream& out) {
    out << g.a_size() << ' ' << g.b_size() << ' ' << g.edge_count() << '\n';
    for (auto [a, b] : g.edge_list()) out << a << ' ' << b << '\n';
}

BipartiteGraph read_edge_list(const std::string& path) {
    auto in = open_in(path);
    return parse_edge_list(in);
}

void write_edge_list(const BipartiteGraph& g, const std::string& path) {
    auto out = open_out(path);
    format_edge_list(g, out);
}

RootedTree parse_tree(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    ++line_no;
    std::istringstream head(line);
    long long n, root;
    if (!(head >> n >> root) || n <= 0)
        throw ParseError("header must be 'vertex_count root_index'", line_no);
    if (root < 0 || root >= n) throw ParseError("root index out of range", line_no);

    std::vector<int> parent(static_cast<size_t>(n), kNoParent);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (long long i = 0; i + 1 < n; ++i) {
        if (!std::getline(in, line)) throw ParseError("expected more edges, file ended", line_no + 1);
        ++line_no;
        std::istringstream row(line);
        long long child, par;
        if (!(row >> child >> par)) throw ParseError("expected 'child parent'", line_no);
        if (child < 0 || child >= n || par < 0 || par >= n)
            throw ParseError("vertex index out of range", line_no);
        if (child == root) throw ParseError("root listed as a child", line_no);
        if (seen[static_cast<size_t>(child)]) throw ParseError("duplicate child", line_no);
        seen[static_cast<size_t>(child)] = 1;
        parent[static_cast<size_t>(child)] = static_cast<int>(par);
    }
    try {
        return RootedTree(static_cast<int>(root), std::move(parent));
    } catch (const MalformedTree& e) {
        throw ParseError(e.what(), line_no);
    }
}

void format_tree(const RootedTree& t, std::ostream& out) {
    out << t.size() << ' ' << t.root << '\n';
    for (int v = 0; v < t.size(); ++v)
        if (v != t.root) out << v << ' ' << t.parent[static_cast<size_t>(v)] << '\n';
}

RootedTree read_tree(const std::string& path) {
    auto in = open_in(path);
    return parse_tree(in);
}

void write_tree(const RootedTree& t, const std::string& path) {
    auto out = open_out(path);
    format_tree(t, out);
}

}  // namespace lowreg
