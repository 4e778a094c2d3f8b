#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowreg/bitset.hpp"
#include "lowreg/errors.hpp"
#include "lowreg/rational.hpp"

namespace lowreg {

enum class Side { A, B };

inline const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

// A set of vertices on one side of a bipartite graph. cardinality is kept in
// sync with the mask by every mutator.
struct VertexSubset {
    Side side = Side::A;
    Bitset bits;
    int cardinality = 0;

    static VertexSubset empty(Side side, int n) { return {side, Bitset(n), 0}; }

    static VertexSubset full(Side side, int n) { return {side, Bitset::full(n), n}; }

    static VertexSubset of(Side side, int n, std::span<const int> indices) {
        VertexSubset s = empty(side, n);
        for (int i : indices) s.add(i);
        return s;
    }

    static VertexSubset of(Side side, int n, std::initializer_list<int> indices) {
        return of(side, n, std::span<const int>(indices.begin(), indices.size()));
    }

    static VertexSubset from_bits(Side side, Bitset b) {
        int c = b.count();
        return {side, std::move(b), c};
    }

    int universe_size() const { return bits.size(); }

    bool contains(int v) const { return v >= 0 && v < bits.size() && bits.test(v); }

    void add(int v) {
        if (v < 0 || v >= bits.size())
            throw IndexOutOfRange("vertex " + std::to_string(v) + " outside side of size " +
                                  std::to_string(bits.size()));
        if (!bits.test(v)) {
            bits.set(v);
            ++cardinality;
        }
    }

    void remove(int v) {
        if (v >= 0 && v < bits.size() && bits.test(v)) {
            bits.reset(v);
            --cardinality;
        }
    }

    VertexSubset minus(const VertexSubset& o) const {
        VertexSubset r = *this;
        r.bits.subtract(o.bits);
        r.cardinality = r.bits.count();
        return r;
    }

    VertexSubset intersect(const VertexSubset& o) const {
        VertexSubset r = *this;
        r.bits &= o.bits;
        r.cardinality = r.bits.count();
        return r;
    }

    VertexSubset unite(const VertexSubset& o) const {
        VertexSubset r = *this;
        r.bits |= o.bits;
        r.cardinality = r.bits.count();
        return r;
    }

    bool is_subset_of(const VertexSubset& o) const { return bits.is_subset_of(o.bits); }

    std::vector<int> to_vector() const { return bits.to_vector(); }

    bool operator==(const VertexSubset&) const = default;
};

struct Density {
    long long numerator = 0;    // edge count
    long long denominator = 1;  // |S| * |T|
    Rational value{0};

    static Density of(long long edges, long long cells) {
        return {edges, cells, Rational(edges, cells)};
    }

    bool operator==(const Density&) const = default;
};

// Immutable bipartite graph with packed-bit adjacency rows on the A side.
// B-side rows are built on first use behind a once_flag, so a constructed
// graph is safe for concurrent readers.
class BipartiteGraph {
public:
    BipartiteGraph(int a_size, int b_size, std::span<const std::pair<int, int>> edges);
    BipartiteGraph(int a_size, int b_size, std::initializer_list<std::pair<int, int>> edges)
        : BipartiteGraph(a_size, b_size,
                         std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

    BipartiteGraph(const BipartiteGraph& o);
    BipartiteGraph& operator=(const BipartiteGraph& o);
    BipartiteGraph(BipartiteGraph&&) = default;
    BipartiteGraph& operator=(BipartiteGraph&&) = default;

    int a_size() const { return a_size_; }
    int b_size() const { return b_size_; }
    long long edge_count() const { return edge_count_; }

    const Bitset& row(int a) const { return rows_[static_cast<size_t>(a)]; }
    const Bitset& col(int b) const;

    int deg_a(int a) const { return deg_a_[static_cast<size_t>(a)]; }
    int deg_b(int b) const { return deg_b_[static_cast<size_t>(b)]; }

    bool has_edge(int a, int b) const { return rows_[static_cast<size_t>(a)].test(b); }

    // deg(v; T) for an A-side vertex, T a B-side mask.
    long long deg_in(int a, const Bitset& t_mask) const {
        return Bitset::and_count(rows_[static_cast<size_t>(a)], t_mask);
    }

    // deg(w; S) for a B-side vertex, S an A-side mask.
    long long deg_b_in(int b, const Bitset& s_mask) const {
        return Bitset::and_count(col(b), s_mask);
    }

    long long edges_between(const VertexSubset& s, const VertexSubset& t) const;

    VertexSubset full_a() const { return VertexSubset::full(Side::A, a_size_); }
    VertexSubset full_b() const { return VertexSubset::full(Side::B, b_size_); }

    // New graph with the listed edges removed (missing edges are ignored).
    BipartiteGraph without_edges(std::span<const std::pair<int, int>> edges) const;

    // Canonical (lexicographically sorted) edge list.
    std::vector<std::pair<int, int>> edge_list() const;

    bool operator==(const BipartiteGraph& o) const {
        return a_size_ == o.a_size_ && b_size_ == o.b_size_ && rows_ == o.rows_;
    }

private:
    struct ColumnCache {
        std::once_flag once;
        std::vector<Bitset> cols;
    };

    void check_side(const VertexSubset& s, Side expected) const;
    void rebuild_degrees();

    int a_size_ = 0;
    int b_size_ = 0;
    long long edge_count_ = 0;
    std::vector<Bitset> rows_;
    std::vector<int> deg_a_;
    std::vector<int> deg_b_;
    mutable std::unique_ptr<ColumnCache> col_cache_;
};

// C(n, k), saturating at 2^64-1.
unsigned long long binomial_saturating(int n, int k);

// d(S, T) = e(S, T) / (|S| * |T|), exact.
Density density(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t);

inline Density density(const BipartiteGraph& g) {
    return density(g, g.full_a(), g.full_b());
}

// Average of d(X, Y) over sub-pairs of exact sizes (k, m). Exact enumeration
// when the pair count fits the budget, otherwise a seeded sample.
struct AvgDensityResult {
    Density density;
    bool exact = true;
    unsigned long long pairs = 0;  // enumerated pairs, or samples drawn
};

AvgDensityResult avg_subpair_density(const BipartiteGraph& g, int k, int m,
                                     unsigned long long budget, uint64_t seed = 0,
                                     unsigned long long samples = 200000,
                                     bool allow_sampling = true);

// min over A of deg(v) / |B|
Rational min_degree_ratio(const BipartiteGraph& g);

// Read-only view of the sub-pair (S, T); all quantities relative to it.
class InducedView {
public:
    InducedView(const BipartiteGraph& g, VertexSubset s, VertexSubset t);

    const BipartiteGraph& graph() const { return *g_; }
    const VertexSubset& a() const { return s_; }
    const VertexSubset& b() const { return t_; }
    int a_card() const { return s_.cardinality; }
    int b_card() const { return t_.cardinality; }

    long long edge_count() const { return g_->edges_between(s_, t_); }
    Density density() const { return lowreg::density(*g_, s_, t_); }
    long long deg_a(int v) const { return g_->deg_in(v, t_.bits); }
    long long deg_b(int w) const { return g_->deg_b_in(w, s_.bits); }

private:
    const BipartiteGraph* g_;
    VertexSubset s_, t_;
};

inline InducedView induced(const BipartiteGraph& g, const VertexSubset& s,
                           const VertexSubset& t) {
    return InducedView(g, s, t);
}

}  // namespace lowreg
