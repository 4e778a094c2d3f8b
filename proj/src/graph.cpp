#include "lowreg/graph.hpp"

#include <algorithm>

#include "lowreg/rng.hpp"

namespace lowreg {

BipartiteGraph::BipartiteGraph(int a_size, int b_size,
                               std::span<const std::pair<int, int>> edges)
    : a_size_(a_size), b_size_(b_size), col_cache_(std::make_unique<ColumnCache>()) {
    if (a_size < 0 || b_size < 0) throw IndexOutOfRange("negative side size");
    rows_.assign(static_cast<size_t>(a_size), Bitset(b_size));
    for (auto [a, b] : edges) {
        if (a < 0 || a >= a_size)
            throw IndexOutOfRange("A index " + std::to_string(a) + " out of range [0, " +
                                  std::to_string(a_size) + ")");
        if (b < 0 || b >= b_size)
            throw IndexOutOfRange("B index " + std::to_string(b) + " out of range [0, " +
                                  std::to_string(b_size) + ")");
        rows_[static_cast<size_t>(a)].set(b);  // duplicates collapse here
    }
    rebuild_degrees();
}

BipartiteGraph::BipartiteGraph(const BipartiteGraph& o)
    : a_size_(o.a_size_),
      b_size_(o.b_size_),
      edge_count_(o.edge_count_),
      rows_(o.rows_),
      deg_a_(o.deg_a_),
      deg_b_(o.deg_b_),
      col_cache_(std::make_unique<ColumnCache>()) {}

BipartiteGraph& BipartiteGraph::operator=(const BipartiteGraph& o) {
    if (this == &o) return *this;
    a_size_ = o.a_size_;
    b_size_ = o.b_size_;
    edge_count_ = o.edge_count_;
    rows_ = o.rows_;
    deg_a_ = o.deg_a_;
    deg_b_ = o.deg_b_;
    col_cache_ = std::make_unique<ColumnCache>();
    return *this;
}

void BipartiteGraph::rebuild_degrees() {
    deg_a_.resize(static_cast<size_t>(a_size_));
    deg_b_.assign(static_cast<size_t>(b_size_), 0);
    edge_count_ = 0;
    for (int v = 0; v < a_size_; ++v) {
        int d = rows_[static_cast<size_t>(v)].count();
        deg_a_[static_cast<size_t>(v)] = d;
        edge_count_ += d;
        for (int b = rows_[static_cast<size_t>(v)].find_first(); b >= 0;
             b = rows_[static_cast<size_t>(v)].find_next(b))
            ++deg_b_[static_cast<size_t>(b)];
    }
}

const Bitset& BipartiteGraph::col(int b) const {
    std::call_once(col_cache_->once, [this] {
        col_cache_->cols.assign(static_cast<size_t>(b_size_), Bitset(a_size_));
        for (int v = 0; v < a_size_; ++v)
            for (int w = rows_[static_cast<size_t>(v)].find_first(); w >= 0;
                 w = rows_[static_cast<size_t>(v)].find_next(w))
                col_cache_->cols[static_cast<size_t>(w)].set(v);
    });
    return col_cache_->cols[static_cast<size_t>(b)];
}

void BipartiteGraph::check_side(const VertexSubset& s, Side expected) const {
    if (s.side != expected)
        throw IndexOutOfRange(std::string("subset is on side ") + side_name(s.side) +
                              ", expected " + side_name(expected));
    int want = expected == Side::A ? a_size_ : b_size_;
    if (s.universe_size() != want)
        throw IndexOutOfRange("subset universe " + std::to_string(s.universe_size()) +
                              " does not match side size " + std::to_string(want));
}

long long BipartiteGraph::edges_between(const VertexSubset& s, const VertexSubset& t) const {
    check_side(s, Side::A);
    check_side(t, Side::B);
    long long e = 0;
    for (int v = s.bits.find_first(); v >= 0; v = s.bits.find_next(v))
        e += Bitset::and_count(rows_[static_cast<size_t>(v)], t.bits);
    return e;
}

BipartiteGraph BipartiteGraph::without_edges(
    std::span<const std::pair<int, int>> edges) const {
    BipartiteGraph g(*this);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= a_size_ || b < 0 || b >= b_size_)
            throw IndexOutOfRange("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") out of range");
        g.rows_[static_cast<size_t>(a)].reset(b);
    }
    g.rebuild_degrees();
    return g;
}

std::vector<std::pair<int, int>> BipartiteGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(edge_count_));
    for (int v = 0; v < a_size_; ++v)
        for (int w = rows_[static_cast<size_t>(v)].find_first(); w >= 0;
             w = rows_[static_cast<size_t>(v)].find_next(w))
            out.emplace_back(v, w);
    return out;  // row-major scan is already lexicographic
}

Density density(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t) {
    if (s.cardinality == 0 || t.cardinality == 0)
        throw EmptySubset("density of an empty sub-pair");
    long long e = g.edges_between(s, t);
    return Density::of(e, static_cast<long long>(s.cardinality) * t.cardinality);
}

namespace {

// Lexicographic next k-combination over [0, n); idx holds current positions.
bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<size_t>(i)] < n - k + i) {
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

constexpr unsigned long long kCostInf = ~0ULL;

}  // namespace

unsigned long long binomial_saturating(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) {
        unsigned long long num = static_cast<unsigned long long>(n - k + i);
        if (r > kCostInf / num) return kCostInf;
        r = r * num / static_cast<unsigned long long>(i);
    }
    return r;
}

AvgDensityResult avg_subpair_density(const BipartiteGraph& g, int k, int m,
                                     unsigned long long budget, uint64_t seed,
                                     unsigned long long samples, bool allow_sampling) {
    int a = g.a_size(), b = g.b_size();
    if (k < 1 || k > a || m < 1 || m > b)
        throw IndexOutOfRange("sub-pair sizes (" + std::to_string(k) + ", " +
                              std::to_string(m) + ") out of range");
    unsigned long long ca = binomial_saturating(a, k);
    unsigned long long cb = binomial_saturating(b, m);
    unsigned long long pairs = (cb != 0 && ca > kCostInf / cb) ? kCostInf : ca * cb;

    if (pairs <= budget) {
        // Full enumeration; the sum of e(X, Y) over all pairs, kept as one
        // exact fraction over pairs * k * m.
        long long total = 0;
        std::vector<int> xi(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) xi[static_cast<size_t>(i)] = i;
        do {
            std::vector<int> yi(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) yi[static_cast<size_t>(i)] = i;
            do {
                Bitset ymask(b);
                for (int w : yi) ymask.set(w);
                for (int v : xi) total += g.deg_in(v, ymask);
            } while (next_combination(yi, b));
        } while (next_combination(xi, a));
        long long cells = static_cast<long long>(pairs) * k * m;
        return {Density::of(total, cells), true, pairs};
    }

    if (!allow_sampling) throw BudgetExceeded(pairs);

    Rng rng(seed);
    long long total = 0;
    for (unsigned long long s = 0; s < samples; ++s) {
        auto xs = rng.sample_indices(a, k);
        auto ys = rng.sample_indices(b, m);
        Bitset ymask(b);
        for (int w : ys) ymask.set(w);
        for (int v : xs) total += g.deg_in(v, ymask);
    }
    long long cells = static_cast<long long>(samples) * k * m;
    return {Density::of(total, cells), false, samples};
}

Rational min_degree_ratio(const BipartiteGraph& g) {
    if (g.b_size() == 0) throw EmptySubset("min_degree_ratio needs a nonempty B side");
    if (g.a_size() == 0) return Rational(0);
    int mind = g.deg_a(0);
    for (int v = 1; v < g.a_size(); ++v) mind = std::min(mind, g.deg_a(v));
    return Rational(mind, g.b_size());
}

InducedView::InducedView(const BipartiteGraph& g, VertexSubset s, VertexSubset t)
    : g_(&g), s_(std::move(s)), t_(std::move(t)) {
    if (s_.cardinality == 0 || t_.cardinality == 0)
        throw EmptySubset("induced view over an empty subset");
    g.edges_between(s_, t_);  // validates sides and universes
}

}  // namespace lowreg
