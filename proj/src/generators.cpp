#include "lowreg/generators.hpp"

#include <algorithm>

#include "lowreg/rng.hpp"

namespace lowreg {

BipartiteGraph gen_random_min_degree(int a_size, int b_size, double p,
                                     const Rational& delta_floor, uint64_t seed) {
    if (delta_floor > Rational(1))
        throw InfeasibleFloor("delta floor " + rat_str(delta_floor) + " exceeds 1");
    long long need = rat_ceil(delta_floor * b_size);
    if (need < 0) need = 0;

    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> missing;
    for (int a = 0; a < a_size; ++a) {
        std::vector<char> has(static_cast<size_t>(b_size), 0);
        long long deg = 0;
        for (int b = 0; b < b_size; ++b) {
            if (rng.bernoulli(p)) {
                has[static_cast<size_t>(b)] = 1;
                ++deg;
            }
        }
        if (deg < need) {
            missing.clear();
            for (int b = 0; b < b_size; ++b)
                if (!has[static_cast<size_t>(b)]) missing.push_back(b);
            // partial Fisher-Yates over the absent columns
            long long extra = need - deg;
            for (long long i = 0; i < extra; ++i) {
                size_t j = static_cast<size_t>(i) +
                           static_cast<size_t>(rng.below(missing.size() - static_cast<size_t>(i)));
                std::swap(missing[static_cast<size_t>(i)], missing[j]);
                has[static_cast<size_t>(missing[static_cast<size_t>(i)])] = 1;
            }
        }
        for (int b = 0; b < b_size; ++b)
            if (has[static_cast<size_t>(b)]) edges.emplace_back(a, b);
    }
    return BipartiteGraph(a_size, b_size, edges);
}

BipartitionResult random_balanced_bipartition(int vertex_count,
                                              const std::vector<std::pair<int, int>>& edges,
                                              uint64_t seed) {
    if (vertex_count < 2) throw IndexOutOfRange("bipartition needs at least 2 vertices");
    std::vector<int> order(static_cast<size_t>(vertex_count));
    for (int v = 0; v < vertex_count; ++v) order[static_cast<size_t>(v)] = v;
    Rng rng(seed);
    rng.shuffle(order);

    int a_size = (vertex_count + 1) / 2;
    BipartitionResult out{BipartiteGraph(0, 0, {}), {}, {}, 0};
    out.side_of.assign(static_cast<size_t>(vertex_count), Side::A);
    out.index_of.assign(static_cast<size_t>(vertex_count), 0);
    int ai = 0, bi = 0;
    for (int pos = 0; pos < vertex_count; ++pos) {
        int v = order[static_cast<size_t>(pos)];
        if (pos < a_size) {
            out.side_of[static_cast<size_t>(v)] = Side::A;
            out.index_of[static_cast<size_t>(v)] = ai++;
        } else {
            out.side_of[static_cast<size_t>(v)] = Side::B;
            out.index_of[static_cast<size_t>(v)] = bi++;
        }
    }

    std::vector<std::pair<int, int>> cross;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw IndexOutOfRange("bipartition edge endpoint out of range");
        if (out.side_of[static_cast<size_t>(u)] == out.side_of[static_cast<size_t>(v)]) {
            ++out.dropped_edges;
            continue;
        }
        int a = out.side_of[static_cast<size_t>(u)] == Side::A ? u : v;
        int b = a == u ? v : u;
        cross.emplace_back(out.index_of[static_cast<size_t>(a)],
                           out.index_of[static_cast<size_t>(b)]);
    }
    out.graph = BipartiteGraph(ai, bi, cross);
    return out;
}

BipartiteGraph gen_blocks(const std::vector<std::pair<int, int>>& block_sizes,
                          double intra_p, double inter_p, uint64_t seed) {
    int a_size = 0, b_size = 0;
    for (auto [ba, bb] : block_sizes) {
        a_size += ba;
        b_size += bb;
    }
    // block id per vertex
    std::vector<int> a_block(static_cast<size_t>(a_size)), b_block(static_cast<size_t>(b_size));
    int ai = 0, bi = 0, blk = 0;
    for (auto [ba, bb] : block_sizes) {
        for (int i = 0; i < ba; ++i) a_block[static_cast<size_t>(ai++)] = blk;
        for (int i = 0; i < bb; ++i) b_block[static_cast<size_t>(bi++)] = blk;
        ++blk;
    }

    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < a_size; ++a)
        for (int b = 0; b < b_size; ++b) {
            double p = a_block[static_cast<size_t>(a)] == b_block[static_cast<size_t>(b)]
                           ? intra_p
                           : inter_p;
            if (p > 0 && rng.bernoulli(p)) edges.emplace_back(a, b);
        }
    return BipartiteGraph(a_size, b_size, edges);
}

}  // namespace lowreg
