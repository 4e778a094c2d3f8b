#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lowreg/graph.hpp"
#include "lowreg/rational.hpp"

namespace lowreg {

// Each A-row is Bernoulli(p) per bit, then topped up with uniformly chosen
// missing edges until deg >= ceil(delta_floor * b_size). Deterministic per seed.
BipartiteGraph gen_random_min_degree(int a_size, int b_size, double p,
                                     const Rational& delta_floor, uint64_t seed);

// Block-diagonal random bipartite graph: Bernoulli(intra_p) inside the
// diagonal blocks, Bernoulli(inter_p) everywhere else.
BipartiteGraph gen_blocks(const std::vector<std::pair<int, int>>& block_sizes,
                          double intra_p, double inter_p, uint64_t seed);

// Preprocessing for general-graph edge lists: vertices split into two
// balanced sides by a seeded shuffle, edges inside a side are dropped.
// side_of reports the assignment (Side::A or B), index_of the position
// within the assigned side.
struct BipartitionResult {
    BipartiteGraph graph;
    std::vector<Side> side_of;
    std::vector<int> index_of;
    long long dropped_edges = 0;
};

BipartitionResult random_balanced_bipartition(int vertex_count,
                                              const std::vector<std::pair<int, int>>& edges,
                                              uint64_t seed);

inline BipartiteGraph gen_complete(int a_size, int b_size) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(a_size) * static_cast<size_t>(b_size));
    for (int a = 0; a < a_size; ++a)
        for (int b = 0; b < b_size; ++b) edges.emplace_back(a, b);
    return BipartiteGraph(a_size, b_size, edges);
}

}  // namespace lowreg
