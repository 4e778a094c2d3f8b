#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowreg/decomposition.hpp"
#include "lowreg/embed.hpp"

namespace lowreg {

struct EmbeddedTree {
    RootedTree tree;
    Embedding embedding;  // host indices are global
    int pair_index = 0;
};

struct TilingRound {
    Decomposition decomposition;  // subsets in global A indices
    std::vector<EmbeddedTree> trees;
    std::vector<std::string> skipped;  // per-pair embedding failures, non-fatal
    long long edges_used = 0;
};

struct Tiling {
    std::vector<TilingRound> rounds;
    BipartiteGraph residual;
    long long original_edges = 0;
    Rational covered_edge_fraction{0};
    std::vector<Rational> fraction_trajectory;  // after each round
    std::string stop_reason;

    Tiling() : residual(0, 0, {}) {}
};

// Repeated decompose-embed-delete rounds. Per round: A-vertices whose
// residual degree fell below delta*m go inactive (their edges stay in the
// accounting but are not decomposed); stop when the residual gets sparser
// than stop_density, the active side empties, or max_rounds is reached.
// Trees are synthesized per pair in embeddable shape: color targets
// (1-10*gamma_e) of the pair and level caps from the derived embedding
// params gamma_e = gamma, eta_e = 4*gamma_e, eps_e = gamma_e^2/10.
Tiling tile(const BipartiteGraph& g, const RegularityParams& params,
            const Rational& stop_density, int max_rounds, uint64_t seed,
            const SearchConfig& cfg);

// Replays all deletions against the original graph: global edge-disjointness,
// per-round embedding validity against the round's residual, residual
// consistency, and the covered-fraction arithmetic.
std::vector<std::string> verify_tiling(const BipartiteGraph& g_original, const Tiling& t);

}  // namespace lowreg
