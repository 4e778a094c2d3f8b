#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowreg/graph.hpp"
#include "lowreg/regularity.hpp"
#include "lowreg/tree.hpp"

namespace lowreg {

// Injective, edge-preserving, side-respecting map of tree vertices into the
// host pair. phi[v] is a host index on host_side[v].
struct Embedding {
    std::vector<int> phi;
    std::vector<Side> host_side;
};

struct PreconditionReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;  // parity-consistent reading, never failing
    bool ok() const { return violations.empty(); }
};

// The five embedding hypotheses: parameter couplings (eta = 4*gamma,
// eps = gamma^2/10, all < 1/10), color-class caps |X| <= (1-10g)|A| and
// |Y| <= (1-10g)|B|, level caps |L_2i| <= eps|A| and |L_2i+1| <= eta|B| for
// i >= 1 (evaluated with ceilings, matching the witness-size rounding), and
// the root lying in X. Caps under the parity-consistent reading are reported
// as notes.
PreconditionReport check_preconditions(const RootedTree& t, int a_card, int b_card,
                                       const RegularityParams& params);

// Per height-2 step bookkeeping; used by tests and stuck diagnostics.
struct EmbedStepStat {
    int tree_vertex = -1;     // active A-side tree vertex
    long long a_free = 0;
    long long b_free = 0;
    long long bad[3] = {0, 0, 0};
    long long pool = 0;           // |B^f minus all bad sets|
    long long part_low_degree = 0;  // active-part vertices below gamma-fraction degree
    long long part_size = 0;
};

struct EmbedTrace {
    std::vector<EmbedStepStat> steps;
};

// The embedding algorithm: one seeded tripartition of free A, bad B sets
// recomputed after every height-2 step, children into the host neighborhood
// inside the good pool, grandchildren into the per-level target part (the
// larger of the two parts not hosting the active level), all arbitrary
// choices resolved by lowest host index.
Embedding embed_tree(const BipartiteGraph& g, const VertexSubset& a, const VertexSubset& b,
                     const RootedTree& t, const RegularityParams& params, uint64_t seed,
                     EmbedTrace* trace = nullptr);

// Violations: non-injectivity, side mismatches, tree edges mapped to
// non-edges, hosts outside the pair. Empty means valid.
std::vector<std::string> verify_embedding(const BipartiteGraph& g, const RootedTree& t,
                                          const VertexSubset& a, const VertexSubset& b,
                                          const Embedding& e);

}  // namespace lowreg
