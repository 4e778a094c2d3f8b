#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lowreg/graph.hpp"
#include "lowreg/rational.hpp"

namespace lowreg {

// The (eps, eta, gamma) triple of lower regularity, plus the host's
// min-degree ratio when used for decomposition.
struct RegularityParams {
    Rational eps;
    Rational eta;
    Rational gamma;
    std::optional<Rational> delta_context;

    static RegularityParams make(Rational eps, Rational eta, Rational gamma,
                                 std::optional<Rational> delta_context = std::nullopt);

    // eta <= 1/6 and gamma <= min(eta/4, delta/20); requires delta_context.
    bool satisfies_decomposition_constraints() const;
    Rational delta() const;
};

// A violating sub-pair of exact witness sizes with density < gamma.
struct Witness {
    VertexSubset x_sub;
    VertexSubset y_sub;
    long long edge_count = 0;
    Density density;
};

struct Certificate {
    enum class Kind { ExactCertified, HeuristicNoWitness, DegreeStoppingRule };
    Kind kind = Kind::ExactCertified;
    RegularityParams params;
    // ExactCertified
    unsigned long long pairs_enumerated = 0;
    std::optional<Density> min_density;
    // HeuristicNoWitness
    int restarts = 0;
    uint64_t seed = 0;
    // DegreeStoppingRule
    Rational y_final_fraction{0};

    bool exact() const { return kind != Kind::HeuristicNoWitness; }
};

const char* certificate_kind_name(Certificate::Kind k);

using CheckOutcome = std::variant<Witness, Certificate>;

inline bool found_witness(const CheckOutcome& o) { return std::holds_alternative<Witness>(o); }

struct SearchConfig {
    unsigned long long budget = 10000000;  // exact-path subset evaluations
    uint64_t seed = 0;
    int restarts = 8;
    int sweeps = 10;
    int threads = 1;
};

// Exact witness sizes for a checked pair: (ceil(eps*|S|), ceil(eta*|T|)),
// clamped into [1, side size].
std::pair<int, int> witness_sizes(const RegularityParams& params, int s_card, int t_card);

// Subsets enumerated by the exact path: the cheaper of C(|S|, sx), C(|T|, sy).
unsigned long long exact_check_cost(const RegularityParams& params, int s_card, int t_card);

// Enumerates all witness-size subsets of the cheaper side; for each, the
// greedy fewest-edges selection on the other side attains the minimum density
// for that fixed subset, so the scan is exact over exact-size sub-pairs.
// Throws BudgetExceeded when the subset count exceeds the budget.
CheckOutcome check_exact(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                         const RegularityParams& params, unsigned long long budget);

struct HeuristicTrace {
    struct Restart {
        int restart = 0;
        std::vector<long long> sweep_edges;  // e(x, y) after each greedy update
    };
    std::vector<Restart> restarts;
};

// Alternating minimization. Restart 0 starts from the sy lowest-degree
// vertices of T, later restarts from seeded random subsets; each greedy
// update is monotone non-increasing in e(x, y). One-sided: a returned
// HeuristicNoWitness is never a certificate of regularity.
CheckOutcome check_heuristic(const BipartiteGraph& g, const VertexSubset& s,
                             const VertexSubset& t, const RegularityParams& params,
                             uint64_t seed, int restarts, int sweeps,
                             HeuristicTrace* trace = nullptr, int threads = 1);

// Dispatch: exact when within budget, heuristic otherwise.
CheckOutcome check(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                   const RegularityParams& params, const SearchConfig& cfg);

// Vertices of U' with fewer than threshold_fraction * |V'| neighbors in V'.
long long count_low_degree(const BipartiteGraph& g, const VertexSubset& u_prime,
                           const VertexSubset& v_prime, const Rational& threshold_fraction);

// Recomputes a witness against the graph and the pair it was found in.
bool witness_valid(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                   const RegularityParams& params, const Witness& w);

}  // namespace lowreg
