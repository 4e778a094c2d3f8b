#pragma once

#include <string>
#include <vector>

#include "lowreg/regularity.hpp"

namespace lowreg {

// One shrink step of the extraction: the violating sub-pair (X'_i, Y'_i) and
// the high-degree X'' vertices dropped from X'.
struct ExtractStep {
    int index = 0;  // 1-based
    VertexSubset x_prime;
    VertexSubset y_prime;
    VertexSubset x_discarded;
    Density witness_density;
};

enum class StopReason { RegularFound, DegreeStoppingRule };

const char* stop_reason_name(StopReason r);

struct ExtractedPair {
    VertexSubset x_final;
    VertexSubset y_final;
    Certificate certificate;
    std::vector<ExtractStep> trace;
    StopReason stop_reason = StopReason::RegularFound;
};

struct DecompositionPair {
    VertexSubset a;
    VertexSubset b;
    Certificate certificate;
    std::vector<ExtractStep> trace;
    StopReason stop_reason = StopReason::RegularFound;
};

struct Decomposition {
    VertexSubset a0;
    std::vector<DecompositionPair> pairs;
    RegularityParams params;
    long long covered_edges = 0;
    long long total_edges = 0;

    int k() const { return static_cast<int>(pairs.size()); }
};

// discarded = vertices of x_prime with strictly more than 2*gamma*|y_prime|
// neighbors in y_prime; equality stays kept. For a genuine witness the
// counting argument forces |discarded| <= |x_prime| / 2, enforced at runtime.
std::pair<VertexSubset, VertexSubset> split_low_degree(const BipartiteGraph& g,
                                                       const VertexSubset& x_prime,
                                                       const VertexSubset& y_prime,
                                                       const Rational& gamma);

// Iterative shrinking procedure. Stops by the degree rule once
// |Y| <= (delta*(1+eta/2) - 2*gamma)*m, else by a certified check; every
// witness step shrinks X to its low-degree kept part and removes Y' from Y.
ExtractedPair extract_pair(const BipartiteGraph& g, const VertexSubset& a_sub,
                           const RegularityParams& params, const SearchConfig& cfg);

// Repeated extraction against the full B side until the A-remainder drops
// below eps * n; the remainder becomes A0.
Decomposition decompose(const BipartiteGraph& g, const RegularityParams& params,
                        const SearchConfig& cfg);

struct TheoreticalBounds {
    double min_pair_size = 0;   // eps * exp(-2 ln(2/eps) ln(2/delta) / eta) * n
    double max_k = 0;           // (2 / (eps delta)) * exp(2 ln(1/eps) ln(2/delta) / eta)
    long long max_iterations = 0;  // ceil(2 ln(2/delta) / eta)
    Rational coverage_loss{0};  // (eps + 2 gamma) * n * m

    Rational coverage_floor(long long edges) const { return Rational(edges) - coverage_loss; }
};

TheoreticalBounds theoretical_bounds(const RegularityParams& params, const Rational& delta,
                                     long long n, long long m);

struct VerifyClause {
    std::string name;
    bool pass = true;
    bool informational = false;  // reported, never fails the run
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyClause> clauses;
    bool all_pass = true;            // over non-informational clauses
    bool heuristic_dependent = false;  // some pair rests on a heuristic certificate

    const VerifyClause* find(const std::string& name) const {
        for (auto& c : clauses)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Recomputes every decomposition guarantee from raw adjacency: partition validity,
// |A0| <= eps n, coverage, per-pair size, k bound, per-vertex loss, trace
// length, and per-pair re-certification within budget.
VerifyReport verify_decomposition(const BipartiteGraph& g, const Decomposition& d,
                                  const SearchConfig& cfg);

}  // namespace lowreg
