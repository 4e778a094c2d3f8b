#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lowreg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct EmptySubset : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct BudgetExceeded : Error {
    unsigned long long estimated_cost;
    explicit BudgetExceeded(unsigned long long cost)
        : Error("enumeration cost " + std::to_string(cost) + " exceeds budget"),
          estimated_cost(cost) {}
};

struct InfeasibleFloor : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

// A split was asked of a sub-pair that is not actually violating.
struct CountingViolation : Error {
    using Error::Error;
};

// Extraction ran past its iteration cap; the witness source is broken.
struct IterationOverflow : Error {
    using Error::Error;
};

struct InfeasibleTargets : Error {
    using Error::Error;
};

struct MalformedTree : Error {
    using Error::Error;
};

struct EmbeddingStuck : Error {
    int tree_vertex;
    long long a_free;
    long long b_free;
    long long candidate_count;
    EmbeddingStuck(int vertex, long long af, long long bf, long long cands)
        : Error("embedding stuck at tree vertex " + std::to_string(vertex) +
                " (a_free=" + std::to_string(af) + ", b_free=" + std::to_string(bf) +
                ", candidates=" + std::to_string(cands) + ")"),
          tree_vertex(vertex), a_free(af), b_free(bf), candidate_count(cands) {}
};

}  // namespace lowreg
