#pragma once

#include <json.hpp>
#include <string>

#include "lowreg/decomposition.hpp"
#include "lowreg/embed.hpp"
#include "lowreg/tiling.hpp"

namespace lowreg {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "lowreg 0.1.0";
inline constexpr const char* kReportSchema = "lowreg-report/1";

Json to_json(const Rational& r);
Json to_json(const Density& d);
Json to_json(const VertexSubset& s);  // cardinality plus member list
Json to_json(const RegularityParams& p);
Json to_json(const Witness& w);
Json to_json(const Certificate& c);
Json to_json(const ExtractStep& s);
Json to_json(const Decomposition& d, bool include_traces);
Json to_json(const VerifyReport& r);
Json to_json(const TheoreticalBounds& b);
Json to_json(const Embedding& e);
Json to_json(const PreconditionReport& r);
Json to_json(const Tiling& t);

Json input_digest(const BipartiteGraph& g, const std::string& path);

// Reports are self-contained: a decomposition payload plus the input graph is
// enough to re-run every verifier clause.
RegularityParams params_from_json(const Json& j);
VertexSubset subset_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);
Decomposition decomposition_from_json(const Json& j, int a_size, int b_size);

// Every numeric claim under "results"/"verifier" is recomputed by a verifier;
// "timing" is the only non-deterministic block.
struct RunReport {
    std::string command;
    uint64_t seed = 0;
    Json input;
    Json params;
    Json results;
    Json verifier;
    double total_ms = 0;

    Json to_json() const;
};

}  // namespace lowreg
