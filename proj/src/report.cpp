#include "lowreg/report.hpp"

#include "lowreg/rng.hpp"

namespace lowreg {

Json to_json(const Rational& r) { return rat_str(r); }

Json to_json(const Density& d) {
    return Json{{"numerator", d.numerator},
                {"denominator", d.denominator},
                {"value", rat_str(d.value)}};
}

Json to_json(const VertexSubset& s) {
    return Json{{"side", side_name(s.side)},
                {"cardinality", s.cardinality},
                {"members", s.to_vector()}};
}

Json to_json(const RegularityParams& p) {
    Json j{{"eps", rat_str(p.eps)}, {"eta", rat_str(p.eta)}, {"gamma", rat_str(p.gamma)}};
    if (p.delta_context) j["delta"] = rat_str(*p.delta_context);
    return j;
}

Json to_json(const Witness& w) {
    return Json{{"x_sub", to_json(w.x_sub)},
                {"y_sub", to_json(w.y_sub)},
                {"edge_count", w.edge_count},
                {"density", to_json(w.density)}};
}

Json to_json(const Certificate& c) {
    Json j{{"kind", certificate_kind_name(c.kind)}, {"params", to_json(c.params)}};
    switch (c.kind) {
        case Certificate::Kind::ExactCertified:
            j["pairs_enumerated"] = c.pairs_enumerated;
            if (c.min_density) j["min_density"] = to_json(*c.min_density);
            break;
        case Certificate::Kind::HeuristicNoWitness:
            j["restarts"] = c.restarts;
            j["seed"] = c.seed;
            break;
        case Certificate::Kind::DegreeStoppingRule:
            j["y_final_fraction"] = rat_str(c.y_final_fraction);
            break;
    }
    return j;
}

Json to_json(const ExtractStep& s) {
    return Json{{"index", s.index},
                {"x_prime", to_json(s.x_prime)},
                {"y_prime", to_json(s.y_prime)},
                {"x_discarded", to_json(s.x_discarded)},
                {"witness_density", to_json(s.witness_density)}};
}

Json to_json(const Decomposition& d, bool include_traces) {
    Json pairs = Json::array();
    for (const auto& p : d.pairs) {
        Json j{{"a", to_json(p.a)},
               {"b", to_json(p.b)},
               {"certificate", to_json(p.certificate)},
               {"stop_reason", stop_reason_name(p.stop_reason)},
               {"trace_length", p.trace.size()}};
        if (include_traces) {
            Json tr = Json::array();
            for (const auto& s : p.trace) tr.push_back(to_json(s));
            j["trace"] = tr;
        }
        pairs.push_back(std::move(j));
    }
    return Json{{"a0", to_json(d.a0)},
                {"k", d.k()},
                {"pairs", pairs},
                {"params", to_json(d.params)},
                {"covered_edges", d.covered_edges},
                {"total_edges", d.total_edges}};
}

Json to_json(const VerifyReport& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses)
        clauses.push_back(Json{{"name", c.name},
                               {"pass", c.pass},
                               {"informational", c.informational},
                               {"detail", c.detail}});
    return Json{{"clauses", clauses},
                {"all_pass", r.all_pass},
                {"heuristic_dependent", r.heuristic_dependent}};
}

Json to_json(const TheoreticalBounds& b) {
    return Json{{"min_pair_size", b.min_pair_size},
                {"max_k", b.max_k},
                {"max_iterations", b.max_iterations},
                {"coverage_loss", rat_str(b.coverage_loss)}};
}

Json to_json(const Embedding& e) {
    Json v = Json::array();
    for (size_t i = 0; i < e.phi.size(); ++i)
        v.push_back(Json{{"tree_index", i},
                         {"side", side_name(e.host_side[i])},
                         {"host_index", e.phi[i]}});
    return Json{{"vertices", v}};
}

Json to_json(const PreconditionReport& r) {
    return Json{{"ok", r.ok()}, {"violations", r.violations}, {"notes", r.notes}};
}

Json to_json(const Tiling& t) {
    Json rounds = Json::array();
    for (const auto& r : t.rounds) {
        Json trees = Json::array();
        for (const auto& et : r.trees)
            trees.push_back(Json{{"pair_index", et.pair_index},
                                 {"tree_size", et.tree.size()},
                                 {"edges", et.tree.size() - 1}});
        Json pair_summaries = Json::array();
        for (const auto& p : r.decomposition.pairs)
            pair_summaries.push_back(Json{{"a_size", p.a.cardinality},
                                          {"b_size", p.b.cardinality},
                                          {"certificate", certificate_kind_name(p.certificate.kind)}});
        rounds.push_back(Json{{"k", r.decomposition.k()},
                              {"pairs", pair_summaries},
                              {"trees", trees},
                              {"skipped", r.skipped},
                              {"edges_used", r.edges_used}});
    }
    Json traj = Json::array();
    for (const auto& f : t.fraction_trajectory) traj.push_back(rat_str(f));
    return Json{{"rounds", rounds},
                {"covered_edge_fraction", rat_str(t.covered_edge_fraction)},
                {"covered_edge_fraction_approx", rat_double(t.covered_edge_fraction)},
                {"fraction_trajectory", traj},
                {"residual_edges", t.residual.edge_count()},
                {"original_edges", t.original_edges},
                {"stop_reason", t.stop_reason}};
}

Json input_digest(const BipartiteGraph& g, const std::string& path) {
    return Json{{"path", path},
                {"a_size", g.a_size()},
                {"b_size", g.b_size()},
                {"edges", g.edge_count()},
                {"min_degree_ratio", g.a_size() > 0 && g.b_size() > 0
                                         ? rat_str(min_degree_ratio(g))
                                         : "0"}};
}

RegularityParams params_from_json(const Json& j) {
    std::optional<Rational> delta;
    if (j.contains("delta")) delta = rational_from_string(j["delta"].get<std::string>());
    return RegularityParams::make(rational_from_string(j["eps"].get<std::string>()),
                                  rational_from_string(j["eta"].get<std::string>()),
                                  rational_from_string(j["gamma"].get<std::string>()), delta);
}

VertexSubset subset_from_json(const Json& j) {
    Side side = j["side"].get<std::string>() == "A" ? Side::A : Side::B;
    auto members = j["members"].get<std::vector<int>>();
    int universe = 0;
    for (int v : members) universe = std::max(universe, v + 1);
    // the universe size is not serialized; callers align it to the graph
    VertexSubset s = VertexSubset::of(side, universe, members);
    if (s.cardinality != j["cardinality"].get<int>())
        throw ParseError("subset cardinality does not match its member list", 0);
    return s;
}

namespace {

// re-embed a subset into the side size of the host graph
VertexSubset widen(const VertexSubset& s, int universe) {
    VertexSubset w = VertexSubset::empty(s.side, universe);
    for (int v = s.bits.find_first(); v >= 0; v = s.bits.find_next(v)) w.add(v);
    return w;
}

}  // namespace

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    std::string kind = j["kind"].get<std::string>();
    if (kind == "exact") {
        c.kind = Certificate::Kind::ExactCertified;
        c.pairs_enumerated = j.value("pairs_enumerated", 0ULL);
    } else if (kind == "heuristic-no-witness") {
        c.kind = Certificate::Kind::HeuristicNoWitness;
        c.restarts = j.value("restarts", 0);
        c.seed = j.value("seed", 0ULL);
    } else if (kind == "degree-stopping-rule") {
        c.kind = Certificate::Kind::DegreeStoppingRule;
        c.y_final_fraction = rational_from_string(j["y_final_fraction"].get<std::string>());
    } else {
        throw ParseError("unknown certificate kind '" + kind + "'", 0);
    }
    c.params = params_from_json(j["params"]);
    return c;
}

Decomposition decomposition_from_json(const Json& j, int a_size, int b_size) {
    Decomposition d;
    d.params = params_from_json(j["params"]);
    d.covered_edges = j["covered_edges"].get<long long>();
    d.total_edges = j["total_edges"].get<long long>();
    d.a0 = widen(subset_from_json(j["a0"]), a_size);
    for (const auto& pj : j["pairs"]) {
        DecompositionPair p;
        p.a = widen(subset_from_json(pj["a"]), a_size);
        p.b = widen(subset_from_json(pj["b"]), b_size);
        p.certificate = certificate_from_json(pj["certificate"]);
        p.stop_reason = pj["stop_reason"].get<std::string>() == "regular-found"
                            ? StopReason::RegularFound
                            : StopReason::DegreeStoppingRule;
        d.pairs.push_back(std::move(p));
    }
    return d;
}

Json RunReport::to_json() const {
    return Json{{"schema", kReportSchema},
                {"tool_version", kToolVersion},
                {"rng", kRngVersion},
                {"command", command},
                {"seed", seed},
                {"input", input},
                {"params", params},
                {"results", results},
                {"verifier", verifier},
                {"timing", Json{{"total_ms", total_ms}}}};
}

}  // namespace lowreg
