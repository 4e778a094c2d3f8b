#include "lowreg/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lowreg {

const char* stop_reason_name(StopReason r) {
    return r == StopReason::RegularFound ? "regular-found" : "degree-stopping-rule";
}

std::pair<VertexSubset, VertexSubset> split_low_degree(const BipartiteGraph& g,
                                                       const VertexSubset& x_prime,
                                                       const VertexSubset& y_prime,
                                                       const Rational& gamma) {
    VertexSubset kept = VertexSubset::empty(Side::A, x_prime.universe_size());
    VertexSubset discarded = VertexSubset::empty(Side::A, x_prime.universe_size());
    Rational threshold = 2 * gamma * y_prime.cardinality;
    for (int v = x_prime.bits.find_first(); v >= 0; v = x_prime.bits.find_next(v)) {
        if (Rational(g.deg_in(v, y_prime.bits)) > threshold)
            discarded.add(v);
        else
            kept.add(v);
    }
    if (2 * discarded.cardinality > x_prime.cardinality)
        throw CountingViolation(
            "more than half of X' exceeds the 2*gamma*|Y'| degree threshold; "
            "the upstream sub-pair is not a violating witness");
    return {kept, discarded};
}

namespace {

long long iteration_cap(const RegularityParams& params) {
    double delta = rat_double(params.delta());
    double eta = rat_double(params.eta);
    return static_cast<long long>(std::ceil(2.0 * std::log(2.0 / delta) / eta));
}

}  // namespace

ExtractedPair extract_pair(const BipartiteGraph& g, const VertexSubset& a_sub,
                           const RegularityParams& params, const SearchConfig& cfg) {
    if (a_sub.cardinality < 1) throw PreconditionViolated("extract_pair on an empty A subset");
    if (!params.satisfies_decomposition_constraints())
        throw PreconditionViolated(
            "params must satisfy eta <= 1/6 and gamma <= min(eta/4, delta/20)");
    Rational delta = params.delta();
    long long m = g.b_size();
    for (int v = a_sub.bits.find_first(); v >= 0; v = a_sub.bits.find_next(v))
        if (Rational(g.deg_a(v)) < delta * m)
            throw PreconditionViolated("vertex " + std::to_string(v) + " has degree " +
                                       std::to_string(g.deg_a(v)) + " < delta*m");

    ExtractedPair out;
    out.x_final = a_sub;
    out.y_final = g.full_b();
    // (delta*(1 + eta/2) - 2*gamma) * m, exact
    Rational degree_rule_threshold = (delta * (Rational(1) + params.eta / 2) - 2 * params.gamma) * m;
    long long cap = iteration_cap(params);

    while (true) {
        if (Rational(out.y_final.cardinality) <= degree_rule_threshold) {
            out.stop_reason = StopReason::DegreeStoppingRule;
            Certificate cert;
            cert.kind = Certificate::Kind::DegreeStoppingRule;
            cert.params = params;
            cert.y_final_fraction = Rational(out.y_final.cardinality, m);
            // the degree argument's numeric hypothesis: every surviving X
            // vertex kept >= (delta - 2*gamma)*m neighbors in Y
            Rational floor = (delta - 2 * params.gamma) * m;
            for (int v = out.x_final.bits.find_first(); v >= 0;
                 v = out.x_final.bits.find_next(v))
                if (Rational(g.deg_in(v, out.y_final.bits)) < floor)
                    throw CountingViolation(
                        "degree stopping rule hypothesis failed for vertex " +
                        std::to_string(v));
            out.certificate = cert;
            return out;
        }

        CheckOutcome res = check(g, out.x_final, out.y_final, params, cfg);
        if (!found_witness(res)) {
            out.stop_reason = StopReason::RegularFound;
            out.certificate = std::get<Certificate>(res);
            return out;
        }

        const Witness& w = std::get<Witness>(res);
        auto [kept, discarded] = split_low_degree(g, w.x_sub, w.y_sub, params.gamma);
        ExtractStep step;
        step.index = static_cast<int>(out.trace.size()) + 1;
        step.x_prime = w.x_sub;
        step.y_prime = w.y_sub;
        step.x_discarded = discarded;
        step.witness_density = w.density;
        out.trace.push_back(std::move(step));

        out.x_final = kept;
        out.y_final = out.y_final.minus(w.y_sub);
        if (static_cast<long long>(out.trace.size()) > cap + 1)
            throw IterationOverflow("extraction exceeded " + std::to_string(cap + 1) +
                                    " steps; a non-violating witness was accepted");
        if (out.x_final.cardinality == 0)
            throw CountingViolation("X shrank to empty; upstream witness invalid");
    }
}

Decomposition decompose(const BipartiteGraph& g, const RegularityParams& params,
                        const SearchConfig& cfg) {
    if (!params.satisfies_decomposition_constraints())
        throw PreconditionViolated(
            "params must satisfy eta <= 1/6 and gamma <= min(eta/4, delta/20)");
    if (min_degree_ratio(g) < params.delta())
        throw PreconditionViolated("min degree ratio " + rat_str(min_degree_ratio(g)) +
                                   " below delta " + rat_str(params.delta()));

    Decomposition d;
    d.params = params;
    d.total_edges = g.edge_count();
    long long n = g.a_size();

    VertexSubset remainder = g.full_a();
    // continue while |remainder| >= eps * n; B stays the full side, so the
    // min-degree hypothesis is preserved across rounds
    while (Rational(remainder.cardinality) >= params.eps * n) {
        ExtractedPair ep = extract_pair(g, remainder, params, cfg);
        DecompositionPair pair;
        pair.a = ep.x_final;
        pair.b = ep.y_final;
        pair.certificate = ep.certificate;
        pair.trace = std::move(ep.trace);
        pair.stop_reason = ep.stop_reason;
        d.covered_edges += g.edges_between(pair.a, pair.b);
        remainder = remainder.minus(pair.a);
        d.pairs.push_back(std::move(pair));
    }
    d.a0 = remainder;
    return d;
}

TheoreticalBounds theoretical_bounds(const RegularityParams& params, const Rational& delta,
                                     long long n, long long m) {
    double eps = rat_double(params.eps);
    double eta = rat_double(params.eta);
    double del = rat_double(delta);
    TheoreticalBounds b;
    b.min_pair_size =
        eps * std::exp(-2.0 * std::log(2.0 / eps) * std::log(2.0 / del) / eta) * static_cast<double>(n);
    b.max_k = (2.0 / (eps * del)) *
              std::exp(2.0 * std::log(1.0 / eps) * std::log(2.0 / del) / eta);
    b.max_iterations = static_cast<long long>(std::ceil(2.0 * std::log(2.0 / del) / eta));
    b.coverage_loss = (params.eps + 2 * params.gamma) * (n * m);
    return b;
}

namespace {

std::string fmt_ll(long long v) { return std::to_string(v); }

void add_clause(VerifyReport& r, const std::string& name, bool pass, std::string detail,
                bool informational = false) {
    r.clauses.push_back({name, pass, informational, std::move(detail)});
    if (!informational && !pass) r.all_pass = false;
}

}  // namespace

VerifyReport verify_decomposition(const BipartiteGraph& g, const Decomposition& d,
                                  const SearchConfig& cfg) {
    VerifyReport rep;
    const RegularityParams& p = d.params;
    long long n = g.a_size(), m = g.b_size();
    Rational delta = p.delta();

    // partition: a0 plus the a_i tile A exactly, pairwise disjoint, parts nonempty
    {
        VertexSubset seen = d.a0;
        bool disjoint = true, nonempty = true;
        for (auto& pr : d.pairs) {
            if (pr.a.cardinality == 0) nonempty = false;
            if (seen.bits.intersects(pr.a.bits)) disjoint = false;
            seen = seen.unite(pr.a);
        }
        bool covers = seen == g.full_a();
        add_clause(rep, "partition", disjoint && covers && nonempty,
                   std::string(disjoint ? "disjoint" : "OVERLAP") + ", " +
                       (covers ? "covers A" : "does not cover A") +
                       (nonempty ? "" : ", empty part"));
    }

    add_clause(rep, "exceptional_set_size", Rational(d.a0.cardinality) <= p.eps * n,
               "|A0| = " + fmt_ll(d.a0.cardinality) + " vs eps*n = " + rat_str(p.eps * n));

    // coverage recomputed from adjacency
    {
        long long covered = 0;
        for (auto& pr : d.pairs) covered += g.edges_between(pr.a, pr.b);
        Rational floor = Rational(g.edge_count()) - (p.eps + 2 * p.gamma) * (n * m);
        bool pass = Rational(covered) >= floor;
        add_clause(rep, "coverage", pass,
                   "covered = " + fmt_ll(covered) + " vs floor = " + rat_str(floor) +
                       " (e(G) = " + fmt_ll(g.edge_count()) + ")");
        add_clause(rep, "coverage_bookkeeping", covered == d.covered_edges,
                   "recomputed " + fmt_ll(covered) + ", recorded " + fmt_ll(d.covered_edges));
    }

    // per-pair size, weakest consistent form; stronger stated forms reported
    // informationally (see the constant discrepancy note in the docs)
    {
        TheoreticalBounds tb = theoretical_bounds(p, delta, n, m);
        // the enforced floor is the weakest consistent form; the two stronger
        // variants (dropping the eps factor, or shrinking the log to
        // ln(1/eps)) are reported without failing the run
        double weakest = tb.min_pair_size;
        double no_eps_factor = std::exp(-2.0 * std::log(2.0 / rat_double(p.eps)) *
                                        std::log(2.0 / rat_double(delta)) / rat_double(p.eta)) *
                               static_cast<double>(n);
        double smaller_log = rat_double(p.eps) *
                             std::exp(-2.0 * std::log(1.0 / rat_double(p.eps)) *
                                      std::log(2.0 / rat_double(delta)) / rat_double(p.eta)) *
                             static_cast<double>(n);
        int min_size = d.pairs.empty() ? 0 : d.pairs.front().a.cardinality;
        for (auto& pr : d.pairs) min_size = std::min(min_size, pr.a.cardinality);
        bool pass = true, strong_a = true, strong_b = true;
        for (auto& pr : d.pairs) {
            if (pr.a.cardinality < weakest) pass = false;
            if (pr.a.cardinality < no_eps_factor) strong_a = false;
            if (pr.a.cardinality < smaller_log) strong_b = false;
        }
        add_clause(rep, "per_pair_size", pass,
                   "min |A_i| = " + fmt_ll(min_size) + " vs eps*exp(-2ln(2/eps)ln(2/delta)/eta)*n = " +
                       std::to_string(weakest));
        add_clause(rep, "per_pair_size_no_eps_factor", strong_a,
                   "vs exp(-2ln(2/eps)ln(2/delta)/eta)*n = " + std::to_string(no_eps_factor), true);
        add_clause(rep, "per_pair_size_log_one_over_eps", strong_b,
                   "vs eps*exp(-2ln(1/eps)ln(2/delta)/eta)*n = " + std::to_string(smaller_log),
                   true);

        bool k_ok = static_cast<double>(d.k()) <= tb.max_k || std::isinf(tb.max_k);
        add_clause(rep, "k_bound", k_ok,
                   "k = " + std::to_string(d.k()) + " vs (2/(eps*delta))*e^(2ln(1/eps)ln(2/delta)/eta) = " +
                       std::to_string(tb.max_k));

        bool trace_ok = true;
        size_t longest = 0;
        for (auto& pr : d.pairs) {
            longest = std::max(longest, pr.trace.size());
            if (static_cast<long long>(pr.trace.size()) > tb.max_iterations) trace_ok = false;
        }
        add_clause(rep, "trace_length", trace_ok,
                   "max trace = " + std::to_string(longest) + " vs ceil(2ln(2/delta)/eta) = " +
                       fmt_ll(tb.max_iterations));
    }

    // per-vertex loss: every u in A_i keeps all but 2*gamma*m of its edges
    {
        bool pass = true;
        long long worst = 0;
        Rational bound = 2 * p.gamma * m;
        for (auto& pr : d.pairs) {
            Bitset outside = g.full_b().bits;
            outside.subtract(pr.b.bits);
            for (int v = pr.a.bits.find_first(); v >= 0; v = pr.a.bits.find_next(v)) {
                long long lost = Bitset::and_count(g.row(v), outside);
                worst = std::max(worst, lost);
                if (Rational(lost) > bound) pass = false;
            }
        }
        add_clause(rep, "per_vertex_loss", pass,
                   "max deg(u; B \\ B_i) = " + fmt_ll(worst) + " vs 2*gamma*m = " + rat_str(bound));
    }

    // re-certification within budget; heuristic results downgrade to probable
    {
        bool pass = true;
        int exact_ok = 0, heuristic_ok = 0;
        for (auto& pr : d.pairs) {
            if (pr.a.cardinality == 0 || pr.b.cardinality == 0) {
                pass = false;  // an empty pair can never be certified
                continue;
            }
            unsigned long long cost = exact_check_cost(p, pr.a.cardinality, pr.b.cardinality);
            if (cost <= cfg.budget) {
                CheckOutcome res = check_exact(g, pr.a, pr.b, p, cfg.budget);
                if (found_witness(res)) pass = false;
                else ++exact_ok;
            } else {
                CheckOutcome res = check_heuristic(g, pr.a, pr.b, p, cfg.seed, cfg.restarts,
                                                   cfg.sweeps, nullptr, cfg.threads);
                if (found_witness(res)) pass = false;
                else ++heuristic_ok;
                rep.heuristic_dependent = true;
            }
            if (!pr.certificate.exact()) rep.heuristic_dependent = true;
        }
        std::ostringstream os;
        os << exact_ok << " exact, " << heuristic_ok << " heuristic (probable)";
        add_clause(rep, "recertification", pass, os.str());
    }

    return rep;
}

}  // namespace lowreg
