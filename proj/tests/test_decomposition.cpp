#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowreg/decomposition.hpp"
#include "lowreg/generators.hpp"
#include "lowreg/rng.hpp"

using namespace lowreg;

namespace {

RegularityParams decomposition_params(Rational eps, Rational eta, Rational delta) {
    return RegularityParams::make(eps, eta, std::min(eta / 4, delta / 20), delta);
}

BipartiteGraph random_graph(int a, int b, double p, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return BipartiteGraph(a, b, edges);
}

}  // namespace

TEST_CASE("split_low_degree") {
    // zero-density witness: nothing to discard
    BipartiteGraph empty(6, 6, {});
    auto xp = VertexSubset::of(Side::A, 6, {0, 1, 2});
    auto yp = VertexSubset::of(Side::B, 6, {0, 1, 2});
    auto [kept, discarded] = split_low_degree(empty, xp, yp, Rational(1, 10));
    CHECK(kept == xp);
    CHECK(discarded.cardinality == 0);

    // one vertex fully attached to y', the rest empty: only it crosses 2*gamma*|y'|
    BipartiteGraph g(4, 4, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
    auto xp2 = VertexSubset::full(Side::A, 4);
    auto yp2 = VertexSubset::full(Side::B, 4);
    auto [kept2, discarded2] = split_low_degree(g, xp2, yp2, Rational(1, 100));
    CHECK(discarded2.cardinality == 1);
    CHECK(discarded2.contains(0));
    CHECK(kept2.cardinality == 3);

    // a fake "witness" that is far from violating trips the counting guard
    BipartiteGraph k(6, 6, {});
    {
        BipartiteGraph full = gen_complete(6, 6);
        auto xfull = VertexSubset::full(Side::A, 6);
        auto yfull = VertexSubset::full(Side::B, 6);
        CHECK_THROWS_AS(split_low_degree(full, xfull, yfull, Rational(1, 10)),
                        CountingViolation);
    }
}

TEST_CASE("split_low_degree halving bound on random violating witnesses") {
    auto p = RegularityParams::make(Rational(3, 10), Rational(3, 10), Rational(1, 10));
    int seen = 0;
    for (uint64_t seed = 0; seen < 100 && seed < 1500; ++seed) {
        BipartiteGraph g = random_graph(12, 12, 0.35, 500 + seed);
        auto res = check_exact(g, g.full_a(), g.full_b(), p, 10000000ULL);
        if (!found_witness(res)) continue;
        ++seen;
        const Witness& w = std::get<Witness>(res);
        auto [kept, discarded] = split_low_degree(g, w.x_sub, w.y_sub, p.gamma);
        CHECK(2 * discarded.cardinality <= w.x_sub.cardinality);
        CHECK(kept.cardinality + discarded.cardinality == w.x_sub.cardinality);
    }
    CHECK(seen == 100);
}

TEST_CASE("extract_pair on a complete graph returns the whole pair") {
    BipartiteGraph k = gen_complete(9, 7);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    auto ep = extract_pair(k, k.full_a(), p, cfg);
    CHECK(ep.stop_reason == StopReason::RegularFound);
    CHECK(ep.trace.empty());
    CHECK(ep.x_final == k.full_a());
    CHECK(ep.y_final == k.full_b());
    CHECK(ep.certificate.kind == Certificate::Kind::ExactCertified);
}

TEST_CASE("degree stopping rule fires when delta is 1 and is sound") {
    // with delta = 1 the threshold (delta*(1+eta/2) - 2*gamma)*m reaches m,
    // so the rule fires before the first check; the pair must still be regular
    BipartiteGraph k = gen_complete(8, 8);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1));
    SearchConfig cfg;
    auto ep = extract_pair(k, k.full_a(), p, cfg);
    CHECK(ep.stop_reason == StopReason::DegreeStoppingRule);
    CHECK(ep.certificate.kind == Certificate::Kind::DegreeStoppingRule);
    CHECK(ep.certificate.y_final_fraction == Rational(1));
    auto confirm = check_exact(k, ep.x_final, ep.y_final, p, 10000000ULL);
    CHECK_FALSE(found_witness(confirm));
}

TEST_CASE("extract_pair on two disjoint blocks emits an exactly regular pair") {
    BipartiteGraph g = gen_blocks({{8, 8}, {8, 8}}, 1.0, 0.0, 11);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    REQUIRE(p.gamma == Rational(1, 40));
    SearchConfig cfg;
    auto ep = extract_pair(g, g.full_a(), p, cfg);

    // extraction structure recomputed from the trace
    CHECK(static_cast<long long>(ep.trace.size()) <= 17);  // ceil(2 ln 4 / (1/6))
    VertexSubset removed = VertexSubset::empty(Side::B, 16);
    for (size_t i = 0; i < ep.trace.size(); ++i) {
        const auto& st = ep.trace[i];
        CHECK(st.witness_density.value < p.gamma);
        CHECK_FALSE(removed.bits.intersects(st.y_prime.bits));  // Y' disjoint
        removed = removed.unite(st.y_prime);
        CHECK(2 * st.x_discarded.cardinality <= st.x_prime.cardinality);
    }
    CHECK(ep.y_final == g.full_b().minus(removed));
    CHECK(Rational(ep.y_final.cardinality) >=
          (p.delta() * (Rational(1) - p.eta) - 2 * p.gamma) * 16);

    // per-vertex loss straight from the trace
    for (int v = ep.x_final.bits.find_first(); v >= 0; v = ep.x_final.bits.find_next(v))
        CHECK(Rational(g.deg_in(v, removed.bits)) <= 2 * p.gamma * 16);

    // the emitted pair really is lower regular
    auto confirm = check_exact(g, ep.x_final, ep.y_final, p, 100000000ULL);
    CHECK_FALSE(found_witness(confirm));

    // |X_l| >= (eps/2)^l * a
    double floor = std::pow(rat_double(p.eps) / 2.0, static_cast<double>(ep.trace.size())) * 16;
    CHECK(static_cast<double>(ep.x_final.cardinality) >= floor);
}

TEST_CASE("extract_pair rejects precondition violations") {
    BipartiteGraph g(4, 4, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});  // all degree 1
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    CHECK_THROWS_AS(extract_pair(g, g.full_a(), p, cfg), PreconditionViolated);

    BipartiteGraph k = gen_complete(4, 4);
    auto bad = RegularityParams::make(Rational(1, 6), Rational(1, 2), Rational(1, 40),
                                      Rational(1, 2));  // eta > 1/6
    CHECK_THROWS_AS(extract_pair(k, k.full_a(), bad, cfg), PreconditionViolated);
}

TEST_CASE("decompose complete graph") {
    BipartiteGraph k = gen_complete(12, 10);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    Decomposition d = decompose(k, p, cfg);
    CHECK(d.k() == 1);
    CHECK(d.a0.cardinality == 0);
    CHECK(d.covered_edges == k.edge_count());
    auto rep = verify_decomposition(k, d, cfg);
    CHECK(rep.all_pass);
    CHECK_FALSE(rep.heuristic_dependent);
}

TEST_CASE("decompose two blocks and verify") {
    BipartiteGraph g = gen_blocks({{8, 8}, {8, 8}}, 1.0, 0.0, 4);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    Decomposition d = decompose(g, p, cfg);
    auto rep = verify_decomposition(g, d, cfg);
    for (const auto& c : rep.clauses) {
        INFO(c.name, ": ", c.detail);
        if (!c.informational) CHECK(c.pass);
    }
    CHECK(Rational(d.covered_edges) >=
          Rational(g.edge_count()) - (p.eps + 2 * p.gamma) * (16 * 16));
}

TEST_CASE("decompose rejects a graph below the degree hypothesis") {
    BipartiteGraph g(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    CHECK_THROWS_AS(decompose(g, p, cfg), PreconditionViolated);
}

TEST_CASE("k stays within the closed-form bound") {
    BipartiteGraph g = gen_random_min_degree(32, 32, 0.6, Rational(1, 2), 21);
    auto p = decomposition_params(Rational(1, 10), Rational(1, 10), Rational(1, 2));
    SearchConfig cfg;
    Decomposition d = decompose(g, p, cfg);
    TheoreticalBounds tb = theoretical_bounds(p, Rational(1, 2), 32, 32);
    CHECK(static_cast<double>(d.k()) <= tb.max_k);
}

TEST_CASE("verifier catches a tampered partition") {
    BipartiteGraph g = gen_blocks({{8, 8}, {8, 8}}, 1.0, 0.0, 4);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    Decomposition d = decompose(g, p, cfg);
    REQUIRE(d.k() >= 2);
    int moved = d.pairs[0].a.bits.find_first();
    d.pairs[0].a.remove(moved);
    d.pairs[1].a.add(moved);
    auto rep = verify_decomposition(g, d, cfg);
    CHECK_FALSE(rep.all_pass);
    bool partition_failed = false;
    for (const auto& c : rep.clauses)
        if (c.name == "partition" && !c.pass) partition_failed = true;
    CHECK(partition_failed);
}

TEST_CASE("randomized verification sweep") {
    SearchConfig cfg;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        BipartiteGraph g = gen_random_min_degree(64, 64, 0.5, Rational(2, 5), 6000 + seed);
        auto p = decomposition_params(Rational(3, 20), Rational(3, 20), Rational(2, 5));
        Decomposition d = decompose(g, p, cfg);
        auto rep = verify_decomposition(g, d, cfg);
        for (const auto& c : rep.clauses) {
            INFO("seed ", seed, " clause ", c.name, ": ", c.detail);
            if (!c.informational) CHECK(c.pass);
        }
    }
}

TEST_CASE("theoretical bounds") {
    // delta = 1/2, eta = 1/6: ceil(12 ln 4) = 17
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    TheoreticalBounds b = theoretical_bounds(p, Rational(1, 2), 100, 100);
    CHECK(b.max_iterations == 17);

    // coverage floor arithmetic: K_{10,10}, eps = 1/10, gamma = 1/100
    auto p2 = RegularityParams::make(Rational(1, 10), Rational(1, 10), Rational(1, 100),
                                     Rational(1, 2));
    TheoreticalBounds b2 = theoretical_bounds(p2, Rational(1, 2), 10, 10);
    CHECK(b2.coverage_loss == Rational(12));
    CHECK(b2.coverage_floor(100) == Rational(88));

    // sparse regime at n = 4096: min pair size beats n / (ln n)^60
    long long n = 4096;
    double delta_d = std::log(std::log(static_cast<double>(n))) /
                     std::log(static_cast<double>(n));
    Rational delta = rational_from_double(delta_d);
    auto p3 = RegularityParams::make(Rational(1, 10), Rational(1, 10), delta / 20, delta);
    TheoreticalBounds b3 = theoretical_bounds(p3, delta, n, n);
    double curve = static_cast<double>(n) /
                   std::pow(std::log(static_cast<double>(n)), 60.0);
    CHECK(b3.min_pair_size > curve);
    CHECK(b3.min_pair_size > 0.0);
}

TEST_CASE("iteration cap guards against a bogus witness source") {
    // The public API cannot inject witnesses, so exercise the guard indirectly:
    // the cap for delta = 1/2, eta = 1/6 is 17 + 1; real runs stay far below.
    BipartiteGraph g = gen_blocks({{8, 8}, {8, 8}}, 1.0, 0.0, 11);
    auto p = decomposition_params(Rational(1, 6), Rational(1, 6), Rational(1, 2));
    SearchConfig cfg;
    auto ep = extract_pair(g, g.full_a(), p, cfg);
    CHECK(static_cast<long long>(ep.trace.size()) <= 18);
}
