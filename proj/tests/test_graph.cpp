#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lowreg/generators.hpp"
#include "lowreg/io.hpp"
#include "lowreg/rng.hpp"

using namespace lowreg;

namespace {

BipartiteGraph random_graph(int a, int b, double p, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return BipartiteGraph(a, b, edges);
}

}  // namespace

TEST_CASE("new_graph basics") {
    BipartiteGraph k34 = gen_complete(3, 4);
    CHECK(k34.edge_count() == 12);
    CHECK(k34.deg_a(0) == 4);
    CHECK(k34.deg_b(3) == 3);

    BipartiteGraph empty(2, 2, {});
    CHECK(empty.edge_count() == 0);

    BipartiteGraph dedup(2, 2, {{0, 0}, {0, 0}, {1, 1}});
    CHECK(dedup.edge_count() == 2);

    CHECK_THROWS_AS(BipartiteGraph(2, 2, {{2, 0}}), IndexOutOfRange);
    CHECK_THROWS_AS(BipartiteGraph(2, 2, {{0, -1}}), IndexOutOfRange);
}

TEST_CASE("density examples") {
    BipartiteGraph k34 = gen_complete(3, 4);
    CHECK(density(k34).value == Rational(1));

    BipartiteGraph empty(3, 3, {});
    CHECK(density(empty).value == Rational(0));

    // 6-cycle as a 3+3 bipartite graph: a_i ~ b_i and a_i ~ b_{i+1}
    BipartiteGraph c6(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}});
    Density d = density(c6);
    CHECK(d.value == Rational(2, 3));
    CHECK(d.numerator == 6);
    CHECK(d.denominator == 9);

    CHECK_THROWS_AS(density(c6, VertexSubset::empty(Side::A, 3), c6.full_b()), EmptySubset);
}

TEST_CASE("density times cells equals edge count") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        BipartiteGraph g = random_graph(7, 9, 0.4, seed);
        Density d = density(g);
        CHECK(d.value * (7 * 9) == Rational(g.edge_count()));
    }
}

TEST_CASE("avg_subpair_density whole sides and tiny cases") {
    BipartiteGraph g = random_graph(6, 5, 0.5, 11);
    auto whole = avg_subpair_density(g, 6, 5, 1000);
    CHECK(whole.exact);
    CHECK(whole.pairs == 1);
    CHECK(whole.density.value == density(g).value);

    // K_{2,2} minus one edge: four singleton pairs, densities 1, 1, 1, 0
    BipartiteGraph k22m(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    auto singles = avg_subpair_density(k22m, 1, 1, 1000);
    CHECK(singles.exact);
    CHECK(singles.pairs == 4);
    CHECK(singles.density.value == Rational(3, 4));
    CHECK(singles.density.value == density(k22m).value);

    BipartiteGraph k34 = gen_complete(3, 4);
    auto sub = avg_subpair_density(k34, 2, 2, 1000);
    CHECK(sub.density.value == Rational(1));
}

TEST_CASE("avg_subpair_density sampling path") {
    BipartiteGraph g = random_graph(30, 30, 0.5, 3);
    auto est = avg_subpair_density(g, 10, 10, 100, 42, 500);
    CHECK_FALSE(est.exact);
    CHECK(est.pairs == 500);
    CHECK(est.density.value > Rational(1, 4));
    CHECK(est.density.value < Rational(3, 4));

    CHECK_THROWS_AS(avg_subpair_density(g, 10, 10, 100, 42, 500, false), BudgetExceeded);
}

TEST_CASE("convexity of density, full enumeration") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        BipartiteGraph g = random_graph(6, 6, 0.45, 100 + seed);
        Rational whole = density(g).value;
        for (int k = 1; k <= 6; ++k)
            for (int m = 1; m <= 6; ++m) {
                auto avg = avg_subpair_density(g, k, m, 1ULL << 40);
                REQUIRE(avg.exact);
                CHECK(avg.density.value == whole);
            }
    }
}

TEST_CASE("min_degree_ratio") {
    CHECK(min_degree_ratio(gen_complete(3, 4)) == Rational(1));

    BipartiteGraph iso(3, 4, {{0, 0}, {1, 1}});  // vertex 2 isolated
    CHECK(min_degree_ratio(iso) == Rational(0));

    BipartiteGraph blocks = gen_blocks({{5, 5}, {5, 5}}, 1.0, 0.0, 1);
    CHECK(min_degree_ratio(blocks) == Rational(1, 2));
}

TEST_CASE("induced views") {
    BipartiteGraph k34 = gen_complete(3, 4);
    auto v = induced(k34, k34.full_a(), k34.full_b());
    CHECK(v.density().value == Rational(1));
    CHECK(v.edge_count() == 12);

    BipartiteGraph blocks = gen_blocks({{5, 5}, {5, 5}}, 1.0, 0.0, 1);
    auto s = VertexSubset::of(Side::A, 10, {0, 1, 2, 3, 4});
    auto t = VertexSubset::of(Side::B, 10, {5, 6, 7, 8, 9});
    auto cross = induced(blocks, s, t);
    CHECK(cross.edge_count() == 0);

    // view density agrees with the free function
    BipartiteGraph g = random_graph(8, 8, 0.5, 7);
    auto s2 = VertexSubset::of(Side::A, 8, {1, 3, 5});
    auto t2 = VertexSubset::of(Side::B, 8, {0, 2, 4, 6});
    CHECK(induced(g, s2, t2).density().value == density(g, s2, t2).value);

    CHECK_THROWS_AS(induced(g, VertexSubset::empty(Side::A, 8), t2), EmptySubset);
}

TEST_CASE("deg_in equals popcount of row AND mask") {
    BipartiteGraph g = random_graph(9, 9, 0.5, 13);
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Bitset mask(9);
        for (int i = 0; i < 9; ++i)
            if (rng.bernoulli(0.5)) mask.set(i);
        int v = static_cast<int>(rng.below(9));
        long long naive = 0;
        for (int b = 0; b < 9; ++b)
            if (mask.test(b) && g.has_edge(v, b)) ++naive;
        CHECK(g.deg_in(v, mask) == naive);
    }
}

TEST_CASE("gen_random_min_degree") {
    BipartiteGraph k44 = gen_random_min_degree(4, 4, 1.0, Rational(1, 2), 9);
    CHECK(k44.edge_count() == 16);

    BipartiteGraph g = gen_random_min_degree(64, 64, 0.5, Rational(2, 5), 17);
    CHECK(min_degree_ratio(g) >= Rational(2, 5));

    BipartiteGraph again = gen_random_min_degree(64, 64, 0.5, Rational(2, 5), 17);
    CHECK(g == again);
    BipartiteGraph other = gen_random_min_degree(64, 64, 0.5, Rational(2, 5), 18);
    CHECK_FALSE(g == other);

    CHECK_THROWS_AS(gen_random_min_degree(4, 4, 1.0, Rational(3, 2), 1), InfeasibleFloor);
}

TEST_CASE("gen_blocks") {
    BipartiteGraph two = gen_blocks({{5, 5}, {5, 5}}, 1.0, 0.0, 3);
    CHECK(two.edge_count() == 50);
    CHECK_FALSE(two.has_edge(0, 9));
    CHECK(two.has_edge(0, 0));

    BipartiteGraph one = gen_blocks({{4, 6}}, 1.0, 0.0, 3);
    CHECK(one.edge_count() == 24);
}

TEST_CASE("edge list round trip") {
    std::string path = "test_graph_io.tmp";

    BipartiteGraph k34 = gen_complete(3, 4);
    write_edge_list(k34, path);
    BipartiteGraph back = read_edge_list(path);
    CHECK(back == k34);

    // canonical file contents are reproduced byte for byte
    std::ostringstream first;
    format_edge_list(back, first);
    std::ostringstream second;
    format_edge_list(read_edge_list(path), second);
    CHECK(first.str() == second.str());

    BipartiteGraph empty(5, 5, {});
    write_edge_list(empty, path);
    CHECK(read_edge_list(path) == empty);

    std::remove(path.c_str());
}

TEST_CASE("edge list literal parsing") {
    std::istringstream k34("3 4 12\n0 0\n0 1\n0 2\n0 3\n1 0\n1 1\n1 2\n1 3\n2 0\n2 1\n2 2\n2 3\n");
    BipartiteGraph g = parse_edge_list(k34);
    CHECK(g == gen_complete(3, 4));

    std::istringstream empty_section("2 3 0\n");
    BipartiteGraph e = parse_edge_list(empty_section);
    CHECK(e.a_size() == 2);
    CHECK(e.b_size() == 3);
    CHECK(e.edge_count() == 0);
}

TEST_CASE("edge list parse errors carry line numbers") {
    {
        std::istringstream in("3 4\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);
    }
    {
        std::istringstream in("2 2 2\n0 0\n");
        CHECK_THROWS_AS(parse_edge_list(in), ParseError);  // truncated
    }
    {
        std::istringstream in("2 2 1\n5 0\n");
        CHECK_THROWS_AS(parse_edge_list(in), IndexOutOfRange);
    }
    {
        std::istringstream in("2 2 1\n0 0 7\n");
        try {
            parse_edge_list(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("random balanced bipartition of a general graph") {
    // triangle on 3 vertices: one edge always lands inside a side
    std::vector<std::pair<int, int>> tri{{0, 1}, {1, 2}, {0, 2}};
    auto bp = random_balanced_bipartition(3, tri, 5);
    CHECK(bp.graph.a_size() == 2);
    CHECK(bp.graph.b_size() == 1);
    CHECK(bp.dropped_edges == 1);
    CHECK(bp.graph.edge_count() == 2);

    // graph already bipartite under some split: every cross edge survives
    std::vector<std::pair<int, int>> edges;
    Rng perm(3);
    for (int u = 0; u < 10; ++u)
        for (int v = 10; v < 20; ++v)
            if (perm.bernoulli(0.4)) edges.emplace_back(u, v);
    auto bp2 = random_balanced_bipartition(20, edges, 9);
    CHECK(bp2.graph.edge_count() + bp2.dropped_edges == static_cast<long long>(edges.size()));
    auto bp2b = random_balanced_bipartition(20, edges, 9);
    CHECK(bp2.graph == bp2b.graph);
}

TEST_CASE("without_edges") {
    BipartiteGraph k33 = gen_complete(3, 3);
    std::vector<std::pair<int, int>> del{{0, 0}, {1, 2}};
    BipartiteGraph g = k33.without_edges(del);
    CHECK(g.edge_count() == 7);
    CHECK_FALSE(g.has_edge(0, 0));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.has_edge(0, 1));
    CHECK(g.deg_a(0) == 2);
    CHECK(g.deg_b(0) == 2);
}
