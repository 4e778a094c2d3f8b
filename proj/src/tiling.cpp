#include "lowreg/tiling.hpp"

#include <algorithm>

#include "lowreg/rng.hpp"

namespace lowreg {

namespace {

// Tree edges as global host edges (A index, B index).
std::vector<std::pair<int, int>> embedding_edges(const RootedTree& t, const LevelStructure& ls,
                                                 const Embedding& e) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(t.size()) - 1);
    for (int v = 0; v < t.size(); ++v) {
        if (v == t.root) continue;
        int p = t.parent[static_cast<size_t>(v)];
        bool v_odd = ls.level_of[static_cast<size_t>(v)] % 2 == 1;
        int ha = v_odd ? e.phi[static_cast<size_t>(v)] : e.phi[static_cast<size_t>(p)];
        int hb = v_odd ? e.phi[static_cast<size_t>(p)] : e.phi[static_cast<size_t>(v)];
        out.emplace_back(ha, hb);
    }
    return out;
}

// Embedding runs at the tile gamma with the usual couplings. Tree color
// targets use a 1/2 fill factor instead of (1 - 10*gamma): a column stays in
// the good pool only with >= gamma*|A| neighbors inside a third of the unused
// A side, so a fill factor s needs local density about 3*gamma/(1-s); filling
// to (1 - 10*gamma) pushes that to 0.3 regardless of gamma and strands every
// tree near its tail once the residual thins. Half-filling keeps rounds
// productive down to roughly 6*gamma residual density.
constexpr Rational kTreeFill{1, 2};

RegularityParams embed_params(const RegularityParams& p) {
    return RegularityParams::make(p.gamma * p.gamma / 10, 4 * p.gamma, p.gamma);
}

// Tree color targets at the fill factor, level caps from the derived
// embedding couplings at the pair's sizes, feasibility-clamped.
RootedTree synthesize_tree(const RegularityParams& pe, int pair_a, int pair_b, Rng& rng) {
    int x_target = static_cast<int>(rat_floor(kTreeFill * pair_a));
    int y_target = static_cast<int>(rat_floor(kTreeFill * pair_b));
    int even_cap = static_cast<int>(std::max(1LL, rat_ceil(pe.eps * pair_a)));
    int odd_cap = static_cast<int>(std::max(1LL, rat_ceil(pe.eta * pair_b)));
    if (x_target < 1 || y_target < 1) throw InfeasibleTargets("pair too small to host a tree");
    // the plan interleaves one odd level per even level, so x bounds the
    // number of even levels and their capacity bounds y
    y_target = std::min<long long>(y_target, static_cast<long long>(x_target) * even_cap);
    int e_min = (y_target + even_cap - 1) / even_cap;
    long long x_max = 1 + static_cast<long long>(y_target) * odd_cap;
    x_target = static_cast<int>(std::clamp<long long>(x_target, e_min, x_max));
    return gen_random_tree_with_caps(x_target, y_target, even_cap, odd_cap, rng.next());
}

}  // namespace

Tiling tile(const BipartiteGraph& g, const RegularityParams& params,
            const Rational& stop_density, int max_rounds, uint64_t seed,
            const SearchConfig& cfg) {
    if (!params.satisfies_decomposition_constraints())
        throw PreconditionViolated(
            "tiling params must satisfy eta <= 1/6 and gamma <= min(eta/4, delta/20)");
    if (g.edge_count() == 0) {
        Tiling empty;
        empty.residual = g;
        empty.stop_reason = "empty input";
        return empty;
    }
    if (min_degree_ratio(g) < params.delta())
        throw PreconditionViolated("round-1 min degree ratio below delta");

    Tiling out;
    out.residual = g;
    out.original_edges = g.edge_count();
    Rational delta = params.delta();
    RegularityParams pe = embed_params(params);
    long long n = g.a_size(), m = g.b_size();
    Rng rng(seed);

    std::vector<char> active(static_cast<size_t>(n), 1);
    int barren_streak = 0;

    for (int round = 0; round < max_rounds; ++round) {
        // prune A-vertices that fell below delta*m in the residual
        for (int v = 0; v < n; ++v)
            if (active[static_cast<size_t>(v)] &&
                Rational(out.residual.deg_a(v)) < delta * m)
                active[static_cast<size_t>(v)] = 0;
        std::vector<int> active_idx;
        for (int v = 0; v < n; ++v)
            if (active[static_cast<size_t>(v)]) active_idx.push_back(v);
        if (active_idx.empty()) {
            out.stop_reason = "min-degree hypothesis failed for every A vertex";
            break;
        }
        Rational res_density(out.residual.edge_count(), n * m);
        if (res_density < stop_density) {
            out.stop_reason = "residual density " + rat_str(res_density) + " below stop density";
            break;
        }

        // Materialize the active sub-instance in seeded-permuted coordinates;
        // B stays the full side. embed_tree resolves arbitrary choices by
        // lowest index, and in fixed coordinates that bias drains one corner
        // of the residual round after round until it turns irregular; a fresh
        // permutation each round spreads the usage while staying seed-exact.
        Rng round_rng = rng.fork(static_cast<uint64_t>(round));
        round_rng.shuffle(active_idx);
        std::vector<int> b_perm(static_cast<size_t>(m));
        for (int b = 0; b < m; ++b) b_perm[static_cast<size_t>(b)] = b;
        round_rng.shuffle(b_perm);
        std::vector<int> b_sub_of(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) b_sub_of[static_cast<size_t>(b_perm[static_cast<size_t>(j)])] = j;

        std::vector<std::pair<int, int>> sub_edges;
        for (size_t i = 0; i < active_idx.size(); ++i) {
            const Bitset& row = out.residual.row(active_idx[i]);
            for (int b = row.find_first(); b >= 0; b = row.find_next(b))
                sub_edges.emplace_back(static_cast<int>(i), b_sub_of[static_cast<size_t>(b)]);
        }
        BipartiteGraph sub(static_cast<int>(active_idx.size()), static_cast<int>(m), sub_edges);

        // Rounds are a throughput loop: once the residual thins, extractions
        // multiply and mid-size exact enumerations (millions of subsets, each
        // scanning the far side) stall a round for seconds, so the per-round
        // search gets tighter caps than one-shot checks. The caller's budget
        // still applies in full to any later verification.
        SearchConfig round_cfg = cfg;
        round_cfg.seed = splitmix64(seed ^ static_cast<uint64_t>(round));
        round_cfg.budget = std::min<unsigned long long>(cfg.budget, 50000);
        round_cfg.restarts = std::min(cfg.restarts, 4);
        Decomposition sub_d = decompose(sub, params, round_cfg);

        // lift the decomposition to global indices for the report/verifier
        TilingRound tr;
        tr.decomposition.params = sub_d.params;
        tr.decomposition.total_edges = sub_d.total_edges;
        tr.decomposition.covered_edges = sub_d.covered_edges;
        auto lift_a = [&](const VertexSubset& s) {
            VertexSubset out_s = VertexSubset::empty(Side::A, static_cast<int>(n));
            for (int v = s.bits.find_first(); v >= 0; v = s.bits.find_next(v))
                out_s.add(active_idx[static_cast<size_t>(v)]);
            return out_s;
        };
        auto lift_b = [&](const VertexSubset& s) {
            VertexSubset out_s = VertexSubset::empty(Side::B, static_cast<int>(m));
            for (int w = s.bits.find_first(); w >= 0; w = s.bits.find_next(w))
                out_s.add(b_perm[static_cast<size_t>(w)]);
            return out_s;
        };
        tr.decomposition.a0 = lift_a(sub_d.a0);
        for (auto& pr : sub_d.pairs) {
            DecompositionPair gp;
            gp.a = lift_a(pr.a);
            gp.b = lift_b(pr.b);
            gp.certificate = pr.certificate;
            gp.stop_reason = pr.stop_reason;
            // traces stay in sub-instance coordinates; drop them in tiling reports
            tr.decomposition.pairs.push_back(std::move(gp));
        }

        // embed one synthesized tree per pair in the permuted sub-instance,
        // then translate hosts back to global coordinates
        std::vector<std::pair<int, int>> used_edges;
        for (int pi = 0; pi < sub_d.k(); ++pi) {
            const auto& pr = sub_d.pairs[static_cast<size_t>(pi)];
            try {
                RootedTree tree = synthesize_tree(pe, pr.a.cardinality, pr.b.cardinality, rng);
                Embedding emb = embed_tree(sub, pr.a, pr.b, tree, pe, rng.next());
                LevelStructure ls = level_sets(tree);
                for (size_t v = 0; v < emb.phi.size(); ++v)
                    emb.phi[v] = emb.host_side[v] == Side::A
                                     ? active_idx[static_cast<size_t>(emb.phi[v])]
                                     : b_perm[static_cast<size_t>(emb.phi[v])];
                auto edges = embedding_edges(tree, ls, emb);
                used_edges.insert(used_edges.end(), edges.begin(), edges.end());
                tr.edges_used += static_cast<long long>(edges.size());
                tr.trees.push_back({std::move(tree), std::move(emb), pi});
            } catch (const EmbeddingStuck& e) {
                tr.skipped.push_back("pair " + std::to_string(pi) + ": " + e.what());
            } catch (const InfeasibleTargets& e) {
                tr.skipped.push_back("pair " + std::to_string(pi) + ": " + e.what());
            }
        }

        barren_streak = used_edges.empty() ? barren_streak + 1 : 0;
        out.residual = out.residual.without_edges(used_edges);
        out.covered_edge_fraction =
            Rational(out.original_edges - out.residual.edge_count(), out.original_edges);
        out.fraction_trajectory.push_back(out.covered_edge_fraction);
        out.rounds.push_back(std::move(tr));
        // one barren round can recover (shapes and partitions are reseeded
        // every round); a streak of them means the vacant part of the graph
        // no longer hosts trees at these parameters
        if (barren_streak >= 3) {
            out.stop_reason = "no tree embedded in 3 consecutive rounds";
            break;
        }
    }
    if (out.stop_reason.empty()) out.stop_reason = "max rounds reached";
    return out;
}

std::vector<std::string> verify_tiling(const BipartiteGraph& g_original, const Tiling& t) {
    std::vector<std::string> out;
    BipartiteGraph residual = g_original;
    std::vector<char> used(static_cast<size_t>(g_original.a_size()) *
                              static_cast<size_t>(std::max(1, g_original.b_size())),
                          0);
    auto edge_key = [&](int a, int b) {
        return static_cast<size_t>(a) * static_cast<size_t>(g_original.b_size()) +
               static_cast<size_t>(b);
    };

    for (size_t ri = 0; ri < t.rounds.size(); ++ri) {
        const TilingRound& round = t.rounds[ri];
        std::vector<std::pair<int, int>> round_edges;
        for (const auto& et : round.trees) {
            const auto& pr = round.decomposition.pairs.at(static_cast<size_t>(et.pair_index));
            auto viols = verify_embedding(residual, et.tree, pr.a, pr.b, et.embedding);
            for (auto& v : viols)
                out.push_back("round " + std::to_string(ri + 1) + ": " + v);
            LevelStructure ls = level_sets(et.tree);
            for (auto [a, b] : embedding_edges(et.tree, ls, et.embedding)) {
                if (a < 0 || b < 0) continue;
                if (used[edge_key(a, b)])
                    out.push_back("round " + std::to_string(ri + 1) + ": edge (" +
                                  std::to_string(a) + ", " + std::to_string(b) +
                                  ") used by two trees");
                used[edge_key(a, b)] = 1;
                round_edges.emplace_back(a, b);
            }
        }
        residual = residual.without_edges(round_edges);
    }

    if (!(residual == t.residual)) out.push_back("residual graph does not match the replay");
    if (t.original_edges != g_original.edge_count())
        out.push_back("original edge count mismatch");
    Rational expect = g_original.edge_count() == 0
                          ? Rational(0)
                          : Rational(g_original.edge_count() - residual.edge_count(),
                                     g_original.edge_count());
    if (t.covered_edge_fraction != expect)
        out.push_back("covered_edge_fraction " + rat_str(t.covered_edge_fraction) +
                      " != recomputed " + rat_str(expect));
    for (size_t i = 1; i < t.fraction_trajectory.size(); ++i)
        if (t.fraction_trajectory[i] < t.fraction_trajectory[i - 1])
            out.push_back("covered fraction decreased at round " + std::to_string(i + 1));
    return out;
}

}  // namespace lowreg
