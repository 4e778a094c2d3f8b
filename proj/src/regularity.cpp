#include "lowreg/regularity.hpp"

#include <algorithm>
#include <atomic>
#include <future>

#include "lowreg/rng.hpp"

namespace lowreg {

RegularityParams RegularityParams::make(Rational eps, Rational eta, Rational gamma,
                                        std::optional<Rational> delta_context) {
    auto in_unit = [](const Rational& r) { return r > Rational(0) && r < Rational(1); };
    if (!in_unit(eps) || !in_unit(eta) || !in_unit(gamma))
        throw PreconditionViolated("eps, eta, gamma must lie in (0, 1)");
    if (delta_context && (*delta_context <= Rational(0) || *delta_context > Rational(1)))
        throw PreconditionViolated("delta_context must lie in (0, 1]");
    return {eps, eta, gamma, delta_context};
}

bool RegularityParams::satisfies_decomposition_constraints() const {
    if (!delta_context) return false;
    if (eta > Rational(1, 6)) return false;
    return gamma <= std::min(eta / 4, *delta_context / 20);
}

Rational RegularityParams::delta() const {
    if (!delta_context) throw PreconditionViolated("params carry no delta_context");
    return *delta_context;
}

const char* certificate_kind_name(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::ExactCertified: return "exact";
        case Certificate::Kind::HeuristicNoWitness: return "heuristic-no-witness";
        case Certificate::Kind::DegreeStoppingRule: return "degree-stopping-rule";
    }
    return "?";
}

std::pair<int, int> witness_sizes(const RegularityParams& params, int s_card, int t_card) {
    if (s_card < 1 || t_card < 1) throw EmptySubset("witness sizes of an empty pair");
    auto clamp = [](long long v, int hi) {
        return static_cast<int>(std::max(1LL, std::min<long long>(v, hi)));
    };
    return {clamp(rat_ceil(params.eps * s_card), s_card),
            clamp(rat_ceil(params.eta * t_card), t_card)};
}

unsigned long long exact_check_cost(const RegularityParams& params, int s_card, int t_card) {
    auto [sx, sy] = witness_sizes(params, s_card, t_card);
    return std::min(binomial_saturating(s_card, sx), binomial_saturating(t_card, sy));
}

namespace {

struct PairContext {
    std::vector<int> s_idx;  // members of S ascending
    std::vector<int> t_idx;
    int sx = 0, sy = 0;
};

// The k vertices of `candidates` with smallest key, ties by ascending index.
// keys aligned with candidates.
std::vector<int> select_k_min(const std::vector<int>& candidates,
                              const std::vector<long long>& keys, int k) {
    std::vector<int> order(candidates.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (keys[static_cast<size_t>(a)] != keys[static_cast<size_t>(b)])
            return keys[static_cast<size_t>(a)] < keys[static_cast<size_t>(b)];
        return candidates[static_cast<size_t>(a)] < candidates[static_cast<size_t>(b)];
    });
    std::vector<int> out(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<size_t>(i)] = candidates[static_cast<size_t>(order[static_cast<size_t>(i)])];
    std::sort(out.begin(), out.end());
    return out;
}

Bitset mask_of(const std::vector<int>& idx, int n) {
    Bitset m(n);
    for (int v : idx) m.set(v);
    return m;
}

bool next_combination(std::vector<int>& pos, int n) {
    int k = static_cast<int>(pos.size());
    for (int i = k - 1; i >= 0; --i) {
        if (pos[static_cast<size_t>(i)] < n - k + i) {
            ++pos[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pos[static_cast<size_t>(j)] = pos[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

Witness make_witness(Side fixed_side, const std::vector<int>& fixed,
                     const std::vector<int>& greedy, long long edges, int a_universe,
                     int b_universe) {
    const std::vector<int>& xs = fixed_side == Side::A ? fixed : greedy;
    const std::vector<int>& ys = fixed_side == Side::A ? greedy : fixed;
    Witness w;
    w.x_sub = VertexSubset::of(Side::A, a_universe, xs);
    w.y_sub = VertexSubset::of(Side::B, b_universe, ys);
    w.edge_count = edges;
    w.density = Density::of(edges, static_cast<long long>(xs.size()) *
                                       static_cast<long long>(ys.size()));
    return w;
}

}  // namespace

CheckOutcome check_exact(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                         const RegularityParams& params, unsigned long long budget) {
    if (s.cardinality == 0 || t.cardinality == 0) throw EmptySubset("check of an empty pair");
    auto [sx, sy] = witness_sizes(params, s.cardinality, t.cardinality);

    unsigned long long cost_s = binomial_saturating(s.cardinality, sx);
    unsigned long long cost_t = binomial_saturating(t.cardinality, sy);
    unsigned long long cost = std::min(cost_s, cost_t);
    if (cost > budget) throw BudgetExceeded(cost);

    // Enumerate the cheaper side; greedily select the other. e(X, Y) is a sum
    // of per-vertex degrees into the fixed subset, so picking the fixed_other
    // vertices with fewest edges minimizes the density exactly.
    bool enumerate_t = cost_t <= cost_s;
    const VertexSubset& enum_set = enumerate_t ? t : s;
    const VertexSubset& other_set = enumerate_t ? s : t;
    int enum_size = enumerate_t ? sy : sx;
    int other_size = enumerate_t ? sx : sy;

    std::vector<int> enum_idx = enum_set.to_vector();
    std::vector<int> other_idx = other_set.to_vector();
    int n_enum = static_cast<int>(enum_idx.size());

    long long cells = static_cast<long long>(sx) * sy;
    // strict: e * 1 < gamma * cells
    auto violates = [&](long long e) {
        return Rational(e) < params.gamma * cells;
    };

    std::optional<Witness> best;
    unsigned long long enumerated = 0;
    std::vector<long long> keys(other_idx.size());

    std::vector<int> pos(static_cast<size_t>(enum_size));
    for (int i = 0; i < enum_size; ++i) pos[static_cast<size_t>(i)] = i;
    do {
        ++enumerated;
        std::vector<int> fixed(static_cast<size_t>(enum_size));
        for (int i = 0; i < enum_size; ++i)
            fixed[static_cast<size_t>(i)] = enum_idx[static_cast<size_t>(pos[static_cast<size_t>(i)])];
        Bitset fmask = mask_of(fixed, enum_set.universe_size());
        for (size_t i = 0; i < other_idx.size(); ++i) {
            int v = other_idx[i];
            keys[i] = enumerate_t ? g.deg_in(v, fmask) : g.deg_b_in(v, fmask);
        }
        auto greedy = select_k_min(other_idx, keys, other_size);
        long long e = 0;
        for (int v : greedy)
            e += enumerate_t ? g.deg_in(v, fmask) : g.deg_b_in(v, fmask);
        // strict < keeps the first sub-pair attaining the minimum
        if (!best || e < best->edge_count)
            best = make_witness(enumerate_t ? Side::B : Side::A, fixed, greedy, e,
                                g.a_size(), g.b_size());
    } while (next_combination(pos, n_enum));

    if (best && violates(best->edge_count)) return *best;

    Certificate cert;
    cert.kind = Certificate::Kind::ExactCertified;
    cert.params = params;
    cert.pairs_enumerated = enumerated;
    if (best) cert.min_density = best->density;
    return cert;
}

namespace {

struct RestartResult {
    std::optional<Witness> witness;
    HeuristicTrace::Restart trace;
};

RestartResult run_restart(const BipartiteGraph& g, const PairContext& ctx,
                          const RegularityParams& params, uint64_t seed, int restart,
                          int sweeps, int a_universe, int b_universe) {
    RestartResult res;
    res.trace.restart = restart;
    long long cells = static_cast<long long>(ctx.sx) * ctx.sy;
    auto violates = [&](long long e) { return Rational(e) < params.gamma * cells; };

    Bitset s_mask = mask_of(ctx.s_idx, a_universe);

    // initial y
    std::vector<int> ys;
    if (restart == 0) {
        std::vector<long long> keys(ctx.t_idx.size());
        for (size_t i = 0; i < ctx.t_idx.size(); ++i)
            keys[i] = g.deg_b_in(ctx.t_idx[i], s_mask);
        ys = select_k_min(ctx.t_idx, keys, ctx.sy);
    } else {
        Rng rng = Rng(seed).fork(static_cast<uint64_t>(restart));
        auto picks = rng.sample_indices(static_cast<int>(ctx.t_idx.size()), ctx.sy);
        for (int p : picks) ys.push_back(ctx.t_idx[static_cast<size_t>(p)]);
    }

    std::vector<int> xs;
    long long prev_e = -1;
    std::vector<long long> keys;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        Bitset ymask = mask_of(ys, b_universe);
        keys.resize(ctx.s_idx.size());
        for (size_t i = 0; i < ctx.s_idx.size(); ++i)
            keys[i] = g.deg_in(ctx.s_idx[i], ymask);
        xs = select_k_min(ctx.s_idx, keys, ctx.sx);
        long long e = 0;
        for (int v : xs) e += g.deg_in(v, ymask);
        res.trace.sweep_edges.push_back(e);
        if (violates(e)) {
            res.witness = make_witness(Side::A, xs, ys, e, a_universe, b_universe);
            return res;
        }

        Bitset xmask = mask_of(xs, a_universe);
        keys.resize(ctx.t_idx.size());
        for (size_t i = 0; i < ctx.t_idx.size(); ++i)
            keys[i] = g.deg_b_in(ctx.t_idx[i], xmask);
        ys = select_k_min(ctx.t_idx, keys, ctx.sy);
        e = 0;
        for (int w : ys) e += g.deg_b_in(w, xmask);
        res.trace.sweep_edges.push_back(e);
        if (violates(e)) {
            res.witness = make_witness(Side::A, xs, ys, e, a_universe, b_universe);
            return res;
        }
        if (e == prev_e) break;  // fixpoint
        prev_e = e;
    }
    return res;
}

}  // namespace

CheckOutcome check_heuristic(const BipartiteGraph& g, const VertexSubset& s,
                             const VertexSubset& t, const RegularityParams& params,
                             uint64_t seed, int restarts, int sweeps, HeuristicTrace* trace,
                             int threads) {
    if (s.cardinality == 0 || t.cardinality == 0) throw EmptySubset("check of an empty pair");
    PairContext ctx;
    ctx.s_idx = s.to_vector();
    ctx.t_idx = t.to_vector();
    std::tie(ctx.sx, ctx.sy) = witness_sizes(params, s.cardinality, t.cardinality);
    restarts = std::max(restarts, 1);

    g.col(0);  // build the column cache before any worker threads touch it

    std::vector<RestartResult> results(static_cast<size_t>(restarts));
    if (threads > 1) {
        // Restarts are independent; the merge below picks the lowest restart
        // index, which matches sequential early-exit order.
        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        int workers = std::min(threads, restarts);
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1))
                    results[static_cast<size_t>(r)] = run_restart(
                        g, ctx, params, seed, r, sweeps, g.a_size(), g.b_size());
            }));
        for (auto& f : futs) f.get();
    } else {
        for (int r = 0; r < restarts; ++r) {
            results[static_cast<size_t>(r)] =
                run_restart(g, ctx, params, seed, r, sweeps, g.a_size(), g.b_size());
            if (results[static_cast<size_t>(r)].witness) {
                results.resize(static_cast<size_t>(r) + 1);
                break;
            }
        }
    }

    for (auto& r : results) {
        if (trace) trace->restarts.push_back(r.trace);
        if (r.witness) return *r.witness;
    }

    Certificate cert;
    cert.kind = Certificate::Kind::HeuristicNoWitness;
    cert.params = params;
    cert.restarts = restarts;
    cert.seed = seed;
    return cert;
}

CheckOutcome check(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                   const RegularityParams& params, const SearchConfig& cfg) {
    unsigned long long cost = exact_check_cost(params, s.cardinality, t.cardinality);
    if (cost <= cfg.budget) return check_exact(g, s, t, params, cfg.budget);
    return check_heuristic(g, s, t, params, cfg.seed, cfg.restarts, cfg.sweeps, nullptr,
                           cfg.threads);
}

long long count_low_degree(const BipartiteGraph& g, const VertexSubset& u_prime,
                           const VertexSubset& v_prime, const Rational& threshold_fraction) {
    long long count = 0;
    Rational bound = threshold_fraction * v_prime.cardinality;
    if (u_prime.side == Side::A) {
        for (int v = u_prime.bits.find_first(); v >= 0; v = u_prime.bits.find_next(v))
            if (Rational(g.deg_in(v, v_prime.bits)) < bound) ++count;
    } else {
        for (int w = u_prime.bits.find_first(); w >= 0; w = u_prime.bits.find_next(w))
            if (Rational(g.deg_b_in(w, v_prime.bits)) < bound) ++count;
    }
    return count;
}

bool witness_valid(const BipartiteGraph& g, const VertexSubset& s, const VertexSubset& t,
                   const RegularityParams& params, const Witness& w) {
    auto [sx, sy] = witness_sizes(params, s.cardinality, t.cardinality);
    if (w.x_sub.cardinality != sx || w.y_sub.cardinality != sy) return false;
    if (!w.x_sub.is_subset_of(s) || !w.y_sub.is_subset_of(t)) return false;
    long long e = g.edges_between(w.x_sub, w.y_sub);
    if (e != w.edge_count) return false;
    long long cells = static_cast<long long>(sx) * sy;
    return Rational(e) < params.gamma * cells && w.density == Density::of(e, cells);
}

}  // namespace lowreg
