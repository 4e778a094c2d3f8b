#include "lowreg/embed.hpp"

#include <algorithm>

#include "lowreg/rng.hpp"

namespace lowreg {

PreconditionReport check_preconditions(const RootedTree& t, int a_card, int b_card,
                                       const RegularityParams& params) {
    PreconditionReport rep;
    auto& viol = rep.violations;

    // gamma and eps below 1/10; eta is pinned to 4*gamma by the coupling, so
    // a literal eta < 1/10 would contradict the gamma = 1/20 operating point
    Rational tenth(1, 10);
    if (!(params.eps < tenth && params.gamma < tenth))
        viol.push_back("params must satisfy 0 < eps, gamma < 1/10");
    if (params.eta != 4 * params.gamma)
        viol.push_back("eta = " + rat_str(params.eta) + " != 4*gamma = " +
                       rat_str(4 * params.gamma));
    if (params.eps != params.gamma * params.gamma / 10)
        viol.push_back("eps = " + rat_str(params.eps) + " != gamma^2/10 = " +
                       rat_str(params.gamma * params.gamma / 10));

    LevelStructure ls = level_sets(t);
    long long x = static_cast<long long>(ls.color_x.size());
    long long y = static_cast<long long>(ls.color_y.size());
    Rational cap_x = (Rational(1) - 10 * params.gamma) * a_card;
    Rational cap_y = (Rational(1) - 10 * params.gamma) * b_card;
    if (Rational(x) > cap_x)
        viol.push_back("|X| = " + std::to_string(x) + " exceeds (1-10*gamma)*|A| = " +
                       rat_str(cap_x));
    if (Rational(y) > cap_y)
        viol.push_back("|Y| = " + std::to_string(y) + " exceeds (1-10*gamma)*|B| = " +
                       rat_str(cap_y));

    if (ls.levels[0] != std::vector<int>{t.root})
        viol.push_back("root is not the single vertex of L1");

    // level caps as stated: |L_2i| vs eps|A| and |L_2i+1| vs eta|B| for i>=1,
    // with ceilings so the caps stay meaningful on small hosts
    long long even_cap = std::max(1LL, rat_ceil(params.eps * a_card));
    long long odd_cap = std::max(1LL, rat_ceil(params.eta * b_card));
    // parity-consistent reading: odd levels land in A, even levels in B
    long long alt_odd_cap = std::max(1LL, rat_ceil(params.eps * a_card));
    long long alt_even_cap = std::max(1LL, rat_ceil(params.eta * b_card));
    bool alt_ok = true;
    for (int li = 1; li < ls.depth(); ++li) {
        long long sz = static_cast<long long>(ls.levels[static_cast<size_t>(li)].size());
        int level_no = li + 1;  // 1-based
        if (level_no % 2 == 0) {
            if (sz > even_cap)
                viol.push_back("|L" + std::to_string(level_no) + "| = " + std::to_string(sz) +
                               " exceeds eps*|A| cap " + std::to_string(even_cap));
            if (sz > alt_even_cap) alt_ok = false;
        } else {
            if (sz > odd_cap)
                viol.push_back("|L" + std::to_string(level_no) + "| = " + std::to_string(sz) +
                               " exceeds eta*|B| cap " + std::to_string(odd_cap));
            if (sz > alt_odd_cap) alt_ok = false;
        }
    }
    rep.notes.push_back(std::string("parity-consistent level caps (odd vs eps*|A|, even vs "
                                    "eta*|B|): ") +
                        (alt_ok ? "satisfied" : "violated"));
    return rep;
}

namespace {

struct FreeState {
    Bitset a_free;
    Bitset b_free;
    Bitset part[3];      // tripartition of the initial free A; shrinks with a_free
    Bitset bad[3];       // b_free vertices with < gamma*|A| neighbors in part i
    Bitset pool;         // b_free minus all bad sets
    std::vector<int> part_of;            // part index per A vertex
    std::vector<long long> deg_into[3];  // per B vertex, degree into part i
    long long gamma_a_num, gamma_a_den;  // gamma * |A| as a fraction

    void init_counters(const BipartiteGraph& g) {
        part_of.assign(static_cast<size_t>(a_free.size()), -1);
        for (int i = 0; i < 3; ++i) {
            for (int v = part[i].find_first(); v >= 0; v = part[i].find_next(v))
                part_of[static_cast<size_t>(v)] = i;
            deg_into[i].assign(static_cast<size_t>(b_free.size()), 0);
            for (int w = 0; w < b_free.size(); ++w)
                deg_into[i][static_cast<size_t>(w)] = Bitset::and_count(g.col(w), part[i]);
        }
    }

    // bad sets are re-derived from the counters once per height-2 step
    void recompute_bad() {
        for (int i = 0; i < 3; ++i) {
            bad[i] = Bitset(b_free.size());
            for (int w = b_free.find_first(); w >= 0; w = b_free.find_next(w))
                if (deg_into[i][static_cast<size_t>(w)] * gamma_a_den < gamma_a_num)
                    bad[i].set(w);
        }
        pool = b_free;
        for (int i = 0; i < 3; ++i) pool.subtract(bad[i]);
    }

    void consume_a(const BipartiteGraph& g, int v) {
        a_free.reset(v);
        int i = part_of[static_cast<size_t>(v)];
        part[i].reset(v);
        const Bitset& row = g.row(v);
        for (int w = row.find_first(); w >= 0; w = row.find_next(w))
            --deg_into[i][static_cast<size_t>(w)];
    }

    void consume_b(int w) {
        b_free.reset(w);
        pool.reset(w);
        for (int i = 0; i < 3; ++i) bad[i].reset(w);
    }
};

// lowest-index vertex of cand (restricted to mask) with deg into pool >= gamma*|pool|
int pick_good_vertex(const BipartiteGraph& g, const Bitset& cand, const Bitset& pool,
                     const Rational& gamma, long long* candidates_seen = nullptr) {
    Rational need = gamma * pool.count();
    long long seen = 0;
    int found = -1;
    for (int v = cand.find_first(); v >= 0; v = cand.find_next(v)) {
        ++seen;
        if (Rational(Bitset::and_count(g.row(v), pool)) >= need) {
            found = v;
            break;
        }
    }
    if (candidates_seen) *candidates_seen = seen;
    return found;
}

}  // namespace

Embedding embed_tree(const BipartiteGraph& g, const VertexSubset& a, const VertexSubset& b,
                     const RootedTree& t, const RegularityParams& params, uint64_t seed,
                     EmbedTrace* trace) {
    if (params.eta != 4 * params.gamma || params.eps != params.gamma * params.gamma / 10 ||
        !(params.gamma < Rational(1, 10)))
        throw PreconditionViolated("embedding params must satisfy eta = 4*gamma, "
                                   "eps = gamma^2/10, gamma < 1/10");
    if (a.cardinality == 0 || b.cardinality == 0) throw EmptySubset("embedding host is empty");

    LevelStructure ls = level_sets(t);
    Embedding emb;
    emb.phi.assign(static_cast<size_t>(t.size()), -1);
    emb.host_side.assign(static_cast<size_t>(t.size()), Side::A);
    for (int v : ls.color_y) emb.host_side[static_cast<size_t>(v)] = Side::B;

    FreeState st;
    st.a_free = a.bits;
    st.b_free = b.bits;
    st.gamma_a_num = params.gamma.numerator() * a.cardinality;
    st.gamma_a_den = params.gamma.denominator();

    // one seeded tripartition of the free A vertices, sizes within 1
    {
        std::vector<int> av = a.to_vector();
        Rng rng(seed);
        rng.shuffle(av);
        for (int i = 0; i < 3; ++i) st.part[i] = Bitset(a.universe_size());
        for (size_t i = 0; i < av.size(); ++i) st.part[i % 3].set(av[i]);
    }
    st.init_counters(g);
    st.recompute_bad();

    // per-level target part; level 1 is hosted by part 0
    std::vector<int> part_of_level(static_cast<size_t>(ls.depth()) + 2, -1);
    part_of_level[1] = 0;

    auto record_step = [&](int tree_vertex, int active_part) {
        if (!trace) return;
        EmbedStepStat s;
        s.tree_vertex = tree_vertex;
        s.a_free = st.a_free.count();
        s.b_free = st.b_free.count();
        for (int i = 0; i < 3; ++i) s.bad[i] = st.bad[i].count();
        s.pool = st.pool.count();
        s.part_size = st.part[active_part].count();
        Rational need = params.gamma * st.pool.count();
        long long low = 0;
        for (int v = st.part[active_part].find_first(); v >= 0;
             v = st.part[active_part].find_next(v))
            if (Rational(Bitset::and_count(g.row(v), st.pool)) < need) ++low;
        s.part_low_degree = low;
        trace->steps.push_back(s);
    };

    // root placement: lowest-index vertex of part 0 with a gamma fraction of
    // the good pool in its neighborhood
    record_step(t.root, 0);
    {
        long long cands = 0;
        int host = pick_good_vertex(g, st.part[0], st.pool, params.gamma, &cands);
        if (host < 0)
            throw EmbeddingStuck(t.root, st.a_free.count(), st.b_free.count(), 0);
        emb.phi[static_cast<size_t>(t.root)] = host;
        st.consume_a(g, host);
    }

    // height-2 steps over A-side (odd-level) vertices in BFS order
    for (int v : t.bfs_order) {
        int lv = ls.level_of[static_cast<size_t>(v)];
        if (lv % 2 == 0) continue;  // B-side vertices are handled by their parents
        const auto& children = t.children[static_cast<size_t>(v)];
        if (children.empty()) continue;

        int active_part = part_of_level[static_cast<size_t>(lv)];
        // choose the grandchild target part once per level, when the level
        // first becomes active: the larger of the two other parts
        int target = part_of_level[static_cast<size_t>(lv) + 2];
        if (target < 0) {
            int i = (active_part + 1) % 3, j = (active_part + 2) % 3;
            if (i > j) std::swap(i, j);
            target = st.part[j].count() > st.part[i].count() ? j : i;  // tie: lower index
            part_of_level[static_cast<size_t>(lv) + 2] = target;
        }

        int host_v = emb.phi[static_cast<size_t>(v)];

        // children land on free good-pool neighbors of phi(v), lowest first
        Bitset child_cands = g.row(host_v) & st.pool;
        for (int c : children) {
            int host_c = child_cands.find_first();
            if (host_c < 0)
                throw EmbeddingStuck(c, st.a_free.count(), st.b_free.count(),
                                     child_cands.count());
            emb.phi[static_cast<size_t>(c)] = host_c;
            st.consume_b(host_c);
            child_cands.reset(host_c);
        }

        // grandchildren land in the target part, adjacent to their parent's
        // host, with a gamma fraction of the pool in their neighborhood
        for (int c : children) {
            int host_c = emb.phi[static_cast<size_t>(c)];
            for (int gc : t.children[static_cast<size_t>(c)]) {
                Bitset cands = g.col(host_c) & st.part[target];
                int host_gc = pick_good_vertex(g, cands, st.pool, params.gamma);
                if (host_gc < 0)
                    throw EmbeddingStuck(gc, st.a_free.count(), st.b_free.count(),
                                         cands.count());
                emb.phi[static_cast<size_t>(gc)] = host_gc;
                st.consume_a(g, host_gc);
            }
        }

        // "redetermine the subsets" after the height-2 step
        st.recompute_bad();
        record_step(v, active_part);
    }

    auto viols = verify_embedding(g, t, a, b, emb);
    if (!viols.empty())
        throw Error("internal: embedding failed verification: " + viols.front());
    return emb;
}

std::vector<std::string> verify_embedding(const BipartiteGraph& g, const RootedTree& t,
                                          const VertexSubset& a, const VertexSubset& b,
                                          const Embedding& e) {
    std::vector<std::string> out;
    if (static_cast<int>(e.phi.size()) != t.size()) {
        out.push_back("embedding size mismatch");
        return out;
    }
    LevelStructure ls = level_sets(t);

    std::vector<char> used_a(static_cast<size_t>(g.a_size()), 0);
    std::vector<char> used_b(static_cast<size_t>(g.b_size()), 0);
    for (int v = 0; v < t.size(); ++v) {
        int host = e.phi[static_cast<size_t>(v)];
        bool odd_level = ls.level_of[static_cast<size_t>(v)] % 2 == 1;
        Side want = odd_level ? Side::A : Side::B;
        if (e.host_side[static_cast<size_t>(v)] != want)
            out.push_back("tree vertex " + std::to_string(v) + " mapped to the wrong side");
        if (want == Side::A) {
            if (host < 0 || host >= g.a_size() || !a.contains(host)) {
                out.push_back("tree vertex " + std::to_string(v) + " host outside A subset");
                continue;
            }
            if (used_a[static_cast<size_t>(host)])
                out.push_back("host A" + std::to_string(host) + " used twice");
            used_a[static_cast<size_t>(host)] = 1;
        } else {
            if (host < 0 || host >= g.b_size() || !b.contains(host)) {
                out.push_back("tree vertex " + std::to_string(v) + " host outside B subset");
                continue;
            }
            if (used_b[static_cast<size_t>(host)])
                out.push_back("host B" + std::to_string(host) + " used twice");
            used_b[static_cast<size_t>(host)] = 1;
        }
    }

    for (int v = 0; v < t.size(); ++v) {
        if (v == t.root) continue;
        int p = t.parent[static_cast<size_t>(v)];
        int hv = e.phi[static_cast<size_t>(v)], hp = e.phi[static_cast<size_t>(p)];
        if (hv < 0 || hp < 0) continue;
        bool v_odd = ls.level_of[static_cast<size_t>(v)] % 2 == 1;
        int ha = v_odd ? hv : hp;
        int hb = v_odd ? hp : hv;
        if (ha < 0 || ha >= g.a_size() || hb < 0 || hb >= g.b_size() || !g.has_edge(ha, hb))
            out.push_back("tree edge (" + std::to_string(p) + ", " + std::to_string(v) +
                          ") maps to a non-edge");
    }
    return out;
}

}  // namespace lowreg
