// Command-line front end: generators, regularity checks, decomposition,
// tree embedding, tiling, and closed-form bounds, with JSON run reports.
//
// Exit codes:
//   0  success / certified / all verifier clauses pass on exact certificates
//   1  witness found (check) or a verifier clause failed (decompose, tile)
//   2  heuristic-no-witness (check); one-sided, not a certificate
//   3  verifier passed but relies on heuristic certificates (decompose)
//   4  precondition violated
//   5  embedding stuck
//   64 usage error
//   65 input parse error

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lowreg/generators.hpp"
#include "lowreg/io.hpp"
#include "lowreg/report.hpp"
#include "lowreg/rng.hpp"

using namespace lowreg;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void emit(const RunReport& rep, const std::string& out_path) {
    std::string text = rep.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open '" + out_path + "' for writing");
        out << text;
    }
}

struct ParamFlags {
    std::string eps = "1/10";
    std::string eta = "1/10";
    std::string gamma;  // empty: min(eta/4, delta/20)
    std::string delta_floor;
    unsigned long long budget = 10000000;
    uint64_t seed = 0;
    int restarts = 8;
    int sweeps = 10;
    int threads = 1;

    SearchConfig search() const { return {budget, seed, restarts, sweeps, threads}; }
};

void add_search_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--budget", f.budget, "exact-path subset evaluation budget");
    cmd->add_option("--seed", f.seed, "64-bit seed for all randomness");
    cmd->add_option("--restarts", f.restarts, "heuristic restarts");
    cmd->add_option("--sweeps", f.sweeps, "heuristic sweeps per restart");
    cmd->add_option("--threads", f.threads, "worker threads for heuristic restarts");
}

RegularityParams params_from_flags(const ParamFlags& f, std::optional<Rational> delta) {
    Rational eps = rational_from_string(f.eps);
    Rational eta = rational_from_string(f.eta);
    Rational gamma;
    if (!f.gamma.empty()) {
        gamma = rational_from_string(f.gamma);
    } else if (delta) {
        gamma = std::min(eta / 4, *delta / 20);
    } else {
        throw PreconditionViolated("--gamma required when no delta context exists");
    }
    return RegularityParams::make(eps, eta, gamma, delta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower (eps, eta, gamma)-regular pair decomposition toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    std::string gen_kind, gen_out = "graph.txt", gen_blocks_spec = "8x8,8x8";
    int gen_a = 8, gen_b = 8, gen_n = 4096;
    double gen_p = 0.5, gen_intra = 1.0, gen_inter = 0.0;
    std::string gen_floor = "0";
    uint64_t gen_seed = 0;
    std::string gen_in;
    gen->add_option("kind", gen_kind,
                    "complete | random | blocks | sparse-regime | bipartition")
        ->required();
    gen->add_option("--in", gen_in, "general-graph edge list for kind=bipartition "
                                    "(header 'vertex_count edge_count', then 'u v' lines)");
    gen->add_option("--a", gen_a, "A-side size");
    gen->add_option("--b", gen_b, "B-side size");
    gen->add_option("--n", gen_n, "side size for sparse-regime (n = m)");
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("--delta-floor", gen_floor, "min-degree ratio floor (rational)");
    gen->add_option("--blocks", gen_blocks_spec, "block sizes, e.g. 8x8,8x8");
    gen->add_option("--intra-p", gen_intra, "within-block edge probability");
    gen->add_option("--inter-p", gen_inter, "between-block edge probability");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "output path");

    // ---- check ----
    auto* chk = app.add_subcommand("check", "lower-regularity check of the whole pair (A, B)");
    std::string chk_graph;
    ParamFlags chk_f;
    chk_f.gamma = "1/20";
    chk->add_option("graph", chk_graph, "edge-list file")->required();
    chk->add_option("--eps", chk_f.eps, "A-side subset floor");
    chk->add_option("--eta", chk_f.eta, "B-side subset floor");
    chk->add_option("--gamma", chk_f.gamma, "density floor");
    add_search_flags(chk, chk_f);

    // ---- decompose ----
    auto* dec = app.add_subcommand("decompose", "lower-regular pair decomposition plus verification");
    std::string dec_graph;
    ParamFlags dec_f;
    bool dec_trace = false;
    dec->add_option("graph", dec_graph, "edge-list file")->required();
    dec->add_option("--eps", dec_f.eps, "A-side subset floor");
    dec->add_option("--eta", dec_f.eta, "B-side subset floor");
    dec->add_option("--gamma", dec_f.gamma, "density floor; default min(eta/4, delta/20)");
    dec->add_option("--delta-floor", dec_f.delta_floor,
                    "min-degree hypothesis delta; default the graph's min degree ratio");
    dec->add_flag("--trace", dec_trace, "include extraction traces in the report");
    add_search_flags(dec, dec_f);

    // ---- embed ----
    auto* emb = app.add_subcommand("embed", "embed a rooted tree into a lower-regular pair");
    std::string emb_graph, emb_tree;
    std::string emb_gamma = "1/20";
    uint64_t emb_seed = 0;
    emb->add_option("graph", emb_graph, "edge-list file")->required();
    emb->add_option("tree", emb_tree, "tree file")->required();
    emb->add_option("--gamma", emb_gamma, "gamma; eta = 4*gamma and eps = gamma^2/10");
    emb->add_option("--seed", emb_seed, "seed");

    // ---- tile ----
    auto* til = app.add_subcommand("tile", "approximate edge tiling by edge-disjoint subtrees");
    std::string til_graph, til_stop = "1/10";
    int til_rounds = 64;
    ParamFlags til_f;
    til->add_option("graph", til_graph, "edge-list file")->required();
    til->add_option("--eps", til_f.eps, "A-side subset floor");
    til->add_option("--eta", til_f.eta, "B-side subset floor");
    til->add_option("--gamma", til_f.gamma, "density floor; default min(eta/4, delta/20)");
    til->add_option("--delta-floor", til_f.delta_floor, "min-degree hypothesis delta");
    til->add_option("--stop-density", til_stop, "stop once the residual is this sparse");
    til->add_option("--max-rounds", til_rounds, "hard cap on rounds");
    add_search_flags(til, til_f);

    // ---- bounds ----
    auto* bnd = app.add_subcommand("bounds", "closed-form decomposition bounds, no graph needed");
    std::string bnd_eps = "1/10", bnd_eta = "1/10", bnd_gamma = "1/200", bnd_delta = "1/2";
    long long bnd_n = 0, bnd_m = 0, bnd_edges = -1;
    bnd->add_option("--eps", bnd_eps)->required();
    bnd->add_option("--eta", bnd_eta)->required();
    bnd->add_option("--gamma", bnd_gamma)->required();
    bnd->add_option("--delta", bnd_delta)->required();
    bnd->add_option("--n", bnd_n)->required();
    bnd->add_option("--m", bnd_m)->required();
    bnd->add_option("--edges", bnd_edges, "optional e(G) for the coverage floor");

    std::string out_path;
    std::string format = "json";
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "report format (json)");
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    auto t0 = Clock::now();

    try {
        if (gen->parsed()) {
            RunReport rep;
            rep.command = "gen";
            rep.seed = gen_seed;
            std::optional<BipartiteGraph> g;
            if (gen_kind == "complete") {
                g = gen_complete(gen_a, gen_b);
                rep.params = Json{{"kind", gen_kind}};
            } else if (gen_kind == "random") {
                g = gen_random_min_degree(gen_a, gen_b, gen_p, rational_from_string(gen_floor),
                                          gen_seed);
                rep.params = Json{{"kind", gen_kind}, {"p", gen_p}, {"delta_floor", gen_floor}};
            } else if (gen_kind == "blocks") {
                std::vector<std::pair<int, int>> sizes;
                std::string spec = gen_blocks_spec;
                for (size_t pos = 0; pos < spec.size();) {
                    size_t comma = spec.find(',', pos);
                    std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                  : comma - pos);
                    size_t x = tok.find('x');
                    if (x == std::string::npos) throw ParseError("block spec needs AxB", 0);
                    sizes.emplace_back(std::stoi(tok.substr(0, x)), std::stoi(tok.substr(x + 1)));
                    pos = comma == std::string::npos ? spec.size() : comma + 1;
                }
                g = gen_blocks(sizes, gen_intra, gen_inter, gen_seed);
                rep.params = Json{{"kind", gen_kind},
                                  {"blocks", gen_blocks_spec},
                                  {"intra_p", gen_intra},
                                  {"inter_p", gen_inter}};
            } else if (gen_kind == "bipartition") {
                std::ifstream in(gen_in);
                if (!in) throw Error("cannot open '" + gen_in + "'");
                long long nv = 0, ne = 0;
                if (!(in >> nv >> ne)) throw ParseError("expected 'vertex_count edge_count'", 1);
                std::vector<std::pair<int, int>> raw;
                for (long long i = 0; i < ne; ++i) {
                    long long u, v;
                    if (!(in >> u >> v)) throw ParseError("expected 'u v'", static_cast<int>(i) + 2);
                    raw.emplace_back(static_cast<int>(u), static_cast<int>(v));
                }
                BipartitionResult bp =
                    random_balanced_bipartition(static_cast<int>(nv), raw, gen_seed);
                g = bp.graph;
                rep.params = Json{{"kind", gen_kind},
                                  {"source", gen_in},
                                  {"source_vertices", nv},
                                  {"source_edges", ne},
                                  {"dropped_same_side_edges", bp.dropped_edges}};
            } else if (gen_kind == "sparse-regime") {
                // delta = ln ln n / ln n; the graph draws p = delta and tops up
                double delta_d = std::log(std::log(gen_n)) / std::log(gen_n);
                Rational delta = rational_from_double(delta_d);
                g = gen_random_min_degree(gen_n, gen_n, delta_d, delta, gen_seed);
                rep.params = Json{{"kind", gen_kind},
                                  {"n", gen_n},
                                  {"delta", rat_str(delta)},
                                  {"delta_approx", delta_d},
                                  {"eps", "1/10"},
                                  {"eta", "1/10"},
                                  {"gamma", rat_str(delta / 20)}};
            } else {
                std::cerr << "unknown gen kind '" << gen_kind << "'\n";
                return 64;
            }
            write_edge_list(*g, gen_out);
            rep.input = input_digest(*g, gen_out);
            rep.results = Json{{"written", gen_out}};
            rep.total_ms = ms_since(t0);
            emit(rep, out_path);
            return 0;
        }

        if (chk->parsed()) {
            BipartiteGraph g = read_edge_list(chk_graph);
            RegularityParams params = params_from_flags(chk_f, std::nullopt);
            RunReport rep;
            rep.command = "check";
            rep.seed = chk_f.seed;
            rep.input = input_digest(g, chk_graph);
            rep.params = to_json(params);
            CheckOutcome res = check(g, g.full_a(), g.full_b(), params, chk_f.search());
            int code;
            if (found_witness(res)) {
                rep.results = Json{{"outcome", "witness"}, {"witness", to_json(std::get<Witness>(res))}};
                code = 1;
            } else {
                const Certificate& c = std::get<Certificate>(res);
                rep.results = Json{{"outcome", "certificate"}, {"certificate", to_json(c)}};
                code = c.kind == Certificate::Kind::HeuristicNoWitness ? 2 : 0;
            }
            rep.total_ms = ms_since(t0);
            emit(rep, out_path);
            return code;
        }

        if (dec->parsed()) {
            BipartiteGraph g = read_edge_list(dec_graph);
            Rational delta = dec_f.delta_floor.empty() ? min_degree_ratio(g)
                                                       : rational_from_string(dec_f.delta_floor);
            RegularityParams params = params_from_flags(dec_f, delta);
            RunReport rep;
            rep.command = "decompose";
            rep.seed = dec_f.seed;
            rep.input = input_digest(g, dec_graph);
            rep.params = to_json(params);
            Decomposition d = decompose(g, params, dec_f.search());
            VerifyReport v = verify_decomposition(g, d, dec_f.search());
            rep.results = to_json(d, dec_trace);
            rep.verifier = to_json(v);
            rep.total_ms = ms_since(t0);
            emit(rep, out_path);
            if (!v.all_pass) return 1;
            return v.heuristic_dependent ? 3 : 0;
        }

        if (emb->parsed()) {
            BipartiteGraph g = read_edge_list(emb_graph);
            RootedTree tree = read_tree(emb_tree);
            Rational gamma = rational_from_string(emb_gamma);
            RegularityParams params =
                RegularityParams::make(gamma * gamma / 10, 4 * gamma, gamma);
            RunReport rep;
            rep.command = "embed";
            rep.seed = emb_seed;
            rep.input = input_digest(g, emb_graph);
            rep.params = to_json(params);
            PreconditionReport pre = check_preconditions(tree, g.a_size(), g.b_size(), params);
            rep.results = Json{{"preconditions", to_json(pre)}};
            if (!pre.ok()) {
                rep.total_ms = ms_since(t0);
                emit(rep, out_path);
                return 4;
            }
            try {
                Embedding e = embed_tree(g, g.full_a(), g.full_b(), tree, params, emb_seed);
                auto viols = verify_embedding(g, tree, g.full_a(), g.full_b(), e);
                rep.results["embedding"] = to_json(e);
                rep.verifier = Json{{"violations", viols}, {"all_pass", viols.empty()}};
                rep.total_ms = ms_since(t0);
                emit(rep, out_path);
                return viols.empty() ? 0 : 1;
            } catch (const EmbeddingStuck& e) {
                rep.results["stuck"] = Json{{"tree_vertex", e.tree_vertex},
                                            {"a_free", e.a_free},
                                            {"b_free", e.b_free},
                                            {"candidates", e.candidate_count}};
                rep.total_ms = ms_since(t0);
                emit(rep, out_path);
                return 5;
            }
        }

        if (til->parsed()) {
            BipartiteGraph g = read_edge_list(til_graph);
            Rational delta = til_f.delta_floor.empty() ? min_degree_ratio(g)
                                                       : rational_from_string(til_f.delta_floor);
            RegularityParams params = params_from_flags(til_f, delta);
            RunReport rep;
            rep.command = "tile";
            rep.seed = til_f.seed;
            rep.input = input_digest(g, til_graph);
            rep.params = to_json(params);
            Tiling t = tile(g, params, rational_from_string(til_stop), til_rounds, til_f.seed,
                            til_f.search());
            auto viols = verify_tiling(g, t);
            rep.results = to_json(t);
            rep.verifier = Json{{"violations", viols}, {"all_pass", viols.empty()}};
            rep.total_ms = ms_since(t0);
            emit(rep, out_path);
            return viols.empty() ? 0 : 1;
        }

        if (bnd->parsed()) {
            RegularityParams params = RegularityParams::make(
                rational_from_string(bnd_eps), rational_from_string(bnd_eta),
                rational_from_string(bnd_gamma), rational_from_string(bnd_delta));
            TheoreticalBounds b =
                theoretical_bounds(params, rational_from_string(bnd_delta), bnd_n, bnd_m);
            RunReport rep;
            rep.command = "bounds";
            rep.params = to_json(params);
            rep.results = to_json(b);
            rep.results["n"] = bnd_n;
            rep.results["m"] = bnd_m;
            if (bnd_edges >= 0)
                rep.results["coverage_floor"] = rat_str(b.coverage_floor(bnd_edges));
            rep.total_ms = ms_since(t0);
            emit(rep, out_path);
            return 0;
        }
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 65;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    }
    return 64;
}
