#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "chroma/bounds.hpp"
#include "chroma/domination.hpp"
#include "chroma/enumeration.hpp"
#include "chroma/geometry.hpp"
#include "chroma/graph_gen.hpp"
#include "chroma/graph_io.hpp"
#include "chroma/percolation.hpp"
#include "chroma/sampling.hpp"
#include "chroma/stats.hpp"

namespace chroma::cli {

namespace {

using nlohmann::json;

json finite_or_string(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string fraction_string(const BigRat& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ','))
        if (!token.empty()) out.push_back(std::stoi(token));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ','))
        if (!token.empty()) out.push_back(std::stod(token));
    return out;
}

CLI::Option* take_last(CLI::Option* opt) {
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return opt;
}

// ---------------------------------------------------------------------------
// Graph source flags, shared by every graph-consuming subcommand.

struct GraphFlags {
    std::string family = "path";
    int n = 5;
    int a = 1, b = 1;
    int arity = 2, depth = 1;
    int degree = 2;
    double p_edge = 0.5;
    std::uint64_t graph_seed = 0;
    int copies = 1;
    std::string file;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& flags) {
    take_last(cmd->add_option("--family", flags.family,
                              "Graph family: path|cycle|complete|bipartite|tree|regular|"
                              "er_triangle_erased|file"));
    take_last(cmd->add_option("--n", flags.n, "Vertex count for path/cycle/complete/random"));
    take_last(cmd->add_option("--a", flags.a, "Bipartite part size A"));
    take_last(cmd->add_option("--b", flags.b, "Bipartite part size B"));
    take_last(cmd->add_option("--arity", flags.arity, "Tree arity"));
    take_last(cmd->add_option("--depth", flags.depth, "Tree depth"));
    take_last(cmd->add_option("--degree", flags.degree, "Regular degree"));
    take_last(cmd->add_option("--p-edge", flags.p_edge, "Edge probability for G(n,p)"));
    take_last(cmd->add_option("--graph-seed", flags.graph_seed, "Seed for random families"));
    take_last(cmd->add_option("--copies", flags.copies, "Disjoint copies of the base graph"));
    take_last(cmd->add_option("--graph-file", flags.file, "Graph file (edge list or .json)"));
}

GraphFamilySpec to_spec(const GraphFlags& flags) {
    GraphFamilySpec spec;
    spec.family = GraphFamilySpec::parse_family(flags.family);
    spec.n = flags.n;
    spec.a = flags.a;
    spec.b = flags.b;
    spec.arity = flags.arity;
    spec.depth = flags.depth;
    spec.degree = flags.degree;
    spec.edge_probability = flags.p_edge;
    spec.seed = flags.graph_seed;
    spec.copies = flags.copies;
    spec.path = flags.file;
    return spec;
}

json echo_graph(const GraphFlags& flags) {
    const GraphFamilySpec spec = to_spec(flags);
    json j;
    j["family"] = GraphFamilySpec::family_name(spec.family);
    j["copies"] = spec.copies;
    using Family = GraphFamilySpec::Family;
    switch (spec.family) {
        case Family::path:
        case Family::cycle:
        case Family::complete: j["n"] = spec.n; break;
        case Family::complete_bipartite:
            j["a"] = spec.a;
            j["b"] = spec.b;
            break;
        case Family::rooted_arity_tree:
            j["arity"] = spec.arity;
            j["depth"] = spec.depth;
            break;
        case Family::random_regular:
            j["n"] = spec.n;
            j["degree"] = spec.degree;
            j["graph_seed"] = spec.seed;
            break;
        case Family::erdos_renyi_triangle_erased:
            j["n"] = spec.n;
            j["p_edge"] = spec.edge_probability;
            j["graph_seed"] = spec.seed;
            break;
        case Family::from_file: j["graph_file"] = spec.path; break;
    }
    return j;
}

json hypotheses_json(const std::vector<Hypothesis>& hs) {
    json out = json::array();
    for (const auto& h : hs) out.push_back({{"name", h.name}, {"satisfied", h.satisfied}});
    return out;
}

struct CommandOutput {
    json config;
    json result;
    std::string payload;        // non-empty for sample (JSONL) / classify (CSV)
    std::string payload_kind;   // "jsonl" | "csv" | ""
    bool verdict_ok = true;
};

using Action = std::function<CommandOutput()>;

// ---------------------------------------------------------------------------
// count

void setup_count(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("count", "Exact number of proper colourings");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto lists_file = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(1'000'000'000);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Uniform palette size"));
    take_last(cmd->add_option("--lists", *lists_file, "List-assignment JSON file"));
    take_last(cmd->add_option("--budget", *budget, "Backtracking node budget"));

    actions["count"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        ListAssignment L = lists_file->empty()
                               ? ListAssignment::uniform(g.vertex_count(), *k)
                               : [&] {
                                     std::ifstream in(*lists_file);
                                     if (!in) throw ParseError("cannot open " + *lists_file);
                                     std::ostringstream buf;
                                     buf << in.rdbuf();
                                     return list_assignment_from_json_string(buf.str());
                                 }();
        EnumerationOptions opts;
        opts.node_budget = *budget;
        const CountResult r = count_colourings(g, L, opts);
        CommandOutput out;
        out.config = {{"graph", echo_graph(*graph)}, {"budget", *budget}};
        if (lists_file->empty()) out.config["k"] = *k;
        else out.config["lists"] = *lists_file;
        out.result = {{"count", r.count.str()}, {"log_count", finite_or_string(r.log_count)}};
        return out;
    };
}

// ---------------------------------------------------------------------------
// freeenergy

void setup_freeenergy(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("freeenergy", "Free energy per variable and its tree ratio");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto delta = std::make_shared<int>(-1);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--max-deg", *delta, "Tree normalisation degree (default: max degree)"));

    actions["freeenergy"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        const int used_delta = *delta < 0 ? max_degree(g) : *delta;
        const double f = free_energy(g, *k);
        const double tree = tree_free_energy(used_delta, *k);
        CommandOutput out;
        out.config = {{"graph", echo_graph(*graph)}, {"k", *k}, {"max_deg", used_delta}};
        out.result = {{"f", finite_or_string(f)},
                      {"tree_f", finite_or_string(tree)},
                      {"h", finite_or_string(f / tree)}};
        return out;
    };
}

// ---------------------------------------------------------------------------
// sample

void setup_sample(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("sample", "Draw proper colourings (JSON-lines payload)");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto method = std::make_shared<std::string>("exact");
    auto seed = std::make_shared<std::uint64_t>(0);
    auto burnin = std::make_shared<long long>(1000);
    auto thin = std::make_shared<long long>(10);
    auto trials = std::make_shared<int>(1);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--method", *method, "exact | glauber"));
    take_last(cmd->add_option("--seed", *seed, "RNG seed"));
    take_last(cmd->add_option("--burnin", *burnin, "Glauber burn-in steps"));
    take_last(cmd->add_option("--thin", *thin, "Glauber thinning interval"));
    take_last(cmd->add_option("--trials", *trials, "Number of samples"));

    actions["sample"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        SamplerConfig cfg;
        cfg.seed = *seed;
        cfg.burnin = *burnin;
        cfg.thin = *thin;
        if (*method == "exact") cfg.method = SamplerConfig::Method::exact_sequential;
        else if (*method == "glauber") cfg.method = SamplerConfig::Method::glauber;
        else throw DomainError("sample: unknown method " + *method);
        const ListAssignment L = ListAssignment::uniform(g.vertex_count(), *k);
        const auto batch = sample_batch(g, L, cfg, *trials);
        CommandOutput out;
        for (const auto& sigma : batch) {
            out.payload += colouring_to_json_string(sigma);
            out.payload += '\n';
        }
        out.payload_kind = "jsonl";
        out.config = {{"graph", echo_graph(*graph)}, {"k", *k},     {"method", *method},
                      {"seed", *seed},               {"burnin", *burnin}, {"thin", *thin},
                      {"trials", *trials}};
        out.result = {{"emitted", static_cast<int>(batch.size())}};
        return out;
    };
}

// ---------------------------------------------------------------------------
// solve

void setup_solve(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("solve", "Greedy or local-search colouring");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto algo = std::make_shared<std::string>("greedy");
    auto seed = std::make_shared<std::uint64_t>(0);
    auto floor = std::make_shared<int>(-1);
    auto max_iters = std::make_shared<long long>(10000);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--algo", *algo, "greedy | local"));
    take_last(cmd->add_option("--seed", *seed, "RNG seed"));
    take_last(cmd->add_option("--floor", *floor, "Bad-vertex list floor (local search)"));
    take_last(cmd->add_option("--max-iters", *max_iters, "Local-search iteration cap"));

    actions["solve"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        SplitMix64 rng(*seed);
        CommandOutput out;
        out.config = {{"graph", echo_graph(*graph)}, {"k", *k},      {"algo", *algo},
                      {"seed", *seed},               {"floor", *floor}, {"max_iters", *max_iters}};
        if (*algo == "greedy") {
            const GreedyResult r = greedy_colour(g, *k, rng);
            out.result["success"] = r.success();
            out.result["assignment"] =
                r.success() ? json::parse(colouring_to_json_string(*r.colouring)) : json();
            if (!r.success()) out.result["blocked_vertex"] = r.blocked;
            out.verdict_ok = r.success();
        } else if (*algo == "local") {
            LocalSearchConfig cfg;
            if (*floor >= 0) cfg.list_floor = *floor;
            cfg.max_iterations = *max_iters;
            const LocalSearchResult r = local_search_colour(g, *k, cfg, rng);
            out.result["success"] = r.success();
            out.result["iterations"] = r.iterations;
            out.result["assignment"] =
                r.success() ? json::parse(colouring_to_json_string(*r.colouring)) : json();
            out.verdict_ok = r.success();
        } else {
            throw DomainError("solve: unknown algorithm " + *algo);
        }
        return out;
    };
}

// ---------------------------------------------------------------------------
// classify / clusters

void setup_classify(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("classify", "Per-vertex loose/thawed/rigid/frozen status CSV");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto t = std::make_shared<int>(1);
    auto budget = std::make_shared<std::uint64_t>(100000);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--t", *t, "Hamming distance threshold"));
    take_last(cmd->add_option("--budget", *budget, "Colouring budget for the view"));

    actions["classify"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        const ColouringGraphView view = build_view(g, *k, *t, *budget);
        CommandOutput out;
        out.payload = "tau,vertex,loose,thawed,rigid,frozen,cluster_id,cluster_size\n";
        out.payload_kind = "csv";
        long long loose = 0, thawed = 0, rigid = 0, frozen = 0;
        for (int idx = 0; idx < view.size(); ++idx) {
            const int cluster = view.cluster_of(idx);
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                const VertexStatus s = classify_vertex(view, view.colourings()[idx], v);
                loose += s.loose;
                thawed += s.thawed;
                rigid += s.rigid;
                frozen += s.frozen;
                out.payload += std::to_string(idx) + "," + std::to_string(v) + "," +
                               std::to_string(s.loose) + "," + std::to_string(s.thawed) + "," +
                               std::to_string(s.rigid) + "," + std::to_string(s.frozen) + "," +
                               std::to_string(cluster) + "," +
                               std::to_string(view.cluster_size(cluster)) + "\n";
            }
        }
        const long long pairs =
            static_cast<long long>(view.size()) * g.vertex_count();
        out.config = {{"graph", echo_graph(*graph)}, {"k", *k}, {"t", *t}, {"budget", *budget}};
        out.result = {{"colourings", view.size()},   {"clusters", view.cluster_count()},
                      {"pairs", pairs},              {"loose_pairs", loose},
                      {"thawed_pairs", thawed},      {"rigid_pairs", rigid},
                      {"frozen_pairs", frozen}};
        return out;
    };
}

void setup_clusters(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("clusters", "Cluster histogram of the colouring graph");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto t = std::make_shared<int>(1);
    auto budget = std::make_shared<std::uint64_t>(100000);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--t", *t, "Hamming distance threshold"));
    take_last(cmd->add_option("--budget", *budget, "Colouring budget for the view"));

    actions["clusters"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        const ColouringGraphView view = build_view(g, *k, *t, *budget);
        std::map<int, int> histogram;  // cluster size -> how many clusters
        for (int c = 0; c < view.cluster_count(); ++c) ++histogram[view.cluster_size(c)];
        json hist = json::array();
        for (const auto& [size, count] : histogram)
            hist.push_back({{"size", size}, {"clusters", count}});
        CommandOutput out;
        out.config = {{"graph", echo_graph(*graph)}, {"k", *k}, {"t", *t}, {"budget", *budget}};
        out.result = {{"colourings", view.size()},
                      {"clusters", view.cluster_count()},
                      {"histogram", hist}};
        return out;
    };
}

// ---------------------------------------------------------------------------
// bounds

void setup_bounds(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("bounds", "Evaluate a named analytic bound");
    auto graph = std::make_shared<GraphFlags>();
    auto formula = std::make_shared<std::string>();
    auto p = std::make_shared<std::map<std::string, double>>();
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--formula", *formula, "Formula name")->required());
    auto opt = [&](const char* name, const char* help) {
        auto key = std::string(name + 2);  // strip --
        take_last(cmd->add_option_function<double>(
            name, [p, key](double value) { (*p)[key] = value; }, help));
    };
    opt("--x", "lambert_w argument");
    opt("--k", "palette size");
    opt("--d", "local average degree / draw count");
    opt("--t", "short-list threshold");
    opt("--short", "expected number of short lists");
    opt("--deg", "vertex degree");
    opt("--max-deg", "maximum degree Delta");
    opt("--ell", "target list size");
    opt("--m", "edge count");
    opt("--mu", "mean");
    opt("--delta", "deviation");
    opt("--sigma", "absolute deviation threshold");
    opt("--s", "percolation threshold");
    opt("--f", "tree depth / neighbourhood density parameter");
    opt("--p", "probability");
    auto doubled = std::make_shared<bool>(false);
    cmd->add_flag("--doubled", *doubled, "Doubled variant of the lower tail bound");
    auto lists_csv = std::make_shared<std::string>();
    auto degrees_csv = std::make_shared<std::string>();
    take_last(cmd->add_option("--list-sizes", *lists_csv, "Comma-separated list sizes"));
    take_last(cmd->add_option("--degrees", *degrees_csv, "Comma-separated degrees"));

    actions["bounds"] = [=]() {
        auto need = [&](const std::string& key) {
            const auto it = p->find(key);
            if (it == p->end()) throw DomainError("bounds: missing --" + key);
            return it->second;
        };
        auto geti = [&](const std::string& key) { return static_cast<int>(need(key)); };
        // --n is the shared graph flag; coupon_gen and bbck read it directly.
        const int n_param = graph->n;
        double value = 0.0, log_value = 0.0;
        std::vector<Hypothesis> hypotheses;
        bool log_scale = false;
        const std::string& f = *formula;
        if (f == "lambert_w") {
            value = lambert_w(need("x"));
        } else if (f == "required_list_size") {
            const BoundValue r = required_list_size(geti("deg"), need("d"), geti("max-deg"),
                                                    need("ell"));
            value = r.value;
            hypotheses = r.hypotheses;
        } else if (f == "coupon") {
            value = coupon_lower_bound(geti("k"), geti("d"), geti("t"), need("short"));
        } else if (f == "coupon_gen") {
            value = generalised_coupon_bound(geti("k"), n_param, geti("t"), need("short"));
        } else if (f == "list_tail") {
            value = list_tail_bound(need("t"), need("ell"));
        } else if (f == "count_lower") {
            const Graph g = generate(to_spec(*graph));
            const double d = need("d");
            std::vector<double> q(g.vertex_count());
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                q[v] = count_bound_q_floor(g.degree(v), d, max_degree(g));
            const BoundValue r = count_lower_bound(g, q, d);
            value = r.value;
            log_value = r.log_value;
            log_scale = true;
            hypotheses = r.hypotheses;
        } else if (f == "bbck") {
            const BoundValue r = bbck_lower_bound(n_param, geti("m"), geti("k"),
                                                  geti("max-deg"));
            value = r.value;
            log_value = r.log_value;
            log_scale = true;
            hypotheses = r.hypotheses;
        } else if (f == "tree_free_energy") {
            value = tree_free_energy(geti("max-deg"), geti("k"));
        } else if (f == "chernoff") {
            value = chernoff_upper(need("mu"), need("delta"));
        } else if (f == "chernoff_abs") {
            value = chernoff_upper_abs(need("mu"), need("sigma"));
        } else if (f == "lower_tail") {
            value = lower_tail_bound(need("delta"), need("ell"), *doubled);
        } else if (f == "percolation") {
            log_value = percolation_bound(geti("s"), geti("f"));
            value = std::exp(log_value);
            log_scale = true;
        } else if (f == "percolation_hyp") {
            value = percolation_hypothesis_check(need("p"), geti("max-deg"), geti("s")) ? 1.0 : 0.0;
        } else if (f == "vu") {
            value = vu_list_bound(geti("max-deg"), need("f"));
        } else if (f == "avoidance") {
            value = avoidance_probability_lower(parse_double_list(*lists_csv),
                                                parse_double_list(*degrees_csv));
        } else {
            throw DomainError("bounds: unknown formula " + f);
        }
        if (!log_scale) log_value = std::log(value);
        CommandOutput out;
        out.config = {{"formula", f}};
        for (const auto& [key, val] : *p) out.config[key] = val;
        if (*doubled) out.config["doubled"] = true;
        out.result = {{"value", finite_or_string(value)},
                      {"log_value", finite_or_string(log_value)},
                      {"hypotheses", hypotheses_json(hypotheses)}};
        return out;
    };
}

// ---------------------------------------------------------------------------
// dominate

void setup_dominate(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("dominate", "Exact Bernoulli-domination check");
    auto graph = std::make_shared<GraphFlags>();
    auto k = std::make_shared<int>(3);
    auto vertices_csv = std::make_shared<std::string>();
    auto threshold = std::make_shared<int>(1);
    auto p = std::make_shared<double>(0.5);
    add_graph_flags(cmd, *graph);
    take_last(cmd->add_option("--k", *k, "Palette size"));
    take_last(cmd->add_option("--vertices", *vertices_csv, "Family vertices, comma-separated")
                  ->required());
    take_last(cmd->add_option("--threshold", *threshold, "Short-list threshold t"));
    take_last(cmd->add_option("--p", *p, "Domination parameter"));

    actions["dominate"] = [=]() {
        const Graph g = generate(to_spec(*graph));
        const ListAssignment L = ListAssignment::uniform(g.vertex_count(), *k);
        const std::vector<int> vertices = parse_int_list(*vertices_csv);
        std::vector<ColouringEvent> family;
        for (int v : vertices) family.push_back({v, *threshold});
        const OutcomeSpace space = colouring_outcome_space(g, L, family);
        const auto expectations = subset_product_expectations(space);
        DominationReport report = check_ber_domination(expectations, space.variable_count, *p);
        report.independent_index_set = is_independent_set(g, vertices);

        json expectation_list = json::array();
        for (std::uint32_t mask = 0; mask < expectations.size(); ++mask) {
            json subset = json::array();
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (mask >> i & 1) subset.push_back(vertices[i]);
            expectation_list.push_back(
                {{"subset", subset}, {"expectation", fraction_string(expectations[mask])}});
        }
        json worst_subset = json::array();
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (report.worst_subset >> i & 1) worst_subset.push_back(vertices[i]);

        CommandOutput out;
        out.config = {{"graph", echo_graph(*graph)},
                      {"k", *k},
                      {"vertices", vertices},
                      {"threshold", *threshold},
                      {"p", *p}};
        out.result = {{"dominated", report.dominated},
                      {"independent", *report.independent_index_set},
                      {"worst_subset", worst_subset},
                      {"worst_expectation", fraction_string(report.worst_expectation)},
                      {"worst_bound", finite_or_string(report.worst_bound)},
                      {"slack", finite_or_string(report.slack)},
                      {"expectations", expectation_list}};
        out.verdict_ok = report.dominated;
        return out;
    };
}

// ---------------------------------------------------------------------------
// percolate

void setup_percolate(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("percolate", "s-upward percolation on the arity tree");
    auto arity = std::make_shared<int>(2);
    auto depth = std::make_shared<int>(1);
    auto threshold = std::make_shared<int>(1);
    auto p = std::make_shared<std::string>("1/2");
    auto trials = std::make_shared<std::uint64_t>(10000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto model = std::make_shared<std::string>("iid");
    auto mask_text = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(1);
    auto exact = std::make_shared<bool>(false);
    auto k = std::make_shared<int>(3);
    auto list_threshold = std::make_shared<int>(1);
    auto leaves_csv = std::make_shared<std::string>();
    auto graph_file = std::make_shared<std::string>();
    take_last(cmd->add_option("--arity", *arity, "Tree arity"));
    take_last(cmd->add_option("--depth", *depth, "Tree depth"));
    take_last(cmd->add_option("--threshold", *threshold, "Activation threshold s"));
    take_last(cmd->add_option("--p", *p, "Leaf activation probability (fraction or decimal)"));
    take_last(cmd->add_option("--trials", *trials, "Monte-Carlo trials"));
    take_last(cmd->add_option("--seed", *seed, "RNG seed"));
    take_last(cmd->add_option("--model", *model, "iid | adversarial | explicit | colouring"));
    take_last(cmd->add_option("--mask", *mask_text, "Explicit leaf mask, e.g. 0110"));
    take_last(cmd->add_option("--jobs", *jobs, "Worker threads"));
    cmd->add_flag("--exact", *exact, "Also compute the exact iid root probability");
    take_last(cmd->add_option("--k", *k, "Palette size (colouring model)"));
    take_last(cmd->add_option("--list-threshold", *list_threshold,
                              "Short-list threshold (colouring model)"));
    take_last(cmd->add_option("--leaves", *leaves_csv, "Leaf vertex ids (colouring model)"));
    take_last(cmd->add_option("--graph-file", *graph_file, "Source graph (colouring model)"));

    actions["percolate"] = [=]() {
        PercolationInstance inst;
        inst.arity = *arity;
        inst.depth = *depth;
        inst.threshold = *threshold;
        // p accepts "1/9" or "0.25"; fractions stay exact.
        if (p->find('/') != std::string::npos) {
            const auto slash = p->find('/');
            inst.p = BigRat(BigInt(p->substr(0, slash)), BigInt(p->substr(slash + 1)));
        } else {
            inst.p = rational_of(std::stod(*p));
        }
        CommandOutput out;
        out.config = {{"arity", *arity},   {"depth", *depth}, {"threshold", *threshold},
                      {"p", *p},           {"model", *model}, {"seed", *seed},
                      {"trials", *trials}, {"jobs", *jobs}};
        if (*model == "adversarial" || *model == "explicit") {
            inst.model = *model == "adversarial" ? PercolationInstance::Model::adversarial_subtree
                                                 : PercolationInstance::Model::explicit_mask;
            std::vector<bool> mask;
            if (inst.model == PercolationInstance::Model::explicit_mask) {
                for (char c : *mask_text) mask.push_back(c == '1');
                out.config["mask"] = *mask_text;
            } else {
                mask = adversarial_leaf_mask(inst);
            }
            const PropagationResult r = propagate(inst, mask);
            long long active = 0;
            for (bool bit : mask) active += bit;
            out.result = {{"root_active", r.root_active}, {"activated_leaves", active}};
            return out;
        }
        if (*model == "colouring") {
            inst.model = PercolationInstance::Model::colouring_derived;
            inst.source_graph = std::make_shared<const Graph>(load_graph(*graph_file));
            inst.source_k = *k;
            inst.list_threshold = *list_threshold;
            for (int v : parse_int_list(*leaves_csv)) inst.leaf_vertices.push_back(v);
            out.config["graph_file"] = *graph_file;
            out.config["k"] = *k;
            out.config["list_threshold"] = *list_threshold;
        } else if (*model != "iid") {
            throw DomainError("percolate: unknown model " + *model);
        }
        SplitMix64 rng(*seed);
        const RootEstimate estimate = estimate_root_probability(inst, *trials, rng, *jobs);
        out.result = {{"estimate", finite_or_string(estimate.estimate)},
                      {"stderr", finite_or_string(estimate.std_error)},
                      {"bound_log", finite_or_string(estimate.bound_log)},
                      {"bound", finite_or_string(std::exp(estimate.bound_log))},
                      {"hypothesis_ok", estimate.hypothesis_ok},
                      {"leaf_rate", finite_or_string(estimate.leaf_rate)},
                      {"hits", estimate.hits}};
        if (*exact && inst.model == PercolationInstance::Model::iid)
            out.result["exact"] = fraction_string(exact_root_probability_small(inst));
        // The bound is a claim only when its hypotheses hold.
        if (estimate.hypothesis_ok) {
            const bool within =
                estimate.estimate <= std::exp(estimate.bound_log) + 3.0 * estimate.std_error;
            out.result["verdict"] = within;
            out.verdict_ok = within;
        }
        return out;
    };
}

// ---------------------------------------------------------------------------
// validate

void setup_validate(CLI::App& app, std::map<std::string, Action>& actions) {
    auto* cmd = app.add_subcommand("validate", "Run a directory of expectation configs");
    auto dir = std::make_shared<std::string>();
    take_last(cmd->add_option("--dir", *dir, "Directory of *.json configs")->required());

    actions["validate"] = [=]() {
        namespace fs = std::filesystem;
        if (!fs::is_directory(*dir)) throw ParseError("validate: not a directory: " + *dir);
        std::vector<fs::path> configs;
        for (const auto& entry : fs::directory_iterator(*dir))
            if (entry.path().extension() == ".json") configs.push_back(entry.path());
        std::sort(configs.begin(), configs.end());
        if (configs.empty()) throw ParseError("validate: no configs in " + *dir);

        CommandOutput out;
        out.config = {{"dir", *dir}};
        json reports = json::array();
        int passed = 0;
        for (const auto& path : configs) {
            json entry;
            entry["config"] = path.filename().string();
            std::ifstream in(path);
            json config;
            try {
                config = json::parse(in);
            } catch (const json::exception& e) {
                entry["pass"] = false;
                entry["error"] = std::string("parse: ") + e.what();
                reports.push_back(entry);
                continue;
            }
            entry["name"] = config.value("name", path.stem().string());
            const RunResult rr = run_command({"--config", path.string()});
            bool pass = rr.exit_code == kOk || rr.exit_code == kVerdictFailure;
            json failures = json::array();
            if (rr.exit_code != kOk && rr.exit_code != kVerdictFailure) {
                pass = false;
                failures.push_back({{"error", rr.error}});
            } else {
                const json report = json::parse(rr.report);
                for (const auto& expect : config.value("expect", json::array())) {
                    const json::json_pointer ptr(expect.at("path").get<std::string>());
                    json actual;
                    try {
                        actual = report.at(ptr);
                    } catch (const json::exception&) {
                        pass = false;
                        failures.push_back({{"path", expect["path"]}, {"error", "missing"}});
                        continue;
                    }
                    if (expect.contains("equals")) {
                        if (actual != expect["equals"]) {
                            pass = false;
                            failures.push_back({{"path", expect["path"]},
                                                {"expected", expect["equals"]},
                                                {"actual", actual}});
                        }
                    } else if (expect.contains("near")) {
                        const double tol = expect.value("tol", 1e-9);
                        const double want = expect["near"].get<double>();
                        const double got = actual.is_number() ? actual.get<double>()
                                                              : std::nan("");
                        if (!(std::fabs(got - want) <= tol)) {
                            pass = false;
                            failures.push_back({{"path", expect["path"]},
                                                {"expected_near", want},
                                                {"actual", actual}});
                        }
                    }
                }
            }
            entry["pass"] = pass;
            if (!failures.empty()) entry["failures"] = failures;
            reports.push_back(entry);
            if (pass) ++passed;
        }
        out.result = {{"total", static_cast<int>(configs.size())},
                      {"passed", passed},
                      {"failed", static_cast<int>(configs.size()) - passed},
                      {"reports", reports}};
        out.verdict_ok = passed == static_cast<int>(configs.size());
        return out;
    };
}

// ---------------------------------------------------------------------------

/// Pulls --config out of the raw args and returns the synthesized argument
/// list: subcommand, config-derived flags, then user flags (so user flags
/// take precedence through the TakeLast policy).
std::vector<std::string> merge_config(std::vector<std::string> args, json& config_echo) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ParseError("--config needs a file argument");
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open config: " + config_path);
    json config;
    try {
        config = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config parse error in ") + config_path + ": " + e.what());
    }
    config_echo = config;

    std::string subcommand;
    if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
        subcommand = args.front();
        args.erase(args.begin());
    } else if (config.contains("command")) {
        subcommand = config["command"].get<std::string>();
    } else {
        throw ParseError("config has no \"command\" and none was given");
    }

    std::vector<std::string> merged{subcommand};
    const json params = config.value("params", json::object());
    for (const auto& [key, value] : params.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) merged.push_back("--" + key);
            continue;
        }
        merged.push_back("--" + key);
        if (value.is_string()) merged.push_back(value.get<std::string>());
        else merged.push_back(value.dump());
    }
    merged.insert(merged.end(), args.begin(), args.end());
    return merged;
}

}  // namespace

RunResult run_command(std::vector<std::string> args) {
    RunResult rr;
    const auto started = std::chrono::steady_clock::now();
    try {
        json config_file_echo;
        args = merge_config(std::move(args), config_file_echo);

        CLI::App app{"chroma: exact counting, sampling and solution-space geometry of graph colourings"};
        app.require_subcommand(1);
        std::string out_path;

        std::map<std::string, Action> actions;
        setup_count(app, actions);
        setup_freeenergy(app, actions);
        setup_sample(app, actions);
        setup_solve(app, actions);
        setup_classify(app, actions);
        setup_clusters(app, actions);
        setup_bounds(app, actions);
        setup_dominate(app, actions);
        setup_percolate(app, actions);
        setup_validate(app, actions);
        for (auto* sub : app.get_subcommands({}))
            take_last(sub->add_option("--out", out_path, "Write the deterministic artifact here"));

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        const auto chosen = app.get_subcommands();
        if (chosen.size() != 1) throw CLI::CallForHelp();
        const std::string name = chosen.front()->get_name();
        CommandOutput output = actions.at(name)();

        json report;
        report["version"] = 1;
        report["command"] = name;
        report["config"] = output.config;
        report["result"] = output.result;
        const std::string deterministic = canonical_dump(report);

        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
        report["duration_ms"] = ms;
        rr.report = canonical_dump(report);
        rr.out_text = output.payload_kind.empty() ? deterministic : output.payload;
        if (!out_path.empty()) {
            std::filesystem::path resolved(out_path);
            if (const char* base = std::getenv("CHROMA_OUT_DIR");
                base != nullptr && resolved.is_relative())
                resolved = std::filesystem::path(base) / resolved;
            rr.out_path = resolved.string();
        }
        rr.exit_code = output.verdict_ok ? kOk : kVerdictFailure;
        if (!output.verdict_ok) rr.error = "verdict failure";
        return rr;
    } catch (const CLI::CallForHelp&) {
        rr.exit_code = kOk;
        rr.error = "help requested";
        return rr;
    } catch (const CLI::ParseError& e) {
        rr.exit_code = kUsageError;
        rr.error = e.what();
        return rr;
    } catch (const BudgetExceeded& e) {
        rr.exit_code = kBudgetExceeded;
        rr.error = e.what();
        return rr;
    } catch (const ParseError& e) {
        rr.exit_code = kUsageError;
        rr.error = e.what();
        return rr;
    } catch (const DomainError& e) {
        rr.exit_code = kUsageError;
        rr.error = e.what();
        return rr;
    } catch (const std::exception& e) {
        rr.exit_code = kUsageError;
        rr.error = e.what();
        return rr;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const RunResult rr = run_command(args);
    if (!rr.report.empty()) std::printf("%s\n", rr.report.c_str());
    if (!rr.error.empty()) std::fprintf(stderr, "chroma: %s\n", rr.error.c_str());
    if (!rr.out_path.empty()) {
        std::ofstream out(rr.out_path);
        if (!out) {
            std::fprintf(stderr, "chroma: cannot write %s\n", rr.out_path.c_str());
            return kUsageError;
        }
        out << rr.out_text;
    }
    return rr.exit_code;
}

}  // namespace chroma::cli
