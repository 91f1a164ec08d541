// Command-line front end: gen / mine / eval / sweep.

#include "acm/benchgen.hpp"
#include "acm/evaluation.hpp"
#include "acm/graph.hpp"
#include "acm/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using json = nlohmann::ordered_json;

namespace {

// Exit codes: 0 ok, 2 config, 3 input validation, 4 I/O, 5 ok-with-cap-warning.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;
constexpr int kExitCapWarning = 5;

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw acm::IoError("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw acm::IoError("cannot open for writing: " + path);
    return f;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<int> resolve_concerned(const acm::AttributeSchema& schema,
                                   const std::vector<std::string>& tokens) {
    std::vector<int> dims;
    for (const auto& tok : tokens) {
        int idx = schema.index_of(tok);
        if (idx < 0 && !tok.empty() &&
            std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(c); }))
            idx = std::stoi(tok);
        if (idx < 0 || idx >= schema.size())
            throw acm::ConfigError("unknown concerned attribute: '" + tok + "'");
        dims.push_back(idx);
    }
    return dims;
}

struct GenOptions {
    acm::BenchmarkParams params;
    std::string type = "numerical";
    std::string out_prefix;
};

void add_bench_flags(CLI::App* cmd, GenOptions& opt) {
    cmd->add_option("--tau1", opt.params.tau1, "degree power-law exponent");
    cmd->add_option("--tau2", opt.params.tau2, "community-size power-law exponent");
    cmd->add_option("--n", opt.params.n, "node count");
    cmd->add_option("--d-avg", opt.params.d_avg, "average degree");
    cmd->add_option("--d-max", opt.params.d_max, "maximum degree");
    cmd->add_option("--c-min", opt.params.c_min, "minimum community size");
    cmd->add_option("--c-max", opt.params.c_max, "maximum community size (0 = 2*c_min)");
    cmd->add_option("--mu", opt.params.mu, "mixing parameter");
    cmd->add_option("--r", opt.params.r, "attribute count");
    cmd->add_option("--t", opt.params.t, "planted subspace size");
    cmd->add_option("--p", opt.params.p, "similarity probability");
    cmd->add_option("--type", opt.type, "attribute type: numerical|binary|categorical");
    cmd->add_option("--seed", opt.params.rng_seed, "rng seed");
    cmd->add_option("--numeric-band", opt.params.numeric_band,
                    "half-width of the similar-value band (numerical)");
    cmd->add_option("--binary-background-p", opt.params.binary_background_p,
                    "background Bernoulli rate (binary)");
    cmd->add_option("--categorical-domain", opt.params.categorical_domain_size,
                    "categorical domain size");
}

json bench_params_json(const acm::BenchmarkParams& p) {
    return json{{"tau1", p.tau1},
                {"tau2", p.tau2},
                {"n", p.n},
                {"d_avg", p.d_avg},
                {"d_max", p.d_max},
                {"c_min", p.c_min},
                {"c_max", p.resolved_c_max()},
                {"mu", p.mu},
                {"r", p.r},
                {"t", p.t},
                {"p", p.p},
                {"type", acm::to_string(p.type)},
                {"numeric_band", p.numeric_band},
                {"binary_background_p", p.binary_background_p},
                {"categorical_domain", p.categorical_domain_size},
                {"seed", p.rng_seed}};
}

int run_gen(GenOptions& opt) {
    opt.params.type = acm::attr_kind_from_string(opt.type);
    auto start = std::chrono::steady_clock::now();
    acm::Benchmark bench = acm::generate(opt.params);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    { auto f = open_out(opt.out_prefix + ".edges"); acm::save_edges(f, bench.graph); }
    { auto f = open_out(opt.out_prefix + ".nodes"); acm::save_nodes(f, bench.graph); }
    { auto f = open_out(opt.out_prefix + ".schema"); acm::save_schema(f, bench.graph.schema()); }
    { auto f = open_out(opt.out_prefix + ".truth"); acm::save_ground_truth(f, bench.truth); }

    json manifest{{"command", "gen"},
                  {"params", bench_params_json(opt.params)},
                  {"communities", bench.truth.communities.size()},
                  {"edges", bench.graph.edge_count()},
                  {"degree_adjustments", bench.degree_adjustments},
                  {"dropped_stubs", bench.dropped_stubs},
                  {"wall_time_s", secs}};
    { auto f = open_out(opt.out_prefix + ".manifest.json"); f << manifest.dump(2) << '\n'; }

    std::cout << "gen: n=" << bench.graph.node_count() << " m=" << bench.graph.edge_count()
              << " communities=" << bench.truth.communities.size() << "\n";
    return kExitOk;
}

struct MineOptions {
    std::string edges_path, nodes_path, schema_path;
    std::string concerned_arg;
    std::string out_path = "organization.json";
    std::string manifest_path;
    acm::MineConfig config;
    bool binary_absence_similar = false;
};

int run_mine(MineOptions& opt) {
    auto schema_f = open_in(opt.schema_path);
    acm::AttributeSchema schema = acm::load_schema(schema_f);
    schema.binary_absence_similar = opt.binary_absence_similar;
    auto edges_f = open_in(opt.edges_path);
    auto nodes_f = open_in(opt.nodes_path);
    acm::LoadStats load_stats;
    acm::AttributedGraph g = acm::load_graph(edges_f, nodes_f, schema, &load_stats);

    std::vector<int> dims = resolve_concerned(g.schema(), split_csv(opt.concerned_arg));
    if (dims.empty()) throw acm::ConfigError("--concerned must name at least one attribute");
    acm::Subspace concerned(dims);

    auto start = std::chrono::steady_clock::now();
    acm::Organization org = acm::mine(g, concerned, opt.config);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json out;
    json concerned_json{{"dims", concerned.dims()}};
    json names = json::array();
    for (int d : concerned.dims()) names.push_back(g.schema().dims[d].name);
    concerned_json["names"] = names;
    out["concerned"] = concerned_json;
    out["pairs"] = json::array();
    for (const auto& pair : org.pairs) {
        json sub_names = json::array();
        for (int d : pair.subspace.dims()) sub_names.push_back(g.schema().dims[d].name);
        out["pairs"].push_back(json{{"members", pair.community},
                                    {"subspace_dims", pair.subspace.dims()},
                                    {"subspace", sub_names},
                                    {"fitness", pair.fitness}});
    }
    { auto f = open_out(opt.out_path); f << out.dump(2) << '\n'; }

    json manifest{{"command", "mine"},
                  {"inputs", {{"edges", opt.edges_path},
                              {"nodes", opt.nodes_path},
                              {"schema", opt.schema_path}}},
                  {"concerned", concerned.dims()},
                  {"config", {{"pi", opt.config.seeding.pi},
                              {"min_seed_size", opt.config.seeding.min_seed_size},
                              {"beta_c", opt.config.diversity.beta_c},
                              {"beta_d", opt.config.diversity.beta_d},
                              {"theta", opt.config.kernel.theta},
                              {"max_alternations", opt.config.search.max_alternations},
                              {"parallel", opt.config.parallel},
                              {"seed", opt.config.seeding.rng_seed},
                              {"binary_absence_similar", opt.binary_absence_similar}}},
                  {"load", {{"self_loops_dropped", load_stats.self_loops_dropped},
                            {"duplicate_edges_dropped", load_stats.duplicate_edges_dropped}}},
                  {"stats", {{"backbone_edges", org.stats.backbone_edges},
                             {"seed_count", org.stats.seed_count},
                             {"visited_skipped", org.stats.visited_skipped},
                             {"subspace_filtered", org.stats.subspace_filtered},
                             {"capped", org.stats.capped},
                             {"pairs", org.pairs.size()}}},
                  {"wall_time_s", secs}};
    if (!opt.manifest_path.empty()) {
        auto f = open_out(opt.manifest_path);
        f << manifest.dump(2) << '\n';
    }

    std::cout << "mine: seeds=" << org.stats.seed_count << " pairs=" << org.pairs.size()
              << " wall_time_s=" << secs << "\n";
    if (org.stats.capped > 0) {
        std::cerr << "warning: " << org.stats.capped << " seed(s) hit the alternation cap\n";
        return kExitCapWarning;
    }
    return kExitOk;
}

struct EvalOptions {
    std::string truth_path;
    std::string org_path;       // organization json from mine
    std::string detected_truth; // alternative: truth-format file as detected set
    std::string out_path;
    std::string csv_path;
    std::string label;
};

int run_eval(EvalOptions& opt) {
    auto truth_f = open_in(opt.truth_path);
    acm::GroundTruth truth = acm::load_ground_truth(truth_f);

    std::vector<int> concerned;
    std::vector<std::vector<int>> detected;
    std::vector<std::vector<int>> detected_subspaces;
    if (!opt.org_path.empty()) {
        json org = json::parse(open_in(opt.org_path));
        concerned = org.at("concerned").at("dims").get<std::vector<int>>();
        for (const auto& pair : org.at("pairs")) {
            detected.push_back(pair.at("members").get<std::vector<int>>());
            detected_subspaces.push_back(pair.at("subspace_dims").get<std::vector<int>>());
        }
    } else if (!opt.detected_truth.empty()) {
        auto f = open_in(opt.detected_truth);
        acm::GroundTruth as_detected = acm::load_ground_truth(f);
        detected = as_detected.communities;
        detected_subspaces = as_detected.subspaces;
    } else {
        throw acm::ConfigError("eval needs --org or --detected-truth");
    }

    auto truth_org = acm::ground_truth_organization(truth, concerned);
    if (truth_org.empty())
        throw acm::ValidationError("no ground-truth community contains the concerned attributes");

    // Keep subspaces parallel to truth_org for the Jaccard report.
    std::vector<std::vector<int>> truth_org_subspaces;
    for (size_t k = 0; k < truth.communities.size(); ++k) {
        bool all = std::all_of(concerned.begin(), concerned.end(), [&](int d) {
            return std::binary_search(truth.subspaces[k].begin(), truth.subspaces[k].end(), d);
        });
        if (all) truth_org_subspaces.push_back(truth.subspaces[k]);
    }

    acm::EvalReport report = acm::quality_q(truth_org, detected);
    for (auto& match : report.matches) {
        if (match.detected_index >= 0 && !detected_subspaces.empty())
            match.subspace_jaccard = acm::jaccard(truth_org_subspaces[match.truth_index],
                                                  detected_subspaces[match.detected_index]);
    }

    json out{{"q", report.q},
             {"truth_communities", truth_org.size()},
             {"detected_communities", detected.size()},
             {"matches", json::array()}};
    for (const auto& match : report.matches)
        out["matches"].push_back(json{{"truth_index", match.truth_index},
                                      {"best_f1", match.best_f1},
                                      {"detected_index", match.detected_index},
                                      {"subspace_jaccard", match.subspace_jaccard}});
    if (!opt.out_path.empty()) {
        auto f = open_out(opt.out_path);
        f << out.dump(2) << '\n';
    }
    if (!opt.csv_path.empty()) {
        std::ofstream f(opt.csv_path, std::ios::app);
        if (!f) throw acm::IoError("cannot open for appending: " + opt.csv_path);
        f << (opt.label.empty() ? "eval" : opt.label) << ',' << report.q << '\n';
    }

    std::cout << "Q=" << report.q << "\n";
    return kExitOk;
}

struct SweepOptions {
    GenOptions gen; // base benchmark parameters
    std::string param;
    std::string values_arg;
    int seeds = 3;
    std::uint64_t base_seed = 1;
    std::string out_path = "sweep.csv";
    acm::MineConfig mine_config;
    int concerned_k = 2;
};

int run_sweep(SweepOptions& opt) {
    opt.gen.params.type = acm::attr_kind_from_string(opt.gen.type);
    const std::set<std::string> known{"n", "mu", "c_min", "r", "t", "p"};
    if (!known.count(opt.param))
        throw acm::ConfigError("sweep --param must be one of n, mu, c_min, r, t, p");
    std::vector<std::string> values = split_csv(opt.values_arg);
    if (values.empty()) throw acm::ConfigError("sweep needs at least one --values entry");

    // Resume: skip (param,value,seed) rows already present.
    std::set<std::string> done;
    bool has_header = false;
    {
        std::ifstream existing(opt.out_path);
        std::string line;
        while (existing && std::getline(existing, line)) {
            if (line.rfind("param,", 0) == 0) {
                has_header = true;
                continue;
            }
            auto parts = split_csv(line);
            if (parts.size() >= 3) done.insert(parts[0] + "," + parts[1] + "," + parts[2]);
        }
    }
    std::ofstream csv(opt.out_path, std::ios::app);
    if (!csv) throw acm::IoError("cannot open for appending: " + opt.out_path);
    if (!has_header) csv << "param,value,seed,q,wall_time_s\n" << std::flush;

    for (const auto& value : values) {
        acm::BenchmarkParams params = opt.gen.params;
        if (opt.param == "n") params.n = std::stoi(value);
        else if (opt.param == "mu") params.mu = std::stod(value);
        else if (opt.param == "c_min") { params.c_min = std::stoi(value); params.c_max = 0; }
        else if (opt.param == "r") params.r = std::stoi(value);
        else if (opt.param == "t") params.t = std::stoi(value);
        else if (opt.param == "p") params.p = std::stod(value);

        for (int s = 0; s < opt.seeds; ++s) {
            std::string key = opt.param + "," + value + "," + std::to_string(s);
            if (done.count(key)) continue;
            params.rng_seed = opt.base_seed + s;

            auto start = std::chrono::steady_clock::now();
            acm::Benchmark bench = acm::generate(params);
            acm::Subspace concerned =
                acm::pick_concerned(bench.truth, opt.concerned_k, params.rng_seed);
            acm::MineConfig mc = opt.mine_config;
            mc.seeding.rng_seed = params.rng_seed;
            acm::Organization org = acm::mine(bench.graph, concerned, mc);
            std::vector<std::vector<int>> detected;
            for (const auto& pair : org.pairs) detected.push_back(pair.community);
            auto truth_org = acm::ground_truth_organization(bench.truth, concerned.dims());
            double q = acm::quality_q(truth_org, detected).q;
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            csv << key << ',' << q << ',' << secs << '\n' << std::flush;
            std::cout << key << " q=" << q << " wall_time_s=" << secs << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"application-aware community organization mining"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "generate an attributed benchmark");
    add_bench_flags(gen, gen_opt);
    gen->add_option("--out", gen_opt.out_prefix, "output file prefix")->required();

    MineOptions mine_opt;
    CLI::App* mine = app.add_subcommand("mine", "mine a community organization");
    mine->add_option("--edges", mine_opt.edges_path)->required();
    mine->add_option("--nodes", mine_opt.nodes_path)->required();
    mine->add_option("--schema", mine_opt.schema_path)->required();
    mine->add_option("--concerned", mine_opt.concerned_arg,
                     "comma-separated attribute names or indices")->required();
    mine->add_option("--out", mine_opt.out_path, "organization output file");
    mine->add_option("--manifest", mine_opt.manifest_path, "run manifest output file");
    mine->add_option("--pi", mine_opt.config.seeding.pi, "backbone size parameter");
    mine->add_option("--min-seed-size", mine_opt.config.seeding.min_seed_size);
    mine->add_option("--beta-c", mine_opt.config.diversity.beta_c);
    mine->add_option("--beta-d", mine_opt.config.diversity.beta_d);
    mine->add_option("--theta", mine_opt.config.kernel.theta);
    mine->add_option("--max-alternations", mine_opt.config.search.max_alternations);
    mine->add_option("--seed", mine_opt.config.seeding.rng_seed);
    mine->add_flag("--parallel", mine_opt.config.parallel,
                   "process seeds concurrently (disables visited-node pruning)");
    mine->add_flag("--binary-absence-similar", mine_opt.binary_absence_similar,
                   "treat (0,0) binary pairs as similar");

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "score an organization against ground truth");
    eval->add_option("--truth", eval_opt.truth_path)->required();
    eval->add_option("--org", eval_opt.org_path, "organization json from mine");
    eval->add_option("--detected-truth", eval_opt.detected_truth,
                     "truth-format file used as the detected set");
    eval->add_option("--out", eval_opt.out_path, "report json");
    eval->add_option("--csv", eval_opt.csv_path, "append 'label,q' row to this csv");
    eval->add_option("--label", eval_opt.label);

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand("sweep", "gen->mine->eval across one parameter");
    add_bench_flags(sweep, sweep_opt.gen);
    sweep->add_option("--param", sweep_opt.param, "one of n, mu, c_min, r, t, p")->required();
    sweep->add_option("--values", sweep_opt.values_arg, "comma-separated values")->required();
    sweep->add_option("--seeds", sweep_opt.seeds, "seeds per value");
    sweep->add_option("--base-seed", sweep_opt.base_seed);
    sweep->add_option("--out", sweep_opt.out_path, "csv output (resumable)");
    sweep->add_option("--pi", sweep_opt.mine_config.seeding.pi);
    sweep->add_option("--min-seed-size", sweep_opt.mine_config.seeding.min_seed_size);
    sweep->add_option("--beta-c", sweep_opt.mine_config.diversity.beta_c);
    sweep->add_option("--beta-d", sweep_opt.mine_config.diversity.beta_d);
    sweep->add_option("--theta", sweep_opt.mine_config.kernel.theta);
    sweep->add_option("--concerned-k", sweep_opt.concerned_k, "concerned attributes per run");
    sweep->add_flag("--parallel", sweep_opt.mine_config.parallel);

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(gen_opt);
        if (mine->parsed()) return run_mine(mine_opt);
        if (eval->parsed()) return run_eval(eval_opt);
        if (sweep->parsed()) return run_sweep(sweep_opt);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const acm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const acm::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const acm::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const acm::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
