#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "wpce/errors.hpp"
#include "wpce/gw.hpp"
#include "wpce/harness.hpp"
#include "wpce/instance_io.hpp"
#include "wpce/pce.hpp"
#include "wpce/qubo.hpp"
#include "wpce/report.hpp"
#include "wpce/tsp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wpce;

namespace {

struct Loaded {
    std::string kind;
    std::string id;
    std::string text;
};

Loaded load(const fs::path& path) {
    Loaded l;
    l.text = io::read_file(path);
    l.kind = io::detect_kind(l.text);
    l.id = path.stem().string();
    return l;
}

json record_json(const harness::RunRecord& r) {
    json j;
    j["method"] = harness::to_string(r.method);
    j["instance_id"] = r.instance_id;
    j["depth"] = r.depth;
    j["init_index"] = r.init_index;
    j["seed"] = r.seed;
    j["spins"] = r.spins;
    j["cut"] = r.cut;
    j["feasible"] = r.tour.has_value();
    j["tour"] = r.tour ? json(r.tour->order) : json(nullptr);
    j["tour_length"] = r.tour_length ? json(*r.tour_length) : json(nullptr);
    j["optimal_length"] = r.optimal_length;
    j["ratio"] = r.ratio;
    j["hit_optimum"] = r.hit_optimum;
    j["violated_rows"] = r.violated_rows;
    j["violated_columns"] = r.violated_columns;
    j["best_loss"] = r.best_loss;
    j["evals_used"] = r.evals_used;
    return j;
}

std::vector<harness::TspPipeline> pipelines_from_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const fs::path& p = entry.path();
        if (p.extension() == ".json" && p.filename() != "manifest.json") files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    std::vector<harness::TspPipeline> out;
    for (const fs::path& f : files) {
        Loaded l = load(f);
        if (l.kind != "tsp") continue;
        out.push_back(harness::prepare_tsp(l.id, io::tsp_from_json(l.text)));
    }
    if (out.empty()) throw IoError("no TSP instances found in " + dir.string());
    return out;
}

struct SolverFlags {
    int max_evals = 1000;
    double initial_step = 0.7;
    double final_step = 1e-4;
    int roundings = 100;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-evals", max_evals, "Objective calls per run")->check(CLI::PositiveNumber);
        cmd->add_option("--initial-step", initial_step, "Initial trust-region radius");
        cmd->add_option("--final-step", final_step, "Final trust-region radius");
        cmd->add_option("--roundings", roundings, "GW hyperplane roundings")->check(CLI::PositiveNumber);
    }
    harness::SolverSettings settings() const {
        harness::SolverSettings s;
        s.max_evals = max_evals;
        s.initial_step = initial_step;
        s.final_step = final_step;
        s.gw_roundings = roundings;
        return s;
    }
};

int cmd_gen(const std::string& kind, int count, int size, std::uint64_t seed, const fs::path& out) {
    harness::InstanceKind k;
    if (kind == "tsp") {
        k = harness::InstanceKind::Tsp;
    } else if (kind == "graph") {
        k = harness::InstanceKind::Graph;
    } else {
        throw ParameterError("unknown kind '" + kind + "' (expected tsp or graph)");
    }
    const auto files = harness::generate_instances(k, count, size, seed, out);
    std::cout << "wrote " << files.size() << " instances and manifest.json to " << out.string() << "\n";
    return 0;
}

int cmd_solve(const fs::path& path, const std::string& method_name, int layers, double epsilon, int inits,
              std::uint64_t seed, bool no_post, const SolverFlags& flags) {
    const harness::Method method = harness::parse_method(method_name);
    const harness::SolverSettings settings = flags.settings();
    Loaded l = load(path);
    json out;
    out["instance_id"] = l.id;
    out["method"] = harness::to_string(method);
    out["layers"] = layers;
    out["epsilon"] = epsilon;

    if (l.kind == "tsp") {
        const auto pipeline = harness::prepare_tsp(l.id, io::tsp_from_json(l.text));
        std::optional<pce::GwBias> bias;
        if (method == harness::Method::WarmPce) {
            bias = gw::gw_bias_for(pipeline.graph, epsilon, settings.gw_roundings,
                                   harness::instance_gw_seed(seed, l.id));
        }
        json runs = json::array();
        const harness::RunRecord* best = nullptr;
        std::vector<harness::RunRecord> records;
        for (int i = 0; i < inits; ++i) {
            harness::RunSpec spec;
            spec.method = method;
            spec.depth = layers;
            spec.epsilon = epsilon;
            spec.init_index = i;
            spec.seed = harness::record_seed(seed, l.id, method, layers, i);
            spec.post_process = !no_post;
            records.push_back(harness::run_single(pipeline, spec, settings, bias ? &*bias : nullptr));
        }
        for (const auto& r : records) {
            runs.push_back(record_json(r));
            if (r.tour_length && (!best || !best->tour_length || *r.tour_length < *best->tour_length)) best = &r;
        }
        out["optimal_length"] = pipeline.optimal_length;
        out["optimal_tour"] = pipeline.optimal_tour.order;
        out["runs"] = runs;
        out["best_tour_length"] = best ? json(*best->tour_length) : json(nullptr);
        out["hit_optimum"] = std::any_of(records.begin(), records.end(),
                                         [](const harness::RunRecord& r) { return r.hit_optimum; });
    } else if (l.kind == "graph") {
        const auto graph = io::graph_from_json(l.text);
        const auto encoding = pce::generate_encoding(pce::qubits_for(graph.nodes(), settings.correlation_order),
                                                     settings.correlation_order, graph.nodes());
        const auto loss = harness::loss_config_for(graph, epsilon, settings);
        std::optional<pce::GwBias> bias;
        if (method == harness::Method::WarmPce) {
            bias = gw::gw_bias_for(graph, epsilon, settings.gw_roundings, harness::instance_gw_seed(seed, l.id));
        }
        json runs = json::array();
        double best_cut = -1.0;
        for (int i = 0; i < inits; ++i) {
            const auto run_seed = harness::record_seed(seed, l.id, method, layers, i);
            auto outcome = harness::optimize_pce(graph, encoding, layers, loss, bias ? &*bias : nullptr, run_seed,
                                                 settings);
            pce::SpinVector spins = no_post ? outcome.spins : pce::bit_swap_search(outcome.spins, graph);
            const double cut = pce::cut_value(spins, graph);
            best_cut = std::max(best_cut, cut);
            runs.push_back({{"init_index", i},
                            {"seed", run_seed},
                            {"spins", spins},
                            {"cut", cut},
                            {"best_loss", outcome.optim.best_loss},
                            {"evals_used", outcome.optim.evals_used}});
        }
        out["qubits"] = encoding.qubits();
        out["runs"] = runs;
        out["best_cut"] = best_cut;
    } else {
        throw InstanceError("solve expects a tsp or graph instance, got " + l.kind);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_gw(const fs::path& path, int roundings, double epsilon, std::uint64_t seed) {
    Loaded l = load(path);
    std::optional<problems::MaxCutGraph> graph;
    if (l.kind == "tsp") {
        const auto inst = io::tsp_from_json(l.text);
        const double a = problems::default_penalty(inst);
        graph = problems::qubo_to_maxcut(problems::build_tsp_qubo(inst, a, a));
    } else if (l.kind == "graph") {
        graph = io::graph_from_json(l.text);
    } else if (l.kind == "qubo") {
        graph = problems::qubo_to_maxcut(io::qubo_from_json(l.text));
    } else {
        throw InstanceError("unsupported instance kind " + l.kind);
    }
    const auto gw_seed = harness::instance_gw_seed(seed, l.id);
    const auto sol = gw::solve(*graph, roundings, gw_seed);
    std::vector<double> raw(sol.best_bits.begin(), sol.best_bits.end());
    const auto bias = pce::make_gw_bias(*graph, raw, epsilon);
    json out;
    out["instance_id"] = l.id;
    out["nodes"] = graph->nodes();
    out["seed"] = gw_seed;
    out["sdp_value"] = sol.sdp.value;
    out["sdp_rank"] = sol.sdp.rank;
    out["sdp_converged"] = sol.sdp.converged;
    out["roundings"] = sol.roundings;
    out["best_cut"] = sol.best_cut;
    out["bits"] = sol.best_bits;
    out["epsilon"] = epsilon;
    out["regularized_bits"] = bias.regularized_bits;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_oracle(const std::string& what, const fs::path& path) {
    Loaded l = load(path);
    json out;
    out["instance_id"] = l.id;
    if (what == "tsp") {
        if (l.kind != "tsp") throw InstanceError("oracle tsp expects a tsp instance, got " + l.kind);
        const auto opt = problems::brute_force_tsp(io::tsp_from_json(l.text));
        out["tour"] = opt.tour.order;
        out["length"] = opt.length;
        out["permutations_examined"] = opt.permutations_examined;
        out["distinct_tours"] = opt.distinct_tours;
    } else if (what == "maxcut") {
        std::optional<problems::MaxCutGraph> graph;
        if (l.kind == "graph") {
            graph = io::graph_from_json(l.text);
        } else if (l.kind == "qubo") {
            graph = problems::qubo_to_maxcut(io::qubo_from_json(l.text));
        } else if (l.kind == "tsp") {
            const auto inst = io::tsp_from_json(l.text);
            const double a = problems::default_penalty(inst);
            graph = problems::qubo_to_maxcut(problems::build_tsp_qubo(inst, a, a));
        } else {
            throw InstanceError("unsupported instance kind " + l.kind);
        }
        const auto opt = problems::brute_force_maxcut(*graph);
        out["nodes"] = graph->nodes();
        out["spins"] = opt.spins;
        out["cut"] = opt.cut;
    } else if (what == "qubo") {
        std::optional<problems::QuboProblem> qubo;
        if (l.kind == "qubo") {
            qubo = io::qubo_from_json(l.text);
        } else if (l.kind == "tsp") {
            const auto inst = io::tsp_from_json(l.text);
            const double a = problems::default_penalty(inst);
            qubo = problems::build_tsp_qubo(inst, a, a);
        } else {
            throw InstanceError("oracle qubo expects a qubo or tsp instance, got " + l.kind);
        }
        const auto opt = problems::brute_force_qubo(*qubo);
        out["variables"] = qubo->size();
        out["x"] = opt.x;
        out["value"] = opt.value;
    } else {
        throw ParameterError("unknown oracle '" + what + "' (expected tsp, maxcut or qubo)");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

void print_summary(const harness::BenchmarkSummary& summary) {
    std::printf("%5s %9s %10s %10s %10s %10s %5s %5s %5s\n", "depth", "instances", "pce_ratio", "pce_succ",
                "warm_ratio", "warm_succ", "wins", "ties", "loss");
    for (const auto& d : summary.depths) {
        std::printf("%5d %9d %10.4f %10.4f %10.4f %10.4f %5d %5d %5d\n", d.depth, d.instances, d.pce.mean_ratio,
                    d.pce.success_rate, d.warm.mean_ratio, d.warm.success_rate, d.wins, d.ties, d.losses);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Warm-started Pauli correlation encoding for MaxCut and TSP"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate random instances");
    std::string gen_kind = "tsp";
    int gen_count = 50, gen_size = 5;
    std::uint64_t gen_seed = 20251014;
    fs::path gen_out = "instances";
    gen->add_option("--kind", gen_kind, "tsp or graph")->check(CLI::IsMember({"tsp", "graph"}));
    gen->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
    gen->add_option("--size", gen_size, "Cities or nodes per instance")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Master seed");
    gen->add_option("--out", gen_out, "Output directory");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one instance with PCE or Warm-PCE");
    fs::path solve_path;
    std::string solve_method = "warm-pce";
    int solve_layers = 1, solve_inits = 1;
    double solve_eps = 0.2;
    std::uint64_t solve_seed = 20251014;
    bool solve_no_post = false;
    SolverFlags solve_flags;
    solve->add_option("--instance", solve_path, "Instance JSON (tsp or graph)")->required()->check(CLI::ExistingFile);
    solve->add_option("--method", solve_method, "pce or warm-pce")->check(CLI::IsMember({"pce", "warm-pce"}));
    solve->add_option("--layers", solve_layers, "Ansatz depth p")->check(CLI::PositiveNumber);
    solve->add_option("--epsilon", solve_eps, "GW regularization");
    solve->add_option("--inits", solve_inits, "Random initializations")->check(CLI::PositiveNumber);
    solve->add_option("--seed", solve_seed, "Master seed");
    solve->add_flag("--no-postprocess", solve_no_post, "Skip bit-swap search");
    solve_flags.attach(solve);

    // gw
    auto* gwc = app.add_subcommand("gw", "Goemans-Williamson bias only");
    fs::path gw_path;
    int gw_roundings = 100;
    double gw_eps = 0.2;
    std::uint64_t gw_seed = 20251014;
    gwc->add_option("--instance", gw_path, "Instance JSON")->required()->check(CLI::ExistingFile);
    gwc->add_option("--roundings", gw_roundings, "Hyperplane roundings")->check(CLI::PositiveNumber);
    gwc->add_option("--epsilon", gw_eps, "Regularization of the reported bits");
    gwc->add_option("--seed", gw_seed, "Master seed");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact solution by enumeration");
    std::string oracle_what;
    fs::path oracle_path;
    oracle->add_option("problem", oracle_what, "tsp, maxcut or qubo")
        ->required()
        ->check(CLI::IsMember({"tsp", "maxcut", "qubo"}));
    oracle->add_option("--instance", oracle_path, "Instance JSON")->required()->check(CLI::ExistingFile);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Warm-PCE epsilon sweep on random MaxCut graphs");
    harness::SweepConfig sweep_cfg;
    int sweep_graphs = 10, sweep_nodes = 20;
    fs::path sweep_out = "sweep";
    fs::path sweep_dir;
    SolverFlags sweep_flags;
    sweep->add_option("--graphs", sweep_graphs, "Number of graphs")->check(CLI::PositiveNumber);
    sweep->add_option("--nodes", sweep_nodes, "Nodes per graph")->check(CLI::Range(3, 24));
    sweep->add_option("--instances-dir", sweep_dir, "Read graph-*.json from here instead of generating")
        ->check(CLI::ExistingDirectory);
    sweep->add_option("--inits", sweep_cfg.inits, "Initializations per graph")->check(CLI::PositiveNumber);
    sweep->add_option("--epsilons", sweep_cfg.epsilons, "Epsilon grid")->delimiter(',');
    sweep->add_option("--layers", sweep_cfg.depth, "Ansatz depth p")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_cfg.master_seed, "Master seed");
    sweep->add_option("--threads", sweep_cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "Output directory");
    sweep_flags.attach(sweep);

    // bench
    auto* bench = app.add_subcommand("bench", "PCE vs Warm-PCE depth benchmark on random TSP instances");
    harness::BenchmarkConfig bench_cfg;
    int bench_instances = 50, bench_cities = 5;
    bool bench_no_post = false;
    fs::path bench_out = "bench";
    fs::path bench_dir;
    SolverFlags bench_flags;
    bench->add_option("--instances", bench_instances, "Number of generated instances")->check(CLI::PositiveNumber);
    bench->add_option("--cities", bench_cities, "Cities per generated instance")->check(CLI::Range(3, 6));
    bench->add_option("--instances-dir", bench_dir, "Read tsp JSON files from here instead of generating")
        ->check(CLI::ExistingDirectory);
    bench->add_option("--inits", bench_cfg.inits, "Initializations per instance")->check(CLI::PositiveNumber);
    bench->add_option("--depths", bench_cfg.depths, "Ansatz depths")->delimiter(',');
    bench->add_option("--epsilon", bench_cfg.epsilon, "GW regularization");
    bench->add_option("--seed", bench_cfg.master_seed, "Master seed");
    bench->add_option("--threads", bench_cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_flag("--no-postprocess", bench_no_post, "Skip bit-swap search");
    bench->add_option("--out", bench_out, "Output directory");
    bench_flags.attach(bench);

    // report
    auto* rep = app.add_subcommand("report", "Re-render CSV summaries and SVG charts");
    fs::path rep_records, rep_sweep, rep_out = "report";
    rep->add_option("--records", rep_records, "records.csv from bench")->check(CLI::ExistingFile);
    rep->add_option("--sweep", rep_sweep, "sweep.csv from sweep")->check(CLI::ExistingFile);
    rep->add_option("--out", rep_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen(gen_kind, gen_count, gen_size, gen_seed, gen_out);
        if (*solve) {
            return cmd_solve(solve_path, solve_method, solve_layers, solve_eps, solve_inits, solve_seed,
                             solve_no_post, solve_flags);
        }
        if (*gwc) return cmd_gw(gw_path, gw_roundings, gw_eps, gw_seed);
        if (*oracle) return cmd_oracle(oracle_what, oracle_path);
        if (*sweep) {
            sweep_cfg.solver = sweep_flags.settings();
            std::vector<harness::SweepInstance> instances;
            if (!sweep_dir.empty()) {
                std::vector<fs::path> files;
                for (const auto& e : fs::directory_iterator(sweep_dir)) {
                    if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") {
                        files.push_back(e.path());
                    }
                }
                std::sort(files.begin(), files.end());
                for (const auto& f : files) {
                    Loaded l = load(f);
                    if (l.kind != "graph") continue;
                    instances.push_back(harness::prepare_sweep_instance(l.id, io::graph_from_json(l.text)));
                }
                if (instances.empty()) throw IoError("no graph instances found in " + sweep_dir.string());
            } else {
                instances = harness::generate_sweep_instances(sweep_graphs, sweep_nodes, sweep_cfg.master_seed);
            }
            const auto result = harness::run_epsilon_sweep(instances, sweep_cfg);
            const auto files = report::emit_sweep_report(result, sweep_out);
            std::printf("%8s %5s %10s %10s %10s\n", "epsilon", "runs", "median", "q1", "q3");
            for (const auto& s : result.stats) {
                std::printf("%8.3f %5d %10.4f %10.4f %10.4f\n", s.epsilon, s.runs, s.median, s.q1, s.q3);
            }
            for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
            return 0;
        }
        if (*bench) {
            bench_cfg.solver = bench_flags.settings();
            bench_cfg.post_process = !bench_no_post;
            const auto pipelines = bench_dir.empty()
                                       ? harness::generate_tsp_pipelines(bench_instances, bench_cities,
                                                                         bench_cfg.master_seed)
                                       : pipelines_from_dir(bench_dir);
            const auto result = harness::run_benchmark(pipelines, bench_cfg);
            const auto files = report::emit_report(result.records, result.summary, bench_out);
            print_summary(result.summary);
            for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
            return 0;
        }
        if (*rep) {
            if (rep_records.empty() && rep_sweep.empty()) throw ParameterError("report needs --records or --sweep");
            if (!rep_records.empty()) {
                const auto records = report::parse_records_csv(io::read_file(rep_records));
                const auto summary = harness::summarize(records);
                const auto files = report::emit_report(records, summary, rep_out);
                print_summary(summary);
                for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
            }
            if (!rep_sweep.empty()) {
                harness::SweepResult sweep_result;
                sweep_result.records = report::parse_sweep_csv(io::read_file(rep_sweep));
                sweep_result.stats = harness::sweep_stats(sweep_result.records);
                const auto files = report::emit_sweep_report(sweep_result, rep_out);
                for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "wpce: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
