#ifndef WPCE_HARNESS_HPP
#define WPCE_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpce/cobyla.hpp"
#include "wpce/gw.hpp"
#include "wpce/pce.hpp"
#include "wpce/tsp.hpp"

namespace wpce::harness {

using problems::MaxCutGraph;

enum class Method { Pce, WarmPce };

/// "pce" / "warm-pce".
const char* to_string(Method m);
Method parse_method(const std::string& name);

/// Knobs shared by every run of an experiment.
struct SolverSettings {
    int max_evals = 1000;
    double initial_step = 0.7;
    double final_step = 1e-4;
    /// tanh sharpness; unset means 1.
    std::optional<double> alpha;
    /// Correlator penalty; unset means 0.1 * mean |W_ij| of the graph.
    std::optional<double> reg_weight;
    int gw_roundings = 100;
    int correlation_order = 2;
};

/// Result of optimizing a PCE (or Warm-PCE) loss on one MaxCut graph.
struct PceOutcome {
    pce::SpinVector spins;
    opt::OptimResult optim;
};

/// Random start from `seed`, COBYLA on the loss, then sign extraction. A null
/// bias gives plain PCE.
PceOutcome optimize_pce(const MaxCutGraph& graph, const pce::PceEncoding& encoding, int depth,
                        const pce::LossConfig& loss, const pce::GwBias* bias,
                        std::uint64_t seed, const SolverSettings& settings);

pce::LossConfig loss_config_for(const MaxCutGraph& graph, double epsilon,
                                const SolverSettings& settings);

/// Run-independent data of one TSP instance.
struct TspPipeline {
    std::string instance_id;
    problems::TspInstance instance;
    problems::QuboProblem qubo;
    MaxCutGraph graph;
    pce::PceEncoding encoding;
    problems::Tour optimal_tour;
    double optimal_length = 0.0;
};

/// QUBO with A = B = 2 N max W, MaxCut reduction, encoding on the fewest
/// qubits that hold every node, and the exact optimum.
TspPipeline prepare_tsp(std::string instance_id, problems::TspInstance instance,
                        int correlation_order = 2);

struct RunSpec {
    Method method = Method::Pce;
    int depth = 1;
    double epsilon = 0.2;
    int init_index = 0;
    std::uint64_t seed = 0;
    bool post_process = true;
};

struct RunRecord {
    Method method = Method::Pce;
    std::string instance_id;
    int depth = 1;
    int init_index = 0;
    std::uint64_t seed = 0;
    pce::SpinVector spins;
    double cut = 0.0;
    std::optional<problems::Tour> tour;
    std::vector<int> violated_rows;
    std::vector<int> violated_columns;
    std::optional<double> tour_length;
    double optimal_length = 0.0;
    /// optimal / found for a feasible tour, 0 otherwise.
    double ratio = 0.0;
    bool hit_optimum = false;
    bool post_processed = false;
    double best_loss = 0.0;
    int evals_used = 0;
};

/// Full TSP -> QUBO -> MaxCut -> (GW) -> PCE -> bits -> tour pipeline. For
/// Warm-PCE without `shared_bias`, the bias is computed from the run seed.
RunRecord run_single(const TspPipeline& pipeline, const RunSpec& spec,
                     const SolverSettings& settings, const pce::GwBias* shared_bias = nullptr);

/// hash(master, instance, method, depth, init): adding depths or methods
/// never changes the seeds of existing runs.
std::uint64_t record_seed(std::uint64_t master_seed, const std::string& instance_id, Method method,
                          int depth, int init_index);

/// Seed of the per-instance GW solve.
std::uint64_t instance_gw_seed(std::uint64_t master_seed, const std::string& instance_id);

struct MethodStats {
    int runs = 0;
    double mean_ratio = 0.0;
    int instances_hit = 0;
    /// Fraction of instances with at least one record hitting the optimum.
    double success_rate = 0.0;
};

struct DepthSummary {
    int depth = 0;
    int instances = 0;
    MethodStats pce;
    MethodStats warm;
    /// Warm-PCE against PCE on the best tour per instance.
    int wins = 0;
    int ties = 0;
    int losses = 0;
};

struct BenchmarkSummary {
    std::vector<DepthSummary> depths;
};

/// Recomputes every summary statistic from records alone.
BenchmarkSummary summarize(std::span<const RunRecord> records);

struct BenchmarkConfig {
    int inits = 10;
    std::vector<int> depths{1, 2, 3, 4, 5};
    double epsilon = 0.2;
    std::uint64_t master_seed = 20251014;
    bool post_process = true;
    SolverSettings solver;
    int threads = 1;
};

struct BenchmarkResult {
    std::vector<RunRecord> records;
    BenchmarkSummary summary;
};

/// Runs instance x method x depth x init and sorts records by that key.
BenchmarkResult run_benchmark(std::span<const TspPipeline> pipelines, const BenchmarkConfig& cfg);

/// Instances named "tsp-000", "tsp-001", ...
std::vector<TspPipeline> generate_tsp_pipelines(int count, int cities, std::uint64_t master_seed);

struct SweepInstance {
    std::string graph_id;
    MaxCutGraph graph;
    pce::PceEncoding encoding;
    double optimum = 0.0;
};

/// Encoding keeps the first `nodes` strings on the fewest qubits; the
/// optimum is found by enumeration.
SweepInstance prepare_sweep_instance(std::string graph_id, MaxCutGraph graph,
                                     int correlation_order = 2);

struct SweepConfig {
    int inits = 5;
    std::vector<double> epsilons{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    int depth = 2;
    std::uint64_t master_seed = 20251014;
    SolverSettings solver;
    int threads = 1;
};

struct SweepRecord {
    double epsilon = 0.0;
    std::string graph_id;
    int init_index = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double optimum = 0.0;
    double ratio = 0.0;
};

struct SweepStat {
    double epsilon = 0.0;
    int runs = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SweepStat> stats;
};

/// Seed of one sweep run; independent of epsilon so every column reuses the
/// same initial parameters.
std::uint64_t sweep_seed(std::uint64_t master_seed, const std::string& graph_id, int init_index);

/// Warm-PCE on raw MaxCut graphs, no post-processing, E = cut of the sign bits.
SweepResult run_epsilon_sweep(std::span<const SweepInstance> instances, const SweepConfig& cfg);

std::vector<SweepStat> sweep_stats(std::span<const SweepRecord> records);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

/// Complete graph, weights uniform in (0, 1].
MaxCutGraph random_complete_graph(int nodes, std::uint64_t seed);

std::vector<SweepInstance> generate_sweep_instances(int count, int nodes, std::uint64_t master_seed);

enum class InstanceKind { Tsp, Graph };

/// Seed of generated instance `index`.
std::uint64_t instance_seed(std::uint64_t master_seed, InstanceKind kind, int index);

/// Writes <kind>-NNN.json files and manifest.json into out_dir; returns the
/// paths of the instance files.
std::vector<std::filesystem::path> generate_instances(InstanceKind kind, int count, int size,
                                                      std::uint64_t master_seed,
                                                      const std::filesystem::path& out_dir);

/// Calls fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

} // namespace wpce::harness

#endif // WPCE_HARNESS_HPP
