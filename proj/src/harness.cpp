#include "wpce/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "wpce/errors.hpp"
#include "wpce/instance_io.hpp"
#include "wpce/pauli_sim.hpp"
#include "wpce/qubo.hpp"
#include "wpce/rng.hpp"

namespace wpce::harness {

namespace {

constexpr double kLengthTolerance = 1e-9;

std::string indexed_id(const char* prefix, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%03d", prefix, index);
    return buf;
}

const char* kind_name(InstanceKind kind) { return kind == InstanceKind::Tsp ? "tsp" : "graph"; }

} // namespace

const char* to_string(Method m) { return m == Method::Pce ? "pce" : "warm-pce"; }

Method parse_method(const std::string& name) {
    if (name == "pce") return Method::Pce;
    if (name == "warm-pce") return Method::WarmPce;
    throw ParameterError("unknown method '" + name + "' (expected pce or warm-pce)");
}

pce::LossConfig loss_config_for(const MaxCutGraph& graph, double epsilon,
                                const SolverSettings& settings) {
    pce::LossConfig cfg = pce::default_loss_config(graph, epsilon);
    if (settings.alpha) cfg.alpha = *settings.alpha;
    if (settings.reg_weight) cfg.reg_weight = *settings.reg_weight;
    cfg.validate();
    return cfg;
}

PceOutcome optimize_pce(const MaxCutGraph& graph, const pce::PceEncoding& encoding, int depth,
                        const pce::LossConfig& loss, const pce::GwBias* bias,
                        std::uint64_t seed, const SolverSettings& settings) {
    if (encoding.size() != static_cast<std::size_t>(graph.nodes())) {
        throw DimensionError("optimize_pce: encoding size differs from node count");
    }
    const sim::AnsatzConfig ansatz{encoding.qubits(), depth};
    ansatz.validate();
    const auto strings = encoding.strings();

    auto correlators = [&](std::span<const double> theta) {
        return sim::expectation_batch(sim::prepare_state(ansatz, theta), strings);
    };
    const opt::Objective objective = [&](std::span<const double> theta) {
        const std::vector<double> c = correlators(theta);
        return bias ? pce::warm_pce_loss(c, graph, *bias, loss) : pce::pce_loss(c, graph, loss);
    };

    opt::OptimizerConfig oc;
    oc.max_evals = settings.max_evals;
    oc.initial_step = settings.initial_step;
    oc.final_step = settings.final_step;
    oc.seed = seed;
    oc.record_trace = false;

    const std::vector<double> start =
        opt::random_start(ansatz.parameter_count(), derive_seed({seed, tag("init")}));
    PceOutcome out;
    out.optim = opt::minimize(objective, start, oc);
    out.spins = pce::extract_bits(correlators(out.optim.best_params));
    return out;
}

TspPipeline prepare_tsp(std::string instance_id, problems::TspInstance instance,
                        int correlation_order) {
    const double penalty = problems::default_penalty(instance);
    problems::QuboProblem qubo = problems::build_tsp_qubo(instance, penalty, penalty);
    MaxCutGraph graph = problems::qubo_to_maxcut(qubo);
    const int m = graph.nodes();
    pce::PceEncoding encoding =
        pce::generate_encoding(pce::qubits_for(m, correlation_order), correlation_order, m);
    const problems::TspOptimum best = problems::brute_force_tsp(instance);
    return TspPipeline{std::move(instance_id), std::move(instance), std::move(qubo), std::move(graph),
                       std::move(encoding), best.tour, best.length};
}

RunRecord run_single(const TspPipeline& p, const RunSpec& spec, const SolverSettings& settings,
                     const pce::GwBias* shared_bias) {
    if (spec.depth < 1) throw ParameterError("run_single: depth must be >= 1");
    const pce::LossConfig loss = loss_config_for(p.graph, spec.epsilon, settings);

    std::optional<pce::GwBias> own_bias;
    const pce::GwBias* bias = nullptr;
    if (spec.method == Method::WarmPce) {
        if (shared_bias) {
            bias = shared_bias;
        } else {
            own_bias = gw::gw_bias_for(p.graph, spec.epsilon, settings.gw_roundings,
                                       derive_seed({spec.seed, tag("gw")}));
            bias = &*own_bias;
        }
    }

    PceOutcome outcome = optimize_pce(p.graph, p.encoding, spec.depth, loss, bias, spec.seed, settings);

    RunRecord r;
    r.method = spec.method;
    r.instance_id = p.instance_id;
    r.depth = spec.depth;
    r.init_index = spec.init_index;
    r.seed = spec.seed;
    r.post_processed = spec.post_process;
    r.spins = spec.post_process ? pce::bit_swap_search(outcome.spins, p.graph) : outcome.spins;
    r.cut = pce::cut_value(r.spins, p.graph);
    r.best_loss = outcome.optim.best_loss;
    r.evals_used = outcome.optim.evals_used;
    r.optimal_length = p.optimal_length;

    const std::vector<int> x = problems::decode_cut(r.spins, p.graph);
    problems::TourDecoding decoded = problems::decode_tour(x, p.instance.cities());
    r.violated_rows = std::move(decoded.violated_rows);
    r.violated_columns = std::move(decoded.violated_columns);
    if (decoded.tour) {
        const double len = problems::tour_length(*decoded.tour, p.instance);
        r.tour = std::move(decoded.tour);
        r.tour_length = len;
        r.hit_optimum = std::abs(len - p.optimal_length) <= kLengthTolerance;
        // Summation order can put an optimal tour a few ulps below the oracle.
        r.ratio = std::min(1.0, p.optimal_length / len);
    }
    return r;
}

std::uint64_t record_seed(std::uint64_t master_seed, const std::string& instance_id, Method method,
                          int depth, int init_index) {
    return derive_seed({master_seed, tag(instance_id), tag(to_string(method)),
                        static_cast<std::uint64_t>(depth), static_cast<std::uint64_t>(init_index)});
}

std::uint64_t instance_gw_seed(std::uint64_t master_seed, const std::string& instance_id) {
    return derive_seed({master_seed, tag(instance_id), tag("gw")});
}

BenchmarkSummary summarize(std::span<const RunRecord> records) {
    std::map<int, std::vector<const RunRecord*>> by_depth;
    for (const RunRecord& r : records) by_depth[r.depth].push_back(&r);

    BenchmarkSummary summary;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (const auto& [depth, recs] : by_depth) {
        DepthSummary ds;
        ds.depth = depth;
        std::set<std::string> ids;
        // instance -> {best length, any hit, seen} per method
        struct Best {
            double length = inf;
            bool hit = false;
            bool seen = false;
        };
        std::map<std::string, Best> best_pce, best_warm;
        double sum_pce = 0.0, sum_warm = 0.0;
        for (const RunRecord* r : recs) {
            ids.insert(r->instance_id);
            const bool warm = r->method == Method::WarmPce;
            Best& b = (warm ? best_warm : best_pce)[r->instance_id];
            b.seen = true;
            b.hit = b.hit || r->hit_optimum;
            if (r->tour_length) b.length = std::min(b.length, *r->tour_length);
            MethodStats& ms = warm ? ds.warm : ds.pce;
            ++ms.runs;
            (warm ? sum_warm : sum_pce) += r->ratio;
        }
        ds.instances = static_cast<int>(ids.size());
        auto finish = [&](MethodStats& ms, double sum, const std::map<std::string, Best>& best) {
            if (ms.runs > 0) ms.mean_ratio = sum / ms.runs;
            for (const auto& [id, b] : best) ms.instances_hit += b.hit ? 1 : 0;
            ms.success_rate = ds.instances > 0 ? static_cast<double>(ms.instances_hit) / ds.instances : 0.0;
        };
        finish(ds.pce, sum_pce, best_pce);
        finish(ds.warm, sum_warm, best_warm);
        for (const std::string& id : ids) {
            auto wp = best_warm.find(id);
            auto pp = best_pce.find(id);
            if (wp == best_warm.end() || pp == best_pce.end()) continue;
            const double w = wp->second.length;
            const double q = pp->second.length;
            if ((std::isinf(w) && std::isinf(q)) || std::abs(w - q) <= kLengthTolerance) {
                ++ds.ties;
            } else if (w < q) {
                ++ds.wins;
            } else {
                ++ds.losses;
            }
        }
        summary.depths.push_back(ds);
    }
    return summary;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(threads, count));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

BenchmarkResult run_benchmark(std::span<const TspPipeline> pipelines, const BenchmarkConfig& cfg) {
    if (cfg.inits < 1) throw ParameterError("run_benchmark: inits must be >= 1");
    if (cfg.depths.empty()) throw ParameterError("run_benchmark: empty depth set");
    std::vector<int> depths = cfg.depths;
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

    // One GW solve per instance, shared by all Warm-PCE runs on it.
    std::vector<pce::GwBias> biases(pipelines.size());
    parallel_for(pipelines.size(), cfg.threads, [&](std::size_t i) {
        biases[i] = gw::gw_bias_for(pipelines[i].graph, cfg.epsilon, cfg.solver.gw_roundings,
                                    instance_gw_seed(cfg.master_seed, pipelines[i].instance_id));
    });

    struct Task {
        std::size_t instance;
        Method method;
        int depth;
        int init;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < pipelines.size(); ++i) {
        for (Method m : {Method::Pce, Method::WarmPce}) {
            for (int d : depths) {
                for (int k = 0; k < cfg.inits; ++k) tasks.push_back({i, m, d, k});
            }
        }
    }

    BenchmarkResult result;
    result.records.resize(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
        const Task& task = tasks[t];
        const TspPipeline& p = pipelines[task.instance];
        RunSpec spec;
        spec.method = task.method;
        spec.depth = task.depth;
        spec.epsilon = cfg.epsilon;
        spec.init_index = task.init;
        spec.seed = record_seed(cfg.master_seed, p.instance_id, task.method, task.depth, task.init);
        spec.post_process = cfg.post_process;
        result.records[t] = run_single(p, spec, cfg.solver, &biases[task.instance]);
    });

    std::stable_sort(result.records.begin(), result.records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.instance_id, a.method, a.depth, a.init_index) <
               std::tie(b.instance_id, b.method, b.depth, b.init_index);
    });
    result.summary = summarize(result.records);
    return result;
}

std::uint64_t instance_seed(std::uint64_t master_seed, InstanceKind kind, int index) {
    return derive_seed({master_seed, tag(kind_name(kind)), static_cast<std::uint64_t>(index)});
}

std::vector<TspPipeline> generate_tsp_pipelines(int count, int cities, std::uint64_t master_seed) {
    std::vector<TspPipeline> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(prepare_tsp(indexed_id("tsp", i),
                                  problems::random_euclidean_tsp(cities, instance_seed(master_seed, InstanceKind::Tsp, i))));
    }
    return out;
}

MaxCutGraph random_complete_graph(int nodes, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<problems::Edge> edges;
    for (int i = 0; i < nodes; ++i) {
        for (int j = i + 1; j < nodes; ++j) edges.push_back({i, j, 1.0 - rng.uniform()});
    }
    return MaxCutGraph(nodes, std::move(edges));
}

SweepInstance prepare_sweep_instance(std::string graph_id, MaxCutGraph graph, int correlation_order) {
    const int m = graph.nodes();
    pce::PceEncoding encoding =
        pce::generate_encoding(pce::qubits_for(m, correlation_order), correlation_order, m);
    const double optimum = problems::brute_force_maxcut(graph).cut;
    return SweepInstance{std::move(graph_id), std::move(graph), std::move(encoding), optimum};
}

std::vector<SweepInstance> generate_sweep_instances(int count, int nodes, std::uint64_t master_seed) {
    std::vector<SweepInstance> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(prepare_sweep_instance(
            indexed_id("graph", i),
            random_complete_graph(nodes, instance_seed(master_seed, InstanceKind::Graph, i))));
    }
    return out;
}

std::uint64_t sweep_seed(std::uint64_t master_seed, const std::string& graph_id, int init_index) {
    return derive_seed({master_seed, tag(graph_id), tag("sweep"), static_cast<std::uint64_t>(init_index)});
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ParameterError("quantile_sorted: empty data");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<SweepStat> sweep_stats(std::span<const SweepRecord> records) {
    std::map<double, std::vector<double>> by_eps;
    for (const SweepRecord& r : records) by_eps[r.epsilon].push_back(r.ratio);
    std::vector<SweepStat> out;
    for (auto& [eps, ratios] : by_eps) {
        std::sort(ratios.begin(), ratios.end());
        out.push_back({eps, static_cast<int>(ratios.size()), quantile_sorted(ratios, 0.5),
                       quantile_sorted(ratios, 0.25), quantile_sorted(ratios, 0.75)});
    }
    return out;
}

SweepResult run_epsilon_sweep(std::span<const SweepInstance> instances, const SweepConfig& cfg) {
    if (cfg.inits < 1) throw ParameterError("run_epsilon_sweep: inits must be >= 1");
    if (cfg.epsilons.empty()) throw ParameterError("run_epsilon_sweep: empty epsilon grid");
    for (double eps : cfg.epsilons) {
        if (!(eps > 0.0 && eps <= 0.5)) throw ParameterError("run_epsilon_sweep: epsilon outside (0, 0.5]");
    }

    std::vector<std::vector<double>> gw_bits(instances.size());
    parallel_for(instances.size(), cfg.threads, [&](std::size_t i) {
        const gw::GwSolution sol = gw::solve(instances[i].graph, cfg.solver.gw_roundings,
                                             instance_gw_seed(cfg.master_seed, instances[i].graph_id));
        gw_bits[i].assign(sol.best_bits.begin(), sol.best_bits.end());
    });

    struct Task {
        std::size_t eps;
        std::size_t graph;
        int init;
    };
    std::vector<Task> tasks;
    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
        for (std::size_t g = 0; g < instances.size(); ++g) {
            for (int k = 0; k < cfg.inits; ++k) tasks.push_back({e, g, k});
        }
    }

    SweepResult result;
    result.records.resize(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
        const Task& task = tasks[t];
        const SweepInstance& inst = instances[task.graph];
        const double eps = cfg.epsilons[task.eps];
        const pce::LossConfig loss = loss_config_for(inst.graph, eps, cfg.solver);
        const pce::GwBias bias = pce::make_gw_bias(inst.graph, gw_bits[task.graph], eps);
        const std::uint64_t seed = sweep_seed(cfg.master_seed, inst.graph_id, task.init);
        const PceOutcome out = optimize_pce(inst.graph, inst.encoding, cfg.depth, loss, &bias, seed, cfg.solver);

        SweepRecord& r = result.records[t];
        r.epsilon = eps;
        r.graph_id = inst.graph_id;
        r.init_index = task.init;
        r.seed = seed;
        r.energy = pce::cut_value(out.spins, inst.graph);
        r.optimum = inst.optimum;
        r.ratio = r.energy / inst.optimum;
    });
    result.stats = sweep_stats(result.records);
    return result;
}

std::vector<std::filesystem::path> generate_instances(InstanceKind kind, int count, int size,
                                                      std::uint64_t master_seed,
                                                      const std::filesystem::path& out_dir) {
    if (count < 1) throw ParameterError("generate_instances: count must be >= 1");
    nlohmann::json manifest;
    manifest["kind"] = kind_name(kind);
    manifest["count"] = count;
    manifest["size"] = size;
    manifest["master_seed"] = master_seed;
    manifest["instances"] = nlohmann::json::array();

    std::vector<std::filesystem::path> files;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = instance_seed(master_seed, kind, i);
        const std::string id = indexed_id(kind_name(kind), i);
        const std::string body = kind == InstanceKind::Tsp
                                     ? io::tsp_to_json(problems::random_euclidean_tsp(size, seed))
                                     : io::graph_to_json(random_complete_graph(size, seed));
        const std::filesystem::path path = out_dir / (id + ".json");
        io::write_file(path, body);
        files.push_back(path);
        manifest["instances"].push_back({{"id", id}, {"file", id + ".json"}, {"seed", seed}});
    }
    io::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return files;
}

} // namespace wpce::harness
