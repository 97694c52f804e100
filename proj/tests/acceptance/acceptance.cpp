// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "wpce/cobyla.hpp"
#include "wpce/gw.hpp"
#include "wpce/harness.hpp"
#include "wpce/instance_io.hpp"
#include "wpce/pauli_sim.hpp"
#include "wpce/pce.hpp"
#include "wpce/qubo.hpp"
#include "wpce/report.hpp"
#include "wpce/rng.hpp"
#include "wpce/tsp.hpp"

using namespace wpce;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20251014;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= limit_s) {
        o.pass = false;
        o.detail += fmt(" [runtime limit %.0f s exceeded]", limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

Outcome warm_identity() {
    std::mt19937_64 gen(derive_seed({kMasterSeed, tag("acceptance-1")}));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int exact = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(gen() % 19);
        const auto g = oracle::random_graph(n, 0.3 + 0.7 * u(gen), true, gen);
        std::vector<double> c(n), raw(n);
        for (double& x : c) x = 2.0 * u(gen) - 1.0;
        for (double& x : raw) x = static_cast<double>(gen() & 1u);
        const pce::LossConfig cfg{0.1 + 10.0 * u(gen), 2.0 * u(gen), 0.5};
        const auto bias = pce::make_gw_bias(g, raw, 0.5);
        exact += pce::warm_pce_loss(c, g, bias, cfg) == pce::pce_loss(c, g, cfg);
    }
    return {exact == 100, std::to_string(exact) + "/100 tuples bit-identical"};
}

Outcome expectation_oracle() {
    std::mt19937_64 gen(derive_seed({kMasterSeed, tag("acceptance-2")}));
    const auto enc = pce::generate_encoding(4, 2, 17);
    std::vector<oracle::Matrix> dense;
    for (const auto& s : enc.strings()) dense.push_back(oracle::pauli_operator(s.str()));
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto psi = oracle::random_state(4, gen);
        const auto state = sim::Statevector::from_amplitudes(psi);
        for (std::size_t k = 0; k < enc.size(); ++k) {
            const auto mpsi = oracle::mat_vec(dense[k], psi);
            std::complex<double> ref = 0.0;
            for (std::size_t i = 0; i < psi.size(); ++i) ref += std::conj(psi[i]) * mpsi[i];
            worst = std::max(worst, std::abs(sim::expectation(state, enc.strings()[k]) - ref.real()));
        }
    }
    return {worst < 1e-10, fmt("max |delta| = %.3g over 500 states x 17 strings", worst)};
}

Outcome qubo_identity() {
    std::mt19937_64 gen(derive_seed({kMasterSeed, tag("acceptance-3")}));
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        problems::QuboProblem q(9, u(gen));
        for (int i = 0; i < 9; ++i)
            for (int j = i; j < 9; ++j) q.add(i, j, u(gen));
        const auto g = problems::qubo_to_maxcut(q);
        const double c = g.qubo_link()->objective_constant();
        for (int mask = 0; mask < 512; ++mask) {
            for (int aux : {1, -1}) {
                std::vector<int> x(9), y(10);
                for (int i = 0; i < 9; ++i) {
                    x[i] = (mask >> i) & 1;
                    y[i] = aux * (1 - 2 * x[i]);
                }
                y[9] = aux;
                if (problems::decode_cut(y, g) != x) return {false, "decode_cut disagrees with the substitution"};
                worst = std::max(worst, std::abs(q.evaluate(x) - (c - 2.0 * pce::cut_value(y, g))));
            }
        }
    }
    return {worst <= 1e-9, fmt("max deviation %.3g over 20 QUBOs x 2^9 assignments", worst)};
}

Outcome tsp_qubo() {
    const auto inst = problems::random_euclidean_tsp(5, harness::instance_seed(kMasterSeed, harness::InstanceKind::Tsp, 0));
    const double a = problems::default_penalty(inst);
    const auto q = problems::build_tsp_qubo(inst, a, a);
    const auto opt = problems::brute_force_tsp(inst);
    double worst = 0.0, best = 1e300;
    bool best_feasible = false;
    int feasible = 0;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        std::vector<int> x(16);
        for (int i = 0; i < 16; ++i) x[i] = (mask >> i) & 1u;
        const double v = q.evaluate(x);
        const auto dec = problems::decode_tour(x, 5);
        if (dec.feasible()) {
            ++feasible;
            worst = std::max(worst, std::abs(v - oracle::fold_tour(dec.tour->order, inst)));
        }
        if (v < best) {
            best = v;
            best_feasible = dec.feasible();
        }
    }
    const bool ok = feasible == 24 && worst <= 1e-9 && best_feasible && std::abs(best - opt.length) <= 1e-9 &&
                    opt.permutations_examined == 24;
    return {ok, std::to_string(feasible) + " feasible, max |obj - length| = " + fmt("%.3g", worst) +
                    ", min " + fmt("%.12g", best) + (best_feasible ? " (feasible)" : " (infeasible)") +
                    " vs oracle " + fmt("%.12g", opt.length)};
}

Outcome gw_quality() {
    int met = 0;
    bool exceeded = false;
    double worst = 2.0;
    for (int t = 0; t < 10; ++t) {
        const auto g = harness::random_complete_graph(
            12, harness::instance_seed(kMasterSeed, harness::InstanceKind::Graph, t));
        const double opt = problems::brute_force_maxcut(g).cut;
        const auto sol = gw::solve(g, 100, harness::instance_gw_seed(kMasterSeed, "gw-" + std::to_string(t)));
        met += sol.best_cut >= 0.878 * opt;
        exceeded = exceeded || sol.best_cut > opt + 1e-9;
        worst = std::min(worst, sol.best_cut / opt);
    }
    return {met >= 9 && !exceeded, std::to_string(met) + "/10 graphs >= 0.878 x optimum, worst ratio " +
                                       fmt("%.4f", worst) + (exceeded ? ", optimum exceeded" : ", never above optimum")};
}

Outcome bit_swap() {
    std::mt19937_64 gen(derive_seed({kMasterSeed, tag("acceptance-6")}));
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(gen() % 11);
        const auto g = oracle::random_graph(n, 0.6, t % 2 == 0, gen);
        std::vector<int> b(n);
        for (int& s : b) s = (gen() & 1u) ? 1 : -1;
        const auto out = pce::bit_swap_search(b, g);
        ok += pce::cut_value(out, g) >= pce::cut_value(b, g) && oracle::is_one_flip_optimal(out, oracle::weight_matrix(g));
    }
    return {ok == 200, std::to_string(ok) + "/200 outputs monotone and 1-flip optimal"};
}

harness::BenchmarkConfig reduced_bench() {
    harness::BenchmarkConfig cfg;
    cfg.inits = 10;
    cfg.depths = {1, 3, 5};
    cfg.epsilon = 0.2;
    cfg.master_seed = kMasterSeed;
    return cfg;
}

Outcome depth_benchmark() {
    const auto pipes = harness::generate_tsp_pipelines(10, 5, kMasterSeed);
    const auto res = harness::run_benchmark(pipes, reduced_bench());
    bool ok = true;
    std::string detail;
    for (const auto& d : res.summary.depths) {
        const bool succ = d.warm.success_rate >= d.pce.success_rate;
        const bool ratio = d.depth < 3 || d.warm.mean_ratio >= d.pce.mean_ratio;
        ok = ok && succ && ratio;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%sp=%d success %.2f vs %.2f%s, ratio %.4f vs %.4f%s", detail.empty() ? "" : "; ",
                      d.depth, d.warm.success_rate, d.pce.success_rate, succ ? "" : " (!)", d.warm.mean_ratio,
                      d.pce.mean_ratio, ratio ? "" : " (!)");
        detail += buf;
    }
    return {ok, "warm vs pce: " + detail};
}

Outcome epsilon_sweep() {
    const auto inst = harness::generate_sweep_instances(5, 14, kMasterSeed);
    harness::SweepConfig cfg;
    cfg.inits = 5;
    cfg.epsilons = {0.05, 0.2, 0.35, 0.5};
    cfg.master_seed = kMasterSeed;
    const auto res = harness::run_epsilon_sweep(inst, cfg);
    double m02 = 0.0, m05 = 0.0;
    std::string detail = "medians";
    for (const auto& s : res.stats) {
        if (s.epsilon == 0.2) m02 = s.median;
        if (s.epsilon == 0.5) m05 = s.median;
        detail += fmt(" %.2f:", s.epsilon) + fmt("%.4f", s.median);
    }
    return {m02 >= m05, detail};
}

Outcome determinism(const std::string& cli) {
    const auto base = fs::temp_directory_path() / "wpce-acceptance-determinism";
    fs::remove_all(base);
    std::string first, second;
    if (!cli.empty()) {
        for (const char* run : {"a", "b"}) {
            const std::string cmd = "\"" + cli + "\" bench --instances 10 --cities 5 --inits 10 --depths 1,3,5"
                                    " --epsilon 0.2 --seed " + std::to_string(kMasterSeed) + " --out \"" +
                                    (base / run).string() + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) return {false, "bench command failed: " + cmd};
        }
        first = io::read_file(base / "a" / "records.csv");
        second = io::read_file(base / "b" / "records.csv");
    } else {
        const auto pipes = harness::generate_tsp_pipelines(10, 5, kMasterSeed);
        for (const char* run : {"a", "b"}) {
            const auto res = harness::run_benchmark(pipes, reduced_bench());
            report::emit_report(res.records, res.summary, base / run);
        }
        first = io::read_file(base / "a" / "records.csv");
        second = io::read_file(base / "b" / "records.csv");
    }
    fs::remove_all(base);
    const bool same = !first.empty() && first == second;
    return {same, std::string(cli.empty() ? "library" : "CLI") + " bench twice: " + std::to_string(first.size()) +
                      " bytes, " + (same ? "identical" : "different")};
}

Outcome optimizer_sanity() {
    int calls = 0;
    opt::OptimizerConfig cfg;
    cfg.max_evals = 200;
    const auto r = opt::minimize(
        [&](std::span<const double> x) {
            ++calls;
            return (x[0] - 2.0) * (x[0] - 2.0);
        },
        std::vector<double>{0.0}, cfg);
    const bool quad = std::abs(r.best_params[0] - 2.0) < 1e-3 && calls <= 200;

    const std::vector<opt::Objective> objectives{
        [](std::span<const double> x) { return (x[0] - 2.0) * (x[0] - 2.0); },
        [](std::span<const double> x) { return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2); },
        [](std::span<const double> x) {
            double acc = 0.0;
            for (double v : x) acc += std::cos(3.0 * v) + 0.1 * v * v;
            return acc;
        },
        [](std::span<const double>) { return 1.0; },
        [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x.back() - 1.0); },
    };
    bool within = true;
    int checked = 0;
    for (const auto& f : objectives) {
        for (int budget : {1, 2, 5, 10, 50, 200, 1000}) {
            for (std::size_t dim : {1u, 2u, 6u}) {
                int n = 0;
                opt::OptimizerConfig c;
                c.max_evals = budget;
                std::vector<double> start(dim, 0.3);
                const auto res = opt::minimize(
                    [&](std::span<const double> x) {
                        ++n;
                        return f(x);
                    },
                    start, c);
                within = within && n <= budget && res.evals_used == n;
                ++checked;
            }
        }
    }
    return {quad && within, fmt("|x - 2| = %.2e", std::abs(r.best_params[0] - 2.0)) + " in " + std::to_string(calls) +
                                " evals; budget respected on " + std::to_string(checked) + " runs" +
                                (within ? "" : " (violated)")};
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    run(1, "warm identity", 1.0, warm_identity);
    run(2, "expectation oracle", 10.0, expectation_oracle);
    run(3, "qubo-maxcut affine identity", 5.0, qubo_identity);
    run(4, "tsp qubo correctness", 60.0, tsp_qubo);
    run(5, "gw quality", 30.0, gw_quality);
    run(6, "bit-swap properties", 10.0, bit_swap);
    run(7, "depth benchmark direction", 1800.0, depth_benchmark);
    run(8, "epsilon sweep direction", 900.0, epsilon_sweep);
    run(9, "bench determinism", 1800.0, [&] { return determinism(cli); });
    run(10, "optimizer sanity", 1.0, optimizer_sanity);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
