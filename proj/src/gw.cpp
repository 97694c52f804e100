#include "wpce/gw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpce/errors.hpp"
#include "wpce/rng.hpp"

namespace wpce::gw {

namespace {

constexpr int kDefaultRestarts = 5;

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void normalize_rows(std::vector<double>& v, int rank) {
    for (std::size_t base = 0; base < v.size(); base += rank) {
        double norm = 0.0;
        for (int k = 0; k < rank; ++k) norm += v[base + k] * v[base + k];
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            v[base] = 1.0;
            continue;
        }
        for (int k = 0; k < rank; ++k) v[base + k] /= norm;
    }
}

double objective(const MaxCutGraph& graph, const std::vector<double>& v, int rank) {
    double acc = 0.0;
    for (const auto& e : graph.edges()) {
        const auto vu = std::span<const double>(v).subspan(static_cast<std::size_t>(e.u) * rank, rank);
        const auto vv = std::span<const double>(v).subspan(static_cast<std::size_t>(e.v) * rank, rank);
        acc += e.weight * (1.0 - dot(vu, vv)) * 0.5;
    }
    return acc;
}

// Riemannian gradient of the relaxation objective, i.e. the Euclidean
// gradient with its radial component removed. Returns its squared norm.
double tangent_gradient(const MaxCutGraph& graph, const std::vector<double>& v, int rank,
                        std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& e : graph.edges()) {
        const std::size_t bu = static_cast<std::size_t>(e.u) * rank;
        const std::size_t bv = static_cast<std::size_t>(e.v) * rank;
        for (int k = 0; k < rank; ++k) {
            grad[bu + k] -= 0.5 * e.weight * v[bv + k];
            grad[bv + k] -= 0.5 * e.weight * v[bu + k];
        }
    }
    double sq = 0.0;
    for (std::size_t base = 0; base < v.size(); base += rank) {
        double radial = 0.0;
        for (int k = 0; k < rank; ++k) radial += grad[base + k] * v[base + k];
        for (int k = 0; k < rank; ++k) {
            grad[base + k] -= radial * v[base + k];
            sq += grad[base + k] * grad[base + k];
        }
    }
    return sq;
}

SdpSolution ascend(const MaxCutGraph& graph, int rank, std::uint64_t seed, const SdpOptions& opt) {
    const std::size_t size = static_cast<std::size_t>(graph.nodes()) * rank;
    SdpSolution sol;
    sol.rank = rank;
    sol.vectors.resize(size);
    Rng rng(seed);
    for (double& x : sol.vectors) x = rng.normal();
    normalize_rows(sol.vectors, rank);

    std::vector<double> grad(size), trial(size), prev_x, prev_g;
    double value = objective(graph, sol.vectors, rank);
    double step = 1.0;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        const double gsq = tangent_gradient(graph, sol.vectors, rank, grad);
        if (std::sqrt(gsq) < opt.gradient_tolerance) {
            sol.converged = true;
            break;
        }
        // Barzilai-Borwein trial step, then Armijo backtracking along the
        // retraction V -> normalize(V + t G).
        if (!prev_x.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < size; ++i) {
                const double si = sol.vectors[i] - prev_x[i];
                ss += si * si;
                sy += si * (grad[i] - prev_g[i]);
            }
            step = sy < 0.0 ? ss / -sy : step * 2.0;
        }
        step = std::clamp(step, 1e-10, 1e6);
        double trial_value = value;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < size; ++i) trial[i] = sol.vectors[i] + step * grad[i];
            normalize_rows(trial, rank);
            trial_value = objective(graph, trial, rank);
            if (trial_value >= value + 1e-4 * step * gsq) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // stalled above tolerance; reported as not converged
        prev_x = sol.vectors;
        prev_g = grad;
        sol.vectors.swap(trial);
        value = trial_value;
    }
    sol.iterations = it;
    sol.value = value;
    return sol;
}

} // namespace

int default_rank(int nodes) {
    return static_cast<int>(std::ceil(std::sqrt(2.0 * nodes))) + 1;
}

double relaxation_value(const MaxCutGraph& graph, const SdpSolution& sdp) {
    return objective(graph, sdp.vectors, sdp.rank);
}

SdpSolution solve_sdp(const MaxCutGraph& graph, int rank, int restarts, std::uint64_t seed,
                      const SdpOptions& options) {
    if (rank < 2) throw ParameterError("solve_sdp: rank must be >= 2");
    if (restarts < 1) throw ParameterError("solve_sdp: restarts must be >= 1");
    SdpSolution best;
    for (int r = 0; r < restarts; ++r) {
        SdpSolution sol = ascend(graph, rank, derive_seed({seed, tag("sdp-restart"),
                                                           static_cast<std::uint64_t>(r)}),
                                 options);
        if (r == 0 || sol.value > best.value) best = std::move(sol);
    }
    return best;
}

GwSolution randomized_rounding(const SdpSolution& sdp, const MaxCutGraph& graph, int count,
                               std::uint64_t seed) {
    if (count < 1) throw ParameterError("randomized_rounding: count must be >= 1");
    const int n = graph.nodes();
    if (sdp.vectors.size() != static_cast<std::size_t>(n) * sdp.rank) {
        throw DimensionError("randomized_rounding: vectors do not match the graph");
    }
    GwSolution out;
    out.sdp = sdp;
    out.roundings = count;

    std::vector<double> normal(sdp.rank);
    std::vector<int> spins(n);
    for (int k = 0; k < count; ++k) {
        Rng rng(derive_seed({seed, tag("hyperplane"), static_cast<std::uint64_t>(k)}));
        for (double& x : normal) x = rng.normal();
        for (int i = 0; i < n; ++i) spins[i] = dot(sdp.vector(i), normal) > 0.0 ? -1 : 1;
        const double cut = pce::cut_value(spins, graph);
        if (k == 0 || cut > out.best_cut) {
            out.best_cut = cut;
            out.best_bits.resize(n);
            for (int i = 0; i < n; ++i) out.best_bits[i] = spins[i] < 0 ? 1 : 0;
        }
    }
    return out;
}

GwSolution solve(const MaxCutGraph& graph, int roundings, std::uint64_t seed) {
    SdpSolution sdp = solve_sdp(graph, default_rank(graph.nodes()), kDefaultRestarts,
                                derive_seed({seed, tag("sdp")}));
    GwSolution sol = randomized_rounding(sdp, graph, roundings, derive_seed({seed, tag("rounding")}));
    if (const auto aux = graph.aux_node(); aux && sol.best_bits[*aux] == 1) {
        for (int& b : sol.best_bits) b = 1 - b;
    }
    return sol;
}

pce::GwBias gw_bias_for(const MaxCutGraph& graph, double epsilon, int roundings,
                        std::uint64_t seed) {
    const GwSolution sol = solve(graph, roundings, seed);
    const std::vector<double> raw(sol.best_bits.begin(), sol.best_bits.end());
    return pce::make_gw_bias(graph, raw, epsilon);
}

} // namespace wpce::gw
