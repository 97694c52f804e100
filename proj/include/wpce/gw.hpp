#ifndef WPCE_GW_HPP
#define WPCE_GW_HPP

#include <cstdint>
#include <vector>

#include "wpce/maxcut_graph.hpp"
#include "wpce/pce.hpp"

namespace wpce::gw {

using problems::MaxCutGraph;

/// Unit vectors stored row-major: node i owns entries [i*rank, (i+1)*rank).
struct SdpSolution {
    int rank = 0;
    std::vector<double> vectors;
    /// sum_ij W_ij (1 - v_i.v_j) / 2 at the returned vectors.
    double value = 0.0;
    bool converged = false;
    int iterations = 0;

    std::span<const double> vector(int node) const {
        return std::span<const double>(vectors).subspan(static_cast<std::size_t>(node) * rank, rank);
    }
};

struct SdpOptions {
    int max_iterations = 2000;
    double gradient_tolerance = 1e-7;
};

/// ceil(sqrt(2 * nodes)) + 1.
int default_rank(int nodes);

double relaxation_value(const MaxCutGraph& graph, const SdpSolution& sdp);

/// Low-rank relaxation of MaxCut: projected gradient ascent on the sphere
/// product with backtracking steps, best of `restarts` random starts.
SdpSolution solve_sdp(const MaxCutGraph& graph, int rank, int restarts, std::uint64_t seed,
                      const SdpOptions& options = {});

struct GwSolution {
    SdpSolution sdp;
    /// Side of each node, in {0, 1}.
    std::vector<int> best_bits;
    double best_cut = 0.0;
    int roundings = 0;
};

/// Random-hyperplane rounding; draw k uses its own substream of `seed`, so a
/// run with count c sees the same first c hyperplanes as any longer run.
GwSolution randomized_rounding(const SdpSolution& sdp, const MaxCutGraph& graph, int count,
                               std::uint64_t seed);

/// solve_sdp (default rank, 5 restarts) followed by best-of-`roundings`
/// rounding. When the graph has an auxiliary node, bits are flipped so that
/// node sits on side 0.
GwSolution solve(const MaxCutGraph& graph, int roundings, std::uint64_t seed);

/// solve() followed by regularize_gw_bits and the per-edge multipliers.
pce::GwBias gw_bias_for(const MaxCutGraph& graph, double epsilon, int roundings,
                        std::uint64_t seed);

} // namespace wpce::gw

#endif // WPCE_GW_HPP
