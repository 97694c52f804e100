#ifndef WPCE_PCE_HPP
#define WPCE_PCE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "wpce/maxcut_graph.hpp"
#include "wpce/pauli_sim.hpp"

namespace wpce::pce {

using problems::MaxCutGraph;
using sim::PauliString;

/// Spins in {-1, +1}, one per graph node.
using SpinVector = std::vector<int>;

std::uint64_t binomial(int n, int k);

/// Ordered list of k-body Pauli strings; string i carries binary variable i
/// through the sign of its expectation value.
class PceEncoding {
public:
    PceEncoding(int qubits, int order, std::vector<PauliString> strings);

    int qubits() const { return qubits_; }
    int order() const { return order_; }
    std::size_t size() const { return strings_.size(); }
    std::span<const PauliString> strings() const { return strings_; }

    /// 3 * C(n, k): one X-, Y- and Z-type string per qubit combination.
    static std::uint64_t capacity(int qubits, int order) { return 3 * binomial(qubits, order); }

private:
    int qubits_;
    int order_;
    std::vector<PauliString> strings_;
};

/// Qubit combinations in lexicographic order, each emitting its Z, X, Y
/// strings in that order, truncated to the first m. Throws CapacityError when
/// m exceeds 3*C(n,k).
PceEncoding generate_encoding(int qubits, int order, int m);

/// Smallest qubit count whose order-k capacity holds m variables.
int qubits_for(int m, int order);

struct LossConfig {
    /// tanh sharpness.
    double alpha = 1.0;
    /// Weight of the lambda * sum(c_i^2) correlator penalty.
    double reg_weight = 0.0;
    /// GW bias strength; 0.5 removes the bias.
    double epsilon = 0.2;

    void validate() const;
};

/// alpha = 1 and lambda = 0.1 * mean |W_ij| of the graph.
LossConfig default_loss_config(const MaxCutGraph& graph, double epsilon = 0.2);

/// Regularized GW bits together with the per-edge factor 1 + |c_i - c_j|,
/// aligned with graph.edges().
struct GwBias {
    std::vector<double> regularized_bits;
    std::vector<double> edge_multipliers;
};

GwBias make_gw_bias(const MaxCutGraph& graph, std::span<const double> raw_bits, double epsilon);

/// Sign of each correlator; 0 maps to +1.
SpinVector extract_bits(std::span<const double> correlators);

/// Clamps c < eps to eps, c > 1 - eps to 1 - eps and floors the rest.
std::vector<double> regularize_gw_bits(std::span<const double> raw_bits, double epsilon);

double pce_loss(std::span<const double> correlators, const MaxCutGraph& graph,
                const LossConfig& cfg);

double warm_pce_loss(std::span<const double> correlators, const MaxCutGraph& graph,
                     const GwBias& bias, const LossConfig& cfg);

/// Sum of weights of edges whose endpoints carry different spins.
double cut_value(std::span<const int> spins, const MaxCutGraph& graph);

/// Best-improvement single-flip hill climbing on the cut value. Ties go to the
/// lowest node index; stops at a 1-flip local optimum.
SpinVector bit_swap_search(std::span<const int> spins, const MaxCutGraph& graph);

} // namespace wpce::pce

#endif // WPCE_PCE_HPP
