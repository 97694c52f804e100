#include "wpce/pce.hpp"

#include <cmath>
#include <set>
#include <string>

#include "wpce/errors.hpp"

namespace wpce::pce {

namespace {

using sim::Pauli;

void require_size(std::size_t got, int nodes, const char* what) {
    if (got != static_cast<std::size_t>(nodes)) {
        throw DimensionError(std::string(what) + ": got " + std::to_string(got) +
                             " entries for a graph with " + std::to_string(nodes) + " nodes");
    }
}

// Improvements below this are treated as zero so rounding noise cannot cycle.
constexpr double kFlipGainTolerance = 1e-12;

} // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

PceEncoding::PceEncoding(int qubits, int order, std::vector<PauliString> strings)
    : qubits_(qubits), order_(order), strings_(std::move(strings)) {
    if (order_ < 1 || order_ > qubits_) throw ParameterError("PceEncoding: need 1 <= k <= n");
    if (strings_.size() > capacity(qubits_, order_)) {
        throw CapacityError("PceEncoding: more strings than 3*C(n,k)");
    }
    std::set<std::string> seen;
    for (const PauliString& s : strings_) {
        if (s.size() != static_cast<std::size_t>(qubits_)) {
            throw DimensionError("PceEncoding: string length differs from qubit count");
        }
        if (s.weight() != order_) throw ParameterError("PceEncoding: string weight differs from k");
        Pauli letter = Pauli::I;
        for (Pauli p : s.letters()) {
            if (p == Pauli::I) continue;
            if (letter != Pauli::I && p != letter) {
                throw ParameterError("PceEncoding: mixed non-identity letters in " + s.str());
            }
            letter = p;
        }
        if (!seen.insert(s.str()).second) throw ParameterError("PceEncoding: duplicate " + s.str());
    }
}

PceEncoding generate_encoding(int qubits, int order, int m) {
    if (qubits < 1 || order < 1 || order > qubits) {
        throw ParameterError("generate_encoding: need 1 <= k <= n");
    }
    if (m < 0) throw ParameterError("generate_encoding: negative variable count");
    const std::uint64_t cap = PceEncoding::capacity(qubits, order);
    if (static_cast<std::uint64_t>(m) > cap) {
        throw CapacityError("generate_encoding: " + std::to_string(m) + " variables exceed capacity " +
                            std::to_string(cap) + " of n=" + std::to_string(qubits) +
                            ", k=" + std::to_string(order));
    }

    std::vector<PauliString> strings;
    strings.reserve(m);
    std::vector<int> combo(order);
    for (int i = 0; i < order; ++i) combo[i] = i;
    while (static_cast<int>(strings.size()) < m) {
        for (Pauli letter : {Pauli::Z, Pauli::X, Pauli::Y}) {
            if (static_cast<int>(strings.size()) == m) break;
            std::vector<Pauli> letters(qubits, Pauli::I);
            for (int q : combo) letters[q] = letter;
            strings.emplace_back(std::move(letters));
        }
        // Advance to the next combination in lexicographic order.
        int i = order - 1;
        while (i >= 0 && combo[i] == qubits - order + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < order; ++j) combo[j] = combo[j - 1] + 1;
    }
    return PceEncoding(qubits, order, std::move(strings));
}

int qubits_for(int m, int order) {
    if (order < 1 || m < 0) throw ParameterError("qubits_for: invalid arguments");
    int n = order;
    while (PceEncoding::capacity(n, order) < static_cast<std::uint64_t>(m)) ++n;
    return n;
}

void LossConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("LossConfig: alpha must be > 0");
    if (!(reg_weight >= 0.0) || !std::isfinite(reg_weight)) {
        throw ParameterError("LossConfig: reg_weight must be >= 0");
    }
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ParameterError("LossConfig: epsilon must lie in (0, 0.5]");
}

LossConfig default_loss_config(const MaxCutGraph& graph, double epsilon) {
    LossConfig cfg;
    cfg.alpha = 1.0;
    cfg.reg_weight = 0.1 * graph.mean_abs_weight();
    cfg.epsilon = epsilon;
    cfg.validate();
    return cfg;
}

std::vector<double> regularize_gw_bits(std::span<const double> raw_bits, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) {
        throw ParameterError("regularize_gw_bits: epsilon must lie in (0, 0.5], got " +
                             std::to_string(epsilon));
    }
    std::vector<double> out;
    out.reserve(raw_bits.size());
    for (double c : raw_bits) {
        if (!(c >= 0.0 && c <= 1.0)) throw ParameterError("regularize_gw_bits: bit outside [0, 1]");
        if (c < epsilon) {
            out.push_back(epsilon);
        } else if (c > 1.0 - epsilon) {
            out.push_back(1.0 - epsilon);
        } else {
            out.push_back(std::floor(c));
        }
    }
    return out;
}

GwBias make_gw_bias(const MaxCutGraph& graph, std::span<const double> raw_bits, double epsilon) {
    require_size(raw_bits.size(), graph.nodes(), "make_gw_bias");
    GwBias bias;
    bias.regularized_bits = regularize_gw_bits(raw_bits, epsilon);
    bias.edge_multipliers.reserve(graph.edges().size());
    for (const auto& e : graph.edges()) {
        bias.edge_multipliers.push_back(
            1.0 + std::abs(bias.regularized_bits[e.u] - bias.regularized_bits[e.v]));
    }
    return bias;
}

SpinVector extract_bits(std::span<const double> correlators) {
    SpinVector spins;
    spins.reserve(correlators.size());
    for (double c : correlators) spins.push_back(c < 0.0 ? -1 : 1);
    return spins;
}

double pce_loss(std::span<const double> correlators, const MaxCutGraph& graph,
                const LossConfig& cfg) {
    require_size(correlators.size(), graph.nodes(), "pce_loss");
    std::vector<double> s(correlators.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::tanh(cfg.alpha * correlators[i]);

    double edge_term = 0.0;
    for (const auto& e : graph.edges()) edge_term += e.weight * s[e.u] * s[e.v];
    double penalty = 0.0;
    for (double c : correlators) penalty += c * c;
    return edge_term + cfg.reg_weight * penalty;
}

double warm_pce_loss(std::span<const double> correlators, const MaxCutGraph& graph,
                     const GwBias& bias, const LossConfig& cfg) {
    require_size(correlators.size(), graph.nodes(), "warm_pce_loss");
    if (bias.edge_multipliers.size() != graph.edges().size()) {
        throw DimensionError("warm_pce_loss: bias was built for a different graph");
    }
    std::vector<double> s(correlators.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::tanh(cfg.alpha * correlators[i]);

    double edge_term = 0.0;
    const auto edges = graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        edge_term += (e.weight * bias.edge_multipliers[k]) * s[e.u] * s[e.v];
    }
    double penalty = 0.0;
    for (double c : correlators) penalty += c * c;
    return edge_term + cfg.reg_weight * penalty;
}

double cut_value(std::span<const int> spins, const MaxCutGraph& graph) {
    require_size(spins.size(), graph.nodes(), "cut_value");
    double cut = 0.0;
    for (const auto& e : graph.edges()) {
        if (spins[e.u] != spins[e.v]) cut += e.weight;
    }
    return cut;
}

SpinVector bit_swap_search(std::span<const int> spins, const MaxCutGraph& graph) {
    require_size(spins.size(), graph.nodes(), "bit_swap_search");
    SpinVector b(spins.begin(), spins.end());
    const int n = graph.nodes();

    // Flipping node i changes the cut by sum_j W_ij * b_i * b_j.
    auto gain = [&](int i) {
        double g = 0.0;
        for (const auto& nb : graph.neighbors(i)) g += nb.weight * b[i] * b[nb.node];
        return g;
    };
    std::vector<double> gains(n);
    for (int i = 0; i < n; ++i) gains[i] = gain(i);

    while (true) {
        int best = -1;
        double best_gain = kFlipGainTolerance;
        for (int i = 0; i < n; ++i) {
            if (gains[i] > best_gain) {
                best = i;
                best_gain = gains[i];
            }
        }
        if (best < 0) break;
        b[best] = -b[best];
        gains[best] = gain(best);
        for (const auto& nb : graph.neighbors(best)) gains[nb.node] = gain(nb.node);
    }
    return b;
}

} // namespace wpce::pce
