#include "wpce/qubo.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "wpce/errors.hpp"
#include "wpce/pce.hpp"

namespace wpce::problems {

namespace {
constexpr int kMaxEnumerated = 24;
}

QuboProblem::QuboProblem(int size, double offset)
    : size_(size), offset_(offset), q_(static_cast<std::size_t>(size) * size, 0.0) {
    if (size < 0) throw InstanceError("QuboProblem: negative size");
}

void QuboProblem::add(int i, int j, double value) {
    if (i < 0 || j < 0 || i >= size_ || j >= size_) throw DimensionError("QuboProblem::add: index out of range");
    if (i > j) std::swap(i, j);
    q_[static_cast<std::size_t>(i) * size_ + j] += value;
}

double QuboProblem::coefficient(int i, int j) const {
    if (i > j) std::swap(i, j);
    return q_[static_cast<std::size_t>(i) * size_ + j];
}

double QuboProblem::evaluate(std::span<const int> x) const {
    if (x.size() != static_cast<std::size_t>(size_)) {
        throw DimensionError("QuboProblem::evaluate: expected " + std::to_string(size_) + " variables");
    }
    double acc = offset_;
    for (int i = 0; i < size_; ++i) {
        if (!x[i]) continue;
        const double* row = &q_[static_cast<std::size_t>(i) * size_];
        acc += row[i];
        for (int j = i + 1; j < size_; ++j) {
            if (x[j]) acc += row[j];
        }
    }
    return acc;
}

MaxCutGraph qubo_to_maxcut(const QuboProblem& qubo) {
    const int v = qubo.size();
    QuboLink link;
    link.variables = v;
    link.aux_node = v;
    link.qubo_offset = qubo.offset();

    std::vector<Edge> edges;
    std::vector<double> aux_weight(v, 0.0);
    double constant = 0.0;
    double weight_sum = 0.0;
    for (int i = 0; i < v; ++i) {
        const double lin = qubo.coefficient(i, i);
        constant += 0.5 * lin;
        aux_weight[i] -= 0.5 * lin;
    }
    for (int i = 0; i < v; ++i) {
        for (int j = i + 1; j < v; ++j) {
            const double q = qubo.coefficient(i, j);
            if (q == 0.0) continue;
            const double quarter = 0.25 * q;
            constant += quarter;
            aux_weight[i] -= quarter;
            aux_weight[j] -= quarter;
            edges.push_back({i, j, quarter});
            weight_sum += quarter;
        }
    }
    for (int i = 0; i < v; ++i) {
        if (aux_weight[i] == 0.0) continue;
        edges.push_back({i, v, aux_weight[i]});
        weight_sum += aux_weight[i];
    }
    link.expansion_constant = constant;
    link.weight_sum = weight_sum;
    return MaxCutGraph(v + 1, std::move(edges), link);
}

std::vector<int> decode_cut(std::span<const int> spins, const MaxCutGraph& graph) {
    const auto& link = graph.qubo_link();
    if (!link) throw ParameterError("decode_cut: graph was not reduced from a QUBO");
    if (spins.size() != static_cast<std::size_t>(graph.nodes())) {
        throw DimensionError("decode_cut: spin count differs from node count");
    }
    std::vector<int> x(link->variables);
    const int aux = spins[link->aux_node];
    for (int i = 0; i < link->variables; ++i) x[i] = spins[i] != aux ? 1 : 0;
    return x;
}

QuboOptimum brute_force_qubo(const QuboProblem& qubo) {
    const int v = qubo.size();
    if (v > kMaxEnumerated) {
        throw RefusalError("brute_force_qubo: " + std::to_string(v) + " variables exceed the limit of " +
                           std::to_string(kMaxEnumerated));
    }
    QuboOptimum best;
    best.x.assign(v, 0);
    best.value = qubo.evaluate(best.x);
    std::vector<int> x(v, 0);
    double value = best.value;
    std::uint64_t best_index = 0;
    // Gray-code walk: step g flips variable ctz(g).
    const std::uint64_t total = std::uint64_t{1} << v;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int k = std::countr_zero(g);
        double field = qubo.coefficient(k, k);
        for (int j = 0; j < v; ++j) {
            if (j != k && x[j]) field += qubo.coefficient(k, j);
        }
        value += x[k] ? -field : field;
        x[k] ^= 1;
        if (value < best.value) {
            best.value = value;
            best_index = g;
        }
    }
    const std::uint64_t gray = best_index ^ (best_index >> 1);
    for (int k = 0; k < v; ++k) best.x[k] = static_cast<int>((gray >> k) & 1);
    best.value = qubo.evaluate(best.x);
    return best;
}

MaxCutOptimum brute_force_maxcut(const MaxCutGraph& graph) {
    const int n = graph.nodes();
    if (n > kMaxEnumerated) {
        throw RefusalError("brute_force_maxcut: " + std::to_string(n) + " nodes exceed the limit of " +
                           std::to_string(kMaxEnumerated));
    }
    std::vector<int> spins(n, 1);
    double cut = 0.0;
    double best_cut = 0.0;
    std::uint64_t best_index = 0;
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t g = 1; g < total; ++g) {
        const int node = std::countr_zero(g) + 1;
        double gain = 0.0;
        for (const auto& nb : graph.neighbors(node)) gain += nb.weight * spins[node] * spins[nb.node];
        cut += gain;
        spins[node] = -spins[node];
        if (cut > best_cut) {
            best_cut = cut;
            best_index = g;
        }
    }
    MaxCutOptimum out;
    out.spins.assign(n, 1);
    const std::uint64_t gray = best_index ^ (best_index >> 1);
    for (int k = 0; k + 1 < n; ++k) {
        if ((gray >> k) & 1) out.spins[k + 1] = -1;
    }
    out.cut = pce::cut_value(out.spins, graph);
    return out;
}

} // namespace wpce::problems
