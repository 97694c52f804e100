#ifndef WPCE_QUBO_HPP
#define WPCE_QUBO_HPP

#include <span>
#include <vector>

#include "wpce/maxcut_graph.hpp"

namespace wpce::problems {

/// f(x) = offset + sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j over x in {0,1}^v.
/// Only the upper triangle (i <= j) is stored.
class QuboProblem {
public:
    explicit QuboProblem(int size, double offset = 0.0);

    int size() const { return size_; }
    double offset() const { return offset_; }
    void add_offset(double value) { offset_ += value; }

    /// Accumulates into Q_min(i,j),max(i,j); i == j addresses the linear term.
    void add(int i, int j, double value);
    double coefficient(int i, int j) const;

    double evaluate(std::span<const int> x) const;

private:
    int size_;
    double offset_;
    std::vector<double> q_;
};

/// Substitutes x_i = (1 - y_aux * y_i) / 2 with the auxiliary spin as node v.
/// Edges J_ij = Q_ij / 4 and J_aux,i = -(Q_ii / 2 + sum_{j != i} Q_ij / 4);
/// exactly-zero edges are dropped. The returned graph carries a QuboLink with
/// qubo(x(y)) = link.objective_constant() - 2 * cut(y).
MaxCutGraph qubo_to_maxcut(const QuboProblem& qubo);

/// x_i = 1 iff node i and the auxiliary node are on opposite sides.
std::vector<int> decode_cut(std::span<const int> spins, const MaxCutGraph& graph);

struct QuboOptimum {
    std::vector<int> x;
    double value = 0.0;
};

/// Exhaustive minimization; refuses more than 24 variables.
QuboOptimum brute_force_qubo(const QuboProblem& qubo);

struct MaxCutOptimum {
    std::vector<int> spins;
    double cut = 0.0;
};

/// Exhaustive maximization over 2^(nodes-1) assignments with node 0 fixed to
/// +1; refuses more than 24 nodes.
MaxCutOptimum brute_force_maxcut(const MaxCutGraph& graph);

} // namespace wpce::problems

#endif // WPCE_QUBO_HPP
