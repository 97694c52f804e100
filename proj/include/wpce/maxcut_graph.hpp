#ifndef WPCE_MAXCUT_GRAPH_HPP
#define WPCE_MAXCUT_GRAPH_HPP

#include <optional>
#include <span>
#include <vector>

namespace wpce::problems {

/// Undirected weighted edge, stored with u < v. Weights may be negative.
struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

/// Bookkeeping that ties a MaxCut graph back to the QUBO it was reduced from.
/// Nodes 0..variables-1 are the QUBO variables in order; `aux_node` is the
/// extra spin that absorbs the linear terms. For every spin assignment y,
///   qubo(x(y)) = objective_constant() - 2 * cut(y).
struct QuboLink {
    int variables = 0;
    int aux_node = 0;
    double qubo_offset = 0.0;
    /// Constant produced by substituting x = (1 - y0*yi)/2.
    double expansion_constant = 0.0;
    /// Sum of all reduced edge weights (including dropped zeros, which add 0).
    double weight_sum = 0.0;

    double objective_constant() const { return qubo_offset + expansion_constant + weight_sum; }
};

class MaxCutGraph {
public:
    struct Neighbor {
        int node;
        double weight;
    };

    MaxCutGraph() = default;

    /// Throws InstanceError on self-loops, repeated pairs, or out-of-range nodes.
    MaxCutGraph(int nodes, std::vector<Edge> edges, std::optional<QuboLink> link = std::nullopt);

    int nodes() const { return nodes_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Neighbor> neighbors(int node) const;

    const std::optional<QuboLink>& qubo_link() const { return link_; }
    std::optional<int> aux_node() const;

    double total_weight() const;
    double mean_abs_weight() const;

private:
    int nodes_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> adj_begin_;
    std::vector<Neighbor> adj_;
    std::optional<QuboLink> link_;
};

} // namespace wpce::problems

#endif // WPCE_MAXCUT_GRAPH_HPP
