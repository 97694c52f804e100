#include "wpce/maxcut_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "wpce/errors.hpp"

namespace wpce::problems {

MaxCutGraph::MaxCutGraph(int nodes, std::vector<Edge> edges, std::optional<QuboLink> link)
    : nodes_(nodes), edges_(std::move(edges)), link_(std::move(link)) {
    if (nodes_ < 1) throw InstanceError("MaxCutGraph: node count must be >= 1");
    std::set<std::pair<int, int>> seen;
    for (Edge& e : edges_) {
        if (e.u == e.v) throw InstanceError("MaxCutGraph: self-loop at node " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= nodes_) {
            throw InstanceError("MaxCutGraph: edge (" + std::to_string(e.u) + ", " +
                                std::to_string(e.v) + ") out of range");
        }
        if (!std::isfinite(e.weight)) throw InstanceError("MaxCutGraph: non-finite edge weight");
        if (!seen.emplace(e.u, e.v).second) {
            throw InstanceError("MaxCutGraph: repeated edge (" + std::to_string(e.u) + ", " +
                                std::to_string(e.v) + ")");
        }
    }
    if (link_ && (link_->aux_node < 0 || link_->aux_node >= nodes_)) {
        throw InstanceError("MaxCutGraph: auxiliary node out of range");
    }

    std::vector<std::size_t> degree(nodes_, 0);
    for (const Edge& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    adj_begin_.assign(nodes_ + 1, 0);
    for (int i = 0; i < nodes_; ++i) adj_begin_[i + 1] = adj_begin_[i] + degree[i];
    adj_.resize(adj_begin_.back());
    std::vector<std::size_t> fill(adj_begin_.begin(), adj_begin_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[fill[e.u]++] = {e.v, e.weight};
        adj_[fill[e.v]++] = {e.u, e.weight};
    }
}

std::span<const MaxCutGraph::Neighbor> MaxCutGraph::neighbors(int node) const {
    return std::span<const Neighbor>(adj_).subspan(adj_begin_[node],
                                                   adj_begin_[node + 1] - adj_begin_[node]);
}

std::optional<int> MaxCutGraph::aux_node() const {
    if (link_) return link_->aux_node;
    return std::nullopt;
}

double MaxCutGraph::total_weight() const {
    double acc = 0.0;
    for (const Edge& e : edges_) acc += e.weight;
    return acc;
}

double MaxCutGraph::mean_abs_weight() const {
    if (edges_.empty()) return 0.0;
    double acc = 0.0;
    for (const Edge& e : edges_) acc += std::abs(e.weight);
    return acc / static_cast<double>(edges_.size());
}

} // namespace wpce::problems
