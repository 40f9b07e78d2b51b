#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/packing.hpp"

#include <cstdint>
#include <vector>

namespace stackelkep {

struct Edge {
    NodeId u = 0; // u < v
    NodeId v = 0;
    std::int64_t weight = 1;

    auto operator<=>(const Edge&) const = default;
};

/// Undirected graph on nodes 0..n-1 with integer edge weights. Edges are
/// kept sorted by endpoint pair with u < v.
class MatchingGraph {
public:
    MatchingGraph() = default;
    MatchingGraph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const { return node_count_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Same node numbering; drops every edge with an endpoint outside W.
    MatchingGraph restricted_to(const NodeSet& w) const;
    MatchingGraph with_weights(std::vector<std::int64_t> weights) const;

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
};

using Matching = std::vector<Edge>;

/// Edge {u,v} for every pair of opposite arcs; unit weights.
MatchingGraph undirected_projection(const KepInstance& inst);

/// Exact maximum-weight matching (primal-dual blossom algorithm). Among all
/// optimal matchings returns the one whose sorted edge list is
/// lexicographically smallest.
Matching max_weight_matching(const MatchingGraph& g);

/// Optimal total weight only; skips the tie-break pass.
std::int64_t max_matching_weight(const MatchingGraph& g);

/// Maximum-cardinality matching covering the fewest nodes of U, reported as
/// a packing of 2-cycles. Edge weights of g are ignored.
PackingResult k2_adversarial_matching(const MatchingGraph& g, const NodeSet& u);

/// (cardinality, matched U-nodes) of k2_adversarial_matching without building
/// the tie-broken witness.
struct MatchingValue {
    std::size_t edges = 0;
    std::size_t u_covered = 0;
};
MatchingValue k2_adversarial_value(const MatchingGraph& g, const NodeSet& u);

} // namespace stackelkep
