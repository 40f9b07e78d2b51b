#pragma once

#include "stackelkep/limits.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stackelkep {

using NodeId = std::uint32_t;

enum class Owner { Leader, Follower };

struct Node {
    Owner owner = Owner::Follower;
    std::optional<std::string> label;

    bool operator==(const Node&) const = default;
};

struct Arc {
    NodeId from = 0;
    NodeId to = 0;

    auto operator<=>(const Arc&) const = default;
};

/// Sorted, duplicate-free set of node ids. Ordering is lexicographic on the
/// sorted id sequence, which is the tie-break order used for strategies.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> ids);
    explicit NodeSet(std::vector<NodeId> ids);

    static NodeSet range(std::size_t n);

    bool contains(NodeId v) const;
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    const std::vector<NodeId>& ids() const { return ids_; }

    NodeSet without(const NodeSet& other) const;
    NodeSet with(NodeId v) const;
    NodeSet intersect(const NodeSet& other) const;
    bool is_subset_of(const NodeSet& other) const;

    bool operator==(const NodeSet&) const = default;
    auto operator<=>(const NodeSet& other) const { return ids_ <=> other.ids_; }

private:
    std::vector<NodeId> ids_;
};

/// Directed compatibility graph with node ownership, a cycle-length cap K
/// and an optional decision threshold k. Immutable once constructed; the
/// constructor enforces every structural invariant.
class KepInstance {
public:
    KepInstance() = default;
    KepInstance(std::vector<Node> nodes, std::vector<Arc> arcs, int max_cycle_length,
                std::optional<std::int64_t> threshold = std::nullopt);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(NodeId v) const { return nodes_.at(v); }
    Owner owner(NodeId v) const { return nodes_.at(v).owner; }

    /// Arcs sorted lexicographically.
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::span<const NodeId> successors(NodeId v) const;
    bool has_arc(NodeId from, NodeId to) const;

    int max_cycle_length() const { return max_cycle_length_; }
    std::optional<std::int64_t> threshold() const { return threshold_; }
    KepInstance with_threshold(std::optional<std::int64_t> threshold) const;

    NodeSet all_nodes() const { return NodeSet::range(size()); }
    NodeSet leaders() const;
    NodeSet followers() const;

    std::optional<NodeId> find_label(std::string_view label) const;
    /// Node id for a label that must exist.
    NodeId id_of(std::string_view label) const;
    /// Label when present, otherwise the decimal id.
    std::string display_name(NodeId v) const;

    void check_subset(const NodeSet& w, std::string_view what) const;

    bool operator==(const KepInstance& other) const;

private:
    std::vector<Node> nodes_;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> succ_offsets_{0};
    std::vector<NodeId> succ_;
    int max_cycle_length_ = 2;
    std::optional<std::int64_t> threshold_;
};

/// Directed cycle in canonical rotation: the minimum id comes first.
struct Cycle {
    std::vector<NodeId> nodes;

    std::size_t length() const { return nodes.size(); }
    auto operator<=>(const Cycle&) const = default;
};

Cycle canonical_cycle(std::vector<NodeId> nodes);

struct CyclePacking {
    std::vector<Cycle> cycles;

    std::size_t size() const;
    NodeSet covered() const;
    void normalize();

    bool operator==(const CyclePacking&) const = default;
};

/// Throws a validation error naming the first violated cycle invariant.
void validate_cycle(const KepInstance& inst, const Cycle& cycle);
/// Checks cycle validity, node-disjointness and (when given) membership in W.
void validate_packing(const KepInstance& inst, const CyclePacking& packing,
                      const NodeSet* within = nullptr);

/// G[W]. Nodes of W are renumbered 0..|W|-1 in increasing id order;
/// owners, labels, K and k carry over.
KepInstance induced_subgraph(const KepInstance& inst, const NodeSet& w);

/// Every directed cycle of length 2..K inside G[W], once each, in canonical
/// rotation, sorted lexicographically.
std::vector<Cycle> enumerate_cycles(const KepInstance& inst, const NodeSet& w,
                                    const Limits& limits = {});

} // namespace stackelkep
