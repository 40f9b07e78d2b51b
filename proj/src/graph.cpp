#include "stackelkep/graph.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace stackelkep {

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::range(std::size_t n) {
    NodeSet s;
    s.ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.ids_[i] = static_cast<NodeId>(i);
    return s;
}

bool NodeSet::contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

NodeSet NodeSet::without(const NodeSet& other) const {
    NodeSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
}

NodeSet NodeSet::with(NodeId v) const {
    NodeSet out = *this;
    auto it = std::lower_bound(out.ids_.begin(), out.ids_.end(), v);
    if (it == out.ids_.end() || *it != v)
        out.ids_.insert(it, v);
    return out;
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
    NodeSet out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

KepInstance::KepInstance(std::vector<Node> nodes, std::vector<Arc> arcs, int max_cycle_length,
                         std::optional<std::int64_t> threshold)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)), max_cycle_length_(max_cycle_length),
      threshold_(threshold) {
    if (max_cycle_length_ < 2)
        throw validation_error("K must be at least 2, got " + std::to_string(max_cycle_length_));
    if (threshold_ && *threshold_ < 0)
        throw validation_error("k must be non-negative, got " + std::to_string(*threshold_));

    std::set<std::string_view> labels;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& label = nodes_[i].label;
        if (label && !labels.insert(*label).second)
            throw validation_error("nodes[" + std::to_string(i) + "]: duplicate label '" + *label +
                                   "'");
    }

    const auto n = nodes_.size();
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const auto& a = arcs_[i];
        auto where = "arcs[" + std::to_string(i) + "] (" + std::to_string(a.from) + "," +
                     std::to_string(a.to) + ")";
        if (a.from >= n || a.to >= n)
            throw validation_error(where + ": endpoint out of range");
        if (a.from == a.to)
            throw validation_error(where + ": self-loop");
    }
    std::sort(arcs_.begin(), arcs_.end());
    auto dup = std::adjacent_find(arcs_.begin(), arcs_.end());
    if (dup != arcs_.end())
        throw validation_error("duplicate arc (" + std::to_string(dup->from) + "," +
                               std::to_string(dup->to) + ")");

    succ_offsets_.assign(n + 1, 0);
    for (const auto& a : arcs_)
        ++succ_offsets_[a.from + 1];
    for (std::size_t v = 0; v < n; ++v)
        succ_offsets_[v + 1] += succ_offsets_[v];
    succ_.reserve(arcs_.size());
    for (const auto& a : arcs_)
        succ_.push_back(a.to);
}

std::span<const NodeId> KepInstance::successors(NodeId v) const {
    return std::span<const NodeId>(succ_).subspan(succ_offsets_.at(v),
                                                  succ_offsets_[v + 1] - succ_offsets_[v]);
}

bool KepInstance::has_arc(NodeId from, NodeId to) const {
    if (from >= size())
        return false;
    auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

KepInstance KepInstance::with_threshold(std::optional<std::int64_t> threshold) const {
    return KepInstance(nodes_, arcs_, max_cycle_length_, threshold);
}

NodeSet KepInstance::leaders() const {
    std::vector<NodeId> ids;
    for (NodeId v = 0; v < size(); ++v)
        if (nodes_[v].owner == Owner::Leader)
            ids.push_back(v);
    return NodeSet(std::move(ids));
}

NodeSet KepInstance::followers() const { return all_nodes().without(leaders()); }

std::optional<NodeId> KepInstance::find_label(std::string_view label) const {
    for (NodeId v = 0; v < size(); ++v)
        if (nodes_[v].label && *nodes_[v].label == label)
            return v;
    return std::nullopt;
}

NodeId KepInstance::id_of(std::string_view label) const {
    auto v = find_label(label);
    if (!v)
        throw validation_error("no node labelled '" + std::string(label) + "'");
    return *v;
}

std::string KepInstance::display_name(NodeId v) const {
    const auto& label = node(v).label;
    return label ? *label : std::to_string(v);
}

void KepInstance::check_subset(const NodeSet& w, std::string_view what) const {
    if (!w.empty() && w.ids().back() >= size())
        throw validation_error(std::string(what) + ": unknown node id " +
                               std::to_string(w.ids().back()));
}

bool KepInstance::operator==(const KepInstance& other) const {
    return nodes_ == other.nodes_ && arcs_ == other.arcs_ &&
           max_cycle_length_ == other.max_cycle_length_ && threshold_ == other.threshold_;
}

Cycle canonical_cycle(std::vector<NodeId> nodes) {
    if (!nodes.empty())
        std::rotate(nodes.begin(), std::min_element(nodes.begin(), nodes.end()), nodes.end());
    return Cycle{std::move(nodes)};
}

std::size_t CyclePacking::size() const {
    std::size_t total = 0;
    for (const auto& c : cycles)
        total += c.length();
    return total;
}

NodeSet CyclePacking::covered() const {
    std::vector<NodeId> ids;
    for (const auto& c : cycles)
        ids.insert(ids.end(), c.nodes.begin(), c.nodes.end());
    return NodeSet(std::move(ids));
}

void CyclePacking::normalize() {
    for (auto& c : cycles)
        c = canonical_cycle(std::move(c.nodes));
    std::sort(cycles.begin(), cycles.end());
}

namespace {

std::string cycle_text(const Cycle& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        s += (i ? "," : "") + std::to_string(c.nodes[i]);
    return s + ")";
}

} // namespace

void validate_cycle(const KepInstance& inst, const Cycle& cycle) {
    const auto q = cycle.nodes.size();
    const auto where = "cycle " + cycle_text(cycle);
    if (q < 2)
        throw validation_error(where + ": fewer than 2 nodes");
    if (q > static_cast<std::size_t>(inst.max_cycle_length()))
        throw validation_error(where + ": longer than K=" +
                               std::to_string(inst.max_cycle_length()));
    for (auto v : cycle.nodes)
        if (v >= inst.size())
            throw validation_error(where + ": unknown node " + std::to_string(v));
    if (NodeSet(cycle.nodes).size() != q)
        throw validation_error(where + ": repeated node");
    for (std::size_t i = 0; i < q; ++i) {
        auto from = cycle.nodes[i];
        auto to = cycle.nodes[(i + 1) % q];
        if (!inst.has_arc(from, to))
            throw validation_error(where + ": missing arc (" + std::to_string(from) + "," +
                                   std::to_string(to) + ")");
    }
}

void validate_packing(const KepInstance& inst, const CyclePacking& packing,
                      const NodeSet* within) {
    std::vector<bool> used(inst.size(), false);
    for (const auto& c : packing.cycles) {
        validate_cycle(inst, c);
        for (auto v : c.nodes) {
            if (used[v])
                throw validation_error("node " + std::to_string(v) +
                                       " is covered by more than one cycle");
            used[v] = true;
            if (within && !within->contains(v))
                throw validation_error("cycle " + cycle_text(c) + " leaves the node set");
        }
    }
}

KepInstance induced_subgraph(const KepInstance& inst, const NodeSet& w) {
    inst.check_subset(w, "induced_subgraph");
    std::vector<NodeId> remap(inst.size(), static_cast<NodeId>(-1));
    std::vector<Node> nodes;
    nodes.reserve(w.size());
    for (auto v : w) {
        remap[v] = static_cast<NodeId>(nodes.size());
        nodes.push_back(inst.node(v));
    }
    std::vector<Arc> arcs;
    for (const auto& a : inst.arcs())
        if (w.contains(a.from) && w.contains(a.to))
            arcs.push_back({remap[a.from], remap[a.to]});
    return KepInstance(std::move(nodes), std::move(arcs), inst.max_cycle_length(),
                       inst.threshold());
}

std::vector<Cycle> enumerate_cycles(const KepInstance& inst, const NodeSet& w,
                                    const Limits& limits) {
    inst.check_subset(w, "enumerate_cycles");
    if (w.size() > limits.search_nodes)
        throw cap_error("enumerate_cycles: |W|=" + std::to_string(w.size()) +
                        " exceeds the node cap of " + std::to_string(limits.search_nodes));

    const auto k = static_cast<std::size_t>(inst.max_cycle_length());
    std::vector<bool> in_w(inst.size(), false);
    for (auto v : w)
        in_w[v] = true;

    std::vector<Cycle> out;
    std::vector<NodeId> path;
    std::vector<bool> on_path(inst.size(), false);

    // Paths start at their minimum node, so each directed cycle is found
    // exactly once and already in canonical rotation.
    auto extend = [&](auto&& self, NodeId start) -> void {
        const NodeId tail = path.back();
        for (NodeId next : inst.successors(tail)) {
            if (next == start && path.size() >= 2) {
                out.push_back(Cycle{path});
                continue;
            }
            if (next <= start || !in_w[next] || on_path[next] || path.size() == k)
                continue;
            path.push_back(next);
            on_path[next] = true;
            self(self, start);
            on_path[next] = false;
            path.pop_back();
        }
    };

    for (auto start : w) {
        path.assign(1, start);
        on_path[start] = true;
        extend(extend, start);
        on_path[start] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace stackelkep
