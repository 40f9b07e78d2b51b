#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/limits.hpp"
#include "stackelkep/packing.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace stackelkep {

/// The leader's withheld node set S ⊆ L.
using Strategy = NodeSet;

struct LeaderReport {
    std::int64_t best_value = 0;
    Strategy best_strategy;
    PackingResult internal; // max packing on G[S]
    PackingResult external; // adversarial packing on G[V∖S] with U = L
    std::optional<bool> decision;
};

struct StrategyRow {
    Strategy strategy;
    std::int64_t value = 0;
};

struct SolveOptions {
    Limits limits{};
    /// Overrides the instance threshold for the decision.
    std::optional<std::int64_t> threshold;
    /// Worker threads for strategy enumeration; 1 runs sequentially with pruning.
    unsigned threads = 1;
};

/// Exact leader-side solver. Follower results are cached by contributed set,
/// so computing a table and then solving shares work.
///
/// Strategies are ordered lexicographically by their sorted node lists; ties
/// in value go to the smallest strategy in that order.
class StackelbergSolver {
public:
    explicit StackelbergSolver(const KepInstance& inst, SolveOptions options = {});

    /// w(G[S]) + w^L(G[V∖S]).
    std::int64_t leader_value(const Strategy& s);

    LeaderReport solve_exact();

    /// K = 2 only: enumerates only strategies whose G[S] has a perfect
    /// matching and uses the matching-based follower oracle. Equal in value
    /// to solve_exact.
    LeaderReport solve_k2();

    /// Value of every S ⊆ L in strategy order.
    std::vector<StrategyRow> strategy_table();

private:
    std::uint64_t mask_of(const Strategy& s) const;
    Strategy strategy_of(std::uint64_t mask) const;
    std::int64_t internal_size(std::uint64_t mask);
    std::int64_t external_cover(std::uint64_t mask);
    std::int64_t value_of(std::uint64_t mask);
    std::vector<std::uint64_t> strategy_order() const;
    LeaderReport report_for(std::uint64_t mask, std::int64_t value);
    void check_leader_cap() const;

    const KepInstance& inst_;
    SolveOptions options_;
    std::vector<NodeId> leaders_;
    std::unordered_map<std::uint64_t, std::int64_t> internal_cache_;
    std::unordered_map<std::uint64_t, std::int64_t> external_cache_;
};

std::int64_t leader_value(const KepInstance& inst, const Strategy& s, const Limits& limits = {});
LeaderReport solve_exact(const KepInstance& inst, const SolveOptions& options = {});
LeaderReport solve_k2(const KepInstance& inst, const SolveOptions& options = {});
std::vector<StrategyRow> enumerate_strategy_table(const KepInstance& inst,
                                                  const SolveOptions& options = {});

} // namespace stackelkep
