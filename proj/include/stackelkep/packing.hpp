#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/limits.hpp"

#include <cstddef>
#include <vector>

namespace stackelkep {

/// Outcome of a follower packing on G[W].
struct PackingResult {
    std::size_t size = 0; // nodes covered
    NodeSet covered;
    std::size_t u_covered = 0; // |covered ∩ U|
    CyclePacking packing;

    bool operator==(const PackingResult&) const = default;
};

PackingResult make_packing_result(CyclePacking packing, const NodeSet& u);

/// Maximum-size K-cycle packing of G[W] (exact branch-and-bound). u_covered
/// is reported against U = ∅ and is therefore zero.
PackingResult max_packing(const KepInstance& inst, const NodeSet& w, const Limits& limits = {});

/// Worst case for the owner of U: among all maximum-size K-cycle packings of
/// G[W], one covering the fewest nodes of U. The lexicographic objective is
/// searched as the scalar M·size − |covered ∩ U| with M = |W| + 1.
PackingResult adversarial_packing(const KepInstance& inst, const NodeSet& w, const NodeSet& u,
                                  const Limits& limits = {});

/// Every maximum-size K-cycle packing of G[W], sorted. Refuses |W| above
/// limits.oracle_nodes.
std::vector<CyclePacking> all_optimal_packings(const KepInstance& inst, const NodeSet& w,
                                               const Limits& limits = {});

} // namespace stackelkep
