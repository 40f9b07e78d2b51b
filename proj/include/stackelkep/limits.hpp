#pragma once

#include <cstddef>
#include <string_view>

namespace stackelkep {

/// Guards on the exponential searches. Every exact routine in the library
/// refuses inputs above its cap with ErrorKind::CapExceeded instead of
/// running unbounded.
struct Limits {
    /// Nodes of G[W] accepted by cycle enumeration and packing search.
    /// Packing search uses 64-bit node masks, so this can never exceed 64.
    std::size_t search_nodes = 64;
    /// Nodes of G[W] accepted by all_optimal_packings.
    std::size_t oracle_nodes = 30;
    /// Leader nodes accepted by strategy enumeration.
    std::size_t leader_nodes = 24;
    /// Variables accepted by brute_sat.
    std::size_t sat_vars = 24;
    /// |X| + |Y| accepted by brute_adversarial.
    std::size_t adversarial_vars = 20;

    static constexpr std::size_t hard_max = 62;

    /// Raises every cap to its hard maximum.
    static Limits unbounded();

    /// Defaults overridden by a `key=value,key=value` string, e.g.
    /// `leader_nodes=16,sat_vars=20`. Unknown keys and non-positive values
    /// are validation errors.
    static Limits parse(std::string_view spec);
    static Limits parse(std::string_view spec, Limits base);

    /// Defaults overridden by the STACKELKEP_CAPS environment variable when set.
    static Limits from_env();
};

} // namespace stackelkep
