#include "stackelkep/stackelberg.hpp"

#include "stackelkep/error.hpp"
#include "stackelkep/matching.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace stackelkep {

// Entries kept per cache; beyond this, values are recomputed on demand.
constexpr std::size_t cache_limit = std::size_t{1} << 20;

StackelbergSolver::StackelbergSolver(const KepInstance& inst, SolveOptions options)
    : inst_(inst), options_(options), leaders_(inst.leaders().ids()) {
    if (options_.threads == 0)
        options_.threads = 1;
}

void StackelbergSolver::check_leader_cap() const {
    const auto cap = std::min(options_.limits.leader_nodes, Limits::hard_max);
    if (leaders_.size() > cap)
        throw cap_error("strategy enumeration: |L|=" + std::to_string(leaders_.size()) +
                        " exceeds the leader cap of " + std::to_string(cap));
}

std::uint64_t StackelbergSolver::mask_of(const Strategy& s) const {
    std::uint64_t mask = 0;
    for (auto v : s) {
        auto it = std::lower_bound(leaders_.begin(), leaders_.end(), v);
        if (it == leaders_.end() || *it != v)
            throw validation_error("strategy contains non-leader node " + std::to_string(v));
        mask |= std::uint64_t{1} << (it - leaders_.begin());
    }
    return mask;
}

Strategy StackelbergSolver::strategy_of(std::uint64_t mask) const {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < leaders_.size(); ++i)
        if (mask >> i & 1)
            ids.push_back(leaders_[i]);
    return Strategy(std::move(ids));
}

std::int64_t StackelbergSolver::internal_size(std::uint64_t mask) {
    auto it = internal_cache_.find(mask);
    if (it != internal_cache_.end())
        return it->second;
    const auto size = static_cast<std::int64_t>(max_packing(inst_, strategy_of(mask), options_.limits).size);
    if (internal_cache_.size() < cache_limit)
        internal_cache_.emplace(mask, size);
    return size;
}

std::int64_t StackelbergSolver::external_cover(std::uint64_t mask) {
    auto it = external_cache_.find(mask);
    if (it != external_cache_.end())
        return it->second;
    const auto pool = inst_.all_nodes().without(strategy_of(mask));
    const auto cover = static_cast<std::int64_t>(
        adversarial_packing(inst_, pool, inst_.leaders(), options_.limits).u_covered);
    if (external_cache_.size() < cache_limit)
        external_cache_.emplace(mask, cover);
    return cover;
}

std::int64_t StackelbergSolver::value_of(std::uint64_t mask) {
    return internal_size(mask) + external_cover(mask);
}

std::int64_t StackelbergSolver::leader_value(const Strategy& s) {
    inst_.check_subset(s, "leader_value");
    if (!s.is_subset_of(inst_.leaders()))
        throw validation_error("leader_value: strategy contains a follower node");
    if (leaders_.size() <= Limits::hard_max)
        return value_of(mask_of(s));
    return static_cast<std::int64_t>(max_packing(inst_, s, options_.limits).size) +
           static_cast<std::int64_t>(
               adversarial_packing(inst_, inst_.all_nodes().without(s), inst_.leaders(),
                                   options_.limits)
                   .u_covered);
}

// Preorder of the subset tree: [], [0], [0,1], [0,1,2], ..., [0,2], ..., [1], ...
// which is lexicographic order on sorted index lists.
std::vector<std::uint64_t> StackelbergSolver::strategy_order() const {
    const auto n = leaders_.size();
    std::vector<std::uint64_t> order;
    order.reserve(std::size_t{1} << n);
    auto visit = [&](auto&& self, std::uint64_t mask, std::size_t from) -> void {
        order.push_back(mask);
        for (std::size_t i = from; i < n; ++i)
            self(self, mask | std::uint64_t{1} << i, i + 1);
    };
    visit(visit, 0, 0);
    return order;
}

// Successor of `mask` in that preorder, or nothing after the last one.
static std::optional<std::uint64_t> next_in_order(std::uint64_t mask, std::size_t n) {
    if (n == 0)
        return std::nullopt;
    if (mask == 0)
        return std::uint64_t{1};
    const auto top = static_cast<std::size_t>(std::bit_width(mask)) - 1;
    if (top + 1 < n)
        return mask | std::uint64_t{1} << (top + 1);
    mask &= ~(std::uint64_t{1} << top);
    if (mask == 0)
        return std::nullopt;
    const auto h = static_cast<std::size_t>(std::bit_width(mask)) - 1;
    return (mask & ~(std::uint64_t{1} << h)) | std::uint64_t{1} << (h + 1);
}

template <class F>
static void for_each_strategy(std::size_t n, F&& f) {
    for (std::optional<std::uint64_t> m = 0; m; m = next_in_order(*m, n))
        if (!f(*m))
            return;
}

LeaderReport StackelbergSolver::report_for(std::uint64_t mask, std::int64_t value) {
    LeaderReport r;
    r.best_value = value;
    r.best_strategy = strategy_of(mask);
    r.internal = max_packing(inst_, r.best_strategy, options_.limits);
    r.external = adversarial_packing(inst_, inst_.all_nodes().without(r.best_strategy),
                                     inst_.leaders(), options_.limits);
    if (auto k = options_.threshold ? options_.threshold : inst_.threshold())
        r.decision = value >= *k;
    return r;
}

LeaderReport StackelbergSolver::solve_exact() {
    check_leader_cap();
    const auto all_leaders = static_cast<std::int64_t>(leaders_.size());

    std::uint64_t best_mask = 0;
    std::int64_t best = -1;

    if (options_.threads > 1 && !leaders_.empty()) {
        const auto order = strategy_order();
        std::vector<std::int64_t> values(order.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                for (std::size_t i = next++; i < order.size(); i = next++) {
                    const auto s = strategy_of(order[i]);
                    values[i] =
                        static_cast<std::int64_t>(max_packing(inst_, s, options_.limits).size) +
                        static_cast<std::int64_t>(
                            adversarial_packing(inst_, inst_.all_nodes().without(s),
                                                inst_.leaders(), options_.limits)
                                .u_covered);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = order.size();
            }
        };
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < options_.threads; ++t)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);
        for (std::size_t i = 0; i < order.size(); ++i)
            if (values[i] > best) {
                best = values[i];
                best_mask = order[i];
            }
        return report_for(best_mask, best);
    }

    for_each_strategy(leaders_.size(), [&](std::uint64_t mask) {
        const auto inside = internal_size(mask);
        // Even covering every contributed leader node cannot beat `best`.
        const auto contributed = all_leaders - std::popcount(mask);
        if (inside + contributed <= best)
            return true;
        const auto value = inside + external_cover(mask);
        if (value > best) {
            best = value;
            best_mask = mask;
        }
        return best != all_leaders;
    });
    return report_for(best_mask, best);
}

LeaderReport StackelbergSolver::solve_k2() {
    if (inst_.max_cycle_length() != 2)
        throw validation_error("solve_k2: K must be 2, instance has K=" +
                               std::to_string(inst_.max_cycle_length()));
    check_leader_cap();

    const auto projection = undirected_projection(inst_);
    const auto leaders = inst_.leaders();
    const auto all_leaders = static_cast<std::int64_t>(leaders_.size());

    std::uint64_t best_mask = 0;
    std::int64_t best = -1;
    for_each_strategy(leaders_.size(), [&](std::uint64_t mask) {
        const auto s = strategy_of(mask);
        // Withholding a node left unmatched inside G[S] is weakly dominated.
        if (k2_adversarial_value(projection.restricted_to(s), {}).edges * 2 != s.size())
            return true;
        const auto inside = static_cast<std::int64_t>(s.size());
        const auto pool = inst_.all_nodes().without(s);
        const auto value =
            inside + static_cast<std::int64_t>(
                         k2_adversarial_value(projection.restricted_to(pool), leaders).u_covered);
        if (value > best) {
            best = value;
            best_mask = mask;
        }
        return best != all_leaders;
    });

    LeaderReport r;
    r.best_value = best;
    r.best_strategy = strategy_of(best_mask);
    r.internal = k2_adversarial_matching(projection.restricted_to(r.best_strategy), {});
    r.external = k2_adversarial_matching(
        projection.restricted_to(inst_.all_nodes().without(r.best_strategy)), leaders);
    if (auto k = options_.threshold ? options_.threshold : inst_.threshold())
        r.decision = best >= *k;
    return r;
}

std::vector<StrategyRow> StackelbergSolver::strategy_table() {
    check_leader_cap();
    std::vector<StrategyRow> rows;
    for_each_strategy(leaders_.size(), [&](std::uint64_t mask) {
        rows.push_back({strategy_of(mask), value_of(mask)});
        return true;
    });
    return rows;
}

std::int64_t leader_value(const KepInstance& inst, const Strategy& s, const Limits& limits) {
    SolveOptions options;
    options.limits = limits;
    return StackelbergSolver(inst, options).leader_value(s);
}

LeaderReport solve_exact(const KepInstance& inst, const SolveOptions& options) {
    return StackelbergSolver(inst, options).solve_exact();
}

LeaderReport solve_k2(const KepInstance& inst, const SolveOptions& options) {
    return StackelbergSolver(inst, options).solve_k2();
}

std::vector<StrategyRow> enumerate_strategy_table(const KepInstance& inst,
                                                  const SolveOptions& options) {
    return StackelbergSolver(inst, options).strategy_table();
}

} // namespace stackelkep
