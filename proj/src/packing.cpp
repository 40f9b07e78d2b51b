#include "stackelkep/packing.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace stackelkep {

PackingResult make_packing_result(CyclePacking packing, const NodeSet& u) {
    packing.normalize();
    PackingResult r;
    r.covered = packing.covered();
    r.size = r.covered.size();
    r.u_covered = r.covered.intersect(u).size();
    r.packing = std::move(packing);
    return r;
}

namespace {

using Mask = std::uint64_t;

struct LocalCycle {
    Mask mask = 0;
    std::int64_t value = 0;
    std::size_t length = 0;
    std::size_t index = 0; // into Space::cycles
};

// G[W] re-indexed onto bit positions 0..|W|-1 (increasing node id), with
// cycles grouped by their smallest member. Branching always on the lowest
// undecided node means only cycles whose minimum is that node can cover it.
struct Space {
    std::vector<Cycle> cycles;
    std::vector<std::vector<LocalCycle>> by_min;
    Mask all = 0;
    Mask coverable = 0;
};

Space build_space(const KepInstance& inst, const NodeSet& w, const NodeSet& u,
                  std::int64_t scale, const Limits& limits) {
    Space s;
    s.cycles = enumerate_cycles(inst, w, limits);
    s.by_min.resize(w.size());
    s.all = w.size() == 64 ? ~Mask{0} : (Mask{1} << w.size()) - 1;

    const auto& ids = w.ids();
    auto local = [&](NodeId v) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    for (std::size_t i = 0; i < s.cycles.size(); ++i) {
        LocalCycle lc;
        lc.index = i;
        lc.length = s.cycles[i].length();
        std::int64_t penalty = 0;
        for (auto v : s.cycles[i].nodes) {
            lc.mask |= Mask{1} << local(v);
            if (u.contains(v))
                ++penalty;
        }
        lc.value = scale * static_cast<std::int64_t>(lc.length) - penalty;
        s.coverable |= lc.mask;
        s.by_min[local(s.cycles[i].nodes.front())].push_back(lc);
    }
    return s;
}

class BestSearch {
public:
    BestSearch(const Space& space, std::int64_t scale) : space_(space), scale_(scale) {}

    std::vector<std::size_t> run() {
        chosen_.clear();
        dfs(space_.all, 0);
        return best_;
    }

private:
    void dfs(Mask free, std::int64_t score) {
        const auto open = static_cast<std::int64_t>(std::popcount(free & space_.coverable));
        if (score + scale_ * open <= best_score_)
            return;
        if ((free & space_.coverable) == 0) {
            best_score_ = score;
            best_ = chosen_;
            return;
        }
        const auto v = static_cast<std::size_t>(std::countr_zero(free));
        const Mask bit = Mask{1} << v;
        for (const auto& c : space_.by_min[v]) {
            if ((c.mask & ~free) != 0)
                continue;
            chosen_.push_back(c.index);
            dfs(free & ~c.mask, score + c.value);
            chosen_.pop_back();
        }
        dfs(free & ~bit, score);
    }

    const Space& space_;
    std::int64_t scale_;
    std::int64_t best_score_ = -1;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
};

CyclePacking to_packing(const Space& space, const std::vector<std::size_t>& chosen) {
    CyclePacking p;
    for (auto i : chosen)
        p.cycles.push_back(space.cycles[i]);
    p.normalize();
    return p;
}

void check_search_cap(const NodeSet& w, const Limits& limits, const char* who) {
    if (w.size() > std::min<std::size_t>(limits.search_nodes, 64))
        throw cap_error(std::string(who) + ": |W|=" + std::to_string(w.size()) +
                        " exceeds the search cap of " + std::to_string(limits.search_nodes));
}

} // namespace

PackingResult max_packing(const KepInstance& inst, const NodeSet& w, const Limits& limits) {
    inst.check_subset(w, "max_packing");
    check_search_cap(w, limits, "max_packing");
    const auto space = build_space(inst, w, NodeSet{}, 1, limits);
    auto chosen = BestSearch(space, 1).run();
    return make_packing_result(to_packing(space, chosen), NodeSet{});
}

PackingResult adversarial_packing(const KepInstance& inst, const NodeSet& w, const NodeSet& u,
                                  const Limits& limits) {
    inst.check_subset(w, "adversarial_packing");
    inst.check_subset(u, "adversarial_packing");
    check_search_cap(w, limits, "adversarial_packing");
    // Every packing covers at most |W| nodes of U, so one extra covered node
    // always outweighs any difference in U-coverage.
    const auto scale = static_cast<std::int64_t>(w.size()) + 1;
    const auto space = build_space(inst, w, u, scale, limits);
    auto chosen = BestSearch(space, scale).run();
    return make_packing_result(to_packing(space, chosen), u);
}

std::vector<CyclePacking> all_optimal_packings(const KepInstance& inst, const NodeSet& w,
                                               const Limits& limits) {
    inst.check_subset(w, "all_optimal_packings");
    if (w.size() > limits.oracle_nodes)
        throw cap_error("all_optimal_packings: |W|=" + std::to_string(w.size()) +
                        " exceeds the oracle cap of " + std::to_string(limits.oracle_nodes));
    check_search_cap(w, limits, "all_optimal_packings");

    const auto space = build_space(inst, w, NodeSet{}, 1, limits);
    const auto target = static_cast<std::int64_t>(to_packing(space, BestSearch(space, 1).run()).size());

    std::vector<CyclePacking> out;
    std::vector<std::size_t> chosen;
    auto dfs = [&](auto&& self, Mask free, std::int64_t size) -> void {
        if (size + std::popcount(free & space.coverable) < target)
            return;
        if ((free & space.coverable) == 0) {
            out.push_back(to_packing(space, chosen));
            return;
        }
        const auto v = static_cast<std::size_t>(std::countr_zero(free));
        for (const auto& c : space.by_min[v]) {
            if ((c.mask & ~free) != 0)
                continue;
            chosen.push_back(c.index);
            self(self, free & ~c.mask, size + static_cast<std::int64_t>(c.length));
            chosen.pop_back();
        }
        self(self, free & ~(Mask{1} << v), size);
    };
    dfs(dfs, space.all, 0);
    std::sort(out.begin(), out.end(), [](const CyclePacking& a, const CyclePacking& b) {
        return a.cycles < b.cycles;
    });
    return out;
}

} // namespace stackelkep
