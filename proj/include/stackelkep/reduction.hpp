#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/limits.hpp"
#include "stackelkep/sat.hpp"
#include "stackelkep/stackelberg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stackelkep {

enum class Side { X, Y };

/// Node ids of one variable gadget. For Y gadgets `t`/`f` hold the τ/φ nodes.
struct Gadget {
    VarId var = 0;
    Side side = Side::X;
    NodeId t[2]{};
    NodeId f[2]{};
    NodeId alpha[2]{};
    NodeId beta_t[2]{};
    NodeId beta_f[2]{};
};

/// Role of every node of a reduced instance, recovered from its labels:
/// `t[v,i]`, `f[v,i]`, `tau[v,i]`, `phi[v,i]`, `alpha[v,i]`, `beta[v,t|f,i]`,
/// `delta[c]` and `d` (i ∈ {1,2}, clause indices from 0).
class RoleMap {
public:
    /// Throws a validation error when labels are missing, malformed,
    /// incomplete or inconsistent with the owners.
    static RoleMap from_instance(const KepInstance& inst);

    const std::vector<Gadget>& gadgets() const { return gadgets_; }
    const Gadget& gadget(VarId var) const;
    const Gadget* find_gadget(VarId var) const;
    /// Gadget containing node v, if any.
    const Gadget* gadget_of(NodeId v) const;

    std::size_t clause_count() const { return deltas_.size(); }
    NodeId clause_node(std::size_t c) const { return deltas_.at(c); }
    bool is_clause_node(NodeId v) const;
    NodeId d() const { return d_; }
    const NodeSet& betas() const { return betas_; }

    std::vector<VarId> x_vars() const;
    std::vector<VarId> y_vars() const;

private:
    std::vector<Gadget> gadgets_;
    std::vector<std::size_t> gadget_of_node_; // index into gadgets_ or npos
    std::vector<NodeId> deltas_;
    NodeSet delta_set_;
    NodeId d_ = 0;
    NodeSet betas_;
};

struct ReducedInstance {
    KepInstance instance;
    RoleMap roles;
};

/// Builds the K=3 Stackelberg instance of an adversarial (2,2) formula, with
/// threshold k = 4|X| + 1. Node order: X gadgets (t1 t2 f1 f2 α1 α2 βt1 βt2
/// βf1 βf2), Y gadgets (τ1 τ2 φ1 φ2 α1 α2 βt1 βt2 βf1 βf2), clause nodes in
/// clause order, then d.
ReducedInstance reduce_to_kep(const AdversarialSatInstance& a);

/// t-pair withheld for TRUE variables, f-pair for FALSE ones.
Strategy strategy_from_assignment(const RoleMap& roles, const Assignment& x_assignment);

/// Inverse of strategy_from_assignment on nice strategies; throws naming the
/// first variable whose pairs are not exactly one-withheld.
Assignment assignment_from_strategy(const RoleMap& roles, const Strategy& s);

enum class CycleType { Type1, Type2, Type3 };
enum class GadgetClass { ConsistentTrue, ConsistentFalse, Cheating, Zigzag, Other };

const char* to_string(CycleType t);
const char* to_string(GadgetClass c);

/// Type1: inside one gadget; Type2: {β, δ_c}; Type3: {δ_c, d}. Throws for a
/// cycle matching none.
std::vector<CycleType> classify_cycles(const KepInstance& inst, const RoleMap& roles,
                                       const CyclePacking& packing);

/// Gadget pattern of `var` in a follower packing. Checked in order:
/// consistent (TRUE, then FALSE), cheating, zigzag; Other otherwise.
GadgetClass classify_gadget(const KepInstance& inst, const RoleMap& roles,
                            const CyclePacking& packing, VarId var);

struct Verdict {
    bool sat_answer = false;
    bool kep_decision = false;
    bool equal = false;
    std::int64_t threshold = 0;
    std::int64_t best_value = 0;
    std::optional<Strategy> witness_strategy;    // strategy_from_assignment of the SAT witness
    std::optional<std::int64_t> witness_value;   // leader_value of that strategy
    std::vector<std::string> witness_labels;
};

struct VerifyOptions {
    Limits limits{};
    std::optional<std::int64_t> threshold; // defaults to 4|X|+1
    unsigned threads = 1;
};

/// Runs brute_adversarial on the formula and solve_exact on its reduction and
/// compares the two answers.
Verdict verify_reduction(const AdversarialSatInstance& a, const VerifyOptions& options = {});

} // namespace stackelkep
