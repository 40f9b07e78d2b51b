#include "stackelkep/reduction.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <regex>
#include <set>
#include <string>

namespace stackelkep {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string gadget_label(const char* kind, VarId var, int i) {
    return std::string(kind) + "[" + std::to_string(var) + "," + std::to_string(i) + "]";
}

std::string beta_label(VarId var, char pol, int i) {
    return "beta[" + std::to_string(var) + "," + pol + "," + std::to_string(i) + "]";
}

} // namespace

const Gadget& RoleMap::gadget(VarId var) const {
    if (auto g = find_gadget(var))
        return *g;
    throw validation_error("no gadget for variable " + std::to_string(var));
}

const Gadget* RoleMap::find_gadget(VarId var) const {
    for (const auto& g : gadgets_)
        if (g.var == var)
            return &g;
    return nullptr;
}

const Gadget* RoleMap::gadget_of(NodeId v) const {
    if (v >= gadget_of_node_.size() || gadget_of_node_[v] == npos)
        return nullptr;
    return &gadgets_[gadget_of_node_[v]];
}

bool RoleMap::is_clause_node(NodeId v) const { return delta_set_.contains(v); }

std::vector<VarId> RoleMap::x_vars() const {
    std::vector<VarId> out;
    for (const auto& g : gadgets_)
        if (g.side == Side::X)
            out.push_back(g.var);
    return out;
}

std::vector<VarId> RoleMap::y_vars() const {
    std::vector<VarId> out;
    for (const auto& g : gadgets_)
        if (g.side == Side::Y)
            out.push_back(g.var);
    return out;
}

RoleMap RoleMap::from_instance(const KepInstance& inst) {
    static const std::regex pair_re(R"((t|f|tau|phi|alpha)\[(\d+),([12])\])");
    static const std::regex beta_re(R"(beta\[(\d+),([tf]),([12])\])");
    static const std::regex delta_re(R"(delta\[(\d+)\])");

    struct Partial {
        std::optional<Side> side;
        std::map<std::string, NodeId> nodes; // "t1", "alpha2", "bt1", ...
    };
    std::map<VarId, Partial> partial;
    std::map<std::size_t, NodeId> deltas;
    std::optional<NodeId> d;

    auto need_owner = [&](NodeId v, Owner expected, const std::string& label) {
        if (inst.owner(v) != expected)
            throw validation_error("node " + std::to_string(v) + " '" + label + "' must be a " +
                                   (expected == Owner::Leader ? "leader" : "follower") + " node");
    };

    for (NodeId v = 0; v < inst.size(); ++v) {
        const auto& label = inst.node(v).label;
        if (!label)
            throw validation_error("node " + std::to_string(v) + " has no role label");
        std::smatch m;
        if (*label == "d") {
            need_owner(v, Owner::Leader, *label);
            d = v;
        } else if (std::regex_match(*label, m, pair_re)) {
            const std::string kind = m[1];
            const auto var = static_cast<VarId>(std::stoul(m[2]));
            auto& p = partial[var];
            std::optional<Side> side;
            if (kind == "t" || kind == "f")
                side = Side::X;
            else if (kind == "tau" || kind == "phi")
                side = Side::Y;
            if (side) {
                if (p.side && *p.side != *side)
                    throw validation_error("variable " + std::to_string(var) +
                                           " mixes X and Y gadget labels");
                p.side = side;
                need_owner(v, *side == Side::X ? Owner::Leader : Owner::Follower, *label);
            } else {
                need_owner(v, Owner::Follower, *label);
            }
            const std::string key = (kind == "tau" ? "t" : kind == "phi" ? "f" : kind) + std::string(m[3]);
            p.nodes[key] = v;
        } else if (std::regex_match(*label, m, beta_re)) {
            need_owner(v, Owner::Follower, *label);
            partial[static_cast<VarId>(std::stoul(m[1]))].nodes["b" + std::string(m[2]) + std::string(m[3])] = v;
        } else if (std::regex_match(*label, m, delta_re)) {
            need_owner(v, Owner::Follower, *label);
            deltas[std::stoul(m[1])] = v;
        } else {
            throw validation_error("node " + std::to_string(v) + ": '" + *label +
                                   "' is not a reduction role label");
        }
    }
    if (!d)
        throw validation_error("reduced instance has no 'd' node");

    RoleMap rm;
    rm.d_ = *d;
    rm.gadget_of_node_.assign(inst.size(), npos);
    std::vector<NodeId> betas;
    for (auto& [var, p] : partial) {
        if (!p.side)
            throw validation_error("variable " + std::to_string(var) + " has no t/f or tau/phi nodes");
        Gadget g;
        g.var = var;
        g.side = *p.side;
        auto take = [&](const std::string& key) {
            auto it = p.nodes.find(key);
            if (it == p.nodes.end())
                throw validation_error("gadget of variable " + std::to_string(var) +
                                       " is missing role '" + key + "'");
            return it->second;
        };
        for (int i = 0; i < 2; ++i) {
            const auto idx = std::to_string(i + 1);
            g.t[i] = take("t" + idx);
            g.f[i] = take("f" + idx);
            g.alpha[i] = take("alpha" + idx);
            g.beta_t[i] = take("bt" + idx);
            g.beta_f[i] = take("bf" + idx);
            betas.push_back(g.beta_t[i]);
            betas.push_back(g.beta_f[i]);
        }
        const auto index = rm.gadgets_.size();
        for (int i = 0; i < 2; ++i)
            for (auto v : {g.t[i], g.f[i], g.alpha[i], g.beta_t[i], g.beta_f[i]})
                rm.gadget_of_node_[v] = index;
        rm.gadgets_.push_back(g);
    }
    std::stable_sort(rm.gadgets_.begin(), rm.gadgets_.end(), [](const Gadget& a, const Gadget& b) {
        return a.side != b.side ? a.side == Side::X : a.var < b.var;
    });
    for (std::size_t i = 0; i < rm.gadgets_.size(); ++i)
        for (int j = 0; j < 2; ++j)
            for (auto v : {rm.gadgets_[i].t[j], rm.gadgets_[i].f[j], rm.gadgets_[i].alpha[j],
                           rm.gadgets_[i].beta_t[j], rm.gadgets_[i].beta_f[j]})
                rm.gadget_of_node_[v] = i;

    std::size_t expected = 0;
    for (const auto& [c, v] : deltas) {
        if (c != expected++)
            throw validation_error("clause nodes must be numbered 0.." +
                                   std::to_string(deltas.size() - 1));
        rm.deltas_.push_back(v);
    }
    rm.delta_set_ = NodeSet(rm.deltas_);
    rm.betas_ = NodeSet(std::move(betas));
    return rm;
}

ReducedInstance reduce_to_kep(const AdversarialSatInstance& a) {
    a.validate();
    const auto& f = a.formula;
    const auto check = validate_22(f);
    if (!check.valid) {
        std::string profile;
        for (VarId v = 1; v <= f.num_vars; ++v) {
            const auto& c = check.profile[v - 1];
            profile += " " + std::to_string(v) + ":(" + std::to_string(c.positive) + "," +
                       std::to_string(c.negative) + ")";
        }
        throw validation_error("formula is not (2,2); occurrence profile var:(pos,neg):" + profile);
    }
    if (a.x.size() + a.y.size() != f.num_vars)
        throw validation_error("X and Y must partition the variables 1.." +
                               std::to_string(f.num_vars));

    std::vector<Node> nodes;
    std::vector<Arc> arcs;
    auto add = [&](Owner owner, std::string label) {
        nodes.push_back({owner, std::move(label)});
        return static_cast<NodeId>(nodes.size() - 1);
    };

    std::map<VarId, Gadget> gadgets;
    auto build_gadget = [&](VarId var, Side side) {
        Gadget g;
        g.var = var;
        g.side = side;
        const auto owner = side == Side::X ? Owner::Leader : Owner::Follower;
        const char* tname = side == Side::X ? "t" : "tau";
        const char* fname = side == Side::X ? "f" : "phi";
        for (int i = 0; i < 2; ++i)
            g.t[i] = add(owner, gadget_label(tname, var, i + 1));
        for (int i = 0; i < 2; ++i)
            g.f[i] = add(owner, gadget_label(fname, var, i + 1));
        for (int i = 0; i < 2; ++i)
            g.alpha[i] = add(Owner::Follower, gadget_label("alpha", var, i + 1));
        for (int i = 0; i < 2; ++i)
            g.beta_t[i] = add(Owner::Follower, beta_label(var, 't', i + 1));
        for (int i = 0; i < 2; ++i)
            g.beta_f[i] = add(Owner::Follower, beta_label(var, 'f', i + 1));

        for (int i = 0; i < 2; ++i) {
            arcs.push_back({g.alpha[i], g.beta_t[i]});
            arcs.push_back({g.beta_t[i], g.t[i]});
            arcs.push_back({g.t[i], g.alpha[i]});
            arcs.push_back({g.alpha[i], g.beta_f[i]});
            arcs.push_back({g.beta_f[i], g.f[i]});
            arcs.push_back({g.f[i], g.alpha[i]});
        }
        arcs.push_back({g.t[0], g.t[1]});
        arcs.push_back({g.t[1], g.t[0]});
        arcs.push_back({g.f[0], g.f[1]});
        arcs.push_back({g.f[1], g.f[0]});
        gadgets[var] = g;
    };
    for (auto v : a.x)
        build_gadget(v, Side::X);
    for (auto v : a.y)
        build_gadget(v, Side::Y);

    std::vector<NodeId> deltas;
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        deltas.push_back(add(Owner::Follower, "delta[" + std::to_string(c) + "]"));
    const NodeId d = add(Owner::Leader, "d");

    for (auto delta : deltas) {
        arcs.push_back({delta, d});
        arcs.push_back({d, delta});
    }

    // The i-th unnegated (negated) occurrence of a variable, scanning clauses
    // in input order, is wired to β_{v,t,i} (β_{v,f,i}).
    std::map<VarId, int> seen_pos;
    std::map<VarId, int> seen_neg;
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        for (const auto& l : f.clauses[c]) {
            const auto& g = gadgets.at(l.var);
            const NodeId beta = l.positive ? g.beta_t[seen_pos[l.var]++] : g.beta_f[seen_neg[l.var]++];
            arcs.push_back({beta, deltas[c]});
            arcs.push_back({deltas[c], beta});
        }
    }

    const auto threshold = static_cast<std::int64_t>(4 * a.x.size() + 1);
    KepInstance inst(std::move(nodes), std::move(arcs), 3, threshold);
    auto roles = RoleMap::from_instance(inst);
    return {std::move(inst), std::move(roles)};
}

Strategy strategy_from_assignment(const RoleMap& roles, const Assignment& x_assignment) {
    std::vector<NodeId> ids;
    for (const auto& g : roles.gadgets()) {
        if (g.side != Side::X)
            continue;
        auto it = x_assignment.find(g.var);
        if (it == x_assignment.end())
            throw validation_error("assignment has no value for X variable " + std::to_string(g.var));
        const auto& pair = it->second ? g.t : g.f;
        ids.push_back(pair[0]);
        ids.push_back(pair[1]);
    }
    for (const auto& [var, value] : x_assignment) {
        const auto* g = roles.find_gadget(var);
        if (!g || g->side != Side::X)
            throw validation_error("assignment names variable " + std::to_string(var) +
                                   " which is not in X");
    }
    return Strategy(std::move(ids));
}

Assignment assignment_from_strategy(const RoleMap& roles, const Strategy& s) {
    Assignment out;
    for (const auto& g : roles.gadgets()) {
        if (g.side != Side::X)
            continue;
        const bool t0 = s.contains(g.t[0]);
        const bool t1 = s.contains(g.t[1]);
        const bool f0 = s.contains(g.f[0]);
        const bool f1 = s.contains(g.f[1]);
        if (t0 && t1 && !f0 && !f1)
            out[g.var] = true;
        else if (f0 && f1 && !t0 && !t1)
            out[g.var] = false;
        else
            throw validation_error("strategy is not nice at variable " + std::to_string(g.var));
    }
    return out;
}

const char* to_string(CycleType t) {
    switch (t) {
    case CycleType::Type1: return "Type1";
    case CycleType::Type2: return "Type2";
    case CycleType::Type3: return "Type3";
    }
    return "?";
}

const char* to_string(GadgetClass c) {
    switch (c) {
    case GadgetClass::ConsistentTrue: return "ConsistentTrue";
    case GadgetClass::ConsistentFalse: return "ConsistentFalse";
    case GadgetClass::Cheating: return "Cheating";
    case GadgetClass::Zigzag: return "Zigzag";
    case GadgetClass::Other: return "Other";
    }
    return "?";
}

std::vector<CycleType> classify_cycles(const KepInstance& inst, const RoleMap& roles,
                                       const CyclePacking& packing) {
    validate_packing(inst, packing);
    std::vector<CycleType> out;
    for (const auto& c : packing.cycles) {
        const auto* first = roles.gadget_of(c.nodes.front());
        const bool one_gadget =
            first && std::all_of(c.nodes.begin(), c.nodes.end(),
                                 [&](NodeId v) { return roles.gadget_of(v) == first; });
        if (one_gadget) {
            out.push_back(CycleType::Type1);
            continue;
        }
        if (c.length() == 2) {
            const auto a = c.nodes[0];
            const auto b = c.nodes[1];
            if ((roles.betas().contains(a) && roles.is_clause_node(b)) ||
                (roles.betas().contains(b) && roles.is_clause_node(a))) {
                out.push_back(CycleType::Type2);
                continue;
            }
            if ((a == roles.d() && roles.is_clause_node(b)) ||
                (b == roles.d() && roles.is_clause_node(a))) {
                out.push_back(CycleType::Type3);
                continue;
            }
        }
        std::string text;
        for (auto v : c.nodes)
            text += (text.empty() ? "" : ",") + inst.display_name(v);
        throw validation_error("cycle (" + text + ") is none of Type1, Type2, Type3");
    }
    return out;
}

GadgetClass classify_gadget(const KepInstance& inst, const RoleMap& roles,
                            const CyclePacking& packing, VarId var) {
    validate_packing(inst, packing);
    const auto& g = roles.gadget(var);

    std::set<NodeSet> cycles;
    for (const auto& c : packing.cycles)
        cycles.insert(NodeSet(c.nodes));
    auto has = [&](std::initializer_list<NodeId> nodes) { return cycles.count(NodeSet(nodes)) > 0; };

    const bool f_tri = has({g.alpha[0], g.beta_f[0], g.f[0]}) && has({g.alpha[1], g.beta_f[1], g.f[1]});
    const bool t_tri = has({g.alpha[0], g.beta_t[0], g.t[0]}) && has({g.alpha[1], g.beta_t[1], g.t[1]});
    const bool t_pair = has({g.t[0], g.t[1]});
    const bool f_pair = has({g.f[0], g.f[1]});

    if (g.side == Side::X) {
        if (f_tri)
            return GadgetClass::ConsistentTrue;
        if (t_tri)
            return GadgetClass::ConsistentFalse;
        if (t_pair || f_pair)
            return GadgetClass::Cheating;
        return GadgetClass::Other;
    }

    if (f_tri && t_pair)
        return GadgetClass::ConsistentTrue;
    if (t_tri && f_pair)
        return GadgetClass::ConsistentFalse;
    if (t_pair && f_pair)
        return GadgetClass::Cheating;
    // Either diagonal: {α1,βt1,τ1}+{α2,βf2,φ2} or its mirror {α1,βf1,φ1}+{α2,βt2,τ2}.
    if ((has({g.alpha[0], g.beta_t[0], g.t[0]}) && has({g.alpha[1], g.beta_f[1], g.f[1]})) ||
        (has({g.alpha[0], g.beta_f[0], g.f[0]}) && has({g.alpha[1], g.beta_t[1], g.t[1]})))
        return GadgetClass::Zigzag;
    return GadgetClass::Other;
}

Verdict verify_reduction(const AdversarialSatInstance& a, const VerifyOptions& options) {
    a.validate();
    const auto quantified = a.x.size() + a.y.size();
    if (quantified > options.limits.adversarial_vars)
        throw cap_error("verify_reduction: brute_adversarial guard: |X|+|Y|=" +
                        std::to_string(quantified) + " exceeds " +
                        std::to_string(options.limits.adversarial_vars));
    const auto leaders = 4 * a.x.size() + 1;
    if (leaders > options.limits.leader_nodes)
        throw cap_error("verify_reduction: solve_exact guard: |L|=" + std::to_string(leaders) +
                        " exceeds " + std::to_string(options.limits.leader_nodes));

    auto reduced = reduce_to_kep(a);
    if (reduced.instance.size() > options.limits.search_nodes)
        throw cap_error("verify_reduction: packing search guard: " +
                        std::to_string(reduced.instance.size()) + " nodes exceed " +
                        std::to_string(options.limits.search_nodes));

    Verdict v;
    v.threshold = options.threshold.value_or(static_cast<std::int64_t>(leaders));

    auto sat_future = std::async(options.threads > 1 ? std::launch::async : std::launch::deferred,
                                 [&] { return brute_adversarial(a, options.limits); });

    SolveOptions solve;
    solve.limits = options.limits;
    solve.threshold = v.threshold;
    solve.threads = options.threads;
    StackelbergSolver solver(reduced.instance, solve);
    const auto report = solver.solve_exact();

    const auto sat = sat_future.get();
    v.sat_answer = sat.yes;
    v.best_value = report.best_value;
    v.kep_decision = report.best_value >= v.threshold;
    v.equal = v.sat_answer == v.kep_decision;
    if (sat.yes) {
        auto s = strategy_from_assignment(reduced.roles, sat.x_assignment);
        v.witness_value = solver.leader_value(s);
        for (auto node : s)
            v.witness_labels.push_back(reduced.instance.display_name(node));
        v.witness_strategy = std::move(s);
    }
    return v;
}

} // namespace stackelkep
