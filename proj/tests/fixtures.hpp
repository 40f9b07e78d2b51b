#pragma once

#include "stackelkep/graph.hpp"
#include "stackelkep/sat.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

using namespace stackelkep;

inline KepInstance make(std::vector<std::pair<Owner, std::string>> nodes, std::vector<Arc> arcs,
                        int K, std::optional<std::int64_t> k = std::nullopt) {
    std::vector<Node> ns;
    for (auto& [owner, label] : nodes)
        ns.push_back({owner, label});
    return KepInstance(std::move(ns), std::move(arcs), K, k);
}

// Both directions of every listed pair.
inline std::vector<Arc> mutual(std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
    std::vector<Arc> out;
    for (auto [a, b] : pairs) {
        out.push_back({a, b});
        out.push_back({b, a});
    }
    return out;
}

constexpr auto L = Owner::Leader;
constexpr auto F = Owner::Follower;

// r1 r2 are red (leader), b1 b2 blue; r1<->r2 and r1 -> b1 -> b2 -> r1.
inline KepInstance red_blue() {
    return make({{L, "r1"}, {L, "r2"}, {F, "b1"}, {F, "b2"}}, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}}, 3);
}

// 3-cycles (a,b,alpha) and (m,alpha,beta); m has no internal cycle.
inline KepInstance withheld() {
    return make({{L, "a"}, {L, "b"}, {L, "m"}, {F, "alpha"}, {F, "beta"}},
                {{0, 1}, {1, 3}, {3, 0}, {2, 3}, {3, 4}, {4, 2}}, 3);
}

// l1 - f1 - f2 as mutual arcs.
inline KepInstance path3() {
    return make({{L, "l1"}, {F, "f1"}, {F, "f2"}}, mutual({{0, 1}, {1, 2}}), 2);
}

inline Clause clause(std::initializer_list<int> lits) {
    Clause c;
    for (int l : lits)
        c.push_back(Literal::from_dimacs(l));
    return c;
}

inline CnfFormula cnf(std::size_t vars, std::initializer_list<std::initializer_list<int>> clauses) {
    CnfFormula f;
    f.num_vars = vars;
    for (auto c : clauses)
        f.clauses.push_back(clause(c));
    return f;
}

inline AdversarialSatInstance esat1() {
    return {cnf(2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}), {1}, {2}};
}

inline AdversarialSatInstance esat2() {
    return {cnf(2, {{1, -1, 2, -2}, {1, -1, 2, -2}}), {1}, {2}};
}

inline CnfFormula phi_ex() { return cnf(3, {{1, 2, -3}, {-1, -2, 3}}); }

} // namespace fixture
