#include "stackelkep/generate.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <string>

namespace stackelkep {

namespace {

constexpr int max_attempts = 100000;

bool meets_preconditions(const CnfFormula& f) {
    std::vector<OccurrenceCount> counts(f.num_vars);
    for (const auto& c : f.clauses)
        for (const auto& l : c)
            ++(l.positive ? counts[l.var - 1].positive : counts[l.var - 1].negative);
    bool mixed = false;
    for (const auto& c : counts) {
        if (c.positive + c.negative == 0)
            return false;
        mixed = mixed || (c.positive > 0 && c.negative > 0);
    }
    return mixed;
}

} // namespace

KepInstance random_kep(std::size_t nodes, std::size_t leaders, double density, std::size_t K, Rng& rng) {
    if (leaders > nodes)
        throw validation_error("random_kep: " + std::to_string(leaders) + " leaders but only " +
                               std::to_string(nodes) + " nodes");
    if (!(density >= 0.0 && density <= 1.0))
        throw validation_error("random_kep: density must lie in [0,1]");
    std::vector<Node> ns;
    for (std::size_t i = 0; i < nodes; ++i)
        ns.push_back({i < leaders ? Owner::Leader : Owner::Follower, std::nullopt});
    std::vector<Arc> arcs;
    for (NodeId a = 0; a < nodes; ++a)
        for (NodeId b = 0; b < nodes; ++b)
            if (a != b && rng.chance(density))
                arcs.push_back({a, b});
    return KepInstance(std::move(ns), std::move(arcs), static_cast<int>(K), std::nullopt);
}

CnfFormula random_3cnf(std::size_t num_vars, std::size_t num_clauses, Rng& rng) {
    if (num_vars == 0 || num_clauses < 2 || num_clauses * 3 < num_vars)
        throw validation_error("random_3cnf: need at least one variable, two clauses and "
                               "3 * clauses >= variables");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        CnfFormula f;
        f.num_vars = num_vars;
        for (std::size_t c = 0; c < num_clauses; ++c) {
            std::vector<VarId> vars;
            for (VarId v = 1; v <= num_vars; ++v)
                vars.push_back(v);
            rng.shuffle(vars);
            const auto len = rng.between(1, std::min<std::size_t>(3, num_vars));
            Clause clause;
            for (std::size_t i = 0; i < len; ++i)
                clause.push_back({vars[i], rng.chance(0.5)});
            f.clauses.push_back(std::move(clause));
        }
        if (meets_preconditions(f))
            return f;
    }
    throw validation_error("random_3cnf: no formula meeting the preconditions found");
}

AdversarialSatInstance random_adversarial_3cnf(std::size_t nx, std::size_t ny,
                                               std::size_t num_clauses, Rng& rng) {
    AdversarialSatInstance a;
    a.formula = random_3cnf(nx + ny, num_clauses, rng);
    for (VarId v = 1; v <= nx + ny; ++v)
        (v <= nx ? a.x : a.y).push_back(v);
    return a;
}

AdversarialSatInstance random_adversarial_22(std::size_t nx, std::size_t ny,
                                             std::size_t num_clauses, Rng& rng) {
    const auto tokens = 4 * (nx + ny);
    if (num_clauses > tokens || num_clauses * 3 < tokens)
        throw validation_error("random_adversarial_22: " + std::to_string(tokens) +
                               " literal occurrences cannot fill " + std::to_string(num_clauses) +
                               " clauses of 1 to 3 literals");
    std::vector<Literal> lits;
    for (VarId v = 1; v <= nx + ny; ++v)
        for (bool pos : {true, true, false, false})
            lits.push_back({v, pos});
    rng.shuffle(lits);

    std::vector<std::size_t> sizes(num_clauses, 1);
    for (auto left = tokens - num_clauses; left > 0; --left) {
        std::vector<std::size_t> open;
        for (std::size_t c = 0; c < num_clauses; ++c)
            if (sizes[c] < 3)
                open.push_back(c);
        ++sizes[open[rng.below(open.size())]];
    }

    AdversarialSatInstance a;
    a.formula.num_vars = nx + ny;
    std::size_t next = 0;
    for (auto size : sizes) {
        Clause clause(lits.begin() + static_cast<std::ptrdiff_t>(next),
                      lits.begin() + static_cast<std::ptrdiff_t>(next + size));
        next += size;
        a.formula.clauses.push_back(std::move(clause));
    }
    for (VarId v = 1; v <= nx + ny; ++v)
        (v <= nx ? a.x : a.y).push_back(v);
    return a;
}

AdversarialSatInstance random_asat(std::size_t nx, std::size_t ny, std::size_t num_clauses, Rng& rng) {
    return adversarialize(random_adversarial_3cnf(nx, ny, num_clauses, rng)).instance;
}

} // namespace stackelkep
