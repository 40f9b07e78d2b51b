#pragma once

#include "stackelkep/limits.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stackelkep {

using VarId = std::uint32_t; // 1-based, DIMACS style

struct Literal {
    VarId var = 1;
    bool positive = true;

    static Literal from_dimacs(int value);
    int to_dimacs() const { return positive ? static_cast<int>(var) : -static_cast<int>(var); }
    Literal negated() const { return {var, !positive}; }

    auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    /// Throws when a literal names a variable outside 1..num_vars.
    void validate() const;
    bool operator==(const CnfFormula&) const = default;
};

/// ∃X ∀Y: is there an X-assignment under which no Y-assignment satisfies
/// the formula?
struct AdversarialSatInstance {
    CnfFormula formula;
    std::vector<VarId> x; // sorted
    std::vector<VarId> y; // sorted

    /// X ∩ Y = ∅, ids in range, every occurring variable quantified.
    void validate() const;
    bool operator==(const AdversarialSatInstance&) const = default;
};

/// Truth values keyed by variable.
using Assignment = std::map<VarId, bool>;

struct OccurrenceCount {
    std::size_t positive = 0;
    std::size_t negative = 0;
};

struct Validation22 {
    bool valid = false;
    std::vector<OccurrenceCount> profile; // index var-1
};

/// Every variable occurs exactly twice unnegated and twice negated.
Validation22 validate_22(const CnfFormula& f);

struct SatResult {
    bool satisfiable = false;
    Assignment witness; // empty when unsatisfiable
};

/// Exhaustive satisfiability. The witness is the first model in lexicographic
/// order over (x1, x2, ...) with FALSE before TRUE.
SatResult brute_sat(const CnfFormula& f, const Limits& limits = {});

/// Every model as a bit mask (bit i-1 = variable i), in increasing mask order.
std::vector<std::uint64_t> enumerate_models(const CnfFormula& f, const Limits& limits = {});

struct AdversarialResult {
    bool yes = false;
    Assignment x_assignment; // the witness; empty on NO
};

/// Exhaustive ∃∀ check. X-assignments are tried in lexicographic order over
/// the sorted X variables with TRUE before FALSE; the first one that leaves
/// the formula unsatisfiable over all Y-assignments is returned.
AdversarialResult brute_adversarial(const AdversarialSatInstance& a, const Limits& limits = {});

/// Copies z_i^1..z_i^k of every original variable u_i (index i-1), as
/// variable ids of the transformed formula.
struct VarMapping {
    std::vector<std::vector<VarId>> copies;

    /// Z' = {z_i^1}; first_copies()[i-1] is the image of u_i.
    std::vector<VarId> first_copies() const;
};

struct Sat22Result {
    CnfFormula formula;
    VarMapping mapping;
    std::vector<std::string> warnings;
};

/// Occurrence-splitting transform from a 3-CNF to an equisatisfiable
/// (2,2)-formula. Output clause order: one copy per input clause (same
/// order), the consistency clauses per variable, then the rest clause.
/// Occurrences are numbered by clause index, then literal position.
Sat22Result to_sat22(const CnfFormula& f);

struct AdversarializeResult {
    AdversarialSatInstance instance;
    VarMapping mapping;
    std::vector<std::string> warnings;
};

/// to_sat22 on the formula; X maps to the first copies of X variables and
/// every other copy is universally quantified.
AdversarializeResult adversarialize(const AdversarialSatInstance& a3);

bool evaluate(const CnfFormula& f, const Assignment& assignment);

/// DIMACS-flavoured text: `p cnf V C` or `p acnf V C`, optional `x ... 0`
/// and `y ... 0` quantifier lines, `c` comments, clauses as signed integers
/// terminated by 0.
struct FormulaDocument {
    AdversarialSatInstance instance;
    bool quantified = false; // header was `p acnf` or x/y lines were present
};

FormulaDocument parse_formula(std::string_view text);
FormulaDocument load_formula(const std::string& path);
std::string write_formula(const CnfFormula& f);
std::string write_formula(const AdversarialSatInstance& a);

} // namespace stackelkep
