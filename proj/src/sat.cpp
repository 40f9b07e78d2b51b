#include "stackelkep/sat.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace stackelkep {

Literal Literal::from_dimacs(int value) {
    if (value == 0)
        throw parse_error("literal 0 is reserved as the clause terminator");
    return value > 0 ? Literal{static_cast<VarId>(value), true}
                     : Literal{static_cast<VarId>(-static_cast<long long>(value)), false};
}

void CnfFormula::validate() const {
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (const auto& l : clauses[c])
            if (l.var == 0 || l.var > num_vars)
                throw validation_error("clause " + std::to_string(c) + ": variable " +
                                       std::to_string(l.var) + " outside 1.." +
                                       std::to_string(num_vars));
}

void AdversarialSatInstance::validate() const {
    formula.validate();
    std::set<VarId> seen;
    for (auto v : x) {
        if (v == 0 || v > formula.num_vars)
            throw validation_error("X variable " + std::to_string(v) + " out of range");
        seen.insert(v);
    }
    for (auto v : y) {
        if (v == 0 || v > formula.num_vars)
            throw validation_error("Y variable " + std::to_string(v) + " out of range");
        if (seen.count(v))
            throw validation_error("variable " + std::to_string(v) + " is in both X and Y");
        seen.insert(v);
    }
    for (std::size_t c = 0; c < formula.clauses.size(); ++c)
        for (const auto& l : formula.clauses[c])
            if (!seen.count(l.var))
                throw validation_error("variable " + std::to_string(l.var) + " (clause " +
                                       std::to_string(c) + ") is in neither X nor Y");
}

Validation22 validate_22(const CnfFormula& f) {
    f.validate();
    Validation22 r;
    r.profile.resize(f.num_vars);
    for (const auto& clause : f.clauses)
        for (const auto& l : clause) {
            auto& count = r.profile[l.var - 1];
            (l.positive ? count.positive : count.negative) += 1;
        }
    r.valid = std::all_of(r.profile.begin(), r.profile.end(), [](const OccurrenceCount& c) {
        return c.positive == 2 && c.negative == 2;
    });
    return r;
}

namespace {

using Mask = std::uint64_t;

struct ClauseMask {
    Mask pos = 0;
    Mask neg = 0;
};

std::vector<ClauseMask> clause_masks(const CnfFormula& f) {
    std::vector<ClauseMask> out;
    out.reserve(f.clauses.size());
    for (const auto& clause : f.clauses) {
        ClauseMask m;
        for (const auto& l : clause)
            (l.positive ? m.pos : m.neg) |= Mask{1} << (l.var - 1);
        out.push_back(m);
    }
    return out;
}

bool satisfied(const std::vector<ClauseMask>& clauses, Mask assignment) {
    for (const auto& c : clauses)
        if (((assignment & c.pos) | (~assignment & c.neg)) == 0)
            return false;
    return true;
}

void check_sat_cap(std::size_t vars, const Limits& limits) {
    const auto cap = std::min(limits.sat_vars, Limits::hard_max);
    if (vars > cap)
        throw cap_error("brute_sat: " + std::to_string(vars) + " variables exceed the cap of " +
                        std::to_string(cap));
}

// Lexicographic rank r (variable 1 most significant) -> assignment mask.
Mask mask_from_rank(Mask rank, std::size_t n) {
    Mask m = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (rank >> (n - 1 - i) & 1)
            m |= Mask{1} << i;
    return m;
}

} // namespace

SatResult brute_sat(const CnfFormula& f, const Limits& limits) {
    f.validate();
    check_sat_cap(f.num_vars, limits);
    const auto clauses = clause_masks(f);
    const Mask total = Mask{1} << f.num_vars;
    for (Mask rank = 0; rank < total; ++rank) {
        const Mask a = mask_from_rank(rank, f.num_vars);
        if (satisfied(clauses, a)) {
            SatResult r{true, {}};
            for (VarId v = 1; v <= f.num_vars; ++v)
                r.witness[v] = (a >> (v - 1)) & 1;
            return r;
        }
    }
    return {};
}

std::vector<std::uint64_t> enumerate_models(const CnfFormula& f, const Limits& limits) {
    f.validate();
    check_sat_cap(f.num_vars, limits);
    const auto clauses = clause_masks(f);
    std::vector<std::uint64_t> out;
    const Mask total = Mask{1} << f.num_vars;
    for (Mask a = 0; a < total; ++a)
        if (satisfied(clauses, a))
            out.push_back(a);
    return out;
}

AdversarialResult brute_adversarial(const AdversarialSatInstance& a, const Limits& limits) {
    a.validate();
    const auto quantified = a.x.size() + a.y.size();
    const auto cap = std::min(limits.adversarial_vars, Limits::hard_max);
    if (quantified > cap)
        throw cap_error("brute_adversarial: |X|+|Y|=" + std::to_string(quantified) +
                        " exceeds the cap of " + std::to_string(cap));

    const auto clauses = clause_masks(a.formula);
    const auto nx = a.x.size();
    const auto ny = a.y.size();
    for (Mask rank = 0; rank < (Mask{1} << nx); ++rank) {
        // Rank 0 is all-TRUE: bit (nx-1-i) of the rank set means x_i = FALSE.
        Mask base = 0;
        for (std::size_t i = 0; i < nx; ++i)
            if (!(rank >> (nx - 1 - i) & 1))
                base |= Mask{1} << (a.x[i] - 1);
        bool some_model = false;
        for (Mask ys = 0; ys < (Mask{1} << ny) && !some_model; ++ys) {
            Mask full = base;
            for (std::size_t j = 0; j < ny; ++j)
                if (ys >> j & 1)
                    full |= Mask{1} << (a.y[j] - 1);
            some_model = satisfied(clauses, full);
        }
        if (!some_model) {
            AdversarialResult r{true, {}};
            for (auto v : a.x)
                r.x_assignment[v] = (base >> (v - 1)) & 1;
            return r;
        }
    }
    return {};
}

std::vector<VarId> VarMapping::first_copies() const {
    std::vector<VarId> out;
    out.reserve(copies.size());
    for (const auto& c : copies)
        out.push_back(c.front());
    return out;
}

Sat22Result to_sat22(const CnfFormula& f) {
    f.validate();
    const auto n = f.num_vars;

    struct Occurrence {
        std::size_t clause;
        std::size_t position;
        bool positive;
    };
    std::vector<std::vector<Occurrence>> occurrences(n);
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const auto& clause = f.clauses[c];
        if (clause.empty() || clause.size() > 3)
            throw validation_error("clause " + std::to_string(c) + " has " +
                                   std::to_string(clause.size()) +
                                   " literals; a 3-CNF needs 1 to 3");
        for (std::size_t p = 0; p < clause.size(); ++p)
            occurrences[clause[p].var - 1].push_back({c, p, clause[p].positive});
    }

    bool mixed = false;
    for (VarId v = 1; v <= n; ++v) {
        const auto& occ = occurrences[v - 1];
        if (occ.empty())
            throw validation_error("variable " + std::to_string(v) + " does not occur");
        bool pos = false;
        bool neg = false;
        for (const auto& o : occ)
            (o.positive ? pos : neg) = true;
        mixed = mixed || (pos && neg);
    }
    if (!mixed)
        throw validation_error(
            "no variable occurs both negated and unnegated; the rest clause would not be implied");

    Sat22Result r;
    r.mapping.copies.resize(n);
    VarId next = 1;
    for (VarId v = 1; v <= n; ++v)
        for (std::size_t j = 0; j < occurrences[v - 1].size(); ++j)
            r.mapping.copies[v - 1].push_back(next++);
    r.formula.num_vars = next - 1;

    // The j-th occurrence of u_i becomes z_i^j with the original polarity.
    r.formula.clauses = f.clauses;
    for (VarId v = 1; v <= n; ++v) {
        const auto& occ = occurrences[v - 1];
        for (std::size_t j = 0; j < occ.size(); ++j)
            r.formula.clauses[occ[j].clause][occ[j].position] = {r.mapping.copies[v - 1][j],
                                                                 occ[j].positive};
    }

    for (VarId v = 1; v <= n; ++v) {
        const auto& z = r.mapping.copies[v - 1];
        const auto k = z.size();
        if (k == 1)
            r.warnings.push_back("variable " + std::to_string(v) +
                                 " occurs once; its consistency clause is a tautology");
        for (std::size_t j = 0; j < k; ++j)
            r.formula.clauses.push_back({{z[j], true}, {z[(j + 1) % k], false}});
    }

    // Each copy now has one positive and one negative consistency occurrence
    // plus its clause occurrence; the rest clause adds the complement of the
    // latter so every copy ends at exactly 2 + 2.
    Clause rest;
    for (VarId v = 1; v <= n; ++v) {
        const auto& occ = occurrences[v - 1];
        for (std::size_t j = 0; j < occ.size(); ++j)
            rest.push_back({r.mapping.copies[v - 1][j], !occ[j].positive});
    }
    std::sort(rest.begin(), rest.end(), [](const Literal& a, const Literal& b) {
        return a.var != b.var ? a.var < b.var : a.positive && !b.positive;
    });
    r.formula.clauses.push_back(std::move(rest));
    return r;
}

AdversarializeResult adversarialize(const AdversarialSatInstance& a3) {
    a3.validate();
    auto sat22 = to_sat22(a3.formula);

    AdversarializeResult r;
    r.mapping = sat22.mapping;
    r.warnings = std::move(sat22.warnings);
    r.instance.formula = std::move(sat22.formula);

    std::set<VarId> x;
    for (auto v : a3.x)
        x.insert(r.mapping.copies[v - 1].front());
    r.instance.x.assign(x.begin(), x.end());
    for (VarId z = 1; z <= r.instance.formula.num_vars; ++z)
        if (!x.count(z))
            r.instance.y.push_back(z);
    return r;
}

bool evaluate(const CnfFormula& f, const Assignment& assignment) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (const auto& l : clause) {
            auto it = assignment.find(l.var);
            if (it != assignment.end() && it->second == l.positive) {
                sat = true;
                break;
            }
        }
        if (!sat)
            return false;
    }
    return true;
}

namespace {

int parse_int(const std::string& token, std::size_t line) {
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (token.empty() || *end != '\0' || value > 1'000'000'000 || value < -1'000'000'000)
        throw parse_error("line " + std::to_string(line) + ": expected an integer, got '" +
                          token + "'");
    return static_cast<int>(value);
}

} // namespace

FormulaDocument parse_formula(std::string_view text) {
    FormulaDocument doc;
    auto& f = doc.instance.formula;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    Clause current;
    std::set<VarId> xs;
    std::set<VarId> ys;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string head;
        if (!(line >> head) || head == "c" || head[0] == 'c' || head[0] == '%')
            continue;
        if (head == "p") {
            std::string kind;
            std::string vars;
            std::string count;
            if (have_header || !(line >> kind >> vars >> count) || (kind != "cnf" && kind != "acnf"))
                throw parse_error("line " + std::to_string(line_no) +
                                  ": expected a single 'p cnf|acnf <vars> <clauses>' header");
            const int nv = parse_int(vars, line_no);
            const int nc = parse_int(count, line_no);
            if (nv < 0 || nc < 0)
                throw parse_error("line " + std::to_string(line_no) + ": negative header count");
            f.num_vars = static_cast<std::size_t>(nv);
            declared_clauses = static_cast<std::size_t>(nc);
            doc.quantified = kind == "acnf";
            have_header = true;
            continue;
        }
        if (!have_header)
            throw parse_error("line " + std::to_string(line_no) + ": content before 'p' header");
        if (head == "x" || head == "y") {
            doc.quantified = true;
            auto& target = head == "x" ? xs : ys;
            std::string token;
            bool closed = false;
            while (line >> token) {
                const int v = parse_int(token, line_no);
                if (v == 0) {
                    closed = true;
                    break;
                }
                if (v < 0)
                    throw parse_error("line " + std::to_string(line_no) +
                                      ": quantifier lines list positive variable ids");
                target.insert(static_cast<VarId>(v));
            }
            if (!closed)
                throw parse_error("line " + std::to_string(line_no) +
                                  ": quantifier line must end with 0");
            continue;
        }
        std::string token = head;
        do {
            const int v = parse_int(token, line_no);
            if (v == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(Literal::from_dimacs(v));
            }
        } while (line >> token);
    }
    if (!have_header)
        throw parse_error("missing 'p cnf|acnf' header");
    if (!current.empty())
        throw parse_error("last clause is not terminated by 0");
    if (f.clauses.size() != declared_clauses)
        throw parse_error("header declares " + std::to_string(declared_clauses) +
                          " clauses but " + std::to_string(f.clauses.size()) + " were read");

    doc.instance.x.assign(xs.begin(), xs.end());
    doc.instance.y.assign(ys.begin(), ys.end());
    f.validate();
    if (doc.quantified)
        doc.instance.validate();
    return doc;
}

FormulaDocument load_formula(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open formula file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_formula(buf.str());
}

namespace {

void write_clauses(std::ostringstream& out, const CnfFormula& f) {
    for (const auto& clause : f.clauses) {
        for (const auto& l : clause)
            out << l.to_dimacs() << ' ';
        out << "0\n";
    }
}

} // namespace

std::string write_formula(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    write_clauses(out, f);
    return out.str();
}

std::string write_formula(const AdversarialSatInstance& a) {
    std::ostringstream out;
    out << "p acnf " << a.formula.num_vars << ' ' << a.formula.clauses.size() << '\n';
    out << 'x';
    for (auto v : a.x)
        out << ' ' << v;
    out << " 0\ny";
    for (auto v : a.y)
        out << ' ' << v;
    out << " 0\n";
    write_clauses(out, a.formula);
    return out.str();
}

} // namespace stackelkep
