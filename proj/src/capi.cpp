#include "stackelkep.h"

#include "stackelkep/error.hpp"
#include "stackelkep/generate.hpp"
#include "stackelkep/limits.hpp"
#include "stackelkep/reduction.hpp"
#include "stackelkep/sat.hpp"
#include "stackelkep/serialize.hpp"
#include "stackelkep/stackelberg.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace stackelkep;

struct skep_limits {
    Limits value;
};

struct skep_instance {
    KepInstance value;
};

struct skep_formula {
    FormulaDocument value;
};

namespace {

thread_local std::string last_error;

class invalid_argument : public std::exception {
public:
    explicit invalid_argument(std::string what) : what_(std::move(what)) {}
    const char* what() const noexcept override { return what_.c_str(); }

private:
    std::string what_;
};

template <class F>
skep_status guarded(F&& f) {
    last_error.clear();
    try {
        return f();
    } catch (const Error& e) {
        last_error = e.what();
        switch (e.kind()) {
        case ErrorKind::Parse: return SKEP_ERR_PARSE;
        case ErrorKind::Validation: return SKEP_ERR_VALIDATION;
        case ErrorKind::CapExceeded: return SKEP_ERR_CAP;
        case ErrorKind::Io: return SKEP_ERR_IO;
        }
        return SKEP_ERR_INTERNAL;
    } catch (const invalid_argument& e) {
        last_error = e.what();
        return SKEP_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SKEP_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = std::string("internal error: ") + e.what();
        return SKEP_ERR_INTERNAL;
    } catch (...) {
        last_error = "internal error";
        return SKEP_ERR_INTERNAL;
    }
}

template <class T>
void need(T* p, const char* name) {
    if (!p)
        throw invalid_argument(std::string(name) + " must not be NULL");
}

char* dup(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void put(char** out, const std::string& s) {
    if (out)
        *out = dup(s);
}

Limits limits_or_default(const skep_limits* l) { return l ? l->value : Limits{}; }

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines)
        out += l + "\n";
    return out;
}

} // namespace

extern "C" {

const char* skep_last_error(void) { return last_error.c_str(); }

const char* skep_status_name(skep_status status) {
    switch (status) {
    case SKEP_OK: return "ok";
    case SKEP_MISMATCH: return "mismatch";
    case SKEP_ERR_VALIDATION: return "validation error";
    case SKEP_ERR_CAP: return "cap exceeded";
    case SKEP_ERR_IO: return "i/o error";
    case SKEP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SKEP_ERR_INTERNAL: return "internal error";
    case SKEP_ERR_PARSE: return "parse error";
    }
    return "unknown status";
}

void skep_string_free(char* s) { std::free(s); }

skep_status skep_limits_new(skep_limits** out) {
    return guarded([&] {
        need(out, "out");
        *out = new skep_limits{};
        return SKEP_OK;
    });
}

skep_status skep_limits_from_env(skep_limits** out) {
    return guarded([&] {
        need(out, "out");
        *out = new skep_limits{Limits::from_env()};
        return SKEP_OK;
    });
}

skep_status skep_limits_apply(skep_limits* limits, const char* spec) {
    return guarded([&] {
        need(limits, "limits");
        need(spec, "spec");
        limits->value = Limits::parse(spec, limits->value);
        return SKEP_OK;
    });
}

skep_status skep_limits_unbounded(skep_limits* limits) {
    return guarded([&] {
        need(limits, "limits");
        limits->value = Limits::unbounded();
        return SKEP_OK;
    });
}

skep_status skep_limits_get(const skep_limits* limits, const char* key, size_t* out) {
    return guarded([&] {
        need(limits, "limits");
        need(key, "key");
        need(out, "out");
        const std::string k = key;
        const auto& l = limits->value;
        if (k == "search_nodes")
            *out = l.search_nodes;
        else if (k == "oracle_nodes")
            *out = l.oracle_nodes;
        else if (k == "leader_nodes")
            *out = l.leader_nodes;
        else if (k == "sat_vars")
            *out = l.sat_vars;
        else if (k == "adversarial_vars")
            *out = l.adversarial_vars;
        else
            throw invalid_argument("unknown limit '" + k + "'");
        return SKEP_OK;
    });
}

void skep_limits_free(skep_limits* limits) { delete limits; }

skep_status skep_instance_load(const char* path, skep_instance** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new skep_instance{load_instance(path)};
        return SKEP_OK;
    });
}

skep_status skep_instance_parse(const char* json, skep_instance** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new skep_instance{instance_from_json(json)};
        return SKEP_OK;
    });
}

skep_status skep_instance_to_json(const skep_instance* inst, char** out) {
    return guarded([&] {
        need(inst, "inst");
        need(out, "out");
        *out = dup(instance_to_json(inst->value));
        return SKEP_OK;
    });
}

skep_status skep_instance_counts(const skep_instance* inst, size_t* nodes, size_t* leaders,
                                 size_t* arcs) {
    return guarded([&] {
        need(inst, "inst");
        if (nodes)
            *nodes = inst->value.size();
        if (leaders)
            *leaders = inst->value.leaders().size();
        if (arcs)
            *arcs = inst->value.arcs().size();
        return SKEP_OK;
    });
}

void skep_instance_free(skep_instance* inst) { delete inst; }

skep_status skep_formula_load(const char* path, skep_formula** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new skep_formula{load_formula(path)};
        return SKEP_OK;
    });
}

skep_status skep_formula_parse(const char* text, skep_formula** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new skep_formula{parse_formula(text)};
        return SKEP_OK;
    });
}

skep_status skep_formula_to_text(const skep_formula* f, char** out) {
    return guarded([&] {
        need(f, "f");
        need(out, "out");
        const auto& doc = f->value;
        *out = dup(doc.quantified ? write_formula(doc.instance) : write_formula(doc.instance.formula));
        return SKEP_OK;
    });
}

skep_status skep_formula_is_quantified(const skep_formula* f, int* out) {
    return guarded([&] {
        need(f, "f");
        need(out, "out");
        *out = f->value.quantified ? 1 : 0;
        return SKEP_OK;
    });
}

skep_status skep_formula_validate_22(const skep_formula* f, int* valid, char** profile_json) {
    return guarded([&] {
        need(f, "f");
        const auto v = validate_22(f->value.instance.formula);
        if (valid)
            *valid = v.valid ? 1 : 0;
        put(profile_json, profile_to_json(v));
        return SKEP_OK;
    });
}

void skep_formula_free(skep_formula* f) { delete f; }

void skep_solve_options_init(skep_solve_options* options) {
    if (!options)
        return;
    *options = skep_solve_options{};
    options->mode = SKEP_MODE_EXACT;
    options->threads = 1;
}

skep_status skep_solve(const skep_instance* inst, const skep_solve_options* options, char** report,
                       char** packing) {
    return guarded([&] {
        need(inst, "inst");
        need(options, "options");
        if (options->mode != SKEP_MODE_EXACT && options->mode != SKEP_MODE_K2)
            throw invalid_argument("unknown solve mode");
        SolveOptions so;
        so.limits = limits_or_default(options->limits);
        if (options->has_threshold)
            so.threshold = options->threshold;
        so.threads = options->threads;
        StackelbergSolver solver(inst->value, so);
        const auto r = options->mode == SKEP_MODE_K2 ? solver.solve_k2() : solver.solve_exact();
        std::vector<StrategyRow> table;
        if (options->table)
            table = solver.strategy_table();
        const auto* t = options->table ? &table : nullptr;
        // Build both strings before handing either out.
        const auto text = options->pretty ? report_to_text(inst->value, r, t) : report_to_json(r, t);
        const auto pack = packing_to_json(r.external);
        char* a = report ? dup(text) : nullptr;
        try {
            put(packing, pack);
        } catch (...) {
            std::free(a);
            throw;
        }
        if (report)
            *report = a;
        return SKEP_OK;
    });
}

skep_status skep_leader_value(const skep_instance* inst, const uint32_t* strategy, size_t count,
                              const skep_limits* limits, int64_t* out) {
    return guarded([&] {
        need(inst, "inst");
        need(out, "out");
        if (count > 0)
            need(strategy, "strategy");
        std::vector<NodeId> ids(strategy, strategy + count);
        *out = leader_value(inst->value, Strategy(std::move(ids)), limits_or_default(limits));
        return SKEP_OK;
    });
}

skep_status skep_reduce_sat3_to_sat22(const skep_formula* f, skep_formula** out, char** warnings) {
    return guarded([&] {
        need(f, "f");
        need(out, "out");
        auto r = to_sat22(f->value.instance.formula);
        FormulaDocument doc;
        doc.instance.formula = std::move(r.formula);
        put(warnings, join_lines(r.warnings));
        *out = new skep_formula{std::move(doc)};
        return SKEP_OK;
    });
}

skep_status skep_reduce_adv_to_kep(const skep_formula* f, skep_instance** out) {
    return guarded([&] {
        need(f, "f");
        need(out, "out");
        auto a = f->value.instance;
        if (!f->value.quantified)
            throw validation_error("adv-to-kep needs a quantified formula (`p acnf` with x/y lines)");
        *out = new skep_instance{reduce_to_kep(a).instance};
        return SKEP_OK;
    });
}

skep_status skep_reduce_full(const skep_formula* f, skep_formula** sat22, skep_instance** out,
                             char** warnings) {
    return guarded([&] {
        need(f, "f");
        need(out, "out");
        auto a3 = f->value.instance;
        if (!f->value.quantified) {
            a3.x.clear();
            a3.y.clear();
            for (VarId v = 1; v <= a3.formula.num_vars; ++v)
                a3.y.push_back(v);
        }
        auto adv = adversarialize(a3);
        auto inst = reduce_to_kep(adv.instance).instance;
        put(warnings, join_lines(adv.warnings));
        if (sat22)
            *sat22 = new skep_formula{{adv.instance, true}};
        *out = new skep_instance{std::move(inst)};
        return SKEP_OK;
    });
}

void skep_verify_options_init(skep_verify_options* options) {
    if (!options)
        return;
    *options = skep_verify_options{};
    options->threads = 1;
}

skep_status skep_verify(const skep_formula* f, const skep_verify_options* options, char** verdict) {
    return guarded([&] {
        need(f, "f");
        need(options, "options");
        if (!f->value.quantified)
            throw validation_error("verify needs a quantified formula (`p acnf` with x/y lines)");
        VerifyOptions vo;
        vo.limits = limits_or_default(options->limits);
        if (options->has_threshold)
            vo.threshold = options->threshold;
        vo.threads = options->threads;
        const auto v = verify_reduction(f->value.instance, vo);
        put(verdict, options->pretty ? verdict_to_text(v) : verdict_to_json(v));
        if (!v.equal)
            last_error = "reduction mismatch: adversarial SAT says " +
                         std::string(v.sat_answer ? "YES" : "NO") + ", Stackelberg decision says " +
                         (v.kep_decision ? "YES" : "NO") + "; this is a correctness bug";
        // On YES the witness strategy must itself reach the threshold.
        else if (v.witness_value && *v.witness_value < v.threshold) {
            last_error = "witness strategy reaches only " + std::to_string(*v.witness_value) +
                         " against threshold " + std::to_string(v.threshold) +
                         "; this is a correctness bug";
            return SKEP_MISMATCH;
        }
        return v.equal ? SKEP_OK : SKEP_MISMATCH;
    });
}

skep_status skep_verify_equisat(const skep_formula* f, const skep_verify_options* options,
                                char** verdict) {
    return guarded([&] {
        need(f, "f");
        need(options, "options");
        const auto limits = limits_or_default(options->limits);
        const auto& input = f->value.instance.formula;
        const auto output = to_sat22(input).formula;
        EquisatVerdict v;
        v.input_satisfiable = brute_sat(input, limits).satisfiable;
        v.output_satisfiable = brute_sat(output, limits).satisfiable;
        v.equal = v.input_satisfiable == v.output_satisfiable;
        if (options->pretty)
            put(verdict, std::string("input ") + (v.input_satisfiable ? "SAT" : "UNSAT") +
                             ", (2,2) image " + (v.output_satisfiable ? "SAT" : "UNSAT") +
                             (v.equal ? ", equal\n" : ", MISMATCH\n"));
        else
            put(verdict, equisat_to_json(v));
        if (!v.equal)
            last_error = "to_sat22 changed satisfiability; this is a correctness bug";
        return v.equal ? SKEP_OK : SKEP_MISMATCH;
    });
}

skep_status skep_gen_kep(size_t nodes, size_t leaders, double density, int K, uint64_t seed,
                         skep_instance** out) {
    return guarded([&] {
        need(out, "out");
        if (K < 2)
            throw validation_error("K must be at least 2");
        Rng rng(seed);
        *out = new skep_instance{random_kep(nodes, leaders, density, static_cast<std::size_t>(K), rng)};
        return SKEP_OK;
    });
}

skep_status skep_gen_asat(size_t vars_x, size_t vars_y, size_t clauses, uint64_t seed,
                          skep_formula** out) {
    return guarded([&] {
        need(out, "out");
        Rng rng(seed);
        *out = new skep_formula{{random_asat(vars_x, vars_y, clauses, rng), true}};
        return SKEP_OK;
    });
}

skep_status skep_classify(const skep_instance* inst, const char* packing_json, int pretty,
                          char** out) {
    return guarded([&] {
        need(inst, "inst");
        need(packing_json, "packing_json");
        need(out, "out");
        const auto packing = packing_from_json(packing_json);
        const auto c = classify_packing(inst->value, packing);
        *out = dup(pretty ? classification_to_text(inst->value, c)
                          : classification_to_json(inst->value, c));
        return SKEP_OK;
    });
}

} // extern "C"
