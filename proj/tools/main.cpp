// stackelkep command line. Talks to the library only through stackelkep.h.
#include "stackelkep.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

enum exit_code { exit_ok = 0, exit_mismatch = 1, exit_invalid = 2, exit_cap = 3 };

int to_exit(skep_status s) {
    switch (s) {
    case SKEP_OK: return exit_ok;
    case SKEP_MISMATCH: return exit_mismatch;
    case SKEP_ERR_CAP: return exit_cap;
    case SKEP_ERR_VALIDATION:
    case SKEP_ERR_PARSE:
    case SKEP_ERR_IO:
    case SKEP_ERR_INVALID_ARGUMENT: return exit_invalid;
    case SKEP_ERR_INTERNAL: return exit_mismatch;
    }
    return exit_mismatch;
}

// Thrown to unwind with an exit code once the message has been printed.
struct failure {
    int code;
};

void check(skep_status s) {
    if (s == SKEP_OK)
        return;
    std::cerr << "stackelkep: " << skep_status_name(s) << ": " << skep_last_error() << "\n";
    throw failure{to_exit(s)};
}

struct string_deleter {
    void operator()(char* s) const { skep_string_free(s); }
};
using owned_string = std::unique_ptr<char, string_deleter>;

struct limits_deleter {
    void operator()(skep_limits* l) const { skep_limits_free(l); }
};
struct instance_deleter {
    void operator()(skep_instance* i) const { skep_instance_free(i); }
};
struct formula_deleter {
    void operator()(skep_formula* f) const { skep_formula_free(f); }
};
using limits_ptr = std::unique_ptr<skep_limits, limits_deleter>;
using instance_ptr = std::unique_ptr<skep_instance, instance_deleter>;
using formula_ptr = std::unique_ptr<skep_formula, formula_deleter>;

void emit(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "stackelkep: cannot write '" << path << "'\n";
        throw failure{exit_invalid};
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "stackelkep: cannot open '" << path << "'\n";
        throw failure{exit_invalid};
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct common_flags {
    std::string out;
    bool pretty = false;
    unsigned threads = 1;
    bool unbounded = false;
    std::string caps;

    void attach(CLI::App* app) {
        app->add_option("--out,-o", out, "output file (default: standard output)");
        app->add_flag("--pretty", pretty, "human-readable text instead of JSON");
        app->add_option("--threads", threads, "worker threads for exhaustive enumeration")
            ->check(CLI::PositiveNumber);
        app->add_flag("--i-know-this-is-exponential", unbounded,
                      "raise every search guard to its hard maximum");
        app->add_option("--caps", caps, "guard overrides, e.g. leader_nodes=16,sat_vars=20");
    }

    // defaults < STACKELKEP_CAPS < --i-know-this-is-exponential < --caps
    limits_ptr limits() const {
        skep_limits* raw = nullptr;
        check(skep_limits_from_env(&raw));
        limits_ptr l(raw);
        if (unbounded)
            check(skep_limits_unbounded(l.get()));
        if (!caps.empty())
            check(skep_limits_apply(l.get(), caps.c_str()));
        return l;
    }
};

formula_ptr load_formula(const std::string& path) {
    skep_formula* f = nullptr;
    check(skep_formula_load(path.c_str(), &f));
    return formula_ptr(f);
}

instance_ptr load_instance(const std::string& path) {
    skep_instance* i = nullptr;
    check(skep_instance_load(path.c_str(), &i));
    return instance_ptr(i);
}

void print_warnings(const char* warnings) {
    if (warnings && *warnings)
        std::cerr << warnings;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stackelberg kidney exchange toolkit"};
    app.require_subcommand(1);

    // solve
    common_flags solve_flags;
    std::string solve_instance;
    std::string solve_mode = "exact";
    std::optional<long long> solve_decision;
    bool solve_table = false;
    std::string solve_packing_out;
    auto* solve = app.add_subcommand("solve", "best leader strategy of an instance");
    solve->add_option("--instance,-i", solve_instance, "instance JSON")->required();
    solve->add_option("--mode", solve_mode, "exact or k2")->check(CLI::IsMember({"exact", "k2"}));
    solve->add_option("--decision", solve_decision, "threshold k, overriding the instance");
    solve->add_flag("--table", solve_table, "include the value of every strategy");
    solve->add_option("--packing-out", solve_packing_out,
                      "write the follower packing of the contributed pool");
    solve_flags.attach(solve);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "formula transforms and the KEP reduction");
    reduce->require_subcommand(1);
    common_flags reduce_flags;
    std::string reduce_formula;
    std::string reduce_sat22_out;
    auto* sat3 = reduce->add_subcommand("sat3-to-sat22", "3-CNF to an equisatisfiable (2,2) formula");
    auto* adv = reduce->add_subcommand("adv-to-kep", "adversarial (2,2) formula to a KEP instance");
    auto* full = reduce->add_subcommand("full", "3-CNF to (2,2), adversarialize, then to KEP");
    for (auto* sub : {sat3, adv, full}) {
        sub->add_option("--formula,-f", reduce_formula, "formula file")->required();
        reduce_flags.attach(sub);
    }
    full->add_option("--sat22-out", reduce_sat22_out, "also write the adversarial (2,2) formula");

    // verify
    common_flags verify_flags;
    std::string verify_formula;
    bool verify_equisat = false;
    std::optional<long long> verify_decision;
    auto* verify = app.add_subcommand("verify", "check the reduction against brute force");
    verify->add_option("--formula,-f", verify_formula, "formula file")->required();
    verify->add_flag("--equisat", verify_equisat, "check the (2,2) transform instead");
    verify->add_option("--decision", verify_decision, "threshold k (default 4|X|+1)");
    verify_flags.attach(verify);

    // gen
    auto* gen = app.add_subcommand("gen", "seeded random instances");
    gen->require_subcommand(1);
    common_flags gen_flags;
    std::uint64_t seed = 0;
    std::size_t gen_nodes = 8;
    std::size_t gen_leaders = 0;
    double gen_density = 0.3;
    int gen_K = 2;
    auto* gen_kep = gen->add_subcommand("kep", "random KEP instance");
    gen_kep->add_option("--nodes", gen_nodes, "node count");
    gen_kep->add_option("--leader", gen_leaders, "leader nodes (the first ids)");
    gen_kep->add_option("--density", gen_density, "arc probability")->check(CLI::Range(0.0, 1.0));
    gen_kep->add_option("--K", gen_K, "maximum cycle length")->check(CLI::Range(2, 64));
    std::size_t gen_x = 1;
    std::size_t gen_y = 1;
    std::optional<std::size_t> gen_clauses;
    auto* gen_asat = gen->add_subcommand("asat", "random adversarial (2,2) formula");
    gen_asat->add_option("--vars-x", gen_x, "existential variables of the 3-CNF");
    gen_asat->add_option("--vars-y", gen_y, "universal variables of the 3-CNF");
    gen_asat->add_option("--clauses", gen_clauses, "clauses of the 3-CNF (default vars+1)");
    for (auto* sub : {gen_kep, gen_asat}) {
        sub->add_option("--seed", seed, "random seed");
        gen_flags.attach(sub);
    }

    // classify
    common_flags classify_flags;
    std::string classify_instance;
    std::string classify_packing;
    auto* classify = app.add_subcommand("classify", "gadget classes of a packing on a reduced instance");
    classify->add_option("--instance,-i", classify_instance, "reduced instance JSON")->required();
    classify->add_option("--packing,-p", classify_packing, "packing JSON")->required();
    classify_flags.attach(classify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_invalid;
    }

    try {
        if (*solve) {
            auto limits = solve_flags.limits();
            auto inst = load_instance(solve_instance);
            skep_solve_options o;
            skep_solve_options_init(&o);
            o.limits = limits.get();
            o.mode = solve_mode == "k2" ? SKEP_MODE_K2 : SKEP_MODE_EXACT;
            o.has_threshold = solve_decision.has_value();
            o.threshold = solve_decision.value_or(0);
            o.table = solve_table;
            o.pretty = solve_flags.pretty;
            o.threads = solve_flags.threads;
            char* report = nullptr;
            char* packing = nullptr;
            check(skep_solve(inst.get(), &o, &report, &packing));
            owned_string r(report), p(packing);
            emit(solve_flags.out, r.get());
            if (!solve_packing_out.empty())
                emit(solve_packing_out, p.get());
            return exit_ok;
        }

        if (*reduce) {
            auto f = load_formula(reduce_formula);
            if (*sat3) {
                skep_formula* out = nullptr;
                char* warnings = nullptr;
                check(skep_reduce_sat3_to_sat22(f.get(), &out, &warnings));
                formula_ptr g(out);
                owned_string w(warnings);
                print_warnings(w.get());
                char* text = nullptr;
                check(skep_formula_to_text(g.get(), &text));
                owned_string t(text);
                emit(reduce_flags.out, t.get());
                return exit_ok;
            }
            skep_instance* inst = nullptr;
            formula_ptr sat22;
            if (*adv) {
                int valid = 0;
                char* profile = nullptr;
                check(skep_formula_validate_22(f.get(), &valid, &profile));
                owned_string pr(profile);
                if (!valid) {
                    std::cerr << "stackelkep: validation error: formula is not (2,2); occurrence profile "
                              << pr.get();
                    return exit_invalid;
                }
                check(skep_reduce_adv_to_kep(f.get(), &inst));
            } else {
                skep_formula* g = nullptr;
                char* warnings = nullptr;
                check(skep_reduce_full(f.get(), &g, &inst, &warnings));
                sat22.reset(g);
                owned_string w(warnings);
                print_warnings(w.get());
            }
            instance_ptr i(inst);
            char* json = nullptr;
            check(skep_instance_to_json(i.get(), &json));
            owned_string j(json);
            emit(reduce_flags.out, j.get());
            if (sat22 && !reduce_sat22_out.empty()) {
                char* text = nullptr;
                check(skep_formula_to_text(sat22.get(), &text));
                owned_string t(text);
                emit(reduce_sat22_out, t.get());
            }
            return exit_ok;
        }

        if (*verify) {
            auto limits = verify_flags.limits();
            auto f = load_formula(verify_formula);
            skep_verify_options o;
            skep_verify_options_init(&o);
            o.limits = limits.get();
            o.has_threshold = verify_decision.has_value();
            o.threshold = verify_decision.value_or(0);
            o.pretty = verify_flags.pretty;
            o.threads = verify_flags.threads;
            char* verdict = nullptr;
            const auto status =
                verify_equisat ? skep_verify_equisat(f.get(), &o, &verdict) : skep_verify(f.get(), &o, &verdict);
            owned_string v(verdict);
            if (v)
                emit(verify_flags.out, v.get());
            if (status == SKEP_MISMATCH) {
                std::cerr << "stackelkep: " << skep_last_error() << "\n";
                return exit_mismatch;
            }
            check(status);
            return exit_ok;
        }

        if (*gen) {
            if (*gen_kep) {
                skep_instance* inst = nullptr;
                check(skep_gen_kep(gen_nodes, gen_leaders, gen_density, gen_K, seed, &inst));
                instance_ptr i(inst);
                char* json = nullptr;
                check(skep_instance_to_json(i.get(), &json));
                owned_string j(json);
                emit(gen_flags.out, j.get());
            } else {
                skep_formula* f = nullptr;
                check(skep_gen_asat(gen_x, gen_y, gen_clauses.value_or(gen_x + gen_y + 1), seed, &f));
                formula_ptr g(f);
                char* text = nullptr;
                check(skep_formula_to_text(g.get(), &text));
                owned_string t(text);
                emit(gen_flags.out, t.get());
            }
            return exit_ok;
        }

        if (*classify) {
            auto inst = load_instance(classify_instance);
            const auto packing = slurp(classify_packing);
            char* out = nullptr;
            check(skep_classify(inst.get(), packing.c_str(), classify_flags.pretty, &out));
            owned_string o(out);
            emit(classify_flags.out, o.get());
            return exit_ok;
        }
    } catch (const failure& f) {
        return f.code;
    }
    return exit_invalid;
}
