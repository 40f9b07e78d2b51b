#include "fixtures.hpp"
#include "oracles.hpp"

#include "stackelkep/error.hpp"
#include "stackelkep/generate.hpp"
#include "stackelkep/sat.hpp"

#include <doctest.h>

using namespace stackelkep;
using fixture::cnf;

TEST_CASE("literals") {
    CHECK(Literal::from_dimacs(-3).var == 3);
    CHECK_FALSE(Literal::from_dimacs(-3).positive);
    CHECK(Literal::from_dimacs(4).to_dimacs() == 4);
    CHECK(Literal::from_dimacs(4).negated().to_dimacs() == -4);
    CHECK_THROWS_AS(Literal::from_dimacs(0), Error);
}

TEST_CASE("validate_22") {
    auto good = fixture::esat1().formula;
    auto v = validate_22(good);
    CHECK(v.valid);
    REQUIRE(v.profile.size() == 2);
    CHECK(v.profile[0].positive == 2);
    CHECK(v.profile[0].negative == 2);

    auto bad = cnf(2, {{1, 2}, {-1}});
    auto b = validate_22(bad);
    CHECK_FALSE(b.valid);
    CHECK(b.profile[1].positive == 1);
    CHECK(b.profile[1].negative == 0);
}

TEST_CASE("brute_sat") {
    auto empty = cnf(2, {});
    auto r = brute_sat(empty);
    CHECK(r.satisfiable);
    CHECK(r.witness == Assignment{{1, false}, {2, false}});

    CHECK_FALSE(brute_sat(cnf(1, {{1}, {-1}})).satisfiable);

    auto phi = brute_sat(fixture::phi_ex());
    CHECK(phi.satisfiable);
    CHECK(evaluate(fixture::phi_ex(), phi.witness));
    CHECK(evaluate(fixture::phi_ex(), {{1, true}, {2, false}, {3, false}}));

    Limits limits;
    limits.sat_vars = 2;
    CHECK_THROWS_AS(brute_sat(fixture::phi_ex(), limits), Error);
}

TEST_CASE("brute_adversarial") {
    auto yes = brute_adversarial(fixture::esat1());
    CHECK(yes.yes);
    CHECK(yes.x_assignment == Assignment{{1, true}});

    auto no = brute_adversarial(fixture::esat2());
    CHECK_FALSE(no.yes);
    CHECK(no.x_assignment.empty());

    AdversarialSatInstance only_x{cnf(1, {{1}}), {1}, {}};
    auto r = brute_adversarial(only_x);
    CHECK(r.yes);
    CHECK(r.x_assignment == Assignment{{1, false}});
}

TEST_CASE("adversarial instance validation") {
    AdversarialSatInstance overlap{cnf(1, {{1}}), {1}, {1}};
    CHECK_THROWS_AS(overlap.validate(), Error);
    AdversarialSatInstance unquantified{cnf(2, {{1, 2}}), {1}, {}};
    CHECK_THROWS_AS(unquantified.validate(), Error);
}

TEST_CASE("to_sat22 on the worked formula") {
    auto r = to_sat22(fixture::phi_ex());
    CHECK(r.formula.num_vars == 6);
    REQUIRE(r.formula.clauses.size() == 9);
    CHECK(validate_22(r.formula).valid);
    CHECK(r.mapping.copies == std::vector<std::vector<VarId>>{{1, 2}, {3, 4}, {5, 6}});
    // clause copies first, with the j-th occurrence replaced by copy j
    CHECK(r.formula.clauses[0] == fixture::clause({1, 3, -5}));
    CHECK(r.formula.clauses[1] == fixture::clause({-2, -4, 6}));
    CHECK(r.formula.clauses[2] == fixture::clause({1, -2}));
    CHECK(r.formula.clauses[3] == fixture::clause({2, -1}));
    CHECK(r.formula.clauses.back() == fixture::clause({-1, 2, -3, 4, 5, -6}));
    CHECK(brute_sat(r.formula).satisfiable);
    CHECK(r.warnings.empty());
}

TEST_CASE("to_sat22 with a single occurrence warns") {
    auto f = cnf(2, {{1, 2}, {-1}});
    auto r = to_sat22(f);
    CHECK(validate_22(r.formula).valid);
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.formula.clauses.size() == 2 + 3 + 1);
    CHECK(oracle::sat(r.formula) == oracle::sat(f));
}

TEST_CASE("to_sat22 preconditions") {
    CHECK_THROWS_AS(to_sat22(cnf(2, {{1}, {-1}})), Error);         // variable 2 never occurs
    CHECK_THROWS_AS(to_sat22(cnf(2, {{1}, {2}})), Error);          // no mixed polarity
    CHECK_THROWS_AS(to_sat22(cnf(2, {{1, 2, 1, -2}, {-1}})), Error); // clause wider than 3
}

TEST_CASE("unsatisfiable formula stays unsatisfiable") {
    CnfFormula all8;
    all8.num_vars = 3;
    for (int m = 0; m < 8; ++m)
        all8.clauses.push_back(fixture::clause({m & 1 ? 1 : -1, m & 2 ? 2 : -2, m & 4 ? 3 : -3}));
    auto r = to_sat22(all8);
    CHECK(validate_22(r.formula).valid);
    CHECK_FALSE(oracle::sat(r.formula));
}

TEST_CASE("adversarialize") {
    AdversarialSatInstance a3{fixture::phi_ex(), {1}, {2, 3}};
    auto r = adversarialize(a3);
    CHECK(r.instance.x == std::vector<VarId>{1});
    CHECK(r.instance.y == std::vector<VarId>{2, 3, 4, 5, 6});
    CHECK(validate_22(r.instance.formula).valid);

    AdversarialSatInstance no_y{fixture::phi_ex(), {1, 2, 3}, {}};
    auto n = adversarialize(no_y);
    CHECK(n.instance.x == std::vector<VarId>{1, 3, 5});
    CHECK(n.instance.y == std::vector<VarId>{2, 4, 6});
}

TEST_CASE("satisfying assignments of the (2,2) image keep copies equal") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_3cnf(rng.between(1, 4), rng.between(2, 6), rng);
        auto r = to_sat22(f);
        CHECK(validate_22(r.formula).valid);
        CHECK(brute_sat(r.formula).satisfiable == oracle::sat(f));
        for (auto model : enumerate_models(r.formula)) {
            for (const auto& copies : r.mapping.copies) {
                const bool first = model >> (copies[0] - 1) & 1;
                for (auto c : copies)
                    CHECK(static_cast<bool>(model >> (c - 1) & 1) == first);
            }
        }
    }
}

TEST_CASE("formula text round trip") {
    auto text = write_formula(fixture::esat1());
    auto doc = parse_formula(text);
    CHECK(doc.quantified);
    CHECK(doc.instance == fixture::esat1());

    auto plain = parse_formula("c comment\np cnf 3 2\n1 2 -3 0 -1\n-2 3 0\n");
    CHECK_FALSE(plain.quantified);
    CHECK(plain.instance.formula == fixture::phi_ex());
    CHECK(parse_formula(write_formula(fixture::phi_ex())).instance.formula == fixture::phi_ex());
}

TEST_CASE("formula parse errors") {
    CHECK_THROWS_AS(parse_formula("1 2 0\n"), Error);               // no header
    CHECK_THROWS_AS(parse_formula("p cnf 2 2\n1 2 0\n"), Error);    // clause count
    CHECK_THROWS_AS(parse_formula("p cnf 2 1\n1 3 0\n"), Error);    // variable out of range
    CHECK_THROWS_AS(parse_formula("p cnf 2 1\n1 x 0\n"), Error);    // junk token
    CHECK_THROWS_AS(parse_formula("p cnf 2 1\n1 2\n"), Error);      // unterminated clause
    CHECK_THROWS_AS(load_formula("/nonexistent/formula.cnf"), Error);
}
