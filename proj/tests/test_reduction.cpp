#include "fixtures.hpp"
#include "oracles.hpp"

#include "stackelkep/error.hpp"
#include "stackelkep/generate.hpp"
#include "stackelkep/packing.hpp"
#include "stackelkep/reduction.hpp"

#include <doctest.h>

using namespace stackelkep;

namespace {

CyclePacking packing_of(const KepInstance& inst, std::vector<std::vector<std::string>> cycles) {
    CyclePacking p;
    for (const auto& c : cycles) {
        std::vector<NodeId> ids;
        for (const auto& label : c)
            ids.push_back(inst.id_of(label));
        p.cycles.push_back(canonical_cycle(ids));
    }
    p.normalize();
    return p;
}

} // namespace

TEST_CASE("reduced yes-instance has the expected shape") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& inst = r.instance;
    CHECK(inst.size() == 25);
    CHECK(inst.leaders().size() == 5);
    CHECK(inst.followers().size() == 20);
    CHECK(inst.arcs().size() == 56);
    CHECK(inst.max_cycle_length() == 3);
    CHECK(inst.threshold() == 5);
    CHECK(inst.display_name(0) == "t[1,1]");
    CHECK(inst.display_name(10) == "tau[2,1]");
    CHECK(inst.display_name(20) == "delta[0]");
    CHECK(inst.display_name(24) == "d");
    // first unnegated occurrence of x is clause 0, first negated is clause 2
    CHECK(inst.has_arc(inst.id_of("beta[1,t,1]"), inst.id_of("delta[0]")));
    CHECK(inst.has_arc(inst.id_of("beta[1,f,1]"), inst.id_of("delta[2]")));
    CHECK(inst.has_arc(inst.id_of("beta[2,f,2]"), inst.id_of("delta[3]")));
    CHECK(inst.has_arc(inst.id_of("delta[3]"), inst.id_of("d")));
}

TEST_CASE("empty formula reduces to the lone d node") {
    AdversarialSatInstance empty;
    auto r = reduce_to_kep(empty);
    CHECK(r.instance.size() == 1);
    CHECK(r.instance.arcs().empty());
    CHECK(r.instance.threshold() == 1);
    CHECK(r.instance.owner(0) == Owner::Leader);
    auto v = verify_reduction(empty);
    CHECK_FALSE(v.kep_decision);
    CHECK(v.equal);
}

TEST_CASE("reduction rejects non-(2,2) formulas with the profile") {
    AdversarialSatInstance bad{fixture::cnf(2, {{1, 2}, {-1}}), {1}, {2}};
    try {
        reduce_to_kep(bad);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        CHECK(std::string(e.what()).find("2:(1,0)") != std::string::npos);
    }
}

TEST_CASE("count formulas on random reductions") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto nx = rng.between(0, 3);
        const auto ny = rng.between(0, 3);
        const auto tokens = 4 * (nx + ny);
        const auto nc = tokens == 0 ? 0 : rng.between((tokens + 2) / 3, tokens);
        auto a = random_adversarial_22(nx, ny, nc, rng);
        auto r = reduce_to_kep(a);
        CHECK(r.instance.leaders().size() == 4 * nx + 1);
        CHECK(r.instance.followers().size() == 6 * nx + 10 * ny + nc);
        CHECK(r.instance.arcs().size() == 24 * (nx + ny) + 2 * nc);
    }
}

TEST_CASE("role map") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& roles = r.roles;
    CHECK(roles.x_vars() == std::vector<VarId>{1});
    CHECK(roles.y_vars() == std::vector<VarId>{2});
    CHECK(roles.clause_count() == 4);
    CHECK(roles.d() == 24);
    const auto& g = roles.gadget(2);
    CHECK(g.side == Side::Y);
    CHECK(r.instance.display_name(g.f[1]) == "phi[2,2]");
    CHECK(roles.gadget_of(g.alpha[0]) == &g);
    CHECK(roles.gadget_of(roles.d()) == nullptr);
    CHECK(roles.betas().size() == 8);

    SUBCASE("labels that break the grammar are rejected") {
        using fixture::F;
        using fixture::L;
        auto odd = fixture::make({{L, "d"}, {F, "gamma[1]"}}, {}, 3);
        CHECK_THROWS_AS(RoleMap::from_instance(odd), Error);
        auto wrong_owner = fixture::make({{F, "d"}}, {}, 3);
        CHECK_THROWS_AS(RoleMap::from_instance(wrong_owner), Error);
        auto incomplete = fixture::make({{L, "d"}, {L, "t[1,1]"}}, {}, 3);
        CHECK_THROWS_AS(RoleMap::from_instance(incomplete), Error);
    }
}

TEST_CASE("strategy and assignment conversions") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& inst = r.instance;
    const NodeSet t{inst.id_of("t[1,1]"), inst.id_of("t[1,2]")};
    const NodeSet f{inst.id_of("f[1,1]"), inst.id_of("f[1,2]")};
    CHECK(strategy_from_assignment(r.roles, {{1, true}}) == t);
    CHECK(strategy_from_assignment(r.roles, {{1, false}}) == f);
    CHECK(assignment_from_strategy(r.roles, t) == Assignment{{1, true}});
    CHECK(assignment_from_strategy(r.roles, f) == Assignment{{1, false}});
    CHECK_THROWS_AS(assignment_from_strategy(r.roles, NodeSet{inst.id_of("t[1,1]")}), Error);
    CHECK_THROWS_AS(strategy_from_assignment(r.roles, {}), Error);
    CHECK_THROWS_AS(strategy_from_assignment(r.roles, {{1, true}, {2, true}}), Error);

    AdversarialSatInstance only_y{fixture::cnf(1, {{1, -1}, {1, -1}}), {}, {1}};
    auto ry = reduce_to_kep(only_y);
    CHECK(strategy_from_assignment(ry.roles, {}).empty());
}

TEST_CASE("cycle types") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& inst = r.instance;
    auto p = packing_of(inst, {{"alpha[1,1]", "beta[1,t,1]", "t[1,1]"},
                               {"beta[1,t,2]", "delta[1]"},
                               {"delta[0]", "d"}});
    auto types = classify_cycles(inst, r.roles, p);
    // normalized order: the gadget cycle (ids 0..) first, then beta-delta, then delta-d
    REQUIRE(types.size() == 3);
    CHECK(types[0] == CycleType::Type1);
    CHECK(types[1] == CycleType::Type2);
    CHECK(types[2] == CycleType::Type3);
}

TEST_CASE("gadget classes") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& inst = r.instance;
    auto cls = [&](std::vector<std::vector<std::string>> cycles, VarId var) {
        return classify_gadget(inst, r.roles, packing_of(inst, cycles), var);
    };
    CHECK(cls({{"alpha[1,1]", "beta[1,f,1]", "f[1,1]"}, {"alpha[1,2]", "beta[1,f,2]", "f[1,2]"}}, 1) ==
          GadgetClass::ConsistentTrue);
    CHECK(cls({{"alpha[1,1]", "beta[1,t,1]", "t[1,1]"}, {"alpha[1,2]", "beta[1,t,2]", "t[1,2]"}}, 1) ==
          GadgetClass::ConsistentFalse);
    CHECK(cls({{"t[1,1]", "t[1,2]"}}, 1) == GadgetClass::Cheating);
    CHECK(cls({{"alpha[2,1]", "beta[2,t,1]", "tau[2,1]"}, {"alpha[2,2]", "beta[2,f,2]", "phi[2,2]"}}, 2) ==
          GadgetClass::Zigzag);
    CHECK(cls({{"alpha[2,1]", "beta[2,f,1]", "phi[2,1]"}, {"alpha[2,2]", "beta[2,t,2]", "tau[2,2]"}}, 2) ==
          GadgetClass::Zigzag);
    CHECK(cls({{"alpha[2,1]", "beta[2,f,1]", "phi[2,1]"},
               {"alpha[2,2]", "beta[2,f,2]", "phi[2,2]"},
               {"tau[2,1]", "tau[2,2]"}},
              2) == GadgetClass::ConsistentTrue);
    CHECK(cls({{"tau[2,1]", "tau[2,2]"}, {"phi[2,1]", "phi[2,2]"}}, 2) == GadgetClass::Cheating);
    CHECK(cls({}, 1) == GadgetClass::Other);
    CHECK(cls({}, 2) == GadgetClass::Other);
}

TEST_CASE("verify_reduction on the worked formulas") {
    auto yes = verify_reduction(fixture::esat1());
    CHECK(yes.sat_answer);
    CHECK(yes.kep_decision);
    CHECK(yes.equal);
    CHECK(yes.witness_labels == std::vector<std::string>{"t[1,1]", "t[1,2]"});
    CHECK(yes.witness_value >= 5);

    auto no = verify_reduction(fixture::esat2());
    CHECK_FALSE(no.sat_answer);
    CHECK_FALSE(no.kep_decision);
    CHECK(no.equal);
    CHECK_FALSE(no.witness_strategy.has_value());

    VerifyOptions o;
    o.threshold = 6;
    auto capped = verify_reduction(fixture::esat1(), o);
    CHECK_FALSE(capped.kep_decision);
    CHECK(capped.best_value <= 5);
}

TEST_CASE("verify_reduction guards name the oracle") {
    VerifyOptions o;
    o.limits.adversarial_vars = 1;
    try {
        verify_reduction(fixture::esat1(), o);
        FAIL("expected a cap error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
        CHECK(std::string(e.what()).find("brute_adversarial") != std::string::npos);
    }
    VerifyOptions l;
    l.limits.leader_nodes = 4;
    try {
        verify_reduction(fixture::esat1(), l);
        FAIL("expected a cap error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("solve_exact") != std::string::npos);
    }
}

TEST_CASE("optimal follower packings under the witness strategy") {
    auto r = reduce_to_kep(fixture::esat1());
    const auto& inst = r.instance;
    const auto s = strategy_from_assignment(r.roles, {{1, true}});
    const auto pool = inst.all_nodes().without(s);
    const auto packings = all_optimal_packings(inst, pool);
    REQUIRE_FALSE(packings.empty());
    for (const auto& p : packings) {
        for (const auto& g : r.roles.gadgets())
            CHECK(classify_gadget(inst, r.roles, p, g.var) != GadgetClass::Other);
        CHECK(p.covered().contains(r.roles.d()));
    }
}
