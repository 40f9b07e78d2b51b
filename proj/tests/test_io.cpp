#include "fixtures.hpp"

#include "stackelkep/error.hpp"
#include "stackelkep/generate.hpp"
#include "stackelkep/limits.hpp"
#include "stackelkep/serialize.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace stackelkep;

namespace {

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("instance json round trip") {
    auto rb = fixture::red_blue().with_threshold(2);
    const auto text = instance_to_json(rb);
    CHECK(text.back() == '\n');
    CHECK(text.rfind("{\"K\":3,\"k\":2,\"nodes\":[{\"id\":0,\"owner\":\"leader\",\"label\":\"r1\"}", 0) == 0);
    CHECK(instance_from_json(text) == rb);
    CHECK(instance_to_json(instance_from_json(text)) == text);

    KepInstance empty({}, {}, 2);
    CHECK(instance_to_json(empty) == "{\"K\":2,\"k\":null,\"nodes\":[],\"arcs\":[]}\n");
}

TEST_CASE("instance json accepts nodes in any order") {
    auto inst = instance_from_json(R"({"K":2,"k":null,"nodes":[{"id":1,"owner":"follower","label":null},
        {"id":0,"owner":"leader","label":"x"}],"arcs":[[1,0],[0,1]]})");
    CHECK(inst.owner(0) == Owner::Leader);
    CHECK(inst.display_name(1) == "1");
}

TEST_CASE("instance json errors carry a location") {
    CHECK(message_of([] { instance_from_json("{\"K\":2,"); }).find("instance") != std::string::npos);
    CHECK(message_of([] {
              instance_from_json(R"({"K":2,"k":null,"nodes":[{"id":0,"owner":"boss","label":null}],"arcs":[]})");
          }).find("nodes[0].owner") != std::string::npos);
    CHECK(message_of([] {
              instance_from_json(R"({"K":2,"k":null,"nodes":[{"id":0,"owner":"leader","label":null}],"arcs":[[0,0]]})");
          }).find("(0,0)") != std::string::npos);
    CHECK(message_of([] { instance_from_json(R"({"K":1,"k":null,"nodes":[],"arcs":[]})"); }).find("K") !=
          std::string::npos);
    CHECK(message_of([] { instance_from_json(R"({"K":2,"nodes":[],"arcs":[[0]]})"); }).find("arcs[0]") !=
          std::string::npos);
    try {
        instance_from_json("[1,");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
    }
    try {
        load_instance("/nonexistent/instance.json");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("packing json") {
    auto inst = fixture::red_blue();
    auto r = make_packing_result(CyclePacking{{canonical_cycle({0, 2, 3})}}, inst.leaders());
    const auto text = packing_to_json(r);
    CHECK(text == "{\"cycles\":[[0,2,3]],\"size\":3,\"u_covered\":1}\n");
    CHECK(packing_from_json("{\"cycles\":[[3,0,2]]}") == r.packing);
    CHECK_THROWS_AS(packing_from_json("{\"cycles\":[[]]}"), Error);
}

TEST_CASE("report and verdict json keys") {
    LeaderReport r;
    r.best_value = 2;
    r.best_strategy = NodeSet{0, 1};
    CHECK(report_to_json(r) == "{\"best_value\":2,\"best_strategy\":[0,1],\"decision\":null,\"table\":null}\n");
    std::vector<StrategyRow> rows{{NodeSet{}, 1}};
    r.decision = true;
    CHECK(report_to_json(r, &rows) ==
          "{\"best_value\":2,\"best_strategy\":[0,1],\"decision\":true,\"table\":[{\"strategy\":[],\"value\":1}]}\n");

    Verdict v;
    v.equal = true;
    CHECK(verdict_to_json(v) ==
          "{\"sat_answer\":false,\"kep_decision\":false,\"equal\":true,\"witness_strategy\":null}\n");
}

TEST_CASE("limits") {
    Limits d;
    CHECK(d.leader_nodes == 24);
    CHECK(d.sat_vars == 24);
    CHECK(d.adversarial_vars == 20);
    auto l = Limits::parse("leader_nodes=10,sat_vars=5");
    CHECK(l.leader_nodes == 10);
    CHECK(l.sat_vars == 5);
    CHECK(l.oracle_nodes == d.oracle_nodes);
    CHECK_THROWS_AS(Limits::parse("nodes=3"), Error);
    CHECK_THROWS_AS(Limits::parse("sat_vars=0"), Error);
    CHECK_THROWS_AS(Limits::parse("sat_vars=-1"), Error);
    CHECK_THROWS_AS(Limits::parse("sat_vars=100"), Error);
    CHECK(Limits::unbounded().leader_nodes == Limits::hard_max);
}

TEST_CASE("generators are reproducible") {
    Rng a(7), b(7);
    CHECK(instance_to_json(random_kep(8, 3, 0.4, 2, a)) == instance_to_json(random_kep(8, 3, 0.4, 2, b)));
    Rng c(1), d(1);
    CHECK(random_asat(1, 2, 3, c) == random_asat(1, 2, 3, d));
    Rng e(0);
    CHECK(random_kep(0, 0, 0.5, 2, e).size() == 0);
}

TEST_CASE("generated formulas meet their contracts") {
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        auto a = random_asat(1, 2, 3, rng);
        CHECK(validate_22(a.formula).valid);
        CHECK_NOTHROW(a.validate());
        auto t = random_adversarial_22(1, 1, rng.between(3, 8), rng);
        CHECK(validate_22(t.formula).valid);
        for (const auto& c : t.formula.clauses) {
            CHECK(c.size() >= 1);
            CHECK(c.size() <= 3);
        }
    }
    CHECK_THROWS_AS(random_adversarial_22(1, 0, 5, rng), Error);
    CHECK_THROWS_AS(random_kep(2, 3, 0.5, 2, rng), Error);
    CHECK_THROWS_AS(random_3cnf(4, 1, rng), Error);
}
