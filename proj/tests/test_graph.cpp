#include "fixtures.hpp"
#include "oracles.hpp"

#include "stackelkep/error.hpp"
#include "stackelkep/generate.hpp"

#include <doctest.h>

using namespace stackelkep;
using fixture::F;
using fixture::L;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

// Lone X-variable gadget: t1 t2 f1 f2 α1 α2 βt1 βt2 βf1 βf2.
KepInstance x_gadget() {
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < 2; ++i) {
        const NodeId t = i, f = 2 + i, a = 4 + i, bt = 6 + i, bf = 8 + i;
        arcs.insert(arcs.end(), {{a, bt}, {bt, t}, {t, a}, {a, bf}, {bf, f}, {f, a}});
    }
    arcs.insert(arcs.end(), {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    std::vector<std::pair<Owner, std::string>> nodes;
    for (auto name : {"t1", "t2", "f1", "f2"})
        nodes.push_back({L, name});
    for (auto name : {"a1", "a2", "bt1", "bt2", "bf1", "bf2"})
        nodes.push_back({F, name});
    return fixture::make(nodes, arcs, 3);
}

} // namespace

TEST_CASE("empty instance is valid") {
    KepInstance inst({}, {}, 3);
    CHECK(inst.size() == 0);
    CHECK(inst.arcs().empty());
    CHECK(enumerate_cycles(inst, inst.all_nodes()).empty());
}

TEST_CASE("constructor rejects broken input") {
    SUBCASE("self-loop names the arc") {
        auto msg = message_of([] { KepInstance({{F, {}}}, {{0, 0}}, 2); });
        CHECK(msg.find("(0,0)") != std::string::npos);
        CHECK(kind_of([] { KepInstance({{F, {}}}, {{0, 0}}, 2); }) == ErrorKind::Validation);
    }
    SUBCASE("duplicate arc") {
        CHECK(kind_of([] { KepInstance({{F, {}}, {F, {}}}, {{0, 1}, {0, 1}}, 2); }) ==
              ErrorKind::Validation);
    }
    SUBCASE("endpoint out of range") {
        CHECK(kind_of([] { KepInstance({{F, {}}}, {{0, 3}}, 2); }) == ErrorKind::Validation);
    }
    SUBCASE("K below 2") {
        CHECK(kind_of([] { KepInstance({}, {}, 1); }) == ErrorKind::Validation);
    }
    SUBCASE("duplicate label") {
        CHECK(kind_of([] { KepInstance({{F, "a"}, {L, "a"}}, {}, 2); }) == ErrorKind::Validation);
    }
}

TEST_CASE("arcs are stored sorted and successors follow them") {
    KepInstance inst({{F, {}}, {F, {}}, {F, {}}}, {{2, 0}, {0, 2}, {0, 1}}, 3);
    REQUIRE(inst.arcs().size() == 3);
    CHECK(inst.arcs()[0] == Arc{0, 1});
    CHECK(inst.arcs()[2] == Arc{2, 0});
    auto succ = inst.successors(0);
    CHECK(std::vector<NodeId>(succ.begin(), succ.end()) == std::vector<NodeId>{1, 2});
    CHECK(inst.has_arc(2, 0));
    CHECK_FALSE(inst.has_arc(1, 0));
}

TEST_CASE("node sets") {
    NodeSet a{3, 1, 2, 3};
    CHECK(a.ids() == std::vector<NodeId>{1, 2, 3});
    CHECK(a.without(NodeSet{2}).ids() == std::vector<NodeId>{1, 3});
    CHECK(a.with(0).ids() == std::vector<NodeId>{0, 1, 2, 3});
    CHECK(NodeSet{1, 3}.is_subset_of(a));
    CHECK_FALSE(NodeSet{0}.is_subset_of(a));
    // lexicographic on sorted ids: [] < [0] < [0,1] < [1]
    CHECK(NodeSet{} < NodeSet{0});
    CHECK(NodeSet{0} < NodeSet{0, 1});
    CHECK(NodeSet{0, 1} < NodeSet{1});
}

TEST_CASE("induced subgraph") {
    const auto inst = fixture::red_blue();
    SUBCASE("whole node set is the identity") {
        CHECK(induced_subgraph(inst, inst.all_nodes()) == inst);
    }
    SUBCASE("empty set gives the empty instance") {
        CHECK(induced_subgraph(inst, {}).size() == 0);
    }
    SUBCASE("red pair keeps only the red 2-cycle") {
        auto sub = induced_subgraph(inst, {inst.id_of("r1"), inst.id_of("r2")});
        REQUIRE(sub.size() == 2);
        CHECK(sub.arcs() == std::vector<Arc>{{0, 1}, {1, 0}});
        CHECK(sub.display_name(0) == "r1");
    }
}

TEST_CASE("cycle enumeration on small graphs") {
    SUBCASE("two mutual nodes") {
        KepInstance inst({{F, {}}, {F, {}}}, {{0, 1}, {1, 0}}, 2);
        auto cs = enumerate_cycles(inst, inst.all_nodes());
        REQUIRE(cs.size() == 1);
        CHECK(cs[0].nodes == std::vector<NodeId>{0, 1});
    }
    SUBCASE("3-cycle is too long for K=2") {
        KepInstance inst({{F, {}}, {F, {}}, {F, {}}}, {{0, 1}, {1, 2}, {2, 0}}, 2);
        CHECK(enumerate_cycles(inst, inst.all_nodes()).empty());
    }
    SUBCASE("variable gadget has two 2-cycles and four 3-cycles") {
        auto inst = x_gadget();
        auto cs = enumerate_cycles(inst, inst.all_nodes());
        CHECK(cs.size() == 6);
        std::size_t twos = 0;
        for (const auto& c : cs)
            twos += c.length() == 2;
        CHECK(twos == 2);
    }
    SUBCASE("restricting W drops cycles through excluded nodes") {
        auto inst = fixture::red_blue();
        CHECK(enumerate_cycles(inst, NodeSet{0, 2, 3}).size() == 1);
        CHECK(enumerate_cycles(inst, NodeSet{0, 1}).size() == 1);
        CHECK(enumerate_cycles(inst, NodeSet{1, 2, 3}).empty());
    }
}

TEST_CASE("cycle enumeration agrees with permutation search") {
    Rng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const auto n = rng.between(0, 7);
        const auto K = static_cast<int>(rng.between(2, 4));
        auto inst = random_kep(n, 0, 0.35, static_cast<std::size_t>(K), rng);
        std::vector<NodeId> w;
        for (NodeId v = 0; v < n; ++v)
            if (rng.chance(0.8))
                w.push_back(v);
        auto ours = enumerate_cycles(inst, NodeSet(w));
        std::vector<std::vector<NodeId>> flat;
        for (const auto& c : ours)
            flat.push_back(c.nodes);
        CHECK(flat == oracle::cycles(inst, w));
    }
}

TEST_CASE("canonical rotation and packing validation") {
    CHECK(canonical_cycle({4, 2, 7}).nodes == std::vector<NodeId>{2, 7, 4});
    auto inst = fixture::red_blue();
    CyclePacking good{{canonical_cycle({0, 2, 3})}};
    CHECK_NOTHROW(validate_packing(inst, good));
    CyclePacking missing_arc{{Cycle{{0, 3, 2}}}};
    CHECK_THROWS_AS(validate_packing(inst, missing_arc), Error);
    CyclePacking overlap{{Cycle{{0, 1}}, Cycle{{0, 2, 3}}}};
    CHECK_THROWS_AS(validate_packing(inst, overlap), Error);
    const NodeSet w{0, 1};
    CHECK_THROWS_AS(validate_packing(inst, good, &w), Error);
}

TEST_CASE("cycle enumeration honours the search cap") {
    Limits limits;
    limits.search_nodes = 3;
    auto inst = fixture::red_blue();
    CHECK(kind_of([&] { enumerate_cycles(inst, inst.all_nodes(), limits); }) == ErrorKind::CapExceeded);
}
