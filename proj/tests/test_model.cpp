#include <random>

#include "cgfa/model.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgfa;

TEST_CASE("multiset basics") {
    Multiset m{{"X", 1}, {"Y", 2}};
    CHECK(m.count("X") == 1);
    CHECK(m.count("Z") == 0);
    m.set("X", 0);
    CHECK(m.entries().size() == 1);
    CHECK(m == Multiset{{"Y", 2}});
    CHECK(m.str() == "{Y:2}");
}

TEST_CASE("msum and truncated mdiff") {
    Multiset m{{"X", 2}, {"Y", 1}};
    Multiset n{{"X", 1}, {"Z", 3}};
    CHECK(msum(m, n) == Multiset{{"X", 3}, {"Y", 1}, {"Z", 3}});
    CHECK(mdiff(m, n) == Multiset{{"X", 1}, {"Y", 1}});
    CHECK(mdiff(n, m) == Multiset{{"Z", 3}});
}

TEST_CASE("mdiff never goes negative on random inputs") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 4);
    for (int round = 0; round < 200; ++round) {
        Multiset m, n;
        for (const char* name : {"A", "B", "C"}) {
            m.set(name, d(rng));
            n.set(name, d(rng));
        }
        Multiset diff = mdiff(m, n);
        for (const char* name : {"A", "B", "C"}) {
            std::uint64_t expect =
                m.count(name) > n.count(name) ? m.count(name) - n.count(name) : 0;
            CHECK(diff.count(name) == expect);
        }
        CHECK(msum(mdiff(m, n), n).count("A") >= m.count("A"));
    }
}

TEST_CASE("well-labeling accepts groupies") {
    auto model = testsupport::groupies();
    CHECK(validate_well_labeled(model.env).empty());
    CHECK(model.env.species_names() == std::vector<Name>{"X", "Y"});
}

TEST_CASE("well-labeling rejects duplicate labels") {
    Environment env;
    SpeciesDef def;
    def.name = "A";
    Prefix p;
    p.action = {ActionKind::Delay, "", Rational(1), "dup"};
    def.summands.push_back(p);
    def.summands.push_back(p);
    env.species.push_back(def);
    auto diags = validate_well_labeled(env);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().message.find("dup") != std::string::npos);
}

TEST_CASE("well-labeling rejects undefined product species") {
    Environment env;
    SpeciesDef def;
    def.name = "A";
    Prefix p;
    p.action = {ActionKind::Delay, "", Rational(1), "l"};
    p.product.add("Ghost");
    def.summands.push_back(p);
    env.species.push_back(def);
    auto diags = validate_well_labeled(env);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().message.find("Ghost") != std::string::npos);
}

TEST_CASE("label lookup helpers") {
    auto model = testsupport::groupies();
    CHECK(lookup_action(model.env, "X", "lam").action.channel == "a");
    CHECK(labels_of(model.env, "Y") == std::set<Label>{"mu", "eta"});
    CHECK(species_of_label(model.env, "del") == Name("X"));
    CHECK(!species_of_label(model.env, "nope"));
    CHECK_THROWS_AS(lookup_action(model.env, "X", "nope"), std::out_of_range);
    CHECK_THROWS_AS(labels_of(model.env, "Z"), std::out_of_range);
}
