#include <random>

#include "cgfa/abstract_lts.hpp"
#include "cgfa/parser.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgfa;

namespace {

AbstractState astate(std::initializer_list<std::pair<const char*, Interval>> entries) {
    AbstractState s;
    for (const auto& [name, iv] : entries) s.set(name, iv);
    return s;
}

const AbstractTransition* find_transition(const std::vector<AbstractTransition>& ts,
                                          const TransLabel& theta,
                                          const AbstractState& target) {
    for (const auto& t : ts)
        if (t.theta == theta && t.target == target) return &t;
    return nullptr;
}

}  // namespace

TEST_CASE("abstract_enabled on groupies initial state") {
    Model m = testsupport::groupies_abstract();
    AbstractState m0 = std::get<AbstractState>(m.init);
    auto ts = abstract_enabled(m.env, m0);
    REQUIRE(ts.size() == 4);
    auto a = find_transition(ts, TransLabel::sync("lam", "mu"),
                             astate({{"X", {2, 3}}, {"Y", {1, 1}}}));
    REQUIRE(a);
    CHECK(a->delta.first == Interval{1, 2});
    CHECK(*a->delta.second == Interval{2, 2});
    auto b = find_transition(ts, TransLabel::sync("lam", "mu"), astate({{"X", {2, 3}}}));
    REQUIRE(b);
    CHECK(b->delta.first == Interval{1, 2});
    CHECK(*b->delta.second == Interval{1, 1});
    auto c = find_transition(ts, TransLabel::sync("eta", "del"), astate({{"Y", {2, 3}}}));
    REQUIRE(c);
    CHECK(c->delta.first == Interval{1, 2});
    CHECK(*c->delta.second == Interval{1, 1});
    auto d = find_transition(ts, TransLabel::sync("eta", "del"),
                             astate({{"X", {1, 1}}, {"Y", {2, 3}}}));
    REQUIRE(d);
    CHECK(*d->delta.second == Interval{2, 2});
}

TEST_CASE("exact delay branches collapse to one transition") {
    Model m = parse_model("species A = tau(1).0\ninit A:[1,1]\n");
    auto ts = abstract_enabled(m.env, std::get<AbstractState>(m.init));
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].delta.first == Interval{1, 1});
    CHECK(ts[0].target == AbstractState{});
}

TEST_CASE("no duplicate (theta, delta, target) triples") {
    std::mt19937 rng(99);
    for (int round = 0; round < 50; ++round) {
        auto rm = testsupport::random_model(rng);
        auto ts = abstract_enabled(rm.env, rm.init);
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                CHECK(!(ts[i].theta == ts[j].theta && ts[i].delta == ts[j].delta &&
                        ts[i].target == ts[j].target));
    }
}

TEST_CASE("widened groupies exploration yields the 7 known states") {
    Model m = testsupport::groupies_abstract();
    AbstractLTS alts = explore(m.env, std::get<AbstractState>(m.init), true);
    REQUIRE(alts.states.size() == 7);
    CHECK(alts.states[0] == astate({{"X", {1, 2}}, {"Y", {1, 2}}}));
    CHECK(alts.index.count(astate({{"X", {2, 3}}})));
    CHECK(alts.index.count(astate({{"X", {2, 3}}, {"Y", {1, 1}}})));
    CHECK(alts.index.count(astate({{"Y", {2, 3}}})));
    CHECK(alts.index.count(astate({{"X", {1, 1}}, {"Y", {2, 3}}})));
    CHECK(alts.index.count(astate({{"X", {3, 4}}})));
    CHECK(alts.index.count(astate({{"Y", {3, 4}}})));
}

TEST_CASE("unwidened groupies exploration closes at 16 states") {
    // the faithful closure; every state below is inhabited by a multiset
    // reachable from a concretization of the initial state
    Model m = testsupport::groupies_abstract();
    AbstractLTS alts = explore(m.env, std::get<AbstractState>(m.init), false);
    CHECK(alts.states.size() == 16);
    CHECK(alts.index.count(astate({{"X", {4, 4}}})));
    CHECK(alts.index.count(astate({{"Y", {4, 4}}})));
}

TEST_CASE("abstract exploration honors the state cap") {
    Model m = parse_model("species A = tau(1).A | A\ninit A:[1,1]\n");
    CHECK_THROWS_AS(explore(m.env, std::get<AbstractState>(m.init), false, 20), CapExceeded);
}

TEST_CASE("best abstraction mirrors the concrete LTS exactly") {
    Model m = testsupport::groupies();
    LTS lts = build_lts(m.env, std::get<Multiset>(m.init));
    AbstractLTS alts = best_abstraction_lts(lts);
    REQUIRE(alts.states.size() == 4);
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        CHECK(alts.states[i] == alpha_state(lts.states[i]));
        REQUIRE(alts.transitions[i].size() == lts.transitions[i].size());
        for (std::size_t k = 0; k < lts.transitions[i].size(); ++k) {
            const auto& t = lts.transitions[i][k];
            const auto& a = alts.transitions[i][k];
            CHECK(a.theta == t.theta);
            CHECK(a.delta.first == Interval::exact(t.delta.first));
            CHECK(a.target == alpha_state(t.target));
        }
    }
}

TEST_CASE("max abstract rate") {
    Model m = testsupport::groupies_abstract();
    AbstractLTS alts = explore(m.env, std::get<AbstractState>(m.init), true);
    for (const auto& t : alts.transitions[0]) {
        ExtRat r = max_abstract_rate(m.env, t);
        REQUIRE(!r.infinite);
        // hetero sync: max(n) * max(m) * 1 under the branch's refined delta
        REQUIRE(t.delta.second);
        CHECK(r.value == Rational(2) * Rational(*t.delta.second->hi));
    }
}

TEST_CASE("simulation is reflexive and detects missing labels") {
    Model m = testsupport::groupies_abstract();
    AbstractLTS alts = explore(m.env, std::get<AbstractState>(m.init), true);
    CHECK(check_simulation(alts, alts));

    Model trimmed = parse_model(
        "species X = ?a(1)@lam.X\n"
        "species Y = !a(1)@mu.X + ?b(1)@eta.Y\n"
        "init X:[1,2], Y:[1,2]\n");
    AbstractLTS other = explore(trimmed.env, std::get<AbstractState>(trimmed.init), true);
    CHECK(!check_simulation(alts, other));
}

TEST_CASE("concrete abstractions are simulated by the widened exploration") {
    Model m = testsupport::groupies_abstract();
    AbstractState m0 = std::get<AbstractState>(m.init);
    AbstractLTS alts = explore(m.env, m0, true);
    for (const auto& init : gamma_enumerate(m0, 64)) {
        LTS lts = build_lts(m.env, init);
        CHECK(check_simulation(best_abstraction_lts(lts), alts));
    }
}

TEST_CASE("homo-species sync branches account for the double consumption") {
    Model m = parse_model(
        "species B = ?a(1/2)@l1.A + !a(1/2)@l0.C\n"
        "species A = 0\n"
        "species C = 0\n"
        "init A:[2,3], B:[1,3], C:[2,3]\n");
    auto ts = abstract_enabled(m.env, std::get<AbstractState>(m.init));
    AbstractState exhausted = astate({{"A", {3, 4}}, {"C", {3, 4}}});
    AbstractState leftover = astate({{"A", {3, 4}}, {"B", {1, 1}}, {"C", {3, 4}}});
    const AbstractTransition* zero = find_transition(ts, TransLabel::sync("l1", "l0"), exhausted);
    const AbstractTransition* pos = find_transition(ts, TransLabel::sync("l1", "l0"), leftover);
    REQUIRE(zero);
    REQUIRE(pos);
    // exhausting B takes exactly two copies, keeping one takes three
    CHECK(zero->delta.first == Interval{1, 2});
    CHECK(zero->delta.second == Interval{1, 2});
    CHECK(pos->delta.first == Interval{3, 3});
    CHECK(pos->delta.second == Interval{3, 3});
}

TEST_CASE("local soundness of abstract transitions on random models") {
    std::mt19937 rng(4242);
    int accepted = 0;
    while (accepted < 40) {
        auto rm = testsupport::random_model(rng);
        std::vector<Multiset> members;
        try {
            members = gamma_enumerate(rm.init, 64);
        } catch (const std::overflow_error&) {
            continue;
        }
        auto abs_ts = abstract_enabled(rm.env, rm.init);
        for (const auto& m : members) {
            for (const auto& t : enabled_transitions(rm.env, m)) {
                if (rate(rm.env, t) == 0) continue;
                bool covered = false;
                for (const auto& a : abs_ts) {
                    if (a.theta != t.theta || a.rate_param != t.rate_param) continue;
                    if (!a.delta.first.contains(t.delta.first)) continue;
                    if (t.delta.second &&
                        (!a.delta.second || !a.delta.second->contains(*t.delta.second)))
                        continue;
                    if (gamma_contains(a.target, t.target)) {
                        covered = true;
                        break;
                    }
                }
                CHECK_MESSAGE(covered, "uncovered transition ", t.theta.str(), " from ",
                              m.str(), " under ", rm.init.str());
            }
        }
        ++accepted;
    }
}

TEST_CASE("explored groupies states are never hybrid") {
    Model m = testsupport::groupies_abstract();
    AbstractState m0 = std::get<AbstractState>(m.init);
    for (bool widening : {true, false}) {
        AbstractLTS alts = explore(m.env, m0, widening);
        for (const auto& state : alts.states) {
            int live = 0, dead = 0;
            for (const auto& member : gamma_enumerate(state, 64)) {
                bool moves = false;
                for (const auto& t : enabled_transitions(m.env, member))
                    if (rate(m.env, t) != 0) moves = true;
                (moves ? live : dead)++;
            }
            CHECK_MESSAGE((live == 0 || dead == 0), "hybrid state ", state.str());
        }
    }
}
