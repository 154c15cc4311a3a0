#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgfa/model.hpp"

namespace cgfa {

/// Either a single delay label or an (input, output) label pair.
struct TransLabel {
    Label first;
    std::optional<Label> second;

    static TransLabel delay(Label l) { return {std::move(l), std::nullopt}; }
    static TransLabel sync(Label in, Label out) { return {std::move(in), std::move(out)}; }
    bool is_pair() const { return second.has_value(); }

    bool operator==(const TransLabel&) const = default;
    auto operator<=>(const TransLabel&) const = default;
    std::string str() const;
};

/// Multiplicity witness: n for delays, (n, m) for syncs.
struct MultInfo {
    std::uint64_t first = 0;
    std::optional<std::uint64_t> second;

    bool operator==(const MultInfo&) const = default;
    std::string str() const;
};

struct Transition {
    Multiset source;
    TransLabel theta;
    MultInfo delta;
    Rational rate_param;
    Multiset target;
};

/// rate(t): the basic rate scaled by the number of distinct reactant combinations.
Rational rate(const Environment& env, const Transition& t);

/// All rule instances at M, including zero-rate ones.
std::vector<Transition> enabled_transitions(const Environment& env, const Multiset& m);

struct LTS {
    std::vector<Multiset> states;  // BFS discovery order
    std::map<Multiset, std::size_t> index;
    std::vector<std::vector<Transition>> transitions;  // per source state, rate > 0 only
    std::size_t initial = 0;
    Environment env;
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(std::string what) : std::runtime_error(std::move(what)) {}
};

LTS build_lts(const Environment& env, const Multiset& m0, std::size_t state_cap = 100000);

Rational rate_sum(const LTS& lts, const Multiset& m, const Multiset& m2);
Rational exit_rate(const LTS& lts, const Multiset& m);

struct DTMC {
    std::vector<Multiset> states;
    std::size_t initial = 0;
    // rows indexed by state, sparse columns; each row sums to 1 exactly
    std::vector<std::map<std::size_t, Rational>> pr;
    std::vector<std::map<std::size_t, std::vector<TransLabel>>> labels;
};

DTMC to_dtmc(const LTS& lts);

bool terminated(const DTMC& dtmc, std::size_t state);

/// First-passage probability of the terminated-state set, per state.
std::vector<double> reach_termination(const DTMC& dtmc, double epsilon = 1e-9,
                                      std::size_t max_iters = 1000000);

}  // namespace cgfa
