#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "cgfa/abstract_lts.hpp"
#include "cgfa/symrate.hpp"

namespace cgfa {

/// Labeled interval Markov chain over abstract states.
struct IMC {
    std::vector<AbstractState> states;
    std::size_t initial = 0;
    std::vector<std::map<std::size_t, Rational>> pr_lo;
    std::vector<std::map<std::size_t, Rational>> pr_hi;
    std::vector<std::map<std::size_t, std::vector<TransLabel>>> labels;

    Rational lo(std::size_t a, std::size_t b) const;
    Rational hi(std::size_t a, std::size_t b) const;
    /// States with an upper bound > 0 or a nonempty label set.
    std::vector<std::size_t> successors(std::size_t a) const;
};

SymbolicRate sym_rate(const Environment& env, const AbstractTransition& t);

/// Transitions of M1 that may fire in parallel with a move into M2:
/// other targets whose label set is not in conflict with label(Ts(M1, M2)).
std::vector<const AbstractTransition*> ts_minus(const AbstractLTS& alts, std::size_t m1,
                                                std::size_t m2);

/// Singleton-vs-singleton label conflict.
bool conflict(const std::set<TransLabel>& a, const std::set<TransLabel>& b);

/// sym_rate with all variable constraints forced to [0,0] when the transition's
/// label also reaches a different target in parallel (the split-away branch).
SymbolicRate hat_rate(const AbstractLTS& alts, const AbstractTransition& t, std::size_t m2);

/// One (e, c) per label, same-label constraints joined.
std::vector<SymbolicRate> merged_rates(const Environment& env,
                                       const std::vector<const AbstractTransition*>& ts);

SymbolicRate exit_rate_sym(const AbstractLTS& alts, std::size_t m1, std::size_t m2);
SymbolicRate rat_sym(const AbstractLTS& alts, std::size_t m1, std::size_t m2);

/// The abstract probabilistic translation.
IMC to_imc(const AbstractLTS& alts, std::uint64_t enum_cap = 4096);

IMC best_abstraction_mc(const DTMC& dtmc);

using NoConflictSet = std::vector<std::size_t>;  // sorted successor indices

/// All maximal pairwise non-conflicting successor sets, deterministic order.
std::vector<NoConflictSet> no_conflict_sets(const IMC& imc, std::size_t m);

/// True iff some admissible distribution can be supported on ns.
bool feasible(const IMC& imc, std::size_t m, const NoConflictSet& ns);

}  // namespace cgfa
