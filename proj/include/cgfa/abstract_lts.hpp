#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cgfa/concrete.hpp"
#include "cgfa/domain.hpp"

namespace cgfa {

/// Interval multiplicity witness: one interval for delays, two for syncs.
struct AbsMultInfo {
    Interval first;
    std::optional<Interval> second;

    bool operator==(const AbsMultInfo&) const = default;
    auto operator<=>(const AbsMultInfo&) const = default;
    std::string str() const;
};

struct AbstractTransition {
    AbstractState source;
    TransLabel theta;
    AbsMultInfo delta;
    Rational rate_param;
    AbstractState target;
    std::set<SplitTag> split_tags;  // provenance only
};

/// Upper bound of the transition's rate over its own multiplicity intervals.
ExtRat max_abstract_rate(const Environment& env, const AbstractTransition& t);

/// All rule instances at an abstract state, same-(theta,target) branches merged
/// by joining their multiplicity intervals. Includes zero-rate instances.
std::vector<AbstractTransition> abstract_enabled(const Environment& env,
                                                 const AbstractState& ms);

struct AbstractLTS {
    std::vector<AbstractState> states;  // discovery order
    std::map<AbstractState, std::size_t> index;
    std::vector<std::vector<AbstractTransition>> transitions;  // max rate > 0 only
    std::size_t initial = 0;
    Environment env;
    bool widened = false;
};

/// BFS closure; with widening, a fresh target is replaced by the first
/// previously discovered state that dominates it.
AbstractLTS explore(const Environment& env, const AbstractState& m0, bool widening,
                    std::size_t state_cap = 100000);

AbstractLTS best_abstraction_lts(const LTS& lts);

/// Simulation order on abstract LTS: every transition of the left state must be
/// matched by a transition of the right with the same label and rate, wider
/// multiplicity intervals and related targets.
bool check_simulation(const AbstractLTS& a1, const AbstractLTS& a2);

}  // namespace cgfa
