#pragma once

#include <cstdint>
#include <vector>

#include "cgfa/imc.hpp"

namespace cgfa {

bool forall_terminated(const IMC& imc, std::size_t m);
bool exists_terminated(const IMC& imc, std::size_t m);

enum class Direction { Min, Max };

/// Exact optimum of sum(rho * v) over distributions within [lo, hi] supported
/// on ns with total mass 1, by greedy mass assignment in v-order.
double extremal_expectation(const std::vector<double>& lo, const std::vector<double>& hi,
                            const std::vector<double>& v, const std::vector<std::size_t>& ns,
                            Direction direction);

struct TerminationBounds {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Scheduler-optimizing value iteration for the probability of reaching
/// forall-/exists-terminated states.
TerminationBounds reach_bounds(const IMC& imc, double epsilon = 1e-9,
                               std::size_t max_iters = 1000000);

}  // namespace cgfa
