#include "cgfa/termination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cgfa {

bool forall_terminated(const IMC& imc, std::size_t m) { return imc.lo(m, m) == 1; }
bool exists_terminated(const IMC& imc, std::size_t m) { return imc.hi(m, m) == 1; }

double extremal_expectation(const std::vector<double>& lo, const std::vector<double>& hi,
                            const std::vector<double>& v, const std::vector<std::size_t>& ns,
                            Direction direction) {
    double mass = 1.0;
    double total = 0.0;
    for (std::size_t s : ns) {
        mass -= lo[s];
        total += lo[s] * v[s];
    }
    if (mass < -1e-9) throw std::invalid_argument("lower bounds exceed total mass");
    std::vector<std::size_t> order = ns;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return direction == Direction::Max ? v[a] > v[b] : v[a] < v[b];
        return a < b;
    });
    for (std::size_t s : order) {
        if (mass <= 0) break;
        double add = std::min(mass, hi[s] - lo[s]);
        if (add > 0) {
            total += add * v[s];
            mass -= add;
        }
    }
    if (mass > 1e-9) throw std::invalid_argument("upper bounds cannot absorb total mass");
    return total;
}

namespace {

std::vector<double> iterate(const IMC& imc, const std::vector<bool>& target,
                            const std::vector<std::vector<NoConflictSet>>& feas,
                            const std::vector<std::vector<double>>& lo,
                            const std::vector<std::vector<double>>& hi, Direction direction,
                            double epsilon, std::size_t max_iters) {
    std::size_t n = imc.states.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (target[i]) x[i] = 1.0;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (target[i]) continue;
            if (feas[i].empty())
                throw std::logic_error("state " + imc.states[i].str() +
                                       " admits no feasible distribution");
            bool first = true;
            double best = 0.0;
            for (const auto& ns : feas[i]) {
                double e = extremal_expectation(lo[i], hi[i], x, ns, direction);
                if (first || (direction == Direction::Min ? e < best : e > best)) best = e;
                first = false;
            }
            best = std::clamp(best, 0.0, 1.0);
            delta = std::max(delta, std::abs(best - x[i]));
            x[i] = best;
        }
        if (delta < epsilon) break;
    }
    return x;
}

}  // namespace

TerminationBounds reach_bounds(const IMC& imc, double epsilon, std::size_t max_iters) {
    std::size_t n = imc.states.size();
    std::vector<std::vector<double>> lo(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> hi(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<NoConflictSet>> feas(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, q] : imc.pr_lo[i]) lo[i][j] = to_double(q);
        for (const auto& [j, q] : imc.pr_hi[i]) hi[i][j] = to_double(q);
        for (const auto& ns : no_conflict_sets(imc, i))
            if (feasible(imc, i, ns)) feas[i].push_back(ns);
    }
    std::vector<bool> forall(n), exists(n);
    for (std::size_t i = 0; i < n; ++i) {
        forall[i] = forall_terminated(imc, i);
        exists[i] = exists_terminated(imc, i);
    }
    TerminationBounds out;
    out.lo = iterate(imc, forall, feas, lo, hi, Direction::Min, epsilon, max_iters);
    out.hi = iterate(imc, exists, feas, lo, hi, Direction::Max, epsilon, max_iters);
    // both runs approach their fixpoints from below but may stop after a
    // different number of sweeps; keep the reported pair ordered
    for (std::size_t i = 0; i < n; ++i) out.hi[i] = std::max(out.hi[i], out.lo[i]);
    return out;
}

}  // namespace cgfa
