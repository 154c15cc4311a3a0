#include "cgfa/concrete.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cgfa {

std::string TransLabel::str() const {
    if (!second) return first;
    return "(" + first + "," + *second + ")";
}

std::string MultInfo::str() const {
    if (!second) return std::to_string(first);
    return "(" + std::to_string(first) + "," + std::to_string(*second) + ")";
}

Rational rate(const Environment& env, const Transition& t) {
    const Rational& r = t.rate_param;
    if (!t.theta.is_pair()) return Rational(t.delta.first) * r;
    std::uint64_t n = t.delta.first;
    std::uint64_t m = *t.delta.second;
    auto sp1 = species_of_label(env, t.theta.first);
    auto sp2 = species_of_label(env, *t.theta.second);
    if (sp1 && sp2 && *sp1 == *sp2) {
        // homo-species sync: n distinct reactants times the m-1 remaining partners
        std::uint64_t m1 = m > 0 ? m - 1 : 0;
        return Rational(n) * Rational(m1) * r;
    }
    return Rational(n) * Rational(m) * r;
}

std::vector<Transition> enabled_transitions(const Environment& env, const Multiset& m) {
    std::vector<Transition> out;
    for (const auto& def : env.species) {
        for (const auto& prefix : def.summands) {
            if (prefix.action.kind != ActionKind::Delay) continue;
            Transition t;
            t.source = m;
            t.theta = TransLabel::delay(prefix.action.label);
            t.delta = MultInfo{m.count(def.name), std::nullopt};
            t.rate_param = prefix.action.rate;
            Multiset one;
            one.add(def.name);
            t.target = msum(mdiff(m, one), prefix.product);
            out.push_back(std::move(t));
        }
    }
    for (const auto& in_def : env.species) {
        for (const auto& in_prefix : in_def.summands) {
            if (in_prefix.action.kind != ActionKind::Input) continue;
            for (const auto& out_def : env.species) {
                for (const auto& out_prefix : out_def.summands) {
                    if (out_prefix.action.kind != ActionKind::Output) continue;
                    if (out_prefix.action.channel != in_prefix.action.channel) continue;
                    if (out_prefix.action.rate != in_prefix.action.rate) continue;
                    Transition t;
                    t.source = m;
                    t.theta = TransLabel::sync(in_prefix.action.label, out_prefix.action.label);
                    t.delta = MultInfo{m.count(in_def.name), m.count(out_def.name)};
                    t.rate_param = in_prefix.action.rate;
                    Multiset one_in, one_out;
                    one_in.add(in_def.name);
                    one_out.add(out_def.name);
                    t.target = msum(msum(mdiff(mdiff(m, one_in), one_out), in_prefix.product),
                                    out_prefix.product);
                    out.push_back(std::move(t));
                }
            }
        }
    }
    return out;
}

LTS build_lts(const Environment& env, const Multiset& m0, std::size_t state_cap) {
    LTS lts;
    lts.env = env;
    lts.states.push_back(m0);
    lts.index[m0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t idx = queue.front();
        queue.pop_front();
        Multiset state = lts.states[idx];
        std::vector<Transition> kept;
        for (auto& t : enabled_transitions(env, state)) {
            if (rate(env, t) == 0) continue;  // zero-rate moves never fire
            auto [it, inserted] = lts.index.try_emplace(t.target, lts.states.size());
            if (inserted) {
                if (lts.states.size() >= state_cap)
                    throw CapExceeded("state cap " + std::to_string(state_cap) +
                                      " exceeded during LTS exploration");
                lts.states.push_back(t.target);
                queue.push_back(it->second);
            }
            kept.push_back(std::move(t));
        }
        if (lts.transitions.size() <= idx) lts.transitions.resize(idx + 1);
        lts.transitions[idx] = std::move(kept);
    }
    lts.transitions.resize(lts.states.size());
    return lts;
}

Rational rate_sum(const LTS& lts, const Multiset& m, const Multiset& m2) {
    auto it = lts.index.find(m);
    if (it == lts.index.end()) return Rational(0);
    Rational total(0);
    for (const auto& t : lts.transitions[it->second])
        if (t.target == m2) total += rate(lts.env, t);
    return total;
}

Rational exit_rate(const LTS& lts, const Multiset& m) {
    auto it = lts.index.find(m);
    if (it == lts.index.end()) return Rational(0);
    Rational total(0);
    for (const auto& t : lts.transitions[it->second]) total += rate(lts.env, t);
    return total;
}

DTMC to_dtmc(const LTS& lts) {
    DTMC dtmc;
    dtmc.states = lts.states;
    dtmc.initial = lts.initial;
    dtmc.pr.resize(lts.states.size());
    dtmc.labels.resize(lts.states.size());
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        std::map<std::size_t, Rational> row_rates;
        for (const auto& t : lts.transitions[i]) {
            std::size_t j = lts.index.at(t.target);
            row_rates[j] += rate(lts.env, t);
            dtmc.labels[i][j].push_back(t.theta);
        }
        Rational exit(0);
        for (const auto& [j, r] : row_rates) exit += r;
        if (exit > 0) {
            for (const auto& [j, r] : row_rates) dtmc.pr[i][j] = r / exit;
        } else {
            dtmc.pr[i][i] = 1;
        }
    }
    return dtmc;
}

bool terminated(const DTMC& dtmc, std::size_t state) {
    for (const auto& [j, p] : dtmc.pr[state])
        if (j != state && p != 0) return false;
    return true;
}

std::vector<double> reach_termination(const DTMC& dtmc, double epsilon,
                                      std::size_t max_iters) {
    std::size_t n = dtmc.states.size();
    std::vector<bool> is_target(n, false);
    for (std::size_t i = 0; i < n; ++i) is_target[i] = terminated(dtmc, i);

    // backward reachability: states that can reach some target state
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, p] : dtmc.pr[i])
            if (p != 0) pred[j].push_back(i);
    std::vector<bool> can_reach(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (is_target[i]) {
            can_reach[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        std::size_t j = queue.front();
        queue.pop_front();
        for (std::size_t i : pred[j])
            if (!can_reach[i]) {
                can_reach[i] = true;
                queue.push_back(i);
            }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (is_target[i]) x[i] = 1.0;

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_target[i] || !can_reach[i]) continue;
            double acc = 0.0;
            double self = 0.0;
            for (const auto& [j, p] : dtmc.pr[i]) {
                double pd = to_double(p);
                if (j == i)
                    self = pd;
                else
                    acc += pd * x[j];
            }
            double next = self < 1.0 ? acc / (1.0 - self) : x[i];
            delta = std::max(delta, std::abs(next - x[i]));
            x[i] = next;
        }
        if (delta < epsilon) break;
    }
    return x;
}

}  // namespace cgfa
