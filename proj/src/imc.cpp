#include "cgfa/imc.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgfa {

Rational IMC::lo(std::size_t a, std::size_t b) const {
    auto it = pr_lo[a].find(b);
    return it == pr_lo[a].end() ? Rational(0) : it->second;
}

Rational IMC::hi(std::size_t a, std::size_t b) const {
    auto it = pr_hi[a].find(b);
    return it == pr_hi[a].end() ? Rational(0) : it->second;
}

std::vector<std::size_t> IMC::successors(std::size_t a) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < states.size(); ++b) {
        bool labeled = labels[a].contains(b) && !labels[a].at(b).empty();
        if (hi(a, b) > 0 || labeled) out.push_back(b);
    }
    return out;
}

SymbolicRate sym_rate(const Environment& env, const AbstractTransition& t) {
    auto species_of = [&](const Label& l) {
        auto sp = species_of_label(env, l);
        if (!sp) throw std::invalid_argument("label '" + l + "' not defined");
        return *sp;
    };
    Name x = species_of(t.theta.first);
    if (!t.theta.is_pair())
        return {Polynomial::var(x, t.rate_param), {{x, t.delta.first}}};
    Name y = species_of(*t.theta.second);
    if (x == y) {
        Interval joint = interval_join(t.delta.first, *t.delta.second);
        return {Polynomial::var(x, t.rate_param, FactorKind::Falling), {{x, joint}}};
    }
    return {Polynomial::product(x, y, t.rate_param),
            {{x, t.delta.first}, {y, *t.delta.second}}};
}

bool conflict(const std::set<TransLabel>& a, const std::set<TransLabel>& b) {
    return a.size() == 1 && a == b;
}

namespace {

std::set<TransLabel> labels_into(const AbstractLTS& alts, std::size_t m1, std::size_t m2) {
    std::set<TransLabel> out;
    for (const auto& t : alts.transitions[m1])
        if (alts.index.at(t.target) == m2) out.insert(t.theta);
    return out;
}

}  // namespace

std::vector<const AbstractTransition*> ts_minus(const AbstractLTS& alts, std::size_t m1,
                                                std::size_t m2) {
    std::set<TransLabel> into = labels_into(alts, m1, m2);
    std::vector<const AbstractTransition*> out;
    for (const auto& t : alts.transitions[m1]) {
        if (alts.index.at(t.target) == m2) continue;
        if (conflict({t.theta}, into)) continue;
        out.push_back(&t);
    }
    return out;
}

SymbolicRate hat_rate(const AbstractLTS& alts, const AbstractTransition& t, std::size_t m2) {
    SymbolicRate s = sym_rate(alts.env, t);
    std::size_t m1 = alts.index.at(t.source);
    for (const AbstractTransition* other : ts_minus(alts, m1, m2)) {
        if (other->theta == t.theta) {
            // the label may fire the split-away branch instead: admit rate 0
            // as the attainable minimum but keep the maximum
            for (auto& [name, iv] : s.constraints) {
                (void)name;
                iv.lo = 0;
            }
            break;
        }
    }
    return s;
}

std::vector<SymbolicRate> merged_rates(const Environment& env,
                                       const std::vector<const AbstractTransition*>& ts) {
    std::vector<TransLabel> order;
    std::map<TransLabel, SymbolicRate> merged;
    for (const AbstractTransition* t : ts) {
        SymbolicRate s = sym_rate(env, *t);
        auto [it, inserted] = merged.emplace(t->theta, s);
        if (inserted) {
            order.push_back(t->theta);
            continue;
        }
        if (!(it->second.expr == s.expr))
            throw std::logic_error("transitions under label " + t->theta.str() +
                                   " disagree on the rate expression");
        it->second.constraints = constraint_union(it->second.constraints, s.constraints);
    }
    std::vector<SymbolicRate> out;
    out.reserve(order.size());
    for (const auto& theta : order) out.push_back(merged.at(theta));
    return out;
}

SymbolicRate exit_rate_sym(const AbstractLTS& alts, std::size_t m1, std::size_t m2) {
    std::vector<const AbstractTransition*> all = ts_minus(alts, m1, m2);
    for (const auto& t : alts.transitions[m1])
        if (alts.index.at(t.target) == m2) all.push_back(&t);
    SymbolicRate total;
    for (const auto& s : merged_rates(alts.env, all)) total = sym_add(total, s);
    return total;
}

SymbolicRate rat_sym(const AbstractLTS& alts, std::size_t m1, std::size_t m2) {
    SymbolicRate total;
    for (const auto& t : alts.transitions[m1])
        if (alts.index.at(t.target) == m2) total = sym_add(total, hat_rate(alts, t, m2));
    return total;
}

IMC to_imc(const AbstractLTS& alts, std::uint64_t enum_cap) {
    IMC imc;
    imc.states = alts.states;
    imc.initial = alts.initial;
    std::size_t n = alts.states.size();
    imc.pr_lo.resize(n);
    imc.pr_hi.resize(n);
    imc.labels.resize(n);
    for (std::size_t m1 = 0; m1 < n; ++m1) {
        bool any_live = false;
        bool some_min_zero = false;
        std::vector<SymbolicRate> exits(n);
        for (std::size_t m2 = 0; m2 < n; ++m2) {
            exits[m2] = exit_rate_sym(alts, m1, m2);
            ExtRat mx = sym_max(exits[m2]);
            if (!mx.is_zero()) {
                any_live = true;
                if (sym_min(exits[m2]).is_zero()) some_min_zero = true;
            }
        }
        if (!any_live) {
            imc.pr_lo[m1][m1] = 1;
            imc.pr_hi[m1][m1] = 1;
            continue;
        }
        for (std::size_t m2 = 0; m2 < n; ++m2) {
            std::vector<TransLabel> labels;
            for (const auto& t : alts.transitions[m1])
                if (alts.index.at(t.target) == m2) labels.push_back(t.theta);
            if (labels.empty()) continue;
            imc.labels[m1][m2] = labels;
            SymbolicRate r = rat_sym(alts, m1, m2);
            RatioBounds ratio = bound_ratio(r, exits[m2], enum_cap);
            Rational lo = sym_min(r).is_zero() ? Rational(0) : ratio.lo;
            Rational hi = sym_max(r).is_zero() ? Rational(0) : ratio.hi;
            if (lo > 0) imc.pr_lo[m1][m2] = lo;
            if (hi > 0) imc.pr_hi[m1][m2] = hi;
        }
        if (some_min_zero) {
            // the state may be unable to move at all: termination stays possible
            imc.pr_lo[m1].erase(m1);
            imc.pr_hi[m1][m1] = 1;
        }
    }
    return imc;
}

IMC best_abstraction_mc(const DTMC& dtmc) {
    IMC imc;
    imc.initial = dtmc.initial;
    for (const auto& m : dtmc.states) imc.states.push_back(alpha_state(m));
    imc.pr_lo = dtmc.pr;
    imc.pr_hi = dtmc.pr;
    imc.labels = dtmc.labels;
    return imc;
}

std::vector<NoConflictSet> no_conflict_sets(const IMC& imc, std::size_t m) {
    std::vector<std::size_t> succ = imc.successors(m);
    std::vector<std::size_t> free;
    std::map<TransLabel, std::vector<std::size_t>> groups;
    for (std::size_t s : succ) {
        std::set<TransLabel> lset;
        if (imc.labels[m].contains(s))
            lset.insert(imc.labels[m].at(s).begin(), imc.labels[m].at(s).end());
        if (lset.size() == 1)
            groups[*lset.begin()].push_back(s);
        else
            free.push_back(s);
    }
    std::vector<std::vector<std::size_t>> choices;
    for (auto& [theta, members] : groups) {
        (void)theta;
        if (members.size() == 1)
            free.push_back(members.front());
        else
            choices.push_back(members);
    }
    std::vector<NoConflictSet> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        NoConflictSet ns = free;
        for (std::size_t g = 0; g < choices.size(); ++g) ns.push_back(choices[g][pick[g]]);
        std::sort(ns.begin(), ns.end());
        out.push_back(std::move(ns));
        std::size_t g = choices.size();
        bool advanced = false;
        while (g > 0) {
            --g;
            if (pick[g] + 1 < choices[g].size()) {
                ++pick[g];
                for (std::size_t j = g + 1; j < choices.size(); ++j) pick[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

bool feasible(const IMC& imc, std::size_t m, const NoConflictSet& ns) {
    Rational lo_sum(0), hi_sum(0);
    for (std::size_t s : ns) {
        lo_sum += imc.lo(m, s);
        hi_sum += imc.hi(m, s);
    }
    return lo_sum <= 1 && hi_sum >= 1;
}

}  // namespace cgfa
