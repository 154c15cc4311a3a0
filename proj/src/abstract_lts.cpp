#include "cgfa/abstract_lts.hpp"

#include <algorithm>
#include <deque>

namespace cgfa {

std::string AbsMultInfo::str() const {
    if (!second) return first.str();
    return "(" + first.str() + "," + second->str() + ")";
}

ExtRat max_abstract_rate(const Environment& env, const AbstractTransition& t) {
    auto hi_of = [](const Interval& i) {
        return i.hi ? ExtRat::of(Rational(*i.hi)) : ExtRat::inf();
    };
    if (!t.theta.is_pair()) return hi_of(t.delta.first) * ExtRat::of(t.rate_param);
    const Interval& n = t.delta.first;
    const Interval& m = *t.delta.second;
    auto sp1 = species_of_label(env, t.theta.first);
    auto sp2 = species_of_label(env, *t.theta.second);
    ExtRat partners;
    if (sp1 && sp2 && *sp1 == *sp2) {
        // homo-species sync: at most max(m) - 1 remaining partners
        if (!m.hi)
            partners = ExtRat::inf();
        else
            partners = ExtRat::of(Rational(*m.hi > 0 ? *m.hi - 1 : 0));
    } else {
        partners = hi_of(m);
    }
    return hi_of(n) * partners * ExtRat::of(t.rate_param);
}

namespace {

AbstractState one_of(const Name& x) {
    AbstractState s;
    s.set(x, Interval::exact(1));
    return s;
}

/// All branches of one rule instance: the full polarity product over the
/// consumed species, with the split applied to the target and the matching
/// delta components clipped.
void emit_branches(std::vector<AbstractTransition>& out, const AbstractState& source,
                   const TransLabel& theta, const Rational& rate_param,
                   const std::vector<Name>& consumed, const Multiset& produced,
                   const AbstractState& raw_target, const std::vector<Interval>& raw_delta) {
    // the polarity product ranges over distinct consumed species; a
    // homo-species sync removes two copies at once, so each species carries
    // its net loss into the interval refinement
    std::vector<Name> species;
    std::vector<std::int64_t> net;
    for (const auto& x : consumed) {
        auto it = std::find(species.begin(), species.end(), x);
        if (it == species.end()) {
            species.push_back(x);
            net.push_back(-std::int64_t(produced.count(x)));
            it = species.end() - 1;
        }
        net[std::size_t(it - species.begin())] += 1;
    }
    std::size_t k = species.size();
    std::vector<Polarity> choice(k, Polarity::Zero);
    while (true) {
        AbstractTransition t;
        t.source = source;
        t.theta = theta;
        t.rate_param = rate_param;
        t.target = raw_target;
        std::vector<Interval> delta = raw_delta;
        for (std::size_t i = 0; i < k; ++i) {
            SplitTag tag{species[i], choice[i]};
            t.target = split_state(t.target, tag);
            for (std::size_t d = 0; d < delta.size(); ++d)
                if (consumed[d] == species[i])
                    delta[d] = split_interval(delta[d], tag, net[i]);
            t.split_tags.insert(tag);
        }
        t.delta.first = delta[0];
        if (delta.size() > 1) t.delta.second = delta[1];
        out.push_back(std::move(t));
        std::size_t pos = 0;
        while (pos < k && choice[pos] == Polarity::Positive) {
            choice[pos] = Polarity::Zero;
            ++pos;
        }
        if (pos == k) break;
        choice[pos] = Polarity::Positive;
    }
}

}  // namespace

std::vector<AbstractTransition> abstract_enabled(const Environment& env,
                                                 const AbstractState& ms) {
    std::vector<AbstractTransition> raw;
    for (const auto& def : env.species) {
        for (const auto& prefix : def.summands) {
            if (prefix.action.kind != ActionKind::Delay) continue;
            AbstractState target =
                astate_sum(astate_diff(ms, one_of(def.name)), alpha_state(prefix.product));
            emit_branches(raw, ms, TransLabel::delay(prefix.action.label), prefix.action.rate,
                          {def.name}, prefix.product, target, {ms.get(def.name)});
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
                    AbstractState target = astate_sum(
                        astate_sum(astate_diff(astate_diff(ms, one_of(in_def.name)),
                                               one_of(out_def.name)),
                                   alpha_state(in_prefix.product)),
                        alpha_state(out_prefix.product));
                    emit_branches(
                        raw, ms,
                        TransLabel::sync(in_prefix.action.label, out_prefix.action.label),
                        in_prefix.action.rate, {in_def.name, out_def.name},
                        msum(in_prefix.product, out_prefix.product), target,
                        {ms.get(in_def.name), ms.get(out_def.name)});
                }
            }
        }
    }
    // Branches of one rule that land on the same target describe the same
    // abstract move; join their multiplicity intervals back together.
    std::vector<AbstractTransition> out;
    for (auto& t : raw) {
        auto it = std::find_if(out.begin(), out.end(), [&](const AbstractTransition& u) {
            return u.theta == t.theta && u.target == t.target;
        });
        if (it == out.end()) {
            out.push_back(std::move(t));
            continue;
        }
        it->delta.first = interval_join(it->delta.first, t.delta.first);
        if (it->delta.second && t.delta.second)
            it->delta.second = interval_join(*it->delta.second, *t.delta.second);
        it->split_tags.insert(t.split_tags.begin(), t.split_tags.end());
    }
    return out;
}

AbstractLTS explore(const Environment& env, const AbstractState& m0, bool widening,
                    std::size_t state_cap) {
    AbstractLTS alts;
    alts.env = env;
    alts.widened = widening;
    alts.states.push_back(m0);
    alts.index[m0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t idx = queue.front();
        queue.pop_front();
        AbstractState state = alts.states[idx];
        std::vector<AbstractTransition> kept;
        for (auto& t : abstract_enabled(env, state)) {
            if (max_abstract_rate(env, t).is_zero()) continue;
            if (widening && !alts.index.contains(t.target)) {
                for (const auto& prior : alts.states) {
                    if (state_leq(t.target, prior)) {
                        t.target = prior;
                        break;
                    }
                }
            }
            auto [it, inserted] = alts.index.try_emplace(t.target, alts.states.size());
            if (inserted) {
                if (alts.states.size() >= state_cap)
                    throw CapExceeded("state cap " + std::to_string(state_cap) +
                                      " exceeded during abstract exploration");
                alts.states.push_back(t.target);
                queue.push_back(it->second);
            }
            kept.push_back(std::move(t));
        }
        if (alts.transitions.size() <= idx) alts.transitions.resize(idx + 1);
        alts.transitions[idx] = std::move(kept);
    }
    alts.transitions.resize(alts.states.size());
    return alts;
}

AbstractLTS best_abstraction_lts(const LTS& lts) {
    AbstractLTS alts;
    alts.env = lts.env;
    alts.initial = lts.initial;
    for (const auto& m : lts.states) {
        AbstractState a = alpha_state(m);
        alts.index.emplace(a, alts.states.size());
        alts.states.push_back(std::move(a));
    }
    alts.transitions.resize(alts.states.size());
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        for (const auto& t : lts.transitions[i]) {
            AbstractTransition a;
            a.source = alts.states[i];
            a.theta = t.theta;
            a.delta.first = Interval::exact(t.delta.first);
            if (t.delta.second) a.delta.second = Interval::exact(*t.delta.second);
            a.rate_param = t.rate_param;
            a.target = alpha_state(t.target);
            auto& row = alts.transitions[i];
            bool dup = std::any_of(row.begin(), row.end(), [&](const AbstractTransition& u) {
                return u.theta == a.theta && u.delta == a.delta && u.target == a.target;
            });
            if (!dup) row.push_back(std::move(a));
        }
    }
    return alts;
}

bool check_simulation(const AbstractLTS& a1, const AbstractLTS& a2) {
    auto delta_leq = [](const AbsMultInfo& d1, const AbsMultInfo& d2) {
        if (d1.second.has_value() != d2.second.has_value()) return false;
        if (!interval_leq(d1.first, d2.first)) return false;
        return !d1.second || interval_leq(*d1.second, *d2.second);
    };
    std::size_t n1 = a1.states.size(), n2 = a2.states.size();
    std::vector<std::vector<bool>> rel(n1, std::vector<bool>(n2, false));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            rel[i][j] = state_leq(a1.states[i], a2.states[j]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                if (!rel[i][j]) continue;
                bool ok = true;
                for (const auto& t1 : a1.transitions[i]) {
                    bool matched = false;
                    for (const auto& t2 : a2.transitions[j]) {
                        if (t2.theta != t1.theta || t2.rate_param != t1.rate_param) continue;
                        if (!delta_leq(t1.delta, t2.delta)) continue;
                        if (rel[a1.index.at(t1.target)][a2.index.at(t2.target)]) {
                            matched = true;
                            break;
                        }
                    }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    rel[i][j] = false;
                    changed = true;
                }
            }
        }
    }
    return rel[a1.initial][a2.initial];
}

}  // namespace cgfa
