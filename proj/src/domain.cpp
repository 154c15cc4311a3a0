#include "cgfa/domain.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cgfa {

std::uint64_t Interval::width_or_throw() const {
    if (!hi) throw std::overflow_error("interval " + str() + " is unbounded");
    return *hi - lo + 1;
}

std::string Interval::str() const {
    std::ostringstream out;
    out << '[' << lo << ',';
    if (hi)
        out << *hi;
    else
        out << "inf";
    out << ']';
    return out.str();
}

bool interval_leq(const Interval& i, const Interval& j) {
    bool hi_ok = !j.hi || (i.hi && *i.hi <= *j.hi);
    return j.lo <= i.lo && hi_ok;
}

Interval interval_join(const Interval& i, const Interval& j) {
    Interval out;
    out.lo = std::min(i.lo, j.lo);
    if (i.hi && j.hi)
        out.hi = std::max(*i.hi, *j.hi);
    else
        out.hi = std::nullopt;
    return out;
}

Interval interval_add(const Interval& i, const Interval& j) {
    Interval out;
    out.lo = i.lo + j.lo;
    if (i.hi && j.hi)
        out.hi = *i.hi + *j.hi;
    else
        out.hi = std::nullopt;
    return out;
}

Interval interval_sub(const Interval& i, const Interval& j) {
    Interval out;
    // lo(i) -^ hi(j); n -^ inf = 0
    out.lo = j.hi && i.lo > *j.hi ? i.lo - *j.hi : 0;
    if (i.hi)
        out.hi = *i.hi > j.lo ? *i.hi - j.lo : 0;
    else
        out.hi = std::nullopt;  // inf -^ n = inf
    return out;
}

std::string SplitTag::str() const {
    return "(" + species + (polarity == Polarity::Zero ? "=0)" : ">0)");
}

Interval AbstractState::get(const Name& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? Interval{0, 0} : it->second;
}

void AbstractState::set(const Name& x, Interval i) {
    if (i == Interval{0, 0})
        entries_.erase(x);
    else
        entries_[x] = i;
}

std::string AbstractState::str() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [name, iv] : entries_) {
        if (!first) out << ", ";
        first = false;
        out << name << ':' << iv.str();
    }
    out << '}';
    return out.str();
}

namespace {

template <typename F>
AbstractState pointwise(const AbstractState& m, const AbstractState& n, F op) {
    AbstractState out;
    for (const auto& [name, iv] : m.entries()) out.set(name, op(iv, n.get(name)));
    for (const auto& [name, iv] : n.entries())
        if (!m.entries().contains(name)) out.set(name, op(Interval{0, 0}, iv));
    return out;
}

}  // namespace

bool state_leq(const AbstractState& m1, const AbstractState& m2) {
    for (const auto& [name, iv] : m1.entries())
        if (!interval_leq(iv, m2.get(name))) return false;
    for (const auto& [name, iv] : m2.entries())
        if (!m1.entries().contains(name) && !interval_leq(Interval{0, 0}, iv)) return false;
    return true;
}

AbstractState state_join(const AbstractState& m1, const AbstractState& m2) {
    return pointwise(m1, m2, interval_join);
}

AbstractState astate_sum(const AbstractState& m, const AbstractState& n) {
    return pointwise(m, n, interval_add);
}

AbstractState astate_diff(const AbstractState& m, const AbstractState& n) {
    return pointwise(m, n, interval_sub);
}

AbstractState alpha_state(const Multiset& m) {
    AbstractState out;
    for (const auto& [name, count] : m.entries()) out.set(name, Interval::exact(count));
    return out;
}

AbstractState alpha_set(const std::vector<Multiset>& s) {
    if (s.empty()) throw std::invalid_argument("alpha of an empty set is undefined");
    AbstractState out = alpha_state(s.front());
    for (std::size_t i = 1; i < s.size(); ++i) out = state_join(out, alpha_state(s[i]));
    return out;
}

bool gamma_contains(const AbstractState& ms, const Multiset& m) {
    return state_leq(alpha_state(m), ms);
}

std::vector<Multiset> gamma_enumerate(const AbstractState& ms, std::uint64_t cap) {
    std::vector<std::pair<Name, Interval>> dims(ms.entries().begin(), ms.entries().end());
    std::uint64_t total = 1;
    for (const auto& [name, iv] : dims) {
        if (!iv.hi)
            throw std::overflow_error("cannot enumerate unbounded interval for '" + name + "'");
        std::uint64_t w = iv.width_or_throw();
        if (total > cap / std::max<std::uint64_t>(w, 1) && total * w > cap)
            throw std::overflow_error("concretization count exceeds cap " +
                                      std::to_string(cap));
        total *= w;
    }
    if (total > cap)
        throw std::overflow_error("concretization count " + std::to_string(total) +
                                  " exceeds cap " + std::to_string(cap));
    std::vector<Multiset> out;
    out.reserve(total);
    std::vector<std::uint64_t> current;
    for (const auto& [name, iv] : dims) current.push_back(iv.lo);
    while (true) {
        Multiset m;
        for (std::size_t i = 0; i < dims.size(); ++i) m.set(dims[i].first, current[i]);
        out.push_back(std::move(m));
        std::size_t k = dims.size();
        while (k > 0) {
            --k;
            if (current[k] < *dims[k].second.hi) {
                ++current[k];
                for (std::size_t j = k + 1; j < dims.size(); ++j) current[j] = dims[j].second.lo;
                break;
            }
            if (k == 0) return out;
        }
        if (dims.empty()) return out;
    }
}

AbstractState split_state(const AbstractState& ms, const SplitTag& tag) {
    Interval iv = ms.get(tag.species);
    if (iv.lo != 0 || (iv.hi && *iv.hi == 0)) return ms;  // not of the form [0,n], n>0
    AbstractState out = ms;
    if (tag.polarity == Polarity::Zero)
        out.set(tag.species, Interval{0, 0});
    else
        out.set(tag.species, Interval{1, iv.hi});
    return out;
}

Interval split_interval(const Interval& i, const SplitTag& tag, std::int64_t net) {
    if (tag.polarity == Polarity::Zero) {
        // exhausting the species needs exactly `net` source copies; clip the
        // upper end, an already-lower interval (incl. [0,0]) stays put
        if (net < 0) return i;
        std::uint64_t cap = std::uint64_t(net);
        if (i.lo <= cap) return Interval{i.lo, i.hi && *i.hi < cap ? *i.hi : cap};
        return i;
    }
    if (net < 0) return i;
    std::uint64_t floor = std::uint64_t(net) + 1;
    if (!i.hi || *i.hi >= floor) return Interval{std::max(i.lo, floor), i.hi};
    return i;
}

}  // namespace cgfa
