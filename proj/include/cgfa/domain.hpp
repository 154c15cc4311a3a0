#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgfa/model.hpp"

namespace cgfa {

/// Integer interval [lo, hi] with hi possibly infinite (nullopt).
struct Interval {
    std::uint64_t lo = 0;
    std::optional<std::uint64_t> hi = 0;  // nullopt == infinity

    static Interval exact(std::uint64_t n) { return {n, n}; }
    static Interval unbounded(std::uint64_t lo) { return {lo, std::nullopt}; }

    bool finite() const { return hi.has_value(); }
    bool contains(std::uint64_t n) const { return lo <= n && (!hi || n <= *hi); }
    std::uint64_t width_or_throw() const;  // number of points, finite only

    bool operator==(const Interval&) const = default;
    auto operator<=>(const Interval&) const = default;

    std::string str() const;
};

bool interval_leq(const Interval& i, const Interval& j);
Interval interval_join(const Interval& i, const Interval& j);
Interval interval_add(const Interval& i, const Interval& j);
/// Truncated: [lo(i) -^ hi(j), hi(i) -^ lo(j)], with n -^ inf = 0, inf -^ n = inf.
Interval interval_sub(const Interval& i, const Interval& j);

enum class Polarity { Zero, Positive };

struct SplitTag {
    Name species;
    Polarity polarity = Polarity::Zero;

    bool operator==(const SplitTag&) const = default;
    auto operator<=>(const SplitTag&) const = default;
    std::string str() const;
};

/// Per-species interval map; species absent from the map mean [0,0].
class AbstractState {
public:
    AbstractState() = default;

    Interval get(const Name& x) const;
    void set(const Name& x, Interval i);
    const std::map<Name, Interval>& entries() const { return entries_; }

    bool operator==(const AbstractState&) const = default;
    auto operator<=>(const AbstractState&) const = default;

    std::string str() const;

private:
    std::map<Name, Interval> entries_;  // [0,0] entries dropped
};

bool state_leq(const AbstractState& m1, const AbstractState& m2);
AbstractState state_join(const AbstractState& m1, const AbstractState& m2);
AbstractState astate_sum(const AbstractState& m, const AbstractState& n);
AbstractState astate_diff(const AbstractState& m, const AbstractState& n);

AbstractState alpha_state(const Multiset& m);
AbstractState alpha_set(const std::vector<Multiset>& s);

bool gamma_contains(const AbstractState& ms, const Multiset& m);
/// All concretizations in lexicographic order; throws if infinite or more than cap.
std::vector<Multiset> gamma_enumerate(const AbstractState& ms, std::uint64_t cap);

/// The state split operator (identity unless the tagged interval is [0,n], n>0).
AbstractState split_state(const AbstractState& ms, const SplitTag& tag);

/// Clips a source multiplicity interval to the branch selected by the tag.
/// `net` is how many instances of the tagged species the transition removes
/// on balance; the exhausted branch caps the count at `net` and the positive
/// branch demands at least `net + 1`.
Interval split_interval(const Interval& i, const SplitTag& tag, std::int64_t net = 1);

}  // namespace cgfa
