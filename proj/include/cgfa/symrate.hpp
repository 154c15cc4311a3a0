#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cgfa/domain.hpp"
#include "cgfa/rational.hpp"

namespace cgfa {

enum class FactorKind { Linear, Falling };  // X or X*(X-^1)

/// Product of variable factors with a nonnegative rational coefficient.
struct Monomial {
    Rational coeff;
    std::vector<std::pair<Name, FactorKind>> factors;  // kept sorted

    bool operator==(const Monomial&) const = default;
};

/// Sum of monomials, canonicalized (like monomials combined, zero coeffs dropped).
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(Rational c);
    static Polynomial var(const Name& x, Rational coeff, FactorKind kind = FactorKind::Linear);
    static Polynomial product(const Name& x, const Name& y, Rational coeff);  // x*y*coeff

    bool is_zero() const { return monomials_.empty(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::vector<Name> variables() const;

    Rational eval(const std::map<Name, std::uint64_t>& valuation) const;
    /// Coefficients are nonnegative and factors nondecreasing, so the extrema
    /// sit at the box corners.
    ExtRat min_over(const std::map<Name, Interval>& box) const;
    ExtRat max_over(const std::map<Name, Interval>& box) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial&) const = default;

    std::string str() const;

private:
    void canonicalize();
    std::vector<Monomial> monomials_;
};

/// The pair (e, c): a rate polynomial plus one interval constraint per variable.
struct SymbolicRate {
    Polynomial expr;
    std::map<Name, Interval> constraints;

    bool operator==(const SymbolicRate&) const = default;
    std::string str() const;
};

/// Per-variable interval join of two constraint maps.
std::map<Name, Interval> constraint_union(const std::map<Name, Interval>& c1,
                                          const std::map<Name, Interval>& c2);

SymbolicRate sym_add(const SymbolicRate& a, const SymbolicRate& b);

ExtRat sym_min(const SymbolicRate& s);
ExtRat sym_max(const SymbolicRate& s);

struct RatioBounds {
    Rational lo;
    Rational hi;
    bool exhaustive = false;  // true when exact integer enumeration was used
};

/// Sound enclosure of { R(v)/E(v) | v in the joined constraint box, E(v) > 0 },
/// both expressions evaluated on the shared valuation. Falls back to interval
/// division when the box is infinite or larger than enum_cap.
RatioBounds bound_ratio(const SymbolicRate& num, const SymbolicRate& den,
                        std::uint64_t enum_cap = 4096);

}  // namespace cgfa
