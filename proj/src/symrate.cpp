#include "cgfa/symrate.hpp"

#include <algorithm>
#include <sstream>

namespace cgfa {

namespace {

ExtRat factor_at(FactorKind kind, const ExtRat& v) {
    if (kind == FactorKind::Linear) return v;
    if (v.infinite) return v;
    // falling factorial x * (x -^ 1)
    Rational x = v.value;
    return ExtRat::of(x >= 1 ? x * (x - 1) : Rational(0));
}

ExtRat corner(const Interval& i, bool upper) {
    if (!upper) return ExtRat::of(Rational(i.lo));
    return i.hi ? ExtRat::of(Rational(*i.hi)) : ExtRat::inf();
}

}  // namespace

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    if (c != 0) p.monomials_.push_back({std::move(c), {}});
    return p;
}

Polynomial Polynomial::var(const Name& x, Rational coeff, FactorKind kind) {
    Polynomial p;
    if (coeff != 0) p.monomials_.push_back({std::move(coeff), {{x, kind}}});
    return p;
}

Polynomial Polynomial::product(const Name& x, const Name& y, Rational coeff) {
    Polynomial p;
    if (coeff != 0) {
        Monomial m{std::move(coeff), {{x, FactorKind::Linear}, {y, FactorKind::Linear}}};
        std::sort(m.factors.begin(), m.factors.end());
        p.monomials_.push_back(std::move(m));
    }
    return p;
}

std::vector<Name> Polynomial::variables() const {
    std::vector<Name> vars;
    for (const auto& m : monomials_)
        for (const auto& [name, kind] : m.factors) {
            (void)kind;
            if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
        }
    std::sort(vars.begin(), vars.end());
    return vars;
}

Rational Polynomial::eval(const std::map<Name, std::uint64_t>& valuation) const {
    Rational total(0);
    for (const auto& m : monomials_) {
        Rational term = m.coeff;
        for (const auto& [name, kind] : m.factors) {
            auto it = valuation.find(name);
            if (it == valuation.end())
                throw std::invalid_argument("unbound variable '" + name + "' in evaluation");
            ExtRat f = factor_at(kind, ExtRat::of(Rational(it->second)));
            term *= f.value;
        }
        total += term;
    }
    return total;
}

ExtRat Polynomial::min_over(const std::map<Name, Interval>& box) const {
    ExtRat total = ExtRat::of(Rational(0));
    for (const auto& m : monomials_) {
        ExtRat term = ExtRat::of(m.coeff);
        for (const auto& [name, kind] : m.factors) {
            auto it = box.find(name);
            if (it == box.end())
                throw std::invalid_argument("unconstrained variable '" + name + "'");
            term = term * factor_at(kind, corner(it->second, false));
        }
        total = total + term;
    }
    return total;
}

ExtRat Polynomial::max_over(const std::map<Name, Interval>& box) const {
    ExtRat total = ExtRat::of(Rational(0));
    for (const auto& m : monomials_) {
        ExtRat term = ExtRat::of(m.coeff);
        for (const auto& [name, kind] : m.factors) {
            auto it = box.find(name);
            if (it == box.end())
                throw std::invalid_argument("unconstrained variable '" + name + "'");
            term = term * factor_at(kind, corner(it->second, true));
        }
        total = total + term;
    }
    return total;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.monomials_ = a.monomials_;
    out.monomials_.insert(out.monomials_.end(), b.monomials_.begin(), b.monomials_.end());
    out.canonicalize();
    return out;
}

void Polynomial::canonicalize() {
    for (auto& m : monomials_) std::sort(m.factors.begin(), m.factors.end());
    std::sort(monomials_.begin(), monomials_.end(),
              [](const Monomial& a, const Monomial& b) { return a.factors < b.factors; });
    std::vector<Monomial> merged;
    for (auto& m : monomials_) {
        if (!merged.empty() && merged.back().factors == m.factors)
            merged.back().coeff += m.coeff;
        else
            merged.push_back(std::move(m));
    }
    std::erase_if(merged, [](const Monomial& m) { return m.coeff == 0; });
    monomials_ = std::move(merged);
}

std::string Polynomial::str() const {
    if (monomials_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& m : monomials_) {
        if (!first) out << " + ";
        first = false;
        bool printed = false;
        if (m.coeff != 1 || m.factors.empty()) {
            out << m.coeff.str();
            printed = true;
        }
        for (const auto& [name, kind] : m.factors) {
            if (printed) out << "*";
            printed = true;
            if (kind == FactorKind::Linear)
                out << name;
            else
                out << name << "*(" << name << "-1)";
        }
    }
    return out.str();
}

std::string SymbolicRate::str() const {
    std::ostringstream out;
    out << '(' << expr.str() << ", {";
    bool first = true;
    for (const auto& [name, iv] : constraints) {
        if (!first) out << ", ";
        first = false;
        out << name << " in " << iv.str();
    }
    out << "})";
    return out.str();
}

std::map<Name, Interval> constraint_union(const std::map<Name, Interval>& c1,
                                          const std::map<Name, Interval>& c2) {
    std::map<Name, Interval> out = c1;
    for (const auto& [name, iv] : c2) {
        auto [it, inserted] = out.emplace(name, iv);
        if (!inserted) it->second = interval_join(it->second, iv);
    }
    return out;
}

SymbolicRate sym_add(const SymbolicRate& a, const SymbolicRate& b) {
    return {a.expr + b.expr, constraint_union(a.constraints, b.constraints)};
}

ExtRat sym_min(const SymbolicRate& s) { return s.expr.min_over(s.constraints); }
ExtRat sym_max(const SymbolicRate& s) { return s.expr.max_over(s.constraints); }

RatioBounds bound_ratio(const SymbolicRate& num, const SymbolicRate& den,
                        std::uint64_t enum_cap) {
    if (num.expr.is_zero()) return {Rational(0), Rational(0), true};

    std::map<Name, Interval> box = constraint_union(num.constraints, den.constraints);
    bool enumerable = true;
    std::uint64_t points = 1;
    for (const auto& [name, iv] : box) {
        (void)name;
        if (!iv.hi) {
            enumerable = false;
            break;
        }
        std::uint64_t w = *iv.hi - iv.lo + 1;
        if (points > enum_cap / std::max<std::uint64_t>(w, 1) && points * w > enum_cap) {
            enumerable = false;
            break;
        }
        points *= w;
        if (points > enum_cap) {
            enumerable = false;
            break;
        }
    }

    if (enumerable) {
        // both expressions share one integer valuation per point
        std::vector<std::pair<Name, Interval>> dims(box.begin(), box.end());
        std::vector<std::uint64_t> current;
        for (const auto& [name, iv] : dims) {
            (void)name;
            current.push_back(iv.lo);
        }
        bool any = false;
        Rational lo(0), hi(0);
        while (true) {
            std::map<Name, std::uint64_t> v;
            for (std::size_t i = 0; i < dims.size(); ++i) v[dims[i].first] = current[i];
            Rational e = den.expr.eval(v);
            if (e > 0) {
                Rational r = num.expr.eval(v) / e;
                if (r < 0) r = 0;
                if (r > 1) r = 1;
                if (!any || r < lo) lo = r;
                if (!any || r > hi) hi = r;
                any = true;
            }
            std::size_t k = dims.size();
            bool advanced = false;
            while (k > 0) {
                --k;
                if (current[k] < *dims[k].second.hi) {
                    ++current[k];
                    for (std::size_t j = k + 1; j < dims.size(); ++j)
                        current[j] = dims[j].second.lo;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (!any) return {Rational(0), Rational(0), true};
        return {lo, hi, true};
    }

    // interval-division fallback
    ExtRat num_lo = sym_min(num), num_hi = sym_max(num);
    ExtRat den_lo = sym_min(den), den_hi = sym_max(den);
    Rational lo(0), hi(1);
    if (!num_lo.infinite && den_hi.infinite)
        lo = 0;
    else if (!den_hi.infinite && den_hi.value > 0)
        lo = num_lo.value / den_hi.value;
    if (num_hi.is_zero())
        hi = 0;
    else if (!num_hi.infinite && !den_lo.is_zero() && !den_lo.infinite)
        hi = num_hi.value / den_lo.value;
    if (lo > 1) lo = 1;
    if (hi > 1) hi = 1;
    if (lo > hi) lo = hi;
    return {lo, hi, false};
}

}  // namespace cgfa
