#include <random>

#include "cgfa/symrate.hpp"
#include "doctest.h"

using namespace cgfa;

TEST_CASE("polynomial construction and evaluation") {
    Polynomial p = Polynomial::var("X", Rational(2)) + Polynomial::product("X", "Y", Rational(1));
    CHECK(p.eval({{"X", 3}, {"Y", 4}}) == Rational(18));
    CHECK(p.variables() == std::vector<Name>{"X", "Y"});
    Polynomial falling = Polynomial::var("X", Rational(1), FactorKind::Falling);
    CHECK(falling.eval({{"X", 3}}) == Rational(6));
    CHECK(falling.eval({{"X", 0}}) == Rational(0));
    CHECK(falling.eval({{"X", 1}}) == Rational(0));
    CHECK(Polynomial().is_zero());
    CHECK(Polynomial::constant(Rational(0)).is_zero());
}

TEST_CASE("like monomials combine") {
    Polynomial p = Polynomial::var("X", Rational(1)) + Polynomial::var("X", Rational(2));
    CHECK(p == Polynomial::var("X", Rational(3)));
    CHECK(p.str() == "3*X");
    Polynomial q = Polynomial::product("Y", "X", Rational(1));
    CHECK(q == Polynomial::product("X", "Y", Rational(1)));
}

TEST_CASE("box extrema sit at corners") {
    Polynomial p = Polynomial::product("X", "Y", Rational(2));
    std::map<Name, Interval> box{{"X", {1, 2}}, {"Y", {1, 2}}};
    CHECK(p.min_over(box) == ExtRat::of(Rational(2)));
    CHECK(p.max_over(box) == ExtRat::of(Rational(8)));
    box["Y"] = Interval::unbounded(1);
    CHECK(p.max_over(box) == ExtRat::inf());
    CHECK(p.min_over(box) == ExtRat::of(Rational(2)));
    box["X"] = Interval{0, 0};
    CHECK(p.max_over(box) == ExtRat::of(Rational(0)));  // 0 * inf
}

TEST_CASE("sym_add joins constraints per variable") {
    SymbolicRate a{Polynomial::var("X", Rational(1)), {{"X", {1, 2}}}};
    SymbolicRate b{Polynomial::var("X", Rational(1)), {{"X", {2, 3}}}};
    SymbolicRate sum = sym_add(a, b);
    CHECK(sum.expr == Polynomial::var("X", Rational(2)));
    CHECK(sum.constraints.at("X") == Interval{1, 3});
    SymbolicRate c{Polynomial::var("Y", Rational(1)), {{"Y", {2, 2}}}};
    SymbolicRate mixed = sym_add(a, c);
    CHECK(mixed.constraints.size() == 2);
    SymbolicRate zero;
    CHECK(sym_add(a, zero).expr == a.expr);
    CHECK(sym_add(a, zero).constraints == a.constraints);
}

TEST_CASE("bound_ratio reproduces the shared-valuation 1/2") {
    SymbolicRate num{Polynomial::product("X", "Y", Rational(1)), {{"X", {1, 2}}, {"Y", {2, 2}}}};
    SymbolicRate den{Polynomial::product("X", "Y", Rational(2)), {{"X", {1, 2}}, {"Y", {1, 2}}}};
    RatioBounds r = bound_ratio(num, den);
    CHECK(r.exhaustive);
    CHECK(r.lo == Rational(1, 2));
    CHECK(r.hi == Rational(1, 2));
}

TEST_CASE("bound_ratio basics") {
    SymbolicRate zero;
    SymbolicRate den{Polynomial::var("X", Rational(1)), {{"X", {1, 2}}}};
    RatioBounds z = bound_ratio(zero, den);
    CHECK(z.lo == Rational(0));
    CHECK(z.hi == Rational(0));

    SymbolicRate x{Polynomial::var("X", Rational(1)), {{"X", {1, 2}}}};
    SymbolicRate xy{Polynomial::var("X", Rational(1)) + Polynomial::var("Y", Rational(1)),
                    {{"X", {1, 2}}, {"Y", {1, 2}}}};
    RatioBounds r = bound_ratio(x, xy);
    CHECK(r.lo == Rational(1, 3));
    CHECK(r.hi == Rational(2, 3));
}

TEST_CASE("fallback division is used above the cap and encloses the exact bounds") {
    SymbolicRate num{Polynomial::product("X", "Y", Rational(1)), {{"X", {1, 2}}, {"Y", {2, 2}}}};
    SymbolicRate den{Polynomial::product("X", "Y", Rational(2)), {{"X", {1, 2}}, {"Y", {1, 2}}}};
    RatioBounds exact = bound_ratio(num, den);
    RatioBounds fb = bound_ratio(num, den, 1);
    CHECK(!fb.exhaustive);
    CHECK(fb.lo <= exact.lo);
    CHECK(fb.hi >= exact.hi);
    CHECK(fb.lo >= 0);
    CHECK(fb.hi <= 1);
}

TEST_CASE("fallback handles unbounded constraints") {
    SymbolicRate num{Polynomial::var("X", Rational(1)), {{"X", Interval::unbounded(1)}}};
    SymbolicRate den{Polynomial::var("X", Rational(1)) + Polynomial::var("Y", Rational(1)),
                     {{"X", Interval::unbounded(1)}, {"Y", {0, 1}}}};
    RatioBounds r = bound_ratio(num, den);
    CHECK(!r.exhaustive);
    CHECK(r.lo == Rational(0));  // finite min over infinite max
    CHECK(r.hi == Rational(1));  // inf over inf caps at 1
}

TEST_CASE("bound_ratio encloses brute-force sweeps on random rate pairs") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> small(0, 3);
    auto random_rate = [&](bool wide) {
        Polynomial e;
        std::map<Name, Interval> c;
        for (const char* name : {"X", "Y"}) {
            int coeff = small(rng);
            if (coeff > 0)
                e = e + Polynomial::var(name, Rational(coeff),
                                        small(rng) == 0 ? FactorKind::Falling
                                                        : FactorKind::Linear);
            std::uint64_t lo = small(rng);
            std::uint64_t width = small(rng) + (wide ? 1 : 0);
            c[name] = Interval{lo, lo + width};
        }
        if (small(rng) == 0) e = e + Polynomial::product("X", "Y", Rational(1 + small(rng)));
        return SymbolicRate{e, c};
    };
    for (int round = 0; round < 200; ++round) {
        SymbolicRate num = random_rate(false);
        SymbolicRate den = sym_add(num, random_rate(true));  // guarantees num <= den pointwise
        RatioBounds r = bound_ratio(num, den);
        auto box = constraint_union(num.constraints, den.constraints);
        const Interval& bx = box.at("X");
        const Interval& by = box.at("Y");
        bool attained_lo = false, attained_hi = false;
        for (std::uint64_t x = bx.lo; x <= *bx.hi; ++x) {
            for (std::uint64_t y = by.lo; y <= *by.hi; ++y) {
                Rational e = den.expr.eval({{"X", x}, {"Y", y}});
                if (e == 0) continue;
                Rational ratio = num.expr.eval({{"X", x}, {"Y", y}}) / e;
                CHECK(ratio >= r.lo);
                CHECK(ratio <= r.hi);
                attained_lo = attained_lo || ratio == r.lo;
                attained_hi = attained_hi || ratio == r.hi;
            }
        }
        if (r.exhaustive && (attained_lo || attained_hi)) {
            CHECK(attained_lo);
            CHECK(attained_hi);
        }
    }
}
