#include "plsemi/cesaro.hpp"

#include "plsemi/semigroup.hpp"
#include "oracles.hpp"

#include <doctest.h>

using plsemi::Breakpoint;
using plsemi::CesaroMethod;
using plsemi::CesaroResult;
using plsemi::OmegaFn;
using plsemi::Rational;
using plsemi::ZeroOrbitMean;

TEST_CASE("exact zero-orbit mean: frozen values") {
    // (A(1/2)0)(0) = 1/4, cross-checked by the trapezoid route
    CHECK(ZeroOrbitMean(Rational(1, 2)).eval(Rational(0)) == Rational(1, 4));
    {
        const CesaroResult quad = cesaro_quadrature(OmegaFn::zero(), Rational(1, 2), Rational(1, 512));
        CHECK(plsemi::abs(quad.mean->eval(Rational(0)) - Rational(1, 4)) <= quad.error_bound);
    }
    // residual at t = 1 is 1/2, attained at u = 0
    const ZeroOrbitMean one(Rational(1));
    CHECK(one.sup_residual() == Rational(1, 2));
    CHECK(plsemi::abs(cesaro_residual(OmegaFn::zero(), Rational(1), Rational(1, 1000)).residual -
                      Rational(1, 2)) <= Rational(1, 4000));
    CHECK(one.eval(Rational(0)) == Rational(1, 2));
    CHECK(one.eval(Rational(1)) == Rational(0));
    // full window: residual 1/10 at t = 10
    CHECK(ZeroOrbitMean(Rational(10)).sup_residual() == Rational(1, 10));
    // the mean vanishes at -1 and beyond t
    CHECK(one.eval(Rational(-1)) == Rational(0));
    CHECK(ZeroOrbitMean(Rational(3)).eval(Rational(7, 2)) == Rational(0));
    CHECK_THROWS_AS(ZeroOrbitMean(Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(one.eval(Rational(-1, 2)), std::domain_error);
}

TEST_CASE("exact mean: quadratic pieces agree with the antiderivative path") {
    for (const Rational t : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                             Rational(7, 3), Rational(5)}) {
        const ZeroOrbitMean mean(t);
        for (const auto& piece : mean.pieces()) {
            CHECK(piece.lo < piece.hi);
            for (int k = 0; k <= 8; ++k) {
                const Rational u = piece.lo + (piece.hi - piece.lo) * Rational(k, 8);
                CHECK(piece.eval(u) == mean.eval(u));
            }
        }
        // pieces tile [0, t]
        CHECK(mean.pieces().front().lo == Rational(0));
        CHECK(mean.pieces().back().hi == t);
        // nonincreasing in u
        Rational prev = mean.eval(Rational(0));
        for (Rational u(0); u <= t + Rational(1); u += Rational(1, 8)) {
            CHECK(mean.eval(u) <= prev);
            prev = mean.eval(u);
        }
    }
}

TEST_CASE("residual equals 1/t exactly for t in {2,4,...,1024}") {
    Rational t(1);
    Rational prev(1);
    for (int k = 1; k <= 10; ++k) {
        t *= Rational(2);
        const auto [residual, bound] = cesaro_residual(OmegaFn::zero(), t);
        CHECK(residual == Rational(1) / t);
        CHECK(bound == Rational(0));
        CHECK(residual < prev);
        prev = residual;
    }
    CHECK(prev < Rational(1, 1000));  // t = 1024
}

TEST_CASE("quadrature: single trapezoid at t=2, h=2") {
    const CesaroResult r = cesaro_quadrature(OmegaFn::zero(), Rational(2), Rational(2));
    CHECK(r.method == CesaroMethod::quadrature);
    CHECK(r.error_bound == Rational(1, 2));
    // mean = (T(0)0 + T(2)0)/2, the tent scaled by one half
    CHECK(r.mean->breakpoints() == std::vector<Breakpoint>{{Rational(0), Rational(0)},
                                                           {Rational(1), Rational(1, 2)},
                                                           {Rational(2), Rational(0)}});
    CHECK(r.mean->minus_one_value() == Rational(0));
}

TEST_CASE("quadrature of a common fixed point is the fixed point") {
    const OmegaFn w = oracles::family_w(Rational(1, 4));
    for (const Rational h : {Rational(1, 4), Rational(1), Rational(4)}) {
        const CesaroResult r = cesaro_quadrature(w, Rational(4), h);
        CHECK(*r.mean == w);
        CHECK(sup_dist(*r.mean, w) == Rational(0));
    }
    // zero residual across both families on the s-grid
    for (int k = 0; k <= 4; ++k) {
        const Rational s(k, 8);
        for (const OmegaFn& member : {oracles::family_v(s), oracles::family_w(s)}) {
            const auto [residual, bound] = cesaro_residual(member, Rational(4), Rational(1, 4));
            CHECK(residual == Rational(0));
        }
    }
}

TEST_CASE("quadrature mean tracks the exact mean within h/4") {
    const OmegaFn zero = OmegaFn::zero();
    // t = 4, h = 1/8 agrees within 1/32 in sup norm
    {
        const CesaroResult quad = cesaro_quadrature(zero, Rational(4), Rational(1, 8));
        const ZeroOrbitMean exact(Rational(4));
        CHECK(sup_dist(*quad.mean, exact) <= Rational(1, 32));
        CHECK(in_C(*quad.mean).in_C);
    }
    for (const Rational t : {Rational(2), Rational(4), Rational(8)}) {
        const Rational exact_residual = cesaro_residual(zero, t).residual;
        for (const Rational h : {Rational(1, 2), Rational(1, 8), Rational(1, 32)}) {
            const auto [residual, bound] = cesaro_residual(zero, t, h);
            CHECK(bound == h / Rational(4));
            CHECK(plsemi::abs(residual - exact_residual) <= bound);
        }
    }
}

TEST_CASE("independent cross-check: fine quadrature against the exact path") {
    // t = 10, h = 1/1000: trapezoid residual within 1/2000 of the exact 1/10
    const auto [residual, bound] = cesaro_residual(OmegaFn::zero(), Rational(10), Rational(1, 1000));
    CHECK(bound == Rational(1, 4000));
    CHECK(plsemi::abs(residual - Rational(1, 10)) <= Rational(1, 2000));

    // t = 100, h = 1/100: the window-mass argument gives exactly 1/100
    const auto [r100, b100] = cesaro_residual(OmegaFn::zero(), Rational(100), Rational(1, 100));
    CHECK(plsemi::abs(r100 - Rational(1, 100)) <= b100);
    CHECK(cesaro_residual(OmegaFn::zero(), Rational(100)).residual == Rational(1, 100));
}

TEST_CASE("argument validation") {
    const OmegaFn zero = OmegaFn::zero();
    CHECK_THROWS_AS(cesaro_quadrature(zero, Rational(2), Rational(3, 7)), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_quadrature(zero, Rational(0), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_quadrature(zero, Rational(2), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_quadrature(zero, Rational(2), Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_zero_exact(Rational(0)), std::invalid_argument);
    const OmegaFn outside(Rational(0), {Breakpoint{Rational(0), Rational(3, 2)}});
    CHECK_THROWS_AS(cesaro_quadrature(outside, Rational(2), Rational(1)), std::domain_error);
    // a nonzero x needs a grid
    CHECK_THROWS_AS(cesaro_residual(oracles::family_v(Rational(1, 4)), Rational(2)),
                    std::invalid_argument);
}

TEST_CASE("exact path is flagged and bound-free exactly there") {
    const CesaroResult exact = cesaro_zero_exact(Rational(3));
    CHECK(exact.method == CesaroMethod::exact_zero_orbit);
    CHECK(exact.error_bound == Rational(0));
    CHECK(exact.exact.has_value());
    CHECK(!exact.mean.has_value());

    const CesaroResult quad = cesaro_quadrature(OmegaFn::zero(), Rational(3), Rational(1, 2));
    CHECK(quad.error_bound > Rational(0));
    CHECK(quad.mean.has_value());
    CHECK(!quad.exact.has_value());
}
