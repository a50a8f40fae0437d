#include "plsemi/semigroup.hpp"

#include <utility>
#include <vector>

namespace plsemi {

namespace {

void require_in_C(const OmegaFn& x, const char* who) {
    const CMembership m = in_C(x);
    if (!m.in_C)
        throw std::domain_error(std::string(who) + ": x is not in C (" + m.violation.value_or("") + ")");
}

/// One application of the basic formula; t in [0,1]. Argument validation
/// lives in the public wrappers.
OmegaFn basic_step(const Rational& t, const OmegaFn& x) {
    if (t == 0) return x.canonicalized();

    const Rational x0 = x.part().first_v();
    const PLFn shifted = x.part().shifted(t);  // covers [t, inf)

    // g(u) = 1 - alpha_x(1-t+u) on [0,t]
    const PLFn alpha = alpha_fn(x);
    const PLFn g = PLFn::constant(Rational(1)) - alpha.shifted(t - Rational(1));
    const PLFn lower = PLFn::line({Rational(0), x0 - t}, {t, x0});
    const PLFn upper = PLFn::line({Rational(0), x0 + t}, {t, x0});
    const PLFn clamped = pl_min(pl_max(g, lower), upper);

    std::vector<Breakpoint> out;
    out.push_back({Rational(0), clamped.eval(Rational(0))});
    for (const Breakpoint& p : clamped.points())
        if (Rational(0) < p.u && p.u < t) out.push_back(p);
    out.push_back({t, x0});
    for (const Breakpoint& p : shifted.points())
        if (p.u > t) out.push_back(p);

    return OmegaFn(x.minus_one_value(), std::move(out)).canonicalized();
}

}  // namespace

Decomposition decompose(const Rational& t) {
    if (t < 0) throw std::invalid_argument("decompose: t must be nonnegative");
    const BigInt m = (t * Rational(2)).floor();
    return {m, t - Rational(m) / Rational(2)};
}

OmegaFn apply_basic(const Rational& t, const OmegaFn& x) {
    if (t < 0 || t > Rational(1)) throw std::invalid_argument("apply_basic: t must lie in [0,1]");
    require_in_C(x, "apply_basic");
    return basic_step(t, x);
}

OmegaFn apply(const Rational& t, const OmegaFn& x) {
    if (t < 0) throw std::invalid_argument("apply: t must be nonnegative");
    require_in_C(x, "apply");
    if (t <= Rational(1)) return basic_step(t, x);

    const Decomposition d = decompose(t);
    const Rational half(1, 2);
    OmegaFn y = basic_step(d.t_prime, x);
    for (BigInt k = 0; k < d.m; ++k) y = basic_step(half, y);
    return y;
}

PLFn zero_orbit_profile() {
    return PLFn({{Rational(-2), Rational(0)}, {Rational(-1), Rational(1)}, {Rational(0), Rational(0)}});
}

OmegaFn orbit_zero_closed_form(const Rational& t) {
    if (t < 0) throw std::invalid_argument("orbit_zero_closed_form: t must be nonnegative");
    const PLFn moved = zero_orbit_profile().shifted(t);
    std::vector<Breakpoint> pts;
    pts.push_back({Rational(0), moved.eval(Rational(0))});
    for (const Breakpoint& p : moved.points())
        if (p.u > 0) pts.push_back(p);
    return OmegaFn(Rational(0), std::move(pts)).canonicalized();
}

OmegaFn fixed_point(const FixedPointFamily& fam) {
    const Rational half(1, 2);
    if (fam.s < 0 || fam.s > half)
        throw std::invalid_argument("fixed_point: s must lie in [0, 1/2]");
    if (fam.kind == FixedPointKind::V)
        return OmegaFn::constant(Rational(1) - fam.s, fam.s);
    return OmegaFn::constant(fam.s, half);
}

bool is_common_fixed_point(const OmegaFn& x) {
    require_in_C(x, "is_common_fixed_point");
    const OmegaFn c = x.canonicalized();
    if (!c.part().is_constant()) return false;
    const Rational& value = c.part().first_v();
    const Rational& at_minus_one = c.minus_one_value();
    const Rational half(1, 2);
    if (value > half) return false;
    if (value == half) return at_minus_one >= 0 && at_minus_one <= half;
    return at_minus_one == Rational(1) - value;
}

}  // namespace plsemi
