#include "plsemi/cesaro.hpp"

#include "plsemi/semigroup.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace plsemi {

namespace {

/// Antiderivative of the zero-orbit profile: F(w) = ∫_{-inf}^{w} profile.
/// Total mass is 1.
Rational profile_antiderivative(const Rational& w) {
    const Rational half(1, 2);
    if (w <= Rational(-2)) return Rational(0);
    if (w <= Rational(-1)) return (w + Rational(2)) * (w + Rational(2)) * half;
    if (w <= Rational(0)) return Rational(1) - w * w * half;
    return Rational(1);
}

}  // namespace

ZeroOrbitMean::ZeroOrbitMean(Rational t) : t_(std::move(t)) {
    if (t_ <= 0) throw std::invalid_argument("ZeroOrbitMean: t must be positive");
    const Rational zero(0), one(1), two(2);
    const Rational a = t_ - two;       // knot where the window starts losing mass
    const Rational b = t_ - one;       // knot at the profile peak
    const Rational inv2t = one / (two * t_);

    if (a > zero)
        pieces_.push_back({zero, a, one / t_, zero, zero});
    {
        const Rational lo = max(zero, a), hi = max(zero, b);
        if (lo < hi)
            pieces_.push_back({lo, hi, (two - a * a) * inv2t, a / t_, -inv2t});
    }
    {
        const Rational lo = max(zero, b);
        pieces_.push_back({lo, t_, t_ * Rational(1, 2), Rational(-1), inv2t});
    }
}

Rational ZeroOrbitMean::eval(const Rational& u) const {
    if (u == Rational(-1)) return Rational(0);
    if (u < 0) throw std::domain_error("ZeroOrbitMean::eval: " + u.str() + " is not a point of Omega");
    return (Rational(1) - profile_antiderivative(u - t_)) / t_;
}

CesaroResult cesaro_zero_exact(const Rational& t) {
    if (t <= 0) throw std::invalid_argument("cesaro_zero_exact: t must be positive");
    CesaroResult r;
    r.t = t;
    r.method = CesaroMethod::exact_zero_orbit;
    r.error_bound = Rational(0);
    r.exact = ZeroOrbitMean(t);
    return r;
}

CesaroResult cesaro_quadrature(const OmegaFn& x, const Rational& t, const Rational& h) {
    if (t <= 0) throw std::invalid_argument("cesaro_quadrature: t must be positive");
    if (h <= 0) throw std::invalid_argument("cesaro_quadrature: h must be positive");
    const Rational ratio = t / h;
    if (!ratio.is_integer()) throw std::invalid_argument("cesaro_quadrature: h must divide t exactly");
    const CMembership m = in_C(x);
    if (!m.in_C)
        throw std::domain_error("cesaro_quadrature: x is not in C (" + m.violation.value_or("") + ")");

    const BigInt n_big = ratio.num();
    if (!n_big.fits_ulong_p()) throw std::invalid_argument("cesaro_quadrature: grid too fine");
    const unsigned long n = n_big.get_ui();

    // Composite trapezoid weights h/(2t), h/t, ..., h/t, h/(2t). Nodes are
    // built by repeated T(h); equal to T(kh)x by the semigroup law.
    const Rational w_end = h / (Rational(2) * t);
    const Rational w_mid = h / t;
    std::vector<std::pair<Rational, PLFn>> terms;
    terms.reserve(n + 1);
    Rational mean_minus_one(0);

    OmegaFn y = x.canonicalized();
    for (unsigned long k = 0; k <= n; ++k) {
        const Rational& w = (k == 0 || k == n) ? w_end : w_mid;
        terms.emplace_back(w, y.part());
        mean_minus_one += w * y.minus_one_value();
        if (k < n) y = apply(h, y);
    }

    CesaroResult r;
    r.t = t;
    r.method = CesaroMethod::quadrature;
    r.error_bound = h / Rational(4);
    r.mean = OmegaFn::from_part(std::move(mean_minus_one), weighted_sum(terms)).canonicalized();
    return r;
}

ResidualResult cesaro_residual(const OmegaFn& x, const Rational& t,
                               const std::optional<Rational>& h) {
    if (h) {
        const CesaroResult r = cesaro_quadrature(x, t, *h);
        return {sup_dist(*r.mean, x), r.error_bound};
    }
    if (x.canonicalized() == OmegaFn::zero())
        return {cesaro_zero_exact(t).exact->sup_residual(), Rational(0)};
    throw std::invalid_argument("cesaro_residual: grid step h is required unless x is the zero function");
}

Rational sup_dist(const OmegaFn& pl, const ZeroOrbitMean& mean) {
    const Rational& t = mean.t();
    Rational best = abs(pl.minus_one_value());  // mean is 0 at -1

    std::vector<Rational> knots;
    knots.push_back(Rational(0));
    for (const auto& piece : mean.pieces()) {
        knots.push_back(piece.lo);
        knots.push_back(piece.hi);
    }
    for (const Breakpoint& p : pl.breakpoints()) knots.push_back(p.u);
    knots.push_back(max(t, pl.part().last_u()));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    const auto quad_piece = [&](const Rational& lo, const Rational& hi) -> ZeroOrbitMean::Piece {
        if (lo >= t) return {lo, hi, Rational(0), Rational(0), Rational(0)};
        for (const auto& piece : mean.pieces())
            if (piece.lo <= lo && hi <= piece.hi) return piece;
        throw std::logic_error("sup_dist: interval not covered by a quadratic piece");
    };

    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const Rational& lo = knots[i];
        const Rational& hi = knots[i + 1];
        const ZeroOrbitMean::Piece q = quad_piece(lo, hi);
        // difference d(u) = pl(u) - q(u) is quadratic on [lo, hi]
        const Rational pl_lo = pl.part().eval(lo);
        const Rational slope = (pl.part().eval(hi) - pl_lo) / (hi - lo);
        const Rational d2 = -q.c2;
        const Rational d1 = slope - q.c1;
        const Rational d0 = pl_lo - slope * lo - q.c0;
        const auto d_at = [&](const Rational& u) { return d0 + d1 * u + d2 * u * u; };

        best = max(best, abs(d_at(lo)));
        best = max(best, abs(d_at(hi)));
        if (d2 != Rational(0)) {
            const Rational vertex = -d1 / (Rational(2) * d2);
            if (lo < vertex && vertex < hi) best = max(best, abs(d_at(vertex)));
        }
    }
    return best;
}

}  // namespace plsemi
