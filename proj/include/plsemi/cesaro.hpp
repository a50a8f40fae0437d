#pragma once

#include "plsemi/omega_fn.hpp"
#include "plsemi/pl_fn.hpp"
#include "plsemi/rational.hpp"

#include <optional>
#include <vector>

namespace plsemi {

/// Exact Cesàro mean of the orbit of 0:  (A(t)0)(u) = (1/t) ∫_0^t profile(u-s) ds.
/// The u-profile is piecewise quadratic with rational coefficients, so both
/// pointwise evaluation and the sup-norm residual are exact.
class ZeroOrbitMean {
public:
    explicit ZeroOrbitMean(Rational t);  // t > 0

    const Rational& t() const { return t_; }

    /// Exact value at any point of Omega (u == -1 yields 0).
    Rational eval(const Rational& u) const;

    /// ‖A(t)0 - 0‖ — the mean is nonincreasing on [0,inf), so the supremum
    /// sits at u = 0.
    Rational sup_residual() const { return eval(Rational(0)); }

    /// value = c0 + c1*u + c2*u^2 on [lo, hi]; pieces cover [0, max(t, knots)]
    /// and the function is 0 for u >= t.
    struct Piece {
        Rational lo, hi;
        Rational c0, c1, c2;
        Rational eval(const Rational& u) const { return c0 + c1 * u + c2 * u * u; }
    };
    const std::vector<Piece>& pieces() const { return pieces_; }

private:
    Rational t_;
    std::vector<Piece> pieces_;
};

enum class CesaroMethod { exact_zero_orbit, quadrature };

struct CesaroResult {
    Rational t;
    CesaroMethod method = CesaroMethod::quadrature;
    Rational error_bound;                  // sup-norm bound on |computed - true|; 0 on the exact path
    std::optional<OmegaFn> mean;           // quadrature path
    std::optional<ZeroOrbitMean> exact;    // exact path
};

/// Exact mean of the zero orbit via the antiderivative of the profile.
CesaroResult cesaro_zero_exact(const Rational& t);

/// Composite-trapezoid mean (1/t) h Σ over the grid s_k = k·h (h must divide
/// t exactly). The result is an exact convex combination of T(s_k)x; the
/// error bound h/4 comes from the 1-Lipschitz time continuity of the orbit.
CesaroResult cesaro_quadrature(const OmegaFn& x, const Rational& t, const Rational& h);

struct ResidualResult {
    Rational residual;
    Rational error_bound;
};

/// ‖A(t)x - x‖ with its error bound. The exact path is taken automatically
/// when x is the zero function; otherwise h is required.
ResidualResult cesaro_residual(const OmegaFn& x, const Rational& t,
                               const std::optional<Rational>& h = std::nullopt);

/// Exact sup over Omega of |pl - mean|: per merged interval the difference is
/// a quadratic, whose extremum over the interval is attained at an endpoint
/// or at its vertex.
Rational sup_dist(const OmegaFn& pl, const ZeroOrbitMean& mean);

}  // namespace plsemi
