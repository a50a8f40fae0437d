#pragma once

#include "plsemi/pl_fn.hpp"
#include "plsemi/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plsemi {

/// Outcome of the membership test for the constraint set C
/// (values in [0,1] on all of Omega, 1-Lipschitz on [0,inf)).
struct CMembership {
    bool in_C = false;
    std::optional<std::string> violation;  // which constraint failed and where
    explicit operator bool() const { return in_C; }
};

/// A bounded continuous function on Omega = {-1} ∪ [0,inf): a value at the
/// isolated point -1 plus an eventually-constant piecewise-linear part on
/// [0,inf) whose first breakpoint abscissa is 0.
class OmegaFn {
public:
    OmegaFn(Rational minus_one_value, PLFn part);
    OmegaFn(Rational minus_one_value, std::vector<Breakpoint> pts);

    static OmegaFn zero() { return OmegaFn(Rational(0), PLFn::constant(Rational(0))); }
    static OmegaFn constant(const Rational& minus_one_value, const Rational& c) {
        return OmegaFn(minus_one_value, PLFn::constant(c));
    }
    /// Accepts a part whose first abscissa exceeds 0 and materializes its
    /// constant left extension as the breakpoint at 0.
    static OmegaFn from_part(Rational minus_one_value, PLFn part);

    const Rational& minus_one_value() const { return minus_one_; }
    const PLFn& part() const { return part_; }
    const std::vector<Breakpoint>& breakpoints() const { return part_.points(); }

    /// Pointwise evaluation on Omega: u == -1 yields the isolated value,
    /// u >= 0 interpolates the piecewise-linear part. Other u are outside
    /// the domain and raise std::domain_error.
    Rational eval(const Rational& u) const;

    OmegaFn canonicalized() const;
    bool is_canonical() const;

    friend bool operator==(const OmegaFn&, const OmegaFn&) = default;

private:
    Rational minus_one_;
    PLFn part_;
};

OmegaFn canonicalize(const OmegaFn& x);

/// Membership in C: all values (including x(-1)) in [0,1] and every segment
/// slope bounded by 1 in absolute value (equivalent to 1-Lipschitz for
/// piecewise-linear functions).
CMembership in_C(const OmegaFn& x);

/// Exact supremum of |x - y| over Omega.
Rational sup_dist(const OmegaFn& x, const OmegaFn& y);

/// The tail-supremum function u ↦ max(x(-1), sup{x(s) : s >= u}) on [0,inf).
/// x must belong to C.
PLFn alpha_fn(const OmegaFn& x);

/// Exact convex/linear combination  a*x + b*y  (componentwise).
OmegaFn lin_comb(const Rational& a, const OmegaFn& x, const Rational& b, const OmegaFn& y);

/// Textual record { "minus_one": "p/q", "breakpoints": [["u","v"],...] } with
/// rationals rendered as "p/q" ("p" when the denominator is 1). Round-trips
/// bit-exactly for canonical functions.
std::string to_json(const OmegaFn& x);
OmegaFn omega_fn_from_json(const std::string& text);

}  // namespace plsemi
