#pragma once

#include "plsemi/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace plsemi {

struct Breakpoint {
    Rational u;
    Rational v;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Continuous piecewise-linear function on the real line: linear interpolation
/// between breakpoints, constant to the left of the first breakpoint and to
/// the right of the last one.
class PLFn {
public:
    /// Breakpoint abscissae must be strictly increasing and nonempty.
    explicit PLFn(std::vector<Breakpoint> pts);

    static PLFn constant(Rational v) { return PLFn({Breakpoint{Rational(0), std::move(v)}}); }
    static PLFn line(Breakpoint a, Breakpoint b);

    const std::vector<Breakpoint>& points() const { return pts_; }
    const Rational& first_u() const { return pts_.front().u; }
    const Rational& last_u() const { return pts_.back().u; }
    const Rational& first_v() const { return pts_.front().v; }
    const Rational& last_v() const { return pts_.back().v; }
    bool is_constant() const { return pts_.size() == 1; }

    Rational eval(const Rational& u) const;

    /// Removes breakpoints that are collinear with their neighbours and
    /// boundary points that merely repeat the constant extension.
    PLFn canonicalized() const;
    bool is_canonical() const;

    /// u ↦ f(u − dt)
    PLFn shifted(const Rational& dt) const;
    PLFn scaled(const Rational& c) const;

    friend PLFn operator+(const PLFn& a, const PLFn& b);
    friend PLFn operator-(const PLFn& a, const PLFn& b);
    friend bool operator==(const PLFn&, const PLFn&) = default;

private:
    std::vector<Breakpoint> pts_;
};

/// Pointwise minimum / maximum. Breakpoints are the union of the inputs'
/// breakpoints plus all exact segment-intersection abscissae.
PLFn pl_min(const PLFn& a, const PLFn& b);
PLFn pl_max(const PLFn& a, const PLFn& b);

/// u ↦ sup { f(s) : s >= u }. Nonincreasing; computed by a right-to-left
/// running maximum over the breakpoints.
PLFn tail_sup(const PLFn& f);

/// Exact integral over [a, b] as a sum of trapezoid areas per segment.
Rational integrate(const PLFn& f, const Rational& a, const Rational& b);

/// Sorted union of both functions' breakpoint abscissae.
std::vector<Rational> merged_grid(const PLFn& a, const PLFn& b);

/// sup over the real line of |a - b|; exact (attained at a breakpoint of the
/// merged grid or in a constant tail).
Rational sup_abs_diff(const PLFn& a, const PLFn& b);

/// Exact weighted sum  sum_k  w_k * f_k  (pairwise tree reduction).
PLFn weighted_sum(std::span<const std::pair<Rational, PLFn>> terms);

}  // namespace plsemi
