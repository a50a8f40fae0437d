#pragma once

#include "plsemi/omega_fn.hpp"
#include "plsemi/pl_fn.hpp"
#include "plsemi/rational.hpp"

namespace plsemi {

/// t = m/2 + t_prime with t_prime in [0, 1/2).
struct Decomposition {
    BigInt m;
    Rational t_prime;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Unique half-step decomposition of t >= 0.
Decomposition decompose(const Rational& t);

/// One application of the basic formula, valid for t in [0,1] and x in C:
/// x(-1) is preserved, the part is right-shifted on [t,inf), and on [0,t] the
/// value is 1 - alpha_x(1-t+u) clamped into the band [x(0)-t+u, x(0)+t-u].
OmegaFn apply_basic(const Rational& t, const OmegaFn& x);

/// The semigroup operator T(t) for any t >= 0: delegates to apply_basic for
/// t <= 1 and otherwise composes T(1/2)^m with T(t') per the half-step
/// decomposition.
OmegaFn apply(const Rational& t, const OmegaFn& x);

/// The traveling profile of the orbit of 0: vertices (-2,0), (-1,1), (0,0),
/// zero outside [-2,0]. T(t)0 equals u ↦ profile(u - t) on [0,inf).
PLFn zero_orbit_profile();

/// Closed form of T(t)0 built directly from the profile (no semigroup steps).
OmegaFn orbit_zero_closed_form(const Rational& t);

enum class FixedPointKind { V, W };

/// Index into the two common-fixed-point families, s in [0, 1/2]:
/// V yields v_s (value 1-s at -1, constant s on [0,inf)),
/// W yields w_s (value s at -1, constant 1/2 on [0,inf)).
struct FixedPointFamily {
    FixedPointKind kind;
    Rational s;
};

OmegaFn fixed_point(const FixedPointFamily& fam);

/// Structural test against the two families: true iff x is constant c on
/// [0,inf) with either c <= 1/2 and x(-1) = 1-c, or c = 1/2 and
/// x(-1) in [0,1/2].
bool is_common_fixed_point(const OmegaFn& x);

}  // namespace plsemi
