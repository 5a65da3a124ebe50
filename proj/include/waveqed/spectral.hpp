// spectral.hpp — Dispersion, spectral densities and the Laplace-domain memory
// function G(s) of the cavity-array bath, for point-like and two-leg emitters.
//
// The band is [-2 xi, 2 xi] with dispersion w(k) = 2 xi cos k. G(s) is analytic
// off the cut {i y : |y| <= 2 xi}; its jump across the cut equals the spectral
// density, which is what feeds the exact time-domain solution.

#pragma once

#include "waveqed/model.hpp"

namespace waveqed::spectral {

// w(k) = 2 xi cos k; k is wrapped into the first Brillouin zone.
Real dispersion(Real k, const ModelParams& p);

// Principal inverse k(w) = arccos(w / 2 xi) in [0, pi]. Throws out of band.
Real invert_dispersion(Real omega, const ModelParams& p);

// J(w) = 2 g0^2 / sqrt(4 xi^2 - w^2), strictly inside the band only.
Real j_small(Real omega, const ModelParams& p);

// Interference factor (1/nc^2) [1 - cos(k d nc)] / [1 - cos(k d)], with the
// removable singularities at k d = 2 pi m evaluated by their limit 1.
Real array_factor(Real omega, int d, int nc, const ModelParams& p);

// Two-leg effective density J_eff(w) = g0^2 [1 + cos(k(w) d)] / sqrt(4 xi^2 - w^2).
// Equals j_small * array_factor(..., nc = 2) by construction.
Real j_eff(Real omega, int d, const ModelParams& p);

// G(s) = g0^2 / (s sqrt(1 + 4 xi^2 / s^2)), principal square root. Valid for
// any s off the cut, including the imaginary axis outside the band.
Complex g_function(Complex s, const ModelParams& p);

// Two-leg G(s, d) = (g0^2/2) (1 + rho(s)^d) / (s sqrt(1 + 4 xi^2 / s^2)) where
// rho(s) = i s / 2 xi - i sign(Re s) sqrt(1 + s^2 / 4 xi^2) is the |rho| <= 1
// root; rho(s)^d encodes the leg-to-leg propagation. d = 0 recovers g_function.
Complex g_function_giant(Complex s, int d, const ModelParams& p);

// |rho| <= 1 branch evaluated off the cut (and continuously on the imaginary
// axis outside the band, where it is real).
Complex rho_factor(Complex s, const ModelParams& p);

// Boundary value lim_{eps -> 0} G(side * eps + i y [, d]) computed numerically
// with Richardson extrapolation in eps; side = +1 or -1, |y| < 2 xi.
// The analytic limits are g_branch_limit = side * g0^2 / sqrt(4 xi^2 - y^2)
// and, for two legs, (g0^2/2) [1 + e^{-i side k(-y) d}] / (side sqrt(4 xi^2 - y^2)).
Complex g_branch_limit(Real y, int side, const ModelParams& p, Real eps = 1e-9);
Complex g_branch_limit_giant(Real y, int side, int d, const ModelParams& p, Real eps = 1e-9);

// G and G(.,d) restricted to s = -i y with |y| > 2 xi, where both are of the
// form i * (real); returns the real part of i G(-i y), i.e. G(-i y) = i * value.
// Evaluated through the cancellation-free parametrization |y| = 2 xi cosh(kappa).
Real g_on_imag_axis_outside(Real y, int d, const ModelParams& p);

// dG/ds at s = -i y, |y| > 2 xi (real there); d = 0 gives the point-like case.
Real g_prime_outside(Real y, int d, const ModelParams& p);

// One-sided 4-point finite-difference derivative of G(., d) approached from
// Re s > 0 and Re s < 0, averaged; used for residues at in-band poles where
// the closed form is not available. step is validated by halving internally.
Real g_prime_numeric(Real y, int d, const ModelParams& p, Real step = 1e-6);

}  // namespace waveqed::spectral
