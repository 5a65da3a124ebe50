// bound_states.hpp — Poles of the emitter resolvent and their photonic
// profiles: states outside the band (one above, one below) and, for two-leg
// emitters tuned to a zero of the effective spectral density, states inside it.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "waveqed/model.hpp"

namespace waveqed::bound {

enum class Kind { BocLower, BocUpper, Bic };

struct BoundState {
    Real energy;    // pole position, units of xi
    Real residue;   // emitter weight of the pole, in (0, 1]
    Kind kind;
    Real kappa{0.0};  // inverse localization length, out-of-band states only
    Real phi{0.0};    // interference phase, in-band states only
};

struct FieldProfile {
    Eigen::VectorXi sites;
    Eigen::VectorXd occupation;
    bool time_dependent{false};
};

// Residual of the pole equation y - delta + i G(-i y [, d]) = 0 at |y| > 2 xi,
// evaluated through the cancellation-free |y| = 2 xi cosh(kappa) form.
Real pole_residual(Real y, const ModelParams& p);

// Same, evaluated at the state's stored kappa (avoids the precision loss of
// recovering kappa from the energy next to the band edge).
Real pole_residual(const BoundState& state, const ModelParams& p);

// The two real poles outside the band with residues [1 + G'(-i y)]^-1 and
// kappa = arccosh(|y| / 2 xi). Bisection on a guaranteed bracket, then Newton.
std::vector<BoundState> find_boc_poles(const ModelParams& p);

// Zeros of the two-leg spectral density: 2 xi cos(pi (2m+1) / d), all distinct
// values in (-2 xi, 2 xi), ascending; there are d/2 of them for even d.
std::vector<Real> bic_frequencies(int d, const ModelParams& p);

// Residue of the in-band pole at omega_m != 0 from the closed form
//   r = 1 / (1 + g0^2 [A(u,d) + B(u,d)] / xi^2),  u = 2 xi / omega_m,
//   eta = sqrt(1 - u^2),
//   A = d u^{2-d} (1 - eta)^d / (8 eta^2),
//   B = (1 + (1 - eta)^d / u^d) (u^2 / 8 eta) (1 + u^2 / eta^2).
// The intermediates are complex (|u| > 1 in band); the result is real. At
// omega_m = 0 the u-parametrization degenerates and the residue falls back to
// the finite-difference derivative of G.
Real residue_bic(Real omega_m, int d, const ModelParams& p);

// All poles for these parameters: both out-of-band states, plus the in-band
// state iff delta coincides with a spectral-density zero within 1e-10 xi.
std::vector<BoundState> find_bound_states(const ModelParams& p);

// Stationary photon occupation of an out-of-band state (point-like emitter):
// g0^2 r^2 / (y^2 - 4 xi^2) * exp(-2 kappa |n|). Window defaults to 10 / kappa,
// capped at 4096 sites each side.
FieldProfile boc_field_profile(const BoundState& state, const ModelParams& p,
                               int half_window = 0);

// Stationary photon occupation of an in-band state (two legs):
// g0^2 r^2 / (2 (4 xi^2 - w^2)) * [1 + cos(phi (|n + d/2| - |n - d/2|))],
// identically zero for |n| >= d/2 + 1.
FieldProfile bic_field_profile(const BoundState& state, const ModelParams& p,
                               int half_window = 0);

// Time-dependent occupation of the superposed in-band + out-of-band state:
//   (g0^2/4) | r_+ e^{-i y_+ t} Phi_+(n) / sqrt(y_+^2 - 4 xi^2)
//           + i r_m e^{-i w_m t} Phi(n) / sqrt(4 xi^2 - w_m^2) |^2
// with Phi_+(n) = e^{-(kappa - i pi/2)|n - d/2|} + e^{-(kappa - i pi/2)|n + d/2|}
// and  Phi(n)   = e^{i phi |n - d/2|} + e^{i phi |n + d/2|}.
// Verifies both states belong to these parameters.
FieldProfile superposition_field(const BoundState& boc, const BoundState& bic, Real t,
                                 const ModelParams& p, int half_window = 0);

}  // namespace waveqed::bound
