// dynamics.hpp — Exact emitter amplitude alpha(t) as branch-cut integral plus
// residue sum, radiation-field amplitudes for the point-like emitter, and
// long-time diagnostics.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "waveqed/bound_states.hpp"
#include "waveqed/model.hpp"
#include "waveqed/quadrature.hpp"

namespace waveqed::dynamics {

struct KernelSpec {
    Real delta{0.0};
    Real g0{0.2};
    Real xi{1.0};
    int d{0};
    bool giant{false};

    static KernelSpec from_params(const ModelParams& p) {
        return {p.delta, p.g0, p.xi, p.nc == 2 ? p.d : 0, p.nc == 2};
    }
};

// K(y) = sqrt(1 - y^2) / [4 (2 y + delta/xi)^2 (1 - y^2) + (g0/xi)^4] on (-1, 1).
Real kernel_small(Real y_tilde, const KernelSpec& spec);

// K_giant(y, d) = sqrt(1 - y^2) [1 + cos(k(-y) d)]
//                 / (8 (2 y + delta/xi)^2 (1 - y^2) + F(y, d)),
// F = (g0/xi)^4 [1 + cos(k(-y) d)] - 4 (g0/xi)^2 (2 y + delta/xi) sqrt(1-y^2) sin(k(-y) d).
// The double zero of numerator and denominator arising when delta sits on a
// spectral-density zero is evaluated by its finite limit.
Real kernel_giant(Real y_tilde, const KernelSpec& spec);

struct TracePolicy {
    quad::AdaptiveOptions adaptive{};
    Real filon_time_threshold{1e3};  // switch to the Filon rule for t xi above this
    enum class Method { Auto, Adaptive, Filon } method{Method::Auto};
};

struct AmplitudeTrace {
    Eigen::VectorXd times;
    Eigen::VectorXcd alpha;
    Eigen::VectorXcd scattering_part;
    Eigen::VectorXcd residue_part;
};

// Branch-cut contribution alone at one time: (4 g0^2 / pi xi^2) int K e^{2 i xi y t} dy.
Complex scattering_amplitude(Real t, const KernelSpec& spec, const TracePolicy& policy = {});

// Full trace on the grid's uniform times: scattering integral plus
// sum_j r_j e^{-i y_j t} over the supplied poles. Time points evaluate
// independently (parallel-safe, deterministic).
AmplitudeTrace alpha_exact(const ModelParams& p, const SimulationGrid& grid,
                           const std::vector<bound::BoundState>& states,
                           const TracePolicy& policy = {});

// Same on caller-chosen times (e.g. logarithmic for tail fits).
AmplitudeTrace alpha_exact_at(const ModelParams& p, const Eigen::VectorXd& times,
                              const std::vector<bound::BoundState>& states,
                              const TracePolicy& policy = {});

// Radiation amplitude on site n for the point-like emitter,
//   beta_n(t) = (-i)^{|n|+1} g0 int_0^t alpha(t - tau) J_{|n|}(2 xi tau) dtau,
// evaluated on the trace's uniform grid (rotating frame; the on-site phase
// drops out of occupations). Throws on non-uniform grids.
Eigen::VectorXcd beta_field_small(int n, const AmplitudeTrace& trace, const ModelParams& p);

// Occupation profile |beta_n(t_idx)|^2 for all |n| <= half_window.
bound::FieldProfile field_snapshot_small(const AmplitudeTrace& trace, int time_index,
                                         int half_window, const ModelParams& p);

struct TailFit {
    Real slope;        // of log |v|^2 against log t
    Real curvature;    // quadratic coefficient of the same fit
    Real r_squared;
    bool algebraic;    // curvature small enough for a power law
    int samples;
};

// Least-squares slope of log(values^2... ) — values are |scattering|, fit is on
// log(|v|^2) vs log t within [window.first, window.second]. Requires >= 10 samples.
TailFit tail_exponent(const Eigen::VectorXd& times, const Eigen::VectorXd& abs_values,
                      std::pair<Real, Real> window);

}  // namespace waveqed::dynamics
