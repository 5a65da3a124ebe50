// quadrature.hpp — Oscillatory quadrature for band integrals of the form
// int_{-1}^{1} K(y) e^{i w y} dy. Two routes: an adaptive Gauss-Kronrod rule
// on the theta = arccos(y) substitution (regular endpoints), and a Filon rule
// (piecewise-quadratic kernel times exact oscillatory moments) whose cost does
// not grow with w.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "waveqed/model.hpp"

namespace waveqed::quad {

struct AdaptiveOptions {
    Real abs_tol{1e-9};
    Real min_width{1e-9};
    int max_depth{50};
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, Real worst_error, Real a, Real b)
        : std::runtime_error(msg), worst_panel_error(worst_error), panel_a(a), panel_b(b) {}
    Real worst_panel_error;
    Real panel_a, panel_b;
};

// integral over theta in [0, pi] of f(theta) * exp(i w cos theta).
// breakpoints select the initial subdivision (kernel features); each segment
// is additionally pre-split so a panel spans at most a few oscillations.
Complex adaptive_cos_oscillatory(const std::function<Real(Real)>& f, Real w,
                                 const std::vector<Real>& breakpoints,
                                 const AdaptiveOptions& opt = {});

// integral over y of K(y) * exp(i w y) on the given mesh (ascending, spanning
// the integration range). K is interpolated quadratically on each panel and
// the oscillation integrated exactly.
Complex filon_linear_phase(const std::function<Real(Real)>& kernel, Real w,
                           const std::vector<Real>& mesh);

// Index-parallel loop; worker count from the WAVEQED_WORKERS environment
// variable (default: hardware concurrency, capped at 8). Deterministic:
// workers own disjoint index ranges.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace waveqed::quad
