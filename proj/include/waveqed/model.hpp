// model.hpp — Canonical parameter types shared by every module, with validation.
//
// Units: the hopping xi sets the energy scale (xi = 1 in all presets), times
// are measured in 1/xi. All internal computations use the per-leg coupling
// g0/nc, so analytic formulas and the finite-lattice reference integrator
// share one convention.

#pragma once

#include <complex>
#include <stdexcept>

namespace waveqed {

using Real = double;
using Complex = std::complex<double>;

struct ModelParams {
    Real xi{1.0};      // nearest-neighbor hopping, > 0
    Real omega0{0.0};  // on-site cavity frequency; enters only outside the rotating frame
    Real g0{0.2};      // bare emitter-waveguide coupling, > 0
    Real delta{0.0};   // rotating-frame detuning of the emitter
    int nc{1};         // number of coupling points, 1 or 2
    int d{0};          // separation between coupling points (even, >= 2); used iff nc == 2

    // Coupling strength on each emitter-cavity bond.
    Real per_leg_coupling() const { return g0 / static_cast<Real>(nc); }
    bool giant() const { return nc == 2; }
};

struct SimulationGrid {
    Real t_max{100.0};
    int n_t{1001};
    int lattice_half_width{400};  // reference chain spans sites -N..N

    Real dt() const { return t_max / static_cast<Real>(n_t - 1); }
};

// Returns the parameters unchanged if all invariants hold, throws otherwise.
// Coupling points at +-d/2 must be lattice sites, hence d even. For nc == 1
// the separation is normalized to 0.
ModelParams validate(ModelParams p);

// Checks positivity/monotonicity invariants of the grid and the no-reflection
// condition t_max * 2 xi < lattice_half_width (wavefront speed <= 2 xi).
SimulationGrid validate(SimulationGrid g, const ModelParams& p);

}  // namespace waveqed
