// master_eq.hpp — Reduced emitter density matrix, time-local rates, the
// negativity witness of non-Markovian intervals, and entanglement entropy.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "waveqed/dynamics.hpp"
#include "waveqed/model.hpp"

namespace waveqed::master {

struct QubitDensityMatrix {
    Real rho_ee{1.0};
    Complex rho_eg{0.0};
    Real time{0.0};

    Real rho_gg() const { return 1.0 - rho_ee; }
    bool positive(Real tol = 1e-10) const {
        return rho_ee >= -tol && rho_ee <= 1.0 + tol &&
               std::norm(rho_eg) <= rho_ee * rho_gg() + tol;
    }
};

struct RatePair {
    Real lamb_shift{0.0};   // -2 Im(alpha'/alpha)
    Real decay_rate{0.0};   // -2 Re(alpha'/alpha), may be negative
    Real time{0.0};
    bool defined{true};     // false where |alpha| underflows the 1e-9 floor
};

// rho_ee(t) = rho_ee(0) |alpha(t)|^2, rho_eg(t) = rho_eg(0) alpha(t).
std::vector<QubitDensityMatrix> density_matrix(const dynamics::AmplitudeTrace& trace,
                                               const QubitDensityMatrix& rho0);

// Rates from 4th-order finite differences of alpha on the uniform grid.
std::vector<RatePair> rates(const dynamics::AmplitudeTrace& trace);

// Von Neumann entropy in nats; 0 log 0 = 0. Bounded by log 2 for a qubit.
Real entropy(const QubitDensityMatrix& rho);

// Maximal time intervals on which the decay rate is negative (crossing times
// by linear interpolation); empty in the Markovian regime.
std::vector<std::pair<Real, Real>> nonmarkovianity_witness(const std::vector<RatePair>& rates);

// exp(-int_0^t decay_rate) * rho_ee(0): integrating the population equation
// with the computed rate; agrees with rho_ee(0) |alpha|^2 when everything is
// consistent.
Eigen::VectorXd integrate_population(const std::vector<RatePair>& rates, Real rho_ee0);

}  // namespace waveqed::master
