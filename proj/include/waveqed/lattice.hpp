// lattice.hpp — Finite-chain single-excitation reference solver: sparse
// Hamiltonian assembly, fixed-step RK4 evolution and exact diagonalization.
// Serves as the independent ground truth for every analytic result.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "waveqed/model.hpp"

namespace waveqed::lattice {

// State layout: index 0 is the emitter amplitude, index 1 + (n + N) is the
// photon amplitude on site n for n = -N..N.
struct LatticeState {
    Complex emitter_amp;
    Eigen::VectorXcd photon_amps;  // size 2 N + 1
    Real time{0.0};

    Real norm2() const { return std::norm(emitter_amp) + photon_amps.squaredNorm(); }
};

struct EvolveOptions {
    Real max_step{0.02};        // upper bound on the RK4 step, in 1/xi
    Real norm_drift_target{3e-9};
    bool check_boundary{true};  // reject runs whose edge occupation exceeds 1e-10
};

// Rotating-frame single-excitation Hamiltonian on sites -half_width..half_width:
// diagonal delta on the emitter row, hopping xi on photon bonds, per-leg
// coupling g0/nc on the emitter bonds (site 0, or sites +-d/2). Dimension
// 2 half_width + 2. Open boundaries.
Eigen::SparseMatrix<Real> build_hamiltonian(const ModelParams& p, int half_width);

// Pure emitter excitation, the standard initial condition.
LatticeState excited_emitter_state(int half_width);

// Fixed-step RK4 on dpsi/dt = -i H psi, sampled on the grid's uniform times.
// The step is chosen <= max_step so the accumulated norm drift stays below
// norm_drift_target. Throws if the grid violates the no-reflection bound or
// if boundary occupation exceeds 1e-10 at any sampled time.
std::vector<LatticeState> evolve(const LatticeState& state0, const SimulationGrid& grid,
                                 const ModelParams& p, const EvolveOptions& opts = {});

struct Eigenmode {
    Real energy;
    Eigen::VectorXd vector;      // same layout as LatticeState
    bool bound_candidate;        // out of band, or in band but confined to |n| <= d/2
};

// All eigenpairs of the dense symmetric matrix; refuses dimensions above 4000.
std::vector<Eigenmode> eigenmodes(const ModelParams& p, int half_width);

// Convenience: emitter amplitude trace alpha(t) from an evolve() run.
Eigen::VectorXcd emitter_trace(const std::vector<LatticeState>& states);

// Photon occupation per site at the last sampled time.
Eigen::VectorXd occupation_profile(const LatticeState& state);

}  // namespace waveqed::lattice
