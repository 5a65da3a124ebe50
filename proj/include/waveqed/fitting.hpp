// fitting.hpp — Small least-squares helpers: single-tone cosine fits for
// beat-frequency extraction and straight-line fits for localization lengths.

#pragma once

#include <Eigen/Dense>

#include "waveqed/model.hpp"

namespace waveqed::fitting {

struct LineFit {
    Real intercept;
    Real slope;
    Real r_squared;
};

LineFit line_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct CosineFit {
    Real omega;
    Real amplitude;
    Real offset;
    Real phase;
    Real rms_residual;
};

// Fits v ~ offset + amplitude cos(omega t + phase) by scanning omega over
// [omega_lo, omega_hi] (amplitudes linear per omega), then refining the best
// candidate by golden-section search.
CosineFit fit_cosine(const Eigen::VectorXd& t, const Eigen::VectorXd& v, Real omega_lo,
                     Real omega_hi, int scan_points = 600);

}  // namespace waveqed::fitting
