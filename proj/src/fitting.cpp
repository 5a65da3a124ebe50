#include "waveqed/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace waveqed::fitting {

LineFit line_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("line_fit: need two equal-length samples at least");
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd a(n, 2);
    a.col(0).setOnes();
    a.col(1) = x;
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
    const Real ss_res = (y - a * c).squaredNorm();
    const Real ss_tot = (y.array() - y.mean()).square().sum();
    return {c(0), c(1), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

namespace {
struct ToneSolution {
    Real sse;
    Real offset, a, b;
};

ToneSolution solve_tone(const Eigen::VectorXd& t, const Eigen::VectorXd& v, Real omega) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd m(n, 3);
    for (int i = 0; i < n; ++i) {
        m(i, 0) = 1.0;
        m(i, 1) = std::cos(omega * t(i));
        m(i, 2) = std::sin(omega * t(i));
    }
    const Eigen::Vector3d c = (m.transpose() * m).ldlt().solve(m.transpose() * v);
    return {(v - m * c).squaredNorm(), c(0), c(1), c(2)};
}
}  // namespace

CosineFit fit_cosine(const Eigen::VectorXd& t, const Eigen::VectorXd& v, Real omega_lo,
                     Real omega_hi, int scan_points) {
    if (t.size() != v.size() || t.size() < 8)
        throw std::invalid_argument("fit_cosine: need at least 8 samples");
    if (!(omega_hi > omega_lo) || !(omega_lo > 0.0))
        throw std::invalid_argument("fit_cosine: bad frequency bracket");

    Real best_omega = omega_lo;
    Real best_sse = std::numeric_limits<Real>::infinity();
    for (int i = 0; i <= scan_points; ++i) {
        const Real w = omega_lo + (omega_hi - omega_lo) * i / scan_points;
        const Real sse = solve_tone(t, v, w).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_omega = w;
        }
    }

    const Real step = (omega_hi - omega_lo) / scan_points;
    Real lo = std::max(omega_lo, best_omega - 2.0 * step);
    Real hi = std::min(omega_hi, best_omega + 2.0 * step);
    constexpr Real kGolden = 0.6180339887498949;
    Real x1 = hi - kGolden * (hi - lo);
    Real x2 = lo + kGolden * (hi - lo);
    Real f1 = solve_tone(t, v, x1).sse;
    Real f2 = solve_tone(t, v, x2).sse;
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = solve_tone(t, v, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = solve_tone(t, v, x2).sse;
        }
    }
    const Real omega = 0.5 * (lo + hi);
    const auto sol = solve_tone(t, v, omega);

    CosineFit fit;
    fit.omega = omega;
    fit.offset = sol.offset;
    fit.amplitude = std::hypot(sol.a, sol.b);
    fit.phase = std::atan2(-sol.b, sol.a);
    fit.rms_residual = std::sqrt(sol.sse / static_cast<Real>(t.size()));
    return fit;
}

}  // namespace waveqed::fitting
