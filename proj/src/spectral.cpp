#include "waveqed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace waveqed::spectral {

namespace {
constexpr Real kPi = std::numbers::pi;

Real wrap_bz(Real k) { return std::remainder(k, 2.0 * kPi); }

void require_inside_band(Real omega, const ModelParams& p, const char* who) {
    if (!(std::abs(omega) < 2.0 * p.xi))
        throw std::domain_error(std::string(who) + ": frequency outside the open band (-2 xi, 2 xi)");
}

void require_off_cut(Complex s, const ModelParams& p, const char* who) {
    if (s.real() == 0.0 && std::abs(s.imag()) <= 2.0 * p.xi)
        throw std::domain_error(std::string(who) +
                                ": s lies on the branch cut, use a branch limit instead");
}

// Boundary value of G(., d) on the cut: lim_{e->0} G(side*e - i y, d) for |y| < 2 xi.
Complex g_boundary_value(Real y, int side, int d, const ModelParams& p) {
    const Real w = std::sqrt(4.0 * p.xi * p.xi - y * y);
    const Real k = std::acos(std::clamp(y / (2.0 * p.xi), -1.0, 1.0));
    const Complex phase = std::exp(Complex(0.0, -side * k * static_cast<Real>(d)));
    return 0.5 * p.g0 * p.g0 * (1.0 + phase) / (side * w);
}
}  // namespace

Real dispersion(Real k, const ModelParams& p) { return 2.0 * p.xi * std::cos(wrap_bz(k)); }

Real invert_dispersion(Real omega, const ModelParams& p) {
    if (std::abs(omega) > 2.0 * p.xi)
        throw std::domain_error("invert_dispersion: |omega| exceeds the band edge 2 xi");
    return std::acos(std::clamp(omega / (2.0 * p.xi), -1.0, 1.0));
}

Real j_small(Real omega, const ModelParams& p) {
    require_inside_band(omega, p, "j_small");
    return 2.0 * p.g0 * p.g0 / std::sqrt(4.0 * p.xi * p.xi - omega * omega);
}

Real array_factor(Real omega, int d, int nc, const ModelParams& p) {
    require_inside_band(omega, p, "array_factor");
    if (nc < 1) throw std::invalid_argument("array_factor: nc must be >= 1");
    if (d < 0) throw std::invalid_argument("array_factor: d must be >= 0");
    if (nc == 1 || d == 0) return 1.0;
    const Real kd = invert_dispersion(omega, p) * static_cast<Real>(d);
    const Real denom = 1.0 - std::cos(kd);
    // k d at a multiple of 2 pi: constructive interference, limit is 1.
    if (std::abs(denom) < 1e-12) return 1.0;
    const Real num = 1.0 - std::cos(kd * static_cast<Real>(nc));
    return num / (denom * static_cast<Real>(nc * nc));
}

Real j_eff(Real omega, int d, const ModelParams& p) {
    require_inside_band(omega, p, "j_eff");
    if (d < 0) throw std::invalid_argument("j_eff: d must be >= 0");
    const Real kd = invert_dispersion(omega, p) * static_cast<Real>(d);
    return p.g0 * p.g0 * (1.0 + std::cos(kd)) / std::sqrt(4.0 * p.xi * p.xi - omega * omega);
}

Complex g_function(Complex s, const ModelParams& p) {
    require_off_cut(s, p, "g_function");
    const Complex root = std::sqrt(1.0 + 4.0 * p.xi * p.xi / (s * s));
    return p.g0 * p.g0 / (s * root);
}

Complex rho_factor(Complex s, const ModelParams& p) {
    const Complex i(0.0, 1.0);
    if (s.real() != 0.0) {
        const Real sg = (s.real() > 0.0) ? 1.0 : -1.0;
        const Complex root = std::sqrt(1.0 + s * s / (4.0 * p.xi * p.xi));
        return i * s / (2.0 * p.xi) - i * sg * root;
    }
    // Imaginary axis outside the band: rho is real and continuous across,
    // rho(-i y) = [y - sign(y) sqrt(y^2 - 4 xi^2)] / 2 xi.
    const Real y = -s.imag();
    if (std::abs(y) <= 2.0 * p.xi)
        throw std::domain_error("rho_factor: s lies on the branch cut");
    const Real r = (y - std::copysign(std::sqrt(y * y - 4.0 * p.xi * p.xi), y)) / (2.0 * p.xi);
    return Complex(r, 0.0);
}

Complex g_function_giant(Complex s, int d, const ModelParams& p) {
    require_off_cut(s, p, "g_function_giant");
    if (d < 0) throw std::invalid_argument("g_function_giant: d must be >= 0");
    return 0.5 * g_function(s, p) * (1.0 + std::pow(rho_factor(s, p), d));
}

namespace {
// Richardson extrapolation of f(eps) toward eps -> 0 assuming an O(eps)
// leading error, two levels deep.
template <class F>
Complex richardson(F&& f, Real eps) {
    const Complex f1 = f(eps);
    const Complex f2 = f(eps / 2.0);
    const Complex f4 = f(eps / 4.0);
    const Complex r1 = 2.0 * f2 - f1;
    const Complex r2 = 2.0 * f4 - f2;
    return 2.0 * r2 - r1;
}
}  // namespace

Complex g_branch_limit(Real y, int side, const ModelParams& p, Real eps) {
    require_inside_band(y, p, "g_branch_limit");
    if (side != 1 && side != -1) throw std::invalid_argument("g_branch_limit: side must be +-1");
    return richardson([&](Real e) { return g_function(Complex(side * e, y), p); }, eps);
}

Complex g_branch_limit_giant(Real y, int side, int d, const ModelParams& p, Real eps) {
    require_inside_band(y, p, "g_branch_limit_giant");
    if (side != 1 && side != -1)
        throw std::invalid_argument("g_branch_limit_giant: side must be +-1");
    return richardson([&](Real e) { return g_function_giant(Complex(side * e, y), d, p); }, eps);
}

Real g_on_imag_axis_outside(Real y, int d, const ModelParams& p) {
    const Real c = std::abs(y) / (2.0 * p.xi);
    if (!(c > 1.0))
        throw std::domain_error("g_on_imag_axis_outside: |y| must exceed the band edge");
    const Real kappa = std::acosh(c);
    const Real leg = (d > 0) ? (1.0 + std::exp(-kappa * static_cast<Real>(d))) : 2.0;
    return std::copysign(0.5 * p.g0 * p.g0 * leg / (2.0 * p.xi * std::sinh(kappa)), y);
}

Real g_prime_outside(Real y, int d, const ModelParams& p) {
    const Real c = std::abs(y) / (2.0 * p.xi);
    if (!(c > 1.0)) throw std::domain_error("g_prime_outside: |y| must exceed the band edge");
    const Real kappa = std::acosh(c);
    const Real sh = std::sinh(kappa);
    const Real xi2 = p.xi * p.xi;
    if (d == 0) return p.g0 * p.g0 * std::cosh(kappa) / (4.0 * xi2 * sh * sh * sh);
    const Real e = std::exp(-kappa * static_cast<Real>(d));
    return p.g0 * p.g0 / (8.0 * xi2 * sh * sh) *
           (static_cast<Real>(d) * e + (1.0 + e) * std::cosh(kappa) / sh);
}

Real g_prime_numeric(Real y, int d, const ModelParams& p, Real step) {
    require_inside_band(y, p, "g_prime_numeric");
    const Complex s0(0.0, -y);
    auto one_sided = [&](int side, Real h) {
        const Complex f0 = g_boundary_value(y, side, d, p);
        const Complex f1 = g_function_giant(s0 + Complex(side * h, 0.0), d, p);
        const Complex f2 = g_function_giant(s0 + Complex(side * 2.0 * h, 0.0), d, p);
        const Complex f3 = g_function_giant(s0 + Complex(side * 3.0 * h, 0.0), d, p);
        return ((-11.0 / 6.0) * f0 + 3.0 * f1 - 1.5 * f2 + (1.0 / 3.0) * f3) / (side * h);
    };
    auto both = [&](Real h) { return 0.5 * (one_sided(+1, h) + one_sided(-1, h)); };
    const Complex d1 = both(step);
    const Complex d2 = both(step / 2.0);
    if (std::abs(d1 - d2) > 1e-6 * (1.0 + std::abs(d2)))
        throw std::runtime_error("g_prime_numeric: step-halving check failed, derivative unreliable");
    return d2.real();
}

}  // namespace waveqed::spectral
