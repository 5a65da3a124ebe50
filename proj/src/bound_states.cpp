#include "waveqed/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waveqed/spectral.hpp"

namespace waveqed::bound {

namespace {
constexpr Real kPi = std::numbers::pi;

int effective_d(const ModelParams& p) { return p.nc == 2 ? p.d : 0; }

// Pole equation on the upper/lower branch written in kappa, where
// y = sign * 2 xi cosh(kappa). Monotone in kappa on each branch.
struct PoleFn {
    const ModelParams& p;
    int sign;

    Real sigma(Real kappa) const {
        const int d = effective_d(p);
        const Real leg = (d > 0) ? 1.0 + std::exp(-kappa * d) : 2.0;
        return 0.5 * p.g0 * p.g0 * leg / (2.0 * p.xi * std::sinh(kappa));
    }
    Real operator()(Real kappa) const {
        return sign * 2.0 * p.xi * std::cosh(kappa) - p.delta - sign * sigma(kappa);
    }
    Real derivative(Real kappa) const {
        const int d = effective_d(p);
        const Real sh = std::sinh(kappa);
        const Real a = p.g0 * p.g0 / (4.0 * p.xi);
        const Real e = (d > 0) ? std::exp(-kappa * d) : 1.0;
        const Real leg = (d > 0) ? 1.0 + e : 2.0;
        const Real dsigma = -a * (d * e / sh + leg * std::cosh(kappa) / (sh * sh));
        return sign * 2.0 * p.xi * sh - sign * dsigma;
    }
};

Real solve_branch(const ModelParams& p, int sign) {
    PoleFn f{p, sign};
    // y ranges over (2 xi, 2 xi + Y] with Y = 2 xi + |delta| + g0^2 / xi.
    const Real y_hi = 4.0 * p.xi + std::abs(p.delta) + p.g0 * p.g0 / p.xi;
    Real lo = 1e-14;
    Real hi = std::acosh(y_hi / (2.0 * p.xi));
    Real flo = f(lo) * sign;  // normalized so the bracket is flo < 0 < fhi
    Real fhi = f(hi) * sign;
    if (!(flo < 0.0) || !(fhi > 0.0))
        throw std::runtime_error("find_boc_poles: root not bracketed in (2 xi, " +
                                 std::to_string(y_hi) + ")");
    for (int it = 0; it < 90; ++it) {
        const Real mid = 0.5 * (lo + hi);
        const Real fm = f(mid) * sign;
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    Real kappa = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const Real step = f(kappa) / f.derivative(kappa);
        kappa -= step;
        if (!(kappa > 0.0)) kappa = 0.5 * (lo + hi);  // keep inside the branch
        if (std::abs(step) < 1e-16 * (1.0 + kappa)) break;
    }
    return kappa;
}
}  // namespace

Real pole_residual(Real y, const ModelParams& p) {
    const Real c = std::abs(y) / (2.0 * p.xi);
    if (!(c > 1.0)) throw std::domain_error("pole_residual: |y| must exceed the band edge");
    PoleFn f{p, y > 0 ? 1 : -1};
    return std::abs(f(std::acosh(c)));
}

Real pole_residual(const BoundState& state, const ModelParams& p) {
    if (state.kind == Kind::Bic)
        throw std::invalid_argument("pole_residual: in-band states satisfy the pole equation via "
                                    "the spectral-density zero, not the out-of-band form");
    PoleFn f{p, state.kind == Kind::BocUpper ? 1 : -1};
    return std::abs(f(state.kappa));
}

std::vector<BoundState> find_boc_poles(const ModelParams& p) {
    std::vector<BoundState> out;
    for (int sign : {-1, +1}) {
        const Real kappa = solve_branch(p, sign);
        BoundState b;
        b.kind = sign > 0 ? Kind::BocUpper : Kind::BocLower;
        b.energy = sign * 2.0 * p.xi * std::cosh(kappa);
        b.kappa = kappa;
        b.residue = 1.0 / (1.0 + spectral::g_prime_outside(b.energy, effective_d(p), p));
        out.push_back(b);
    }
    return out;
}

std::vector<Real> bic_frequencies(int d, const ModelParams& p) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("bic_frequencies: d must be even and >= 2");
    std::vector<Real> w;
    w.reserve(d / 2);
    for (int m = 0; 2 * m + 1 < d; ++m)
        w.push_back(2.0 * p.xi * std::cos(kPi * (2.0 * m + 1.0) / d));
    std::sort(w.begin(), w.end());
    return w;
}

Real residue_bic(Real omega_m, int d, const ModelParams& p) {
    const auto freqs = bic_frequencies(d, p);
    const bool known = std::any_of(freqs.begin(), freqs.end(), [&](Real w) {
        return std::abs(w - omega_m) < 1e-9 * p.xi;
    });
    if (!known)
        throw std::invalid_argument("residue_bic: omega_m is not a spectral-density zero for this d");

    if (std::abs(omega_m) < 1e-9 * p.xi) {
        // u = 2 xi / omega_m degenerates at the band center; use the
        // finite-difference derivative of G instead.
        return 1.0 / (1.0 + spectral::g_prime_numeric(omega_m, d, p));
    }

    const Complex u(2.0 * p.xi / omega_m, 0.0);
    const Complex eta = std::sqrt(1.0 - u * u);
    const Complex one_minus_eta_d = std::pow(1.0 - eta, d);
    const Complex a = static_cast<Real>(d) * std::pow(u, 2 - d) * one_minus_eta_d / (8.0 * eta * eta);
    const Complex b = (1.0 + one_minus_eta_d / std::pow(u, d)) * (u * u / (8.0 * eta)) *
                      (1.0 + u * u / (eta * eta));
    const Complex r = 1.0 / (1.0 + p.g0 * p.g0 * (a + b) / (p.xi * p.xi));
    if (std::abs(r.imag()) > 1e-9)
        throw std::runtime_error("residue_bic: closed form produced a non-real residue");
    return r.real();
}

std::vector<BoundState> find_bound_states(const ModelParams& p) {
    auto states = find_boc_poles(p);
    if (p.nc == 2) {
        for (Real w : bic_frequencies(p.d, p)) {
            if (std::abs(p.delta - w) < 1e-10 * p.xi) {
                BoundState b;
                b.kind = Kind::Bic;
                b.energy = w;
                b.residue = residue_bic(w, p.d, p);
                b.phi = std::asin(p.delta / (2.0 * p.xi)) + kPi / 2.0;
                states.push_back(b);
                break;
            }
        }
    }
    std::sort(states.begin(), states.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return states;
}

namespace {
int default_window(Real kappa, int requested) {
    if (requested > 0) return requested;
    if (kappa <= 0.0) return 4096;
    return std::min(4096, std::max(10, static_cast<int>(std::ceil(10.0 / kappa))));
}

FieldProfile make_profile(int half_window) {
    FieldProfile f;
    f.sites.resize(2 * half_window + 1);
    f.occupation.resize(2 * half_window + 1);
    for (int n = -half_window; n <= half_window; ++n) f.sites(n + half_window) = n;
    return f;
}
}  // namespace

FieldProfile boc_field_profile(const BoundState& state, const ModelParams& p, int half_window) {
    if (state.kind == Kind::Bic)
        throw std::invalid_argument("boc_field_profile: expected an out-of-band state");
    if (p.nc != 1)
        throw std::invalid_argument("boc_field_profile: closed form available for nc = 1 only");
    const int w = default_window(state.kappa, half_window);
    FieldProfile f = make_profile(w);
    const Real y2 = state.energy * state.energy;
    const Real pref = p.g0 * p.g0 * state.residue * state.residue / (y2 - 4.0 * p.xi * p.xi);
    for (int n = -w; n <= w; ++n)
        f.occupation(n + w) = pref * std::exp(-2.0 * state.kappa * std::abs(n));
    return f;
}

FieldProfile bic_field_profile(const BoundState& state, const ModelParams& p, int half_window) {
    if (state.kind != Kind::Bic)
        throw std::invalid_argument("bic_field_profile: expected an in-band state");
    if (p.nc != 2)
        throw std::invalid_argument("bic_field_profile: requires a two-leg emitter");
    const int w = (half_window > 0) ? half_window : p.d / 2 + 5;
    FieldProfile f = make_profile(w);
    const Real wm2 = state.energy * state.energy;
    const Real pref = p.g0 * p.g0 * state.residue * state.residue /
                      (2.0 * (4.0 * p.xi * p.xi - wm2));
    for (int n = -w; n <= w; ++n) {
        if (std::abs(n) > p.d / 2) {
            f.occupation(n + w) = 0.0;
            continue;
        }
        const Real arg = state.phi * (std::abs(n + p.d / 2) - std::abs(n - p.d / 2));
        f.occupation(n + w) = pref * (1.0 + std::cos(arg));
    }
    return f;
}

FieldProfile superposition_field(const BoundState& boc, const BoundState& bic, Real t,
                                 const ModelParams& p, int half_window) {
    if (p.nc != 2)
        throw std::invalid_argument("superposition_field: requires a two-leg emitter");
    if (boc.kind == Kind::Bic || bic.kind != Kind::Bic)
        throw std::invalid_argument("superposition_field: pass one out-of-band and one in-band state");
    if (pole_residual(boc.energy, p) > 1e-8 * p.xi ||
        std::abs(p.delta - bic.energy) > 1e-8 * p.xi)
        throw std::invalid_argument("superposition_field: states do not belong to these parameters");

    const int w = default_window(boc.kappa, half_window);
    FieldProfile f = make_profile(w);
    f.time_dependent = true;

    const Complex i(0.0, 1.0);
    const Real xi2 = p.xi * p.xi;
    const Complex amp_boc = boc.residue * std::exp(-i * boc.energy * t) /
                            std::sqrt(boc.energy * boc.energy - 4.0 * xi2);
    const Complex amp_bic = i * bic.residue * std::exp(-i * bic.energy * t) /
                            std::sqrt(4.0 * xi2 - bic.energy * bic.energy);
    const Complex decay(boc.kappa, -kPi / 2.0);  // kappa - i pi/2
    for (int n = -w; n <= w; ++n) {
        const Real dm = std::abs(n - p.d / 2);
        const Real dp = std::abs(n + p.d / 2);
        const Complex phi_boc = std::exp(-decay * dm) + std::exp(-decay * dp);
        const Complex phi_bic = std::exp(i * bic.phi * dm) + std::exp(i * bic.phi * dp);
        f.occupation(n + w) =
            0.25 * p.g0 * p.g0 * std::norm(amp_boc * phi_boc + amp_bic * phi_bic);
    }
    return f;
}

}  // namespace waveqed::bound
