#include "waveqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace waveqed::dynamics {

namespace {
constexpr Real kPi = std::numbers::pi;

// Integrand of the theta-substituted band integral, Jacobian included:
// f(theta) = K(cos theta) sin(theta). Evaluated directly in theta so the
// endpoint factors sqrt(1 - y^2) = sin(theta) never cancel catastrophically.
// For even d, k(-cos theta) = pi - theta collapses the interference factors to
// 1 + cos(theta d) = 2 cos^2(theta d / 2) and sin(k(-y) d) = -sin(theta d).
struct ThetaIntegrand {
    KernelSpec spec;

    Real operator()(Real theta) const {
        const Real s = std::sin(theta);
        const Real resonance = 2.0 * std::cos(theta) + spec.delta / spec.xi;
        const Real g2 = spec.g0 * spec.g0 / (spec.xi * spec.xi);
        if (!spec.giant) {
            return s * s / (4.0 * resonance * resonance * s * s + g2 * g2);
        }
        const Real dd = static_cast<Real>(spec.d);
        const Real half = 0.5 * theta * spec.d;
        const Real ch = std::cos(half);
        const Real interference = 2.0 * ch * ch;            // 1 + cos(theta d)
        const Real sin_td = 2.0 * std::sin(half) * ch;      // sin(theta d)
        // At a coincident double zero (delta on a spectral-density zero) the
        // resonance factor drops to the rounding floor while the interference
        // factor stays accurate; evaluate the finite limit there instead.
        if (std::abs(resonance) < 1e-8 && interference < 1e-15 * dd * dd)
            return coincident_limit(theta);
        const Real f = g2 * g2 * interference + 4.0 * g2 * resonance * s * sin_td;
        const Real denom = 8.0 * resonance * resonance * s * s + f;
        const Real num = s * s * interference;
        if (denom < 1e-280)
            throw quad::QuadratureError("kernel denominator vanished away from an interference zero",
                                        denom, theta, theta);
        return num / denom;
    }

    // Limit of the integrand at the coincident double zero at theta0:
    // both numerator and denominator are quadratic in (theta - theta0).
    Real coincident_limit(Real theta0) const {
        const Real s = std::sin(theta0);
        const Real g2 = spec.g0 * spec.g0 / (spec.xi * spec.xi);
        const Real dd = static_cast<Real>(spec.d);
        const Real num = s * s * dd * dd / 2.0;
        const Real denom =
            32.0 * s * s * s * s + g2 * g2 * dd * dd / 2.0 + 8.0 * dd * g2 * s * s;
        return num / denom;
    }
};

std::vector<Real> kernel_breakpoints(const KernelSpec& spec) {
    std::set<Real> pts;
    // resonance peak of the kernel at y = -delta / 2 xi
    const Real y0 = -spec.delta / (2.0 * spec.xi);
    if (std::abs(y0) < 1.0) {
        const Real th0 = std::acos(y0);
        const Real s0 = std::max(std::sin(th0), 0.05);
        const Real w = (spec.g0 * spec.g0 / (spec.xi * spec.xi)) / (4.0 * s0 * s0);
        pts.insert(th0);
        for (Real f : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
            pts.insert(th0 - f * w);
            pts.insert(th0 + f * w);
        }
    }
    // interference zeros of the two-leg kernel
    if (spec.giant && spec.d > 0) {
        for (int m = 0; 2 * m + 1 < spec.d; ++m)
            pts.insert(kPi - kPi * (2.0 * m + 1.0) / spec.d);
    }
    // band-edge spikes live within (g0/xi)^2-sized corners
    const Real g2 = spec.g0 * spec.g0 / (spec.xi * spec.xi);
    for (Real f : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        pts.insert(f * g2);
        pts.insert(kPi - f * g2);
    }
    return {pts.begin(), pts.end()};
}

// Mesh in y for the Filon rule: uniform backbone, geometric clusters at the
// band edges and around the kernel's sharp features.
std::vector<Real> filon_mesh(const KernelSpec& spec) {
    std::set<Real> pts;
    const int base = 3000;
    for (int i = 0; i <= base; ++i) pts.insert(-1.0 + 2.0 * i / base);
    for (Real v = 1e-11; v < 0.5; v *= 1.35) {
        pts.insert(1.0 - v);
        pts.insert(-1.0 + v);
    }
    const Real y0 = -spec.delta / (2.0 * spec.xi);
    if (std::abs(y0) < 1.0) {
        const Real w = spec.g0 * spec.g0 / (spec.xi * spec.xi) / 4.0;
        for (int i = 1; i <= 24; ++i) {  // dense core of the resonance peak
            pts.insert(std::clamp(y0 - i * w / 8.0, -1.0, 1.0));
            pts.insert(std::clamp(y0 + i * w / 8.0, -1.0, 1.0));
        }
        for (Real f = 4.0; f <= 512.0; f *= 1.5) {
            pts.insert(std::clamp(y0 - f * w, -1.0, 1.0));
            pts.insert(std::clamp(y0 + f * w, -1.0, 1.0));
        }
        pts.insert(y0);
    }
    if (spec.giant && spec.d > 0) {
        for (int m = 0; 2 * m + 1 < spec.d; ++m) {
            const Real yz = -std::cos(kPi * (2.0 * m + 1.0) / spec.d);
            pts.insert(std::clamp(yz, -1.0, 1.0));
            for (Real f = 3e-6; f < 4e-2; f *= 1.6)
                for (int sgn : {-1, 1}) pts.insert(std::clamp(yz + sgn * f, -1.0, 1.0));
        }
    }
    std::vector<Real> mesh;
    mesh.reserve(pts.size());
    const Real lo = -1.0 + 1e-12, hi = 1.0 - 1e-12;
    mesh.push_back(lo);
    for (Real x : pts)
        if (x > lo + 1e-13 && x < hi - 1e-13) mesh.push_back(x);
    mesh.push_back(hi);
    std::sort(mesh.begin(), mesh.end());
    return mesh;
}

Real kernel_dispatch(Real y, const KernelSpec& spec) {
    return spec.giant ? kernel_giant(y, spec) : kernel_small(y, spec);
}
}  // namespace

Real kernel_small(Real y_tilde, const KernelSpec& spec) {
    if (!(std::abs(y_tilde) < 1.0))
        throw std::domain_error("kernel_small: argument must lie strictly inside (-1, 1)");
    KernelSpec s = spec;
    s.giant = false;
    return ThetaIntegrand{s}(std::acos(y_tilde)) / std::sqrt(1.0 - y_tilde * y_tilde);
}

Real kernel_giant(Real y_tilde, const KernelSpec& spec) {
    if (!(std::abs(y_tilde) < 1.0))
        throw std::domain_error("kernel_giant: argument must lie strictly inside (-1, 1)");
    if (!spec.giant || spec.d < 0 || spec.d % 2 != 0)
        throw std::invalid_argument("kernel_giant: spec must describe a two-leg emitter with even d");
    // d = 0 degenerates exactly to the point-like kernel
    return ThetaIntegrand{spec}(std::acos(y_tilde)) / std::sqrt(1.0 - y_tilde * y_tilde);
}

Complex scattering_amplitude(Real t, const KernelSpec& spec, const TracePolicy& policy) {
    const Real pref = 4.0 * spec.g0 * spec.g0 / (kPi * spec.xi * spec.xi);
    const Real w = 2.0 * spec.xi * t;
    const bool use_filon =
        policy.method == TracePolicy::Method::Filon ||
        (policy.method == TracePolicy::Method::Auto && t * spec.xi > policy.filon_time_threshold);
    if (use_filon) {
        static thread_local std::vector<Real> mesh;
        static thread_local KernelSpec mesh_spec;
        if (mesh.empty() || mesh_spec.delta != spec.delta || mesh_spec.g0 != spec.g0 ||
            mesh_spec.d != spec.d || mesh_spec.giant != spec.giant || mesh_spec.xi != spec.xi) {
            mesh = filon_mesh(spec);
            mesh_spec = spec;
        }
        auto k = [&](Real y) { return kernel_dispatch(y, spec); };
        return pref * quad::filon_linear_phase(k, w, mesh);
    }
    ThetaIntegrand f{spec};
    return pref * quad::adaptive_cos_oscillatory([&f](Real th) { return f(th); }, w,
                                                 kernel_breakpoints(spec), policy.adaptive);
}

AmplitudeTrace alpha_exact_at(const ModelParams& p, const Eigen::VectorXd& times,
                              const std::vector<bound::BoundState>& states,
                              const TracePolicy& policy) {
    const KernelSpec spec = KernelSpec::from_params(p);
    AmplitudeTrace tr;
    tr.times = times;
    const int n = static_cast<int>(times.size());
    tr.alpha.resize(n);
    tr.scattering_part.resize(n);
    tr.residue_part.resize(n);
    quad::parallel_for(n, [&](int i) {
        const Real t = times(i);
        const Complex scatt = scattering_amplitude(t, spec, policy);
        Complex res(0.0, 0.0);
        for (const auto& b : states)
            res += b.residue * std::exp(Complex(0.0, -b.energy * t));
        tr.scattering_part(i) = scatt;
        tr.residue_part(i) = res;
        tr.alpha(i) = scatt + res;
    });
    return tr;
}

AmplitudeTrace alpha_exact(const ModelParams& p, const SimulationGrid& grid,
                           const std::vector<bound::BoundState>& states,
                           const TracePolicy& policy) {
    Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(grid.n_t, 0.0, grid.t_max);
    return alpha_exact_at(p, times, states, policy);
}

namespace {
void require_uniform(const Eigen::VectorXd& t) {
    if (t.size() < 2) throw std::invalid_argument("trace: need at least two time samples");
    const Real dt = t(1) - t(0);
    for (int i = 1; i < t.size(); ++i)
        if (std::abs(t(i) - t(i - 1) - dt) > 1e-9 * std::max(1.0, dt))
            throw std::invalid_argument("trace: uniform time grid required");
}

// Composite Simpson over samples f_0..f_m on a uniform grid (3/8 rule on the
// last three intervals when m is odd).
Complex simpson(const Eigen::VectorXcd& f, int m, Real h) {
    if (m == 0) return Complex(0.0, 0.0);
    if (m == 1) return 0.5 * h * (f(0) + f(1));
    Complex acc(0.0, 0.0);
    int even_end = (m % 2 == 0) ? m : m - 3;
    if (m % 2 == 1 && m < 3) even_end = 0;
    for (int j = 0; j + 2 <= even_end; j += 2)
        acc += (h / 3.0) * (f(j) + 4.0 * f(j + 1) + f(j + 2));
    if (m % 2 == 1) {
        if (m >= 3)
            acc += (3.0 * h / 8.0) * (f(m - 3) + 3.0 * f(m - 2) + 3.0 * f(m - 1) + f(m));
        else
            acc += 0.5 * h * (f(0) + f(1));
    }
    return acc;
}
}  // namespace

Eigen::VectorXcd beta_field_small(int n, const AmplitudeTrace& trace, const ModelParams& p) {
    if (p.nc != 1)
        throw std::invalid_argument("beta_field_small: closed form available for nc = 1 only");
    require_uniform(trace.times);
    const int nt = static_cast<int>(trace.times.size());
    const Real h = trace.times(1) - trace.times(0);
    const int an = std::abs(n);

    Eigen::VectorXd bessel(nt);
    for (int j = 0; j < nt; ++j)
        bessel(j) = std::cyl_bessel_j(static_cast<Real>(an), 2.0 * p.xi * trace.times(j));

    // (-i)^{|n|+1}
    const Complex i(0.0, 1.0);
    Complex phase(1.0, 0.0);
    for (int k = 0; k < (an + 1) % 4; ++k) phase *= -i;

    Eigen::VectorXcd out(nt);
    Eigen::VectorXcd integrand(nt);
    out(0) = Complex(0.0, 0.0);
    for (int idx = 1; idx < nt; ++idx) {
        for (int j = 0; j <= idx; ++j) integrand(j) = trace.alpha(idx - j) * bessel(j);
        out(idx) = phase * p.g0 * simpson(integrand, idx, h);
    }
    return out;
}

bound::FieldProfile field_snapshot_small(const AmplitudeTrace& trace, int time_index,
                                         int half_window, const ModelParams& p) {
    if (time_index < 0 || time_index >= trace.times.size())
        throw std::out_of_range("field_snapshot_small: time index out of range");
    bound::FieldProfile f;
    f.sites.resize(2 * half_window + 1);
    f.occupation.resize(2 * half_window + 1);
    f.time_dependent = false;
    for (int n = -half_window; n <= half_window; ++n) {
        const auto beta = beta_field_small(n, trace, p);
        f.sites(n + half_window) = n;
        f.occupation(n + half_window) = std::norm(beta(time_index));
    }
    return f;
}

TailFit tail_exponent(const Eigen::VectorXd& times, const Eigen::VectorXd& abs_values,
                      std::pair<Real, Real> window) {
    if (times.size() != abs_values.size())
        throw std::invalid_argument("tail_exponent: size mismatch");
    std::vector<Real> lx, ly;
    for (int i = 0; i < times.size(); ++i) {
        const Real t = times(i);
        if (t < window.first || t > window.second) continue;
        if (!(t > 0.0) || !(abs_values(i) > 0.0)) continue;
        lx.push_back(std::log(t));
        ly.push_back(2.0 * std::log(abs_values(i)));
    }
    const int m = static_cast<int>(lx.size());
    if (m < 10) throw std::invalid_argument("tail_exponent: fewer than 10 samples in the window");

    // linear fit for the slope, quadratic refit for the curvature diagnostic
    Eigen::MatrixXd a(m, 3);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = lx[i];
        a(i, 2) = lx[i] * lx[i];
        b(i) = ly[i];
    }
    const Eigen::VectorXd lin = a.leftCols(2).colPivHouseholderQr().solve(b);
    const Eigen::VectorXd quad = a.colPivHouseholderQr().solve(b);
    const Eigen::VectorXd resid = b - a.leftCols(2) * lin;
    const Real ss_res = resid.squaredNorm();
    const Real mean = b.mean();
    const Real ss_tot = (b.array() - mean).square().sum();

    TailFit fit;
    fit.slope = lin(1);
    fit.curvature = quad(2);
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    fit.algebraic = std::abs(fit.curvature) < 0.15;
    fit.samples = m;
    return fit;
}

}  // namespace waveqed::dynamics
