#include "waveqed/master_eq.hpp"

#include <cmath>
#include <stdexcept>

namespace waveqed::master {

std::vector<QubitDensityMatrix> density_matrix(const dynamics::AmplitudeTrace& trace,
                                               const QubitDensityMatrix& rho0) {
    if (!rho0.positive()) throw std::invalid_argument("density_matrix: rho0 is not positive");
    std::vector<QubitDensityMatrix> out;
    out.reserve(trace.times.size());
    for (int i = 0; i < trace.times.size(); ++i) {
        QubitDensityMatrix r;
        r.time = trace.times(i);
        r.rho_ee = rho0.rho_ee * std::norm(trace.alpha(i));
        r.rho_eg = rho0.rho_eg * trace.alpha(i);
        out.push_back(r);
    }
    return out;
}

namespace {
// 4th-order first derivative on a uniform grid, one-sided at the edges.
Eigen::VectorXcd derivative4(const Eigen::VectorXcd& f, Real h) {
    const int n = static_cast<int>(f.size());
    if (n < 5) throw std::invalid_argument("rates: need at least 5 samples");
    Eigen::VectorXcd d(n);
    d(0) = (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) / (12.0 * h);
    d(1) = (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / (12.0 * h);
    for (int i = 2; i < n - 2; ++i)
        d(i) = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
    d(n - 2) = (3.0 * f(n - 1) + 10.0 * f(n - 2) - 18.0 * f(n - 3) + 6.0 * f(n - 4) -
                f(n - 5)) /
               (12.0 * h);
    d(n - 1) = (25.0 * f(n - 1) - 48.0 * f(n - 2) + 36.0 * f(n - 3) - 16.0 * f(n - 4) +
                3.0 * f(n - 5)) /
               (12.0 * h);
    return d;
}
}  // namespace

std::vector<RatePair> rates(const dynamics::AmplitudeTrace& trace) {
    const int n = static_cast<int>(trace.times.size());
    if (n < 5) throw std::invalid_argument("rates: need at least 5 samples");
    const Real h = trace.times(1) - trace.times(0);
    for (int i = 1; i < n; ++i)
        if (std::abs(trace.times(i) - trace.times(i - 1) - h) > 1e-9 * std::max(1.0, h))
            throw std::invalid_argument("rates: uniform time grid required");

    const Eigen::VectorXcd dalpha = derivative4(trace.alpha, h);
    std::vector<RatePair> out(n);
    for (int i = 0; i < n; ++i) {
        RatePair r;
        r.time = trace.times(i);
        if (std::abs(trace.alpha(i)) < 1e-9) {
            r.defined = false;
        } else {
            const Complex ratio = dalpha(i) / trace.alpha(i);
            r.lamb_shift = -2.0 * ratio.imag();
            r.decay_rate = -2.0 * ratio.real();
        }
        out[i] = r;
    }
    return out;
}

Real entropy(const QubitDensityMatrix& rho) {
    if (!rho.positive(1e-8)) throw std::invalid_argument("entropy: density matrix not positive");
    const Real half_gap = std::sqrt(std::max(0.0, (rho.rho_ee - 0.5) * (rho.rho_ee - 0.5) +
                                                      std::norm(rho.rho_eg)));
    const Real l1 = std::clamp(0.5 + half_gap, 0.0, 1.0);
    const Real l2 = std::clamp(0.5 - half_gap, 0.0, 1.0);
    auto term = [](Real l) { return l > 0.0 ? -l * std::log(l) : 0.0; };
    return term(l1) + term(l2);
}

std::vector<std::pair<Real, Real>> nonmarkovianity_witness(const std::vector<RatePair>& rates) {
    std::vector<std::pair<Real, Real>> intervals;
    bool open = false;
    Real start = 0.0;
    Real prev_t = 0.0, prev_g = 0.0;
    bool have_prev = false;
    for (const auto& r : rates) {
        if (!r.defined) {
            have_prev = false;
            continue;
        }
        if (!have_prev) {
            have_prev = true;
            if (r.decay_rate < 0.0 && !open) {
                open = true;
                start = r.time;
            }
            prev_t = r.time;
            prev_g = r.decay_rate;
            continue;
        }
        if (!open && r.decay_rate < 0.0) {
            open = true;
            start = (prev_g >= 0.0)
                        ? prev_t + (r.time - prev_t) * prev_g / (prev_g - r.decay_rate)
                        : prev_t;
        } else if (open && r.decay_rate >= 0.0) {
            const Real end =
                (prev_g < 0.0) ? prev_t + (r.time - prev_t) * (-prev_g) / (r.decay_rate - prev_g)
                               : prev_t;
            intervals.emplace_back(start, end);
            open = false;
        }
        prev_t = r.time;
        prev_g = r.decay_rate;
    }
    if (open) intervals.emplace_back(start, prev_t);
    return intervals;
}

Eigen::VectorXd integrate_population(const std::vector<RatePair>& rates, Real rho_ee0) {
    const int n = static_cast<int>(rates.size());
    if (n < 4) throw std::invalid_argument("integrate_population: need at least 4 samples");
    Eigen::VectorXd out(n);
    out(0) = rho_ee0;
    const Real h = rates[1].time - rates[0].time;
    auto g = [&](int i) { return rates[i].decay_rate; };
    bool valid = true;
    Real acc = 0.0;
    for (int i = 1; i < n; ++i) {
        valid = valid && rates[i].defined && rates[i - 1].defined;
        if (!valid) {
            out(i) = std::numeric_limits<Real>::quiet_NaN();
            continue;
        }
        // cumulative integral with a locally-cubic rule (4th order); one-sided
        // stencils at the ends
        Real inc;
        if (i == 1)
            inc = h / 24.0 * (9.0 * g(0) + 19.0 * g(1) - 5.0 * g(2) + g(3));
        else if (i == n - 1)
            inc = h / 24.0 * (9.0 * g(n - 1) + 19.0 * g(n - 2) - 5.0 * g(n - 3) + g(n - 4));
        else
            inc = h / 24.0 * (-g(i - 2) + 13.0 * g(i - 1) + 13.0 * g(i) - g(i + 1));
        acc += inc;
        out(i) = rho_ee0 * std::exp(-acc);
    }
    return out;
}

}  // namespace waveqed::master
