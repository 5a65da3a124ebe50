#include "waveqed/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace waveqed::circuit {

namespace {
constexpr Real kHbar = 1.054571817e-34;  // [J s]
constexpr Real kTwoPi = 2.0 * std::numbers::pi;

void require_positive(Real v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("circuit: ") + name + " must be positive");
}
}  // namespace

EffectiveModel effective_model(const CircuitParams& cp) {
    require_positive(cp.l0, "l0");
    require_positive(cp.c0, "c0");
    require_positive(cp.c, "c");
    require_positive(cp.c_sigma_q, "c_sigma_q");
    require_positive(cp.ej, "ej");
    require_positive(cp.ec, "ec");
    if (cp.cg < 0.0) throw std::invalid_argument("circuit: cg must be >= 0");

    const Real c_sigma = cp.c0 + 2.0 * cp.c;
    const Real c_line = (cp.cg > 0.0) ? c_sigma + cp.cg : c_sigma;

    EffectiveModel m;
    m.omega0 = 1.0 / std::sqrt(cp.l0 * c_line);
    m.xi = m.omega0 * cp.c / (2.0 * c_line);
    m.delta = std::sqrt(8.0 * cp.ec * cp.ej) / kHbar;
    m.g0 = (cp.cg > 0.0)
               ? 0.5 * cp.cg * std::sqrt(m.delta * m.omega0 / (cp.c_sigma_q * c_line))
               : 0.0;
    if (cp.c / c_sigma >= 0.1) {
        m.regime_warning = true;
        m.warning = "c / c_sigma >= 0.1: first-order inverse-capacitance expansion is strained";
    }
    return m;
}

CircuitParams solve_circuit(const InverseTargets& t, const InverseAnchors& a) {
    require_positive(t.omega0, "target omega0");
    require_positive(t.xi, "target xi");
    if (t.g0 < 0.0) throw std::invalid_argument("circuit: target g0 must be >= 0");

    CircuitParams cp{};
    const Real c_line = a.c_sigma_prime;
    cp.l0 = 1.0 / (t.omega0 * t.omega0 * c_line);
    cp.c = 2.0 * t.xi * c_line / t.omega0;
    cp.c_sigma_q = a.c_sigma_q;
    const Real qubit = a.qubit_over_omega0 * t.omega0;  // rad/s
    cp.cg = (t.g0 > 0.0)
                ? 2.0 * t.g0 / std::sqrt(qubit * t.omega0 / (cp.c_sigma_q * c_line))
                : 0.0;
    cp.c0 = c_line - 2.0 * cp.c - cp.cg;
    if (!(cp.c0 > 0.0))
        throw std::runtime_error("solve_circuit: anchors leave no room for a positive C0");
    cp.ec = a.ec;
    const Real qubit_energy = qubit * kHbar;
    cp.ej = qubit_energy * qubit_energy / (8.0 * cp.ec);
    return cp;
}

std::vector<TableCheckRow> table_check() {
    std::vector<TableCheckRow> rows;
    const Real xi_hz = 249e6;
    const Real omega0_hz = 5.71e9;
    const Real g0_hz = xi_hz / 5.0;

    rows.push_back({"g0 = xi / 5 [MHz]", 49.8, xi_hz / 5.0 / 1e6,
                    std::abs(xi_hz / 5.0 / 1e6 - 49.8) < 1e-9});
    rows.push_back({"g0 rounds to [MHz]", 50.0, std::round(g0_hz / 1e6),
                    std::round(g0_hz / 1e6) == 50.0});
    rows.push_back({"g0 / xi", 0.2, g0_hz / xi_hz, std::abs(g0_hz / xi_hz - 0.2) < 1e-12});

    const InverseTargets targets{kTwoPi * omega0_hz, kTwoPi * xi_hz, kTwoPi * g0_hz};
    const auto cp = solve_circuit(targets);
    const auto m = effective_model(cp);
    auto close = [](Real x, Real ref) { return std::abs(x / ref - 1.0) < 1e-3; };
    rows.push_back({"inverse-solved omega0/2pi [GHz]", omega0_hz / 1e9, m.omega0 / kTwoPi / 1e9,
                    close(m.omega0, targets.omega0)});
    rows.push_back({"inverse-solved xi/2pi [MHz]", xi_hz / 1e6, m.xi / kTwoPi / 1e6,
                    close(m.xi, targets.xi)});
    rows.push_back({"inverse-solved g0/2pi [MHz]", g0_hz / 1e6, m.g0 / kTwoPi / 1e6,
                    close(m.g0, targets.g0)});
    rows.push_back({"omega0 / xi", omega0_hz / xi_hz, m.omega0 / m.xi,
                    std::abs(m.omega0 / m.xi - omega0_hz / xi_hz) < 1e-6 * omega0_hz / xi_hz});
    return rows;
}

}  // namespace waveqed::circuit
