// circuit.hpp — Lumped-element circuit to effective model mapping: a chain of
// capacitively coupled LC resonators read as the waveguide, a transmon coupled
// through C_g as the emitter. Inputs in SI units, outputs in rad/s plus
// xi-normalized model units.

#pragma once

#include <string>
#include <vector>

#include "waveqed/model.hpp"

namespace waveqed::circuit {

struct CircuitParams {
    Real l0;         // site inductance [H]
    Real c0;         // site capacitance [F]
    Real c;          // site-site coupling capacitance [F]
    Real cg;         // qubit coupling capacitance [F], >= 0
    Real c_sigma_q;  // transmon total capacitance [F]
    Real ej;         // Josephson energy [J]
    Real ec;         // charging energy [J]
};

struct EffectiveModel {
    Real omega0;  // cavity frequency [rad/s]
    Real xi;      // hopping [rad/s]
    Real g0;      // emitter coupling [rad/s]
    Real delta;   // qubit frequency sqrt(8 Ec Ej) / hbar [rad/s]
    bool regime_warning{false};  // c / c_sigma crept past the first-order regime
    std::string warning;

    ModelParams normalized() const {
        ModelParams p;
        p.xi = 1.0;
        p.omega0 = omega0 / xi;
        p.g0 = g0 / xi;
        p.delta = (delta - omega0) / xi;
        return p;
    }
};

// omega0 = (L0 C_S')^{-1/2}, xi = omega0 C / (2 C_S'), qubit = sqrt(8 Ec Ej),
// g0 = C_g sqrt(qubit * omega0 / (C_Sq C_S')) / 2, with C_S = C0 + 2C and the
// renormalized C_S' = C_S + C_g used for the line once the qubit is attached.
// Validates the first-order regime c / c_sigma < 0.1 (warning, not an error).
EffectiveModel effective_model(const CircuitParams& cp);

struct InverseTargets {
    Real omega0;  // [rad/s]
    Real xi;      // [rad/s]
    Real g0;      // [rad/s]
};

struct InverseAnchors {
    Real c_sigma_prime{400e-15};  // renormalized line capacitance [F]
    Real c_sigma_q{70e-15};       // transmon capacitance [F]
    Real ec{2.5e8 * 6.62607015e-34};  // 250 MHz charging energy [J]
    Real qubit_over_omega0{1.0};      // place the qubit at resonance by default
};

// Solves for a circuit realizing the targets exactly (the map is triangular
// once the anchors fix the free directions). Throws if the resulting C0 is
// not positive.
CircuitParams solve_circuit(const InverseTargets& targets, const InverseAnchors& anchors = {});

struct TableCheckRow {
    std::string quantity;
    Real expected;
    Real actual;
    bool pass;
};

// Fixed self-check of the reference operating point: hopping 2 pi x 249 MHz,
// cavity 2 pi x 5.71 GHz, coupling xi/5 = 2 pi x 49.8 MHz (rounds to 50 MHz),
// reachable by an inverse-solved circuit to 0.1%.
std::vector<TableCheckRow> table_check();

}  // namespace waveqed::circuit
