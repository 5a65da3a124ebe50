#include "waveqed/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace waveqed::lattice {

namespace {
int require_half_width(const ModelParams& p, int half_width) {
    if (half_width < p.d / 2 + 10)
        throw std::invalid_argument("lattice: half_width must be at least d/2 + 10");
    return half_width;
}
}  // namespace

Eigen::SparseMatrix<Real> build_hamiltonian(const ModelParams& p, int half_width) {
    require_half_width(p, half_width);
    const int sites = 2 * half_width + 1;
    const int dim = sites + 1;
    const auto site_index = [&](int n) { return 1 + n + half_width; };

    std::vector<Eigen::Triplet<Real>> trip;
    trip.reserve(3 * dim);
    trip.emplace_back(0, 0, p.delta);
    for (int n = -half_width; n < half_width; ++n) {
        trip.emplace_back(site_index(n), site_index(n + 1), p.xi);
        trip.emplace_back(site_index(n + 1), site_index(n), p.xi);
    }
    const Real g = p.per_leg_coupling();
    if (p.nc == 1) {
        trip.emplace_back(0, site_index(0), g);
        trip.emplace_back(site_index(0), 0, g);
    } else {
        for (int leg : {-p.d / 2, p.d / 2}) {
            trip.emplace_back(0, site_index(leg), g);
            trip.emplace_back(site_index(leg), 0, g);
        }
    }
    Eigen::SparseMatrix<Real> h(dim, dim);
    h.setFromTriplets(trip.begin(), trip.end());
    h.makeCompressed();
    return h;
}

LatticeState excited_emitter_state(int half_width) {
    LatticeState s;
    s.emitter_amp = Complex(1.0, 0.0);
    s.photon_amps = Eigen::VectorXcd::Zero(2 * half_width + 1);
    s.time = 0.0;
    return s;
}

namespace {
// H is real symmetric, so H * psi is evaluated as two real products.
struct Rhs {
    const Eigen::SparseMatrix<Real>& h;
    void apply(const Eigen::VectorXcd& psi, Eigen::VectorXcd& out, Eigen::VectorXd& re,
               Eigen::VectorXd& im) const {
        re.noalias() = h * psi.real();
        im.noalias() = h * psi.imag();
        // dpsi/dt = -i H psi = (im, -re)
        out.real() = im;
        out.imag() = -re;
    }
};

Real pick_step(const ModelParams& p, Real t_max, const EvolveOptions& opts) {
    // RK4 norm decay per step is ~ (lambda dt)^6 / 72 per unit eigenmode; bound
    // the accumulated drift by norm_drift_target using the spectral radius.
    const Real radius = std::max(2.0 * p.xi, std::abs(p.delta)) + p.g0 + 0.1 * p.xi;
    if (t_max <= 0.0) return opts.max_step;
    const Real dt5 = 72.0 * opts.norm_drift_target /
                     (t_max * std::pow(radius, 6.0));
    return std::min(opts.max_step, std::pow(dt5, 0.2));
}
}  // namespace

std::vector<LatticeState> evolve(const LatticeState& state0, const SimulationGrid& grid,
                                 const ModelParams& p, const EvolveOptions& opts) {
    const int sites = static_cast<int>(state0.photon_amps.size());
    if (sites % 2 == 0) throw std::invalid_argument("evolve: photon register must be odd-sized");
    const int half_width = (sites - 1) / 2;
    validate(grid, p);
    require_half_width(p, half_width);
    if (std::abs(state0.norm2() - 1.0) > 1e-10)
        throw std::invalid_argument("evolve: initial state must be normalized");

    const auto h = build_hamiltonian(p, half_width);
    const int dim = sites + 1;
    const Rhs rhs{h};

    Eigen::VectorXcd psi(dim);
    psi(0) = state0.emitter_amp;
    psi.tail(sites) = state0.photon_amps;

    const Real dt_out = grid.dt();
    int substeps = std::max(1, static_cast<int>(std::ceil(dt_out / pick_step(p, grid.t_max, opts))));
    const Real dt = dt_out / substeps;

    Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    Eigen::VectorXd wre(dim), wim(dim);

    std::vector<LatticeState> out;
    out.reserve(grid.n_t);
    auto snapshot = [&](Real t) {
        LatticeState s;
        s.emitter_amp = psi(0);
        s.photon_amps = psi.tail(sites);
        s.time = t;
        if (opts.check_boundary) {
            const Real edge = std::norm(psi(1)) + std::norm(psi(dim - 1));
            if (edge > 1e-10)
                throw std::runtime_error(
                    "evolve: boundary occupation exceeded 1e-10, run rejected (enlarge the lattice)");
        }
        out.push_back(std::move(s));
    };

    snapshot(0.0);
    for (int i = 1; i < grid.n_t; ++i) {
        for (int s = 0; s < substeps; ++s) {
            rhs.apply(psi, k1, wre, wim);
            tmp = psi + 0.5 * dt * k1;
            rhs.apply(tmp, k2, wre, wim);
            tmp = psi + 0.5 * dt * k2;
            rhs.apply(tmp, k3, wre, wim);
            tmp = psi + dt * k3;
            rhs.apply(tmp, k4, wre, wim);
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        snapshot(i * dt_out);
    }
    return out;
}

std::vector<Eigenmode> eigenmodes(const ModelParams& p, int half_width) {
    require_half_width(p, half_width);
    const int dim = 2 * half_width + 2;
    if (dim > 4000)
        throw std::invalid_argument("eigenmodes: dense solver limited to dimension 4000");
    const Eigen::MatrixXd h = Eigen::MatrixXd(build_hamiltonian(p, half_width));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenmodes: eigensolver failed");

    const int inner = (p.nc == 2) ? p.d / 2 : 0;
    std::vector<Eigenmode> modes;
    modes.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        Eigenmode m;
        m.energy = solver.eigenvalues()(i);
        m.vector = solver.eigenvectors().col(i);
        bool outside = std::abs(m.energy) > 2.0 * p.xi;
        Real weight_outside = 0.0;
        for (int n = -half_width; n <= half_width; ++n) {
            if (std::abs(n) > inner) weight_outside += m.vector(1 + n + half_width) * m.vector(1 + n + half_width);
        }
        m.bound_candidate = outside || weight_outside < 1e-6;
        modes.push_back(std::move(m));
    }
    return modes;
}

Eigen::VectorXcd emitter_trace(const std::vector<LatticeState>& states) {
    Eigen::VectorXcd a(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) a(i) = states[i].emitter_amp;
    return a;
}

Eigen::VectorXd occupation_profile(const LatticeState& state) {
    return state.photon_amps.cwiseAbs2();
}

}  // namespace waveqed::lattice
