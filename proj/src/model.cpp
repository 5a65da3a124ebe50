#include "waveqed/model.hpp"

#include <cmath>
#include <string>

namespace waveqed {

ModelParams validate(ModelParams p) {
    if (!(p.xi > 0.0) || !std::isfinite(p.xi))
        throw std::invalid_argument("model: hopping xi must be positive");
    if (!(p.g0 > 0.0) || !std::isfinite(p.g0))
        throw std::invalid_argument("model: coupling g0 must be positive");
    if (!std::isfinite(p.delta) || !std::isfinite(p.omega0))
        throw std::invalid_argument("model: delta and omega0 must be finite");
    if (p.nc != 1 && p.nc != 2)
        throw std::invalid_argument("model: nc must be 1 or 2, got " + std::to_string(p.nc));
    if (p.nc == 2) {
        if (p.d < 2)
            throw std::invalid_argument("model: nc = 2 requires separation d >= 2");
        if (p.d % 2 != 0)
            throw std::invalid_argument("model: coupling points sit at +-d/2, d must be even");
    } else {
        p.d = 0;
    }
    return p;
}

SimulationGrid validate(SimulationGrid g, const ModelParams& p) {
    if (!(g.t_max >= 0.0) || !std::isfinite(g.t_max))
        throw std::invalid_argument("grid: t_max must be >= 0");
    if (g.n_t <= 1)
        throw std::invalid_argument("grid: n_t must exceed 1");
    if (g.lattice_half_width < 1)
        throw std::invalid_argument("grid: lattice_half_width must be positive");
    if (g.t_max * 2.0 * p.xi >= static_cast<Real>(g.lattice_half_width))
        throw std::invalid_argument(
            "grid: t_max * 2 xi must stay below lattice_half_width, "
            "otherwise boundary reflections reach the emitter");
    return g;
}

}  // namespace waveqed
