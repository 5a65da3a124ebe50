#include "waveqed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace waveqed::quad {

namespace {
constexpr Real kPi = std::numbers::pi;

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK constants).
constexpr Real kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                          0.741531185599394, 0.586087235467691, 0.405845151377397,
                          0.207784955007898, 0.0};
constexpr Real kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                          0.140653259715525, 0.169004726639267, 0.190350578064785,
                          0.204432940075298, 0.209482141084728};
constexpr Real kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                         0.417959183673469};

struct PanelResult {
    Complex integral;
    Real error;
};

PanelResult gk15(const std::function<Real(Real)>& f, Real w, Real a, Real b) {
    const Real h = 0.5 * (b - a);
    const Real c = 0.5 * (a + b);
    auto eval = [&](Real x) { return f(x) * std::exp(Complex(0.0, w * std::cos(x))); };
    const Complex fc = eval(c);
    Complex ik = kWgk[7] * fc;
    Complex ig = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const Complex sum = eval(c - h * kXgk[j]) + eval(c + h * kXgk[j]);
        ik += kWgk[j] * sum;
        if (j % 2 == 1) ig += kWg[j / 2] * sum;  // odd Kronrod indices carry the Gauss rule
    }
    return {ik * h, std::abs(ik - ig) * h};
}
}  // namespace

Complex adaptive_cos_oscillatory(const std::function<Real(Real)>& f, Real w,
                                 const std::vector<Real>& breakpoints,
                                 const AdaptiveOptions& opt) {
    // assemble the initial panel edges
    std::vector<Real> edges{0.0, kPi};
    for (Real x : breakpoints)
        if (x > 0.0 && x < kPi) edges.push_back(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](Real a, Real b) { return std::abs(a - b) < 1e-14; }),
                edges.end());

    const Real h_osc = std::min(kPi / 8.0, 8.0 / std::max(1.0, std::abs(w)));

    struct Item {
        Real a, b;
        int depth;
    };
    std::vector<Item> stack;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const Real a = edges[i], b = edges[i + 1];
        const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / h_osc)));
        for (int j = 0; j < parts; ++j)
            stack.push_back({a + (b - a) * j / parts, a + (b - a) * (j + 1) / parts, 0});
    }

    Complex total(0.0, 0.0);
    Real total_err = 0.0;
    Real worst_err = 0.0;
    Real worst_a = 0.0, worst_b = 0.0;

    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const auto r = gk15(f, w, it.a, it.b);
        const Real width = it.b - it.a;
        const Real budget = opt.abs_tol * std::max(width / kPi, 1e-6) * 0.5;
        if (r.error <= budget || width <= opt.min_width || it.depth >= opt.max_depth) {
            total += r.integral;
            total_err += r.error;
            if (r.error > worst_err) {
                worst_err = r.error;
                worst_a = it.a;
                worst_b = it.b;
            }
            continue;
        }
        const Real mid = 0.5 * (it.a + it.b);
        stack.push_back({it.a, mid, it.depth + 1});
        stack.push_back({mid, it.b, it.depth + 1});
    }

    if (total_err > 5.0 * opt.abs_tol)
        throw QuadratureError("adaptive_cos_oscillatory: tolerance not met", worst_err, worst_a,
                              worst_b);
    return total;
}

namespace {
// moments M_j = int_{-h}^{h} x^j exp(i w x) dx for j = 0, 1, 2
void filon_moments(Real w, Real h, Complex& m0, Complex& m1, Complex& m2) {
    const Real th = w * h;
    if (std::abs(th) < 0.1) {
        const Real t2 = th * th;
        m0 = 2.0 * h * (1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0);
        m1 = Complex(0.0, 2.0 * h * h) * (th / 3.0 - th * t2 / 30.0 + th * t2 * t2 / 840.0);
        m2 = 2.0 * h * h * h * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0);
        return;
    }
    const Real s = std::sin(th);
    const Real c = std::cos(th);
    m0 = 2.0 * s / w;
    m1 = Complex(0.0, 2.0) * (s - th * c) / (w * w);
    m2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (w * w * w);
}
}  // namespace

Complex filon_linear_phase(const std::function<Real(Real)>& kernel, Real w,
                           const std::vector<Real>& mesh) {
    if (mesh.size() < 2) throw std::invalid_argument("filon_linear_phase: mesh too small");
    Complex total(0.0, 0.0);
    Real fa = kernel(mesh.front());
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        const Real a = mesh[i], b = mesh[i + 1];
        const Real h = 0.5 * (b - a);
        if (h <= 0.0) throw std::invalid_argument("filon_linear_phase: mesh must ascend");
        const Real c = 0.5 * (a + b);
        const Real fm = kernel(c);
        const Real fb = kernel(b);
        const Real c0 = fm;
        const Real c1 = (fb - fa) / (2.0 * h);
        const Real c2 = (fa + fb - 2.0 * fm) / (2.0 * h * h);
        Complex m0, m1, m2;
        filon_moments(w, h, m0, m1, m2);
        total += std::exp(Complex(0.0, w * c)) * (c0 * m0 + c1 * m1 + c2 * m2);
        fa = fb;
    }
    return total;
}

void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = 0;
    if (const char* env = std::getenv("WAVEQED_WORKERS")) workers = std::atoi(env);
    if (workers <= 0)
        workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wk = 0; wk < workers; ++wk) {
        pool.emplace_back([&, wk]() {
            for (int i = wk; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace waveqed::quad
