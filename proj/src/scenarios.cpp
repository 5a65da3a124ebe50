#include "waveqed/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

#include "waveqed/io.hpp"
#include "waveqed/lattice.hpp"
#include "waveqed/master_eq.hpp"
#include "waveqed/spectral.hpp"

namespace waveqed::scenarios {

namespace {
constexpr Real kPi = std::numbers::pi;

ModelParams small_emitter(Real delta) {
    ModelParams p;
    p.nc = 1;
    p.delta = delta;
    return p;
}

ModelParams giant_emitter(Real delta, int d) {
    ModelParams p;
    p.nc = 2;
    p.d = d;
    p.delta = delta;
    return p;
}

SimulationGrid grid(Real t_max, int n_t, int half_width) { return {t_max, n_t, half_width}; }

std::string format_tag(Real v) {
    std::string s = io::format_value(v);
    for (auto& ch : s)
        if (ch == '.' || ch == '-' || ch == '+') ch = 'p';
    return s;
}
}  // namespace

const std::vector<std::pair<std::string, std::string>>& preset_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"fig1b", "spectral density of the point-coupled emitter across the band"},
        {"fig1c", "bound-state energies against the normalized coupling"},
        {"fig2b", "decay-probability sweep over detunings in [-5/2, 5/2] xi"},
        {"fig2c", "representative decay traces (delta = 0, 3/2, 2 xi) with field profiles"},
        {"fig3a", "radiation-field movie for an in-band emitter, delta = 3/2 xi"},
        {"fig3b", "radiation-field movie at the band edge, delta = 2 xi"},
        {"fig5a", "two-leg branch-cut kernels for d = 2, 6, 12"},
        {"fig5b", "effective spectral densities for d = 2, 4, 12"},
        {"fig6a", "two-leg decay sweep for d = 2"},
        {"fig6b", "two-leg decay sweep for d = 12"},
        {"fig6c", "trapped-state traces: {delta = 0, d = 2} and {delta = 2 xi cos(5 pi/12), d = 12}"},
        {"fig7a", "in-band trapped-state field movie, d = 12"},
        {"fig7b", "breathing field of the superposed in/out-of-band state, d = 12"},
        {"fig7c", "quasi-oscillating field for delta = 2 xi, d = 30"},
    };
    return catalog;
}

std::vector<Scenario> expand_preset(const std::string& name) {
    std::vector<Scenario> out;
    auto sweep_deltas = [](Real lo, Real hi, int n) {
        std::vector<Real> v(n);
        for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
        return v;
    };

    if (name == "fig1b") {
        Scenario sc{"fig1b", small_emitter(0.0), grid(1.0, 2, 50), {"spectral"}, {}, {}, 60};
        out.push_back(sc);
    } else if (name == "fig1c") {
        Scenario sc{"fig1c", small_emitter(0.0), grid(1.0, 2, 50), {"boc_sweep"}, {}, {}, 60};
        for (int i = 1; i <= 40; ++i) sc.sweep_g0s.push_back(0.025 * i);
        out.push_back(sc);
    } else if (name == "fig2b") {
        Scenario sc{"fig2b", small_emitter(0.0), grid(75.0, 376, 400), {"sweep"},
                    sweep_deltas(-2.5, 2.5, 51), {}, 60};
        out.push_back(sc);
    } else if (name == "fig2c") {
        for (Real delta : {0.0, 1.5, 2.0}) {
            Scenario sc{"fig2c_delta" + format_tag(delta), small_emitter(delta),
                        grid(100.0, 1001, 400),
                        {"trace", "bound_states", "oracle"}, {}, {}, 60};
            out.push_back(sc);
        }
    } else if (name == "fig3a" || name == "fig3b") {
        const Real delta = (name == "fig3a") ? 1.5 : 2.0;
        Scenario sc{name, small_emitter(delta), grid(40.0, 321, 400), {"field", "trace"}, {}, {},
                    100};
        out.push_back(sc);
    } else if (name == "fig5a") {
        for (int d : {2, 6, 12}) {
            Scenario sc{"fig5a_d" + std::to_string(d), giant_emitter(0.0, d), grid(1.0, 2, 50),
                        {"kernels"}, {}, {}, 60};
            out.push_back(sc);
        }
    } else if (name == "fig5b") {
        for (int d : {2, 4, 12}) {
            Scenario sc{"fig5b_d" + std::to_string(d), giant_emitter(0.0, d), grid(1.0, 2, 50),
                        {"spectral"}, {}, {}, 60};
            out.push_back(sc);
        }
    } else if (name == "fig6a" || name == "fig6b") {
        const int d = (name == "fig6a") ? 2 : 12;
        Scenario sc{name, giant_emitter(0.0, d), grid(75.0, 376, 400), {"sweep"},
                    sweep_deltas(-2.5, 2.5, 51), {}, 60};
        out.push_back(sc);
    } else if (name == "fig6c") {
        Scenario a{"fig6c_d2", giant_emitter(0.0, 2), grid(150.0, 1501, 400),
                   {"trace", "bound_states", "oracle"}, {}, {}, 60};
        Scenario b{"fig6c_d12", giant_emitter(2.0 * std::cos(5.0 * kPi / 12.0), 12),
                   grid(150.0, 1501, 400), {"trace", "bound_states", "oracle"}, {}, {}, 60};
        out.push_back(a);
        out.push_back(b);
    } else if (name == "fig7a") {
        Scenario sc{"fig7a", giant_emitter(2.0 * std::cos(5.0 * kPi / 12.0), 12),
                    grid(150.0, 301, 400), {"field", "bound_states"}, {}, {}, 40};
        out.push_back(sc);
    } else if (name == "fig7b") {
        Scenario sc{"fig7b", giant_emitter(2.0 * std::cos(kPi / 12.0), 12), grid(150.0, 301, 400),
                    {"field", "bound_states", "trace", "rates"}, {}, {}, 40};
        out.push_back(sc);
    } else if (name == "fig7c") {
        Scenario sc{"fig7c", giant_emitter(2.0, 30), grid(150.0, 301, 400), {"field", "trace"},
                    {}, {}, 60};
        out.push_back(sc);
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return out;
}

namespace {
io::Table trace_table(const dynamics::AmplitudeTrace& tr) {
    io::Table t;
    t.header = {"t", "re_alpha", "im_alpha", "abs2", "re_scattering", "im_scattering",
                "re_residue", "im_residue"};
    const int n = static_cast<int>(tr.times.size());
    for (int c = 0; c < 8; ++c) t.columns.emplace_back(n);
    for (int i = 0; i < n; ++i) {
        t.columns[0](i) = tr.times(i);
        t.columns[1](i) = tr.alpha(i).real();
        t.columns[2](i) = tr.alpha(i).imag();
        t.columns[3](i) = std::norm(tr.alpha(i));
        t.columns[4](i) = tr.scattering_part(i).real();
        t.columns[5](i) = tr.scattering_part(i).imag();
        t.columns[6](i) = tr.residue_part(i).real();
        t.columns[7](i) = tr.residue_part(i).imag();
    }
    return t;
}

Real kind_tag(bound::Kind k) {
    switch (k) {
        case bound::Kind::BocLower: return -1.0;
        case bound::Kind::Bic: return 0.0;
        case bound::Kind::BocUpper: return 1.0;
    }
    return 2.0;
}

struct Writer {
    std::filesystem::path dir;
    std::vector<std::string> files;

    void csv(const std::string& name, const io::Table& t) {
        io::write_csv(dir / name, t);
        files.push_back(name);
    }
};
}  // namespace

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir,
                       const dynamics::TracePolicy& policy) {
    const ModelParams p = validate(sc.params);
    std::filesystem::create_directories(out_dir / sc.name);
    Writer w{out_dir / sc.name, {}};

    const std::set<std::string> kinds(sc.outputs.begin(), sc.outputs.end());
    const bool want_rates = kinds.count("rates") || kinds.count("entropy");

    std::vector<bound::BoundState> states;
    dynamics::AmplitudeTrace tr;
    const bool need_trace = kinds.count("trace") || want_rates;
    if (need_trace || kinds.count("bound_states")) states = bound::find_bound_states(p);
    if (need_trace) tr = dynamics::alpha_exact(p, sc.grid, states, policy);

    if (kinds.count("trace")) w.csv("trace.csv", trace_table(tr));

    if (kinds.count("bound_states")) {
        io::Table t;
        t.header = {"kind", "energy", "residue", "kappa_or_phi"};
        const int n = static_cast<int>(states.size());
        for (int c = 0; c < 4; ++c) t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            t.columns[0](i) = kind_tag(states[i].kind);
            t.columns[1](i) = states[i].energy;
            t.columns[2](i) = states[i].residue;
            t.columns[3](i) = states[i].kind == bound::Kind::Bic ? states[i].phi : states[i].kappa;
        }
        w.csv("bound_states.csv", t);

        // stationary profiles where the closed forms apply
        io::Table prof;
        prof.header = {"kind", "n", "occupation"};
        std::vector<Real> kc, nc_, oc;
        for (const auto& b : states) {
            if (p.nc == 1 && b.kind != bound::Kind::Bic) {
                const auto f = bound::boc_field_profile(b, p);
                for (int i = 0; i < f.sites.size(); ++i) {
                    kc.push_back(kind_tag(b.kind));
                    nc_.push_back(f.sites(i));
                    oc.push_back(f.occupation(i));
                }
            } else if (p.nc == 2 && b.kind == bound::Kind::Bic) {
                const auto f = bound::bic_field_profile(b, p);
                for (int i = 0; i < f.sites.size(); ++i) {
                    kc.push_back(kind_tag(b.kind));
                    nc_.push_back(f.sites(i));
                    oc.push_back(f.occupation(i));
                }
            }
        }
        if (!kc.empty()) {
            for (int c = 0; c < 3; ++c) prof.columns.emplace_back(kc.size());
            for (std::size_t i = 0; i < kc.size(); ++i) {
                prof.columns[0](i) = kc[i];
                prof.columns[1](i) = nc_[i];
                prof.columns[2](i) = oc[i];
            }
            w.csv("profiles.csv", prof);
        }
    }

    if (want_rates) {
        const auto rho = master::density_matrix(tr, {1.0, Complex(0.0, 0.0), 0.0});
        const auto rt = master::rates(tr);
        io::Table t;
        t.header = {"t", "rho_ee", "re_rho_eg", "im_rho_eg", "delta_tilde", "gamma", "entropy"};
        const int n = static_cast<int>(rho.size());
        for (int c = 0; c < 7; ++c) t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            t.columns[0](i) = rho[i].time;
            t.columns[1](i) = rho[i].rho_ee;
            t.columns[2](i) = rho[i].rho_eg.real();
            t.columns[3](i) = rho[i].rho_eg.imag();
            t.columns[4](i) = rt[i].defined ? rt[i].lamb_shift : std::nan("");
            t.columns[5](i) = rt[i].defined ? rt[i].decay_rate : std::nan("");
            t.columns[6](i) = master::entropy(rho[i]);
        }
        w.csv("rates.csv", t);
    }

    if (kinds.count("oracle")) {
        const auto run = lattice::evolve(lattice::excited_emitter_state(sc.grid.lattice_half_width),
                                         sc.grid, p);
        io::Table t;
        t.header = {"t", "re_alpha", "im_alpha", "abs2"};
        const int n = static_cast<int>(run.size());
        for (int c = 0; c < 4; ++c) t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            t.columns[0](i) = run[i].time;
            t.columns[1](i) = run[i].emitter_amp.real();
            t.columns[2](i) = run[i].emitter_amp.imag();
            t.columns[3](i) = std::norm(run[i].emitter_amp);
        }
        w.csv("oracle_trace.csv", t);
    }

    if (kinds.count("field")) {
        // movies: Bessel convolution for the point-like emitter, the lattice
        // integrator for two legs (no closed form for the time-dependent
        // two-leg field)
        const int hw = sc.field_half_window;
        Eigen::VectorXd times;
        Eigen::VectorXi sites(2 * hw + 1);
        for (int n = -hw; n <= hw; ++n) sites(n + hw) = n;
        Eigen::MatrixXd occ;
        if (p.nc == 1) {
            const auto tr_field =
                tr.times.size() ? tr : dynamics::alpha_exact(p, sc.grid, bound::find_bound_states(p), policy);
            times = tr_field.times;
            occ.resize(times.size(), sites.size());
            for (int n = -hw; n <= hw; ++n) {
                const auto beta = dynamics::beta_field_small(n, tr_field, p);
                for (int i = 0; i < times.size(); ++i) occ(i, n + hw) = std::norm(beta(i));
            }
        } else {
            const auto run = lattice::evolve(
                lattice::excited_emitter_state(sc.grid.lattice_half_width), sc.grid, p);
            times.resize(run.size());
            occ.resize(run.size(), sites.size());
            const int half_width = sc.grid.lattice_half_width;
            for (std::size_t i = 0; i < run.size(); ++i) {
                times(i) = run[i].time;
                for (int n = -hw; n <= hw; ++n)
                    occ(i, n + hw) = std::norm(run[i].photon_amps(n + half_width));
            }
        }
        io::Table t;
        t.header = {"t", "n", "occupation"};
        const Eigen::Index rows = times.size() * sites.size();
        for (int c = 0; c < 3; ++c) t.columns.emplace_back(rows);
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < times.size(); ++i)
            for (Eigen::Index s = 0; s < sites.size(); ++s, ++r) {
                t.columns[0](r) = times(i);
                t.columns[1](r) = sites(s);
                t.columns[2](r) = occ(i, s);
            }
        w.csv("field.csv", t);
        io::write_field_binary(w.dir / "field.bin", times, sites, occ);
        w.files.push_back("field.bin");
    }

    if (kinds.count("sweep")) {
        std::vector<Real> ds, ts, vs;
        for (Real delta : sc.sweep_deltas) {
            ModelParams ps = p;
            ps.delta = delta;
            ps = validate(ps);
            const auto st = bound::find_bound_states(ps);
            const auto trs = dynamics::alpha_exact(ps, sc.grid, st, policy);
            for (int i = 0; i < trs.times.size(); ++i) {
                ds.push_back(delta);
                ts.push_back(trs.times(i));
                vs.push_back(std::norm(trs.alpha(i)));
            }
        }
        io::Table t;
        t.header = {"delta", "t", "abs2"};
        for (int c = 0; c < 3; ++c) t.columns.emplace_back(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            t.columns[0](i) = ds[i];
            t.columns[1](i) = ts[i];
            t.columns[2](i) = vs[i];
        }
        w.csv("sweep.csv", t);
    }

    if (kinds.count("boc_sweep")) {
        io::Table t;
        t.header = {"g0", "y_lower", "y_upper", "r_lower", "r_upper"};
        const int n = static_cast<int>(sc.sweep_g0s.size());
        for (int c = 0; c < 5; ++c) t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            ModelParams ps = p;
            ps.g0 = sc.sweep_g0s[i];
            const auto poles = bound::find_boc_poles(validate(ps));
            t.columns[0](i) = ps.g0;
            t.columns[1](i) = poles[0].energy;
            t.columns[2](i) = poles[1].energy;
            t.columns[3](i) = poles[0].residue;
            t.columns[4](i) = poles[1].residue;
        }
        w.csv("boc_sweep.csv", t);
    }

    if (kinds.count("kernels")) {
        const auto spec = dynamics::KernelSpec::from_params(p);
        const int n = 4001;
        io::Table t;
        t.header = {"y", "kernel"};
        t.columns.emplace_back(n);
        t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            const Real y = -1.0 + 2.0 * (i + 0.5) / n;
            t.columns[0](i) = y;
            t.columns[1](i) = p.nc == 2 ? dynamics::kernel_giant(y, spec)
                                        : dynamics::kernel_small(y, spec);
        }
        w.csv("kernels.csv", t);
    }

    if (kinds.count("spectral")) {
        const int n = 4001;
        io::Table t;
        t.header = {"omega", "j"};
        t.columns.emplace_back(n);
        t.columns.emplace_back(n);
        for (int i = 0; i < n; ++i) {
            const Real omega = (-2.0 + 4.0 * (i + 0.5) / n) * p.xi;
            t.columns[0](i) = omega;
            t.columns[1](i) = p.nc == 2 ? spectral::j_eff(omega, p.d, p)
                                        : spectral::j_small(omega, p);
        }
        w.csv("spectral.csv", t);
    }

    // manifest with parameters, tolerances and file checksums
    nlohmann::ordered_json manifest;
    manifest["version"] = "waveqed-1.0.0";
    manifest["scenario"] = sc.name;
    manifest["model"] = {{"xi", p.xi},   {"omega0", p.omega0}, {"g0", p.g0},
                         {"delta", p.delta}, {"nc", p.nc},     {"d", p.d}};
    manifest["grid"] = {{"t_max", sc.grid.t_max},
                        {"n_t", sc.grid.n_t},
                        {"lattice_half_width", sc.grid.lattice_half_width}};
    manifest["tolerances"] = {{"quadrature_abs_tol", policy.adaptive.abs_tol},
                              {"filon_time_threshold", policy.filon_time_threshold}};
    std::sort(w.files.begin(), w.files.end());
    for (const auto& f : w.files) {
        manifest["files"].push_back(
            {{"name", f},
             {"crc32", io::crc32_file(w.dir / f)},
             {"bytes", std::filesystem::file_size(w.dir / f)}});
    }
    const auto manifest_path = w.dir / "manifest.json";
    std::ofstream(manifest_path) << manifest.dump(2) << "\n";

    RunReport rep;
    rep.files = w.files;
    rep.manifest = manifest_path;
    return rep;
}

int run_config(const std::filesystem::path& config, const std::filesystem::path& out_dir,
               const dynamics::TracePolicy& policy) {
    std::ifstream in(config);
    if (!in) throw std::runtime_error("config: cannot open " + config.string());
    nlohmann::json j;
    in >> j;

    std::vector<Scenario> list;
    if (j.contains("preset")) {
        list = expand_preset(j.at("preset").get<std::string>());
    } else {
        Scenario sc;
        sc.name = j.value("scenario", std::string("custom"));
        sc.params = io::model_from_json_file(config);
        sc.grid = io::grid_from_json_file(config);
        if (j.contains("outputs"))
            for (const auto& o : j.at("outputs")) sc.outputs.push_back(o.get<std::string>());
        else
            sc.outputs = {"trace", "bound_states"};
        if (j.contains("sweep_deltas"))
            for (const auto& v : j.at("sweep_deltas")) sc.sweep_deltas.push_back(v.get<Real>());
        sc.field_half_window = j.value("field_half_window", 60);
        list.push_back(sc);
    }
    for (const auto& sc : list) run_scenario(sc, out_dir, policy);
    return 0;
}

CompareReport compare_outputs(const std::filesystem::path& a, const std::filesystem::path& b,
                              Real tolerance) {
    CompareReport rep;
    auto compare_tables = [&](const std::string& name, const io::Table& ta, const io::Table& tb) {
        if (ta.columns.size() != tb.columns.size() ||
            (ta.columns.size() && ta.columns[0].size() != tb.columns[0].size()))
            throw std::runtime_error("compare: mismatched grids in " + name);
        FileDeviation dev;
        dev.name = name;
        Real acc = 0.0;
        Eigen::Index count = 0;
        for (std::size_t c = 0; c < ta.columns.size(); ++c) {
            const Eigen::VectorXd diff = (ta.columns[c] - tb.columns[c]).cwiseAbs();
            for (Eigen::Index i = 0; i < diff.size(); ++i) {
                if (std::isnan(diff(i))) continue;
                dev.max_abs = std::max(dev.max_abs, diff(i));
                acc += diff(i);
                ++count;
            }
        }
        dev.mean_abs = count ? acc / count : 0.0;
        dev.pass = dev.max_abs <= tolerance;
        rep.pass = rep.pass && dev.pass;
        rep.files.push_back(dev);
    };

    if (std::filesystem::is_directory(a) && std::filesystem::is_directory(b)) {
        std::vector<std::string> names;
        for (const auto& e : std::filesystem::directory_iterator(a))
            if (e.path().extension() == ".csv" &&
                std::filesystem::exists(b / e.path().filename()))
                names.push_back(e.path().filename().string());
        std::sort(names.begin(), names.end());
        if (names.empty()) throw std::runtime_error("compare: no common CSV files");
        for (const auto& n : names)
            compare_tables(n, io::read_csv(a / n), io::read_csv(b / n));
    } else {
        compare_tables(a.filename().string(), io::read_csv(a), io::read_csv(b));
    }
    return rep;
}

}  // namespace waveqed::scenarios
