// waveqed — command-line surface: scenario runs, bound-state tables, the
// circuit mapping and output comparison.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "waveqed/bound_states.hpp"
#include "waveqed/circuit.hpp"
#include "waveqed/io.hpp"
#include "waveqed/scenarios.hpp"

namespace {
using namespace waveqed;

nlohmann::json error_json(const std::string& stage, const std::string& what) {
    return {{"error", true}, {"stage", stage}, {"message", what}};
}

int cmd_simulate(const std::string& config, const std::string& out_dir, double tolerance) {
    dynamics::TracePolicy policy;
    policy.adaptive.abs_tol = tolerance;
    return scenarios::run_config(config, out_dir, policy);
}

int cmd_bound_states(const std::string& config, const std::string& out_path) {
    const auto p = io::model_from_json_file(config);
    const auto states = bound::find_bound_states(p);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
    }
    *os << "kind,energy,residue,kappa_or_phi\n";
    for (const auto& b : states) {
        const char* kind = b.kind == bound::Kind::Bic
                               ? "BIC"
                               : (b.kind == bound::Kind::BocUpper ? "BOC_upper" : "BOC_lower");
        *os << kind << "," << io::format_value(b.energy) << "," << io::format_value(b.residue)
            << ","
            << io::format_value(b.kind == bound::Kind::Bic ? b.phi : b.kappa) << "\n";
    }
    return 0;
}

int cmd_circuit(const std::string& config, const std::string& out_path) {
    std::ifstream in(config);
    if (!in) throw std::runtime_error("circuit: cannot open " + config);
    nlohmann::json j;
    in >> j;

    nlohmann::ordered_json report;
    if (j.contains("circuit")) {
        const auto& c = j.at("circuit");
        circuit::CircuitParams cp{c.at("l0"),         c.at("c0"), c.at("c"), c.at("cg"),
                                  c.at("c_sigma_q"),  c.at("ej"), c.at("ec")};
        const auto m = circuit::effective_model(cp);
        report["effective"] = {{"omega0_rad_s", m.omega0},
                               {"xi_rad_s", m.xi},
                               {"g0_rad_s", m.g0},
                               {"qubit_rad_s", m.delta},
                               {"regime_warning", m.regime_warning},
                               {"warning", m.warning}};
        const auto n = m.normalized();
        report["normalized"] = {{"omega0_over_xi", n.omega0},
                                {"g0_over_xi", n.g0},
                                {"delta_over_xi", n.delta}};
    }
    if (j.contains("targets")) {
        const auto& t = j.at("targets");
        const double two_pi = 2.0 * 3.14159265358979323846;
        circuit::InverseTargets targets{two_pi * t.at("omega0_hz").get<double>(),
                                        two_pi * t.at("xi_hz").get<double>(),
                                        two_pi * t.at("g0_hz").get<double>()};
        const auto cp = circuit::solve_circuit(targets);
        const auto m = circuit::effective_model(cp);
        report["inverse"] = {{"l0_h", cp.l0},       {"c0_f", cp.c0},
                             {"c_f", cp.c},         {"cg_f", cp.cg},
                             {"c_sigma_q_f", cp.c_sigma_q}, {"ej_j", cp.ej},
                             {"ec_j", cp.ec}};
        report["inverse_check"] = {{"omega0_rel_err", m.omega0 / targets.omega0 - 1.0},
                                   {"xi_rel_err", m.xi / targets.xi - 1.0},
                                   {"g0_rel_err", m.g0 / targets.g0 - 1.0}};
    }
    report["table_check"] = nlohmann::ordered_json::array();
    bool all_pass = true;
    for (const auto& row : circuit::table_check()) {
        report["table_check"].push_back({{"quantity", row.quantity},
                                         {"expected", row.expected},
                                         {"actual", row.actual},
                                         {"pass", row.pass}});
        all_pass = all_pass && row.pass;
    }
    report["pass"] = all_pass;

    if (out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        std::ofstream(out_path) << report.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_compare(const std::string& a, const std::string& b, double tolerance) {
    const auto rep = scenarios::compare_outputs(a, b, tolerance);
    nlohmann::ordered_json j;
    j["tolerance"] = tolerance;
    j["pass"] = rep.pass;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : rep.files)
        j["files"].push_back({{"name", f.name},
                              {"max_abs_dev", f.max_abs},
                              {"mean_abs_dev", f.mean_abs},
                              {"pass", f.pass}});
    std::cout << j.dump(2) << "\n";
    return rep.pass ? 0 : 1;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"waveqed — emitter dynamics in a cavity-array waveguide"};
    app.require_subcommand(1);

    std::string config, out_dir = "out", out_path;
    double tolerance = 1e-9;

    auto* simulate = app.add_subcommand("simulate", "run a config or preset, write CSV outputs");
    simulate->add_option("config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--tolerance", tolerance, "quadrature absolute tolerance per time point");

    auto* bs = app.add_subcommand("bound-states", "bound-state table for a config");
    bs->add_option("config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    bs->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* circ = app.add_subcommand("circuit", "lumped-element to model mapping report");
    circ->add_option("config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    circ->add_option("--out", out_path, "write JSON report here instead of stdout");

    std::string cmp_a, cmp_b;
    double cmp_tol = 1e-3;
    auto* cmp = app.add_subcommand("compare", "compare two output directories or CSV files");
    cmp->add_option("a", cmp_a)->required();
    cmp->add_option("b", cmp_b)->required();
    cmp->add_option("--tolerance", cmp_tol, "max absolute deviation per value");

    bool list_presets = false;
    auto* presets = app.add_subcommand("presets", "list scenario presets");
    presets->add_flag("--list", list_presets, "print the catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config, out_dir, tolerance);
        if (bs->parsed()) return cmd_bound_states(config, out_path);
        if (circ->parsed()) return cmd_circuit(config, out_path);
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_tol);
        if (presets->parsed()) {
            for (const auto& [name, desc] : waveqed::scenarios::preset_catalog())
                std::cout << name << "  " << desc << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << error_json(app.get_subcommands().front()->get_name(), e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}
