// scenarios.hpp — Named scenario presets, the scenario runner and output
// comparison. A preset expands to one or more scenarios; each scenario writes
// its CSV outputs plus a manifest with checksums into its own directory.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "waveqed/dynamics.hpp"
#include "waveqed/model.hpp"

namespace waveqed::scenarios {

// Output kinds: trace, bound_states, rates, field, oracle, sweep, kernels,
// spectral, boc_sweep. "rates" includes the entropy column; "entropy" is
// accepted as an alias.
struct Scenario {
    std::string name;
    ModelParams params;
    SimulationGrid grid;
    std::vector<std::string> outputs;
    std::vector<Real> sweep_deltas;  // used by "sweep"
    std::vector<Real> sweep_g0s;     // used by "boc_sweep"
    int field_half_window{60};
};

const std::vector<std::pair<std::string, std::string>>& preset_catalog();  // name, description
std::vector<Scenario> expand_preset(const std::string& name);

struct RunReport {
    std::vector<std::string> files;
    std::filesystem::path manifest;
};

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir,
                       const dynamics::TracePolicy& policy = {});

// Loads a config file ({"preset": ...} or {"scenario": ..., "model": ...,
// "grid": ..., "outputs": [...]}) and runs everything under out_dir.
int run_config(const std::filesystem::path& config, const std::filesystem::path& out_dir,
               const dynamics::TracePolicy& policy = {});

struct FileDeviation {
    std::string name;
    Real max_abs{0.0};
    Real mean_abs{0.0};
    bool pass{true};
};

struct CompareReport {
    std::vector<FileDeviation> files;
    bool pass{true};
};

// Compares two scenario output directories (same-named CSVs) or two CSV files.
CompareReport compare_outputs(const std::filesystem::path& a, const std::filesystem::path& b,
                              Real tolerance);

}  // namespace waveqed::scenarios
