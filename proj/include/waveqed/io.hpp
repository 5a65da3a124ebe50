// io.hpp — Deterministic CSV/JSON/binary writers and the config reader.
// All numeric output is printed with %.17g so identical runs produce
// byte-identical files.

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "waveqed/model.hpp"

namespace waveqed::io {

struct Table {
    std::vector<std::string> header;
    std::vector<Eigen::VectorXd> columns;
};

std::string format_value(Real v);
void write_csv(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);

// Compact binary field table: magic "WQFLD001", int32 nt, int32 nsites, then
// times[nt], sites[nsites] and occupation[nt][nsites] row-major, all doubles,
// little-endian.
void write_field_binary(const std::filesystem::path& path, const Eigen::VectorXd& times,
                        const Eigen::VectorXi& sites, const Eigen::MatrixXd& occupation);

std::uint32_t crc32_file(const std::filesystem::path& path);

// Model/grid ingestion from the JSON config; keys mirror the field names
// (xi, omega0, g0, delta, nc, d / t_max, n_t, lattice_half_width).
ModelParams model_from_json_file(const std::filesystem::path& config);
SimulationGrid grid_from_json_file(const std::filesystem::path& config);

}  // namespace waveqed::io
