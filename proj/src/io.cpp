#include "waveqed/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace waveqed::io {

std::string format_value(Real v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

void write_csv(const std::filesystem::path& path, const Table& table) {
    if (table.columns.empty()) throw std::invalid_argument("write_csv: empty table");
    const auto rows = table.columns.front().size();
    for (const auto& c : table.columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << format_value(table.columns[c](r));
        out << "\n";
    }
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    std::vector<std::vector<Real>> cols(t.header.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',') && c < cols.size()) cols[c++].push_back(std::stod(cell));
        if (c != cols.size()) throw std::runtime_error("read_csv: ragged row in " + path.string());
    }
    for (auto& v : cols) {
        Eigen::VectorXd col(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) col(i) = v[i];
        t.columns.push_back(std::move(col));
    }
    return t;
}

void write_field_binary(const std::filesystem::path& path, const Eigen::VectorXd& times,
                        const Eigen::VectorXi& sites, const Eigen::MatrixXd& occupation) {
    if (occupation.rows() != times.size() || occupation.cols() != sites.size())
        throw std::invalid_argument("write_field_binary: shape mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field_binary: cannot open " + path.string());
    out.write("WQFLD001", 8);
    const std::int32_t nt = static_cast<std::int32_t>(times.size());
    const std::int32_t ns = static_cast<std::int32_t>(sites.size());
    out.write(reinterpret_cast<const char*>(&nt), 4);
    out.write(reinterpret_cast<const char*>(&ns), 4);
    out.write(reinterpret_cast<const char*>(times.data()), nt * 8);
    Eigen::VectorXd site_values = sites.cast<Real>();
    out.write(reinterpret_cast<const char*>(site_values.data()), ns * 8);
    for (Eigen::Index r = 0; r < occupation.rows(); ++r) {
        Eigen::VectorXd row = occupation.row(r);
        out.write(reinterpret_cast<const char*>(row.data()), ns * 8);
    }
}

namespace {
std::uint32_t crc32_update(std::uint32_t crc, const unsigned char* data, std::size_t len) {
    static std::array<std::uint32_t, 256> table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    crc ^= 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}
}  // namespace

std::uint32_t crc32_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("crc32_file: cannot open " + path.string());
    std::uint32_t crc = 0;
    std::array<char, 65536> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = in.gcount();
        if (got > 0)
            crc = crc32_update(crc, reinterpret_cast<const unsigned char*>(buf.data()),
                               static_cast<std::size_t>(got));
    }
    return crc;
}

namespace {
nlohmann::json load_json(const std::filesystem::path& config) {
    std::ifstream in(config);
    if (!in) throw std::runtime_error("config: cannot open " + config.string());
    nlohmann::json j;
    in >> j;
    return j;
}
}  // namespace

ModelParams model_from_json_file(const std::filesystem::path& config) {
    const auto j = load_json(config);
    if (!j.contains("model")) throw std::runtime_error("config: missing \"model\" section");
    const auto& m = j.at("model");
    ModelParams p;
    p.xi = m.value("xi", 1.0);
    p.omega0 = m.value("omega0", 0.0);
    p.g0 = m.value("g0", 0.2);
    p.delta = m.value("delta", 0.0);
    p.nc = m.value("nc", 1);
    p.d = m.value("d", 0);
    if (p.nc == 2 && !m.contains("d"))
        throw std::runtime_error("config: nc = 2 requires the separation d");
    return validate(p);
}

SimulationGrid grid_from_json_file(const std::filesystem::path& config) {
    const auto j = load_json(config);
    SimulationGrid g;
    if (j.contains("grid")) {
        const auto& gj = j.at("grid");
        g.t_max = gj.value("t_max", 100.0);
        g.n_t = gj.value("n_t", 1001);
        g.lattice_half_width = gj.value("lattice_half_width", 400);
    }
    return g;
}

}  // namespace waveqed::io
