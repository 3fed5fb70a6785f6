#include "qews/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qews::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_density_json(const std::filesystem::path& path, const DensityMatrix& rho,
                        const nlohmann::json& metadata) {
    std::ofstream out = open_out(path);
    out << "{\"schema_version\":" << schema_version << ",\"cutoff\":" << rho.cutoff()
        << ",\"entries\":[";
    const auto& e = rho.entries();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out << ',';
        out << '[' << fmt17(e[i].real()) << ',' << fmt17(e[i].imag()) << ']';
    }
    out << "],\"metadata\":" << metadata.dump() << "}\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

DensityFile read_density_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.at("schema_version").get<int>() != schema_version)
        throw std::runtime_error("unsupported schema_version in " + path.string());
    const int cutoff = doc.at("cutoff").get<int>();
    DensityFile file{DensityMatrix(cutoff), doc.value("metadata", nlohmann::json::object())};
    const auto& entries = doc.at("entries");
    auto& dst = file.state.entries();
    if (entries.size() != dst.size())
        throw std::runtime_error("entry count mismatch in " + path.string());
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = cdouble{entries[i][0].get<double>(), entries[i][1].get<double>()};
    return file;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& preamble) {
    std::ofstream out = open_out(path);
    for (const auto& line : preamble) out << "# " << line << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << fmt17(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& grid,
                      const std::vector<std::string>& preamble) {
    std::ofstream out = open_out(path);
    for (const auto& line : preamble) out << "# " << line << '\n';
    out << "q,p,W\n";
    for (int iq = 0; iq < grid.spec.nq; ++iq)
        for (int ip = 0; ip < grid.spec.np; ++ip)
            out << fmt17(grid.q(iq)) << ',' << fmt17(grid.p(ip)) << ',' << fmt17(grid.at(iq, ip))
                << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_wigner_json(const std::filesystem::path& path, const WignerGrid& grid,
                       const nlohmann::json& metadata) {
    std::ofstream out = open_out(path);
    out << "{\"schema_version\":" << schema_version << ",\"grid\":{\"q_min\":"
        << fmt17(grid.spec.q_min) << ",\"q_max\":" << fmt17(grid.spec.q_max)
        << ",\"nq\":" << grid.spec.nq << ",\"p_min\":" << fmt17(grid.spec.p_min)
        << ",\"p_max\":" << fmt17(grid.spec.p_max) << ",\"np\":" << grid.spec.np
        << "},\"values\":[";
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        if (i) out << ',';
        out << fmt17(grid.values[i]);
    }
    out << "],\"metadata\":" << metadata.dump() << "}\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::string> csv_preamble(const nlohmann::json& metadata) {
    std::vector<std::string> lines;
    lines.push_back("schema_version=" + std::to_string(schema_version));
    if (metadata.contains("seed")) lines.push_back("seed=" + metadata["seed"].dump());
    lines.push_back("metadata=" + metadata.dump());
    return lines;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace qews::io
