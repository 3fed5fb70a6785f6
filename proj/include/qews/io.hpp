#ifndef QEWS_IO_HPP
#define QEWS_IO_HPP

// File formats shared across the tools: the density-matrix JSON container
// and plot-ready CSV emitters. All floating-point payloads are written with
// 17 significant decimal digits so parsed values round-trip bit-exactly;
// no timestamps are embedded, so runs with equal config and seed produce
// byte-identical files.

#include "qews/fock.hpp"
#include "qews/phase_space.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace qews::io {

inline constexpr int schema_version = 1;

std::string fmt17(double v);

// {schema_version, cutoff, entries: row-major [re, im] pairs, metadata}
void write_density_json(const std::filesystem::path& path, const DensityMatrix& rho,
                        const nlohmann::json& metadata);

struct DensityFile {
    DensityMatrix state;
    nlohmann::json metadata;
};
DensityFile read_density_json(const std::filesystem::path& path);

// Comma-delimited, '.' decimal separator, header row, 17 significant digits.
// Preamble lines (schema/seed/config) are written as '#' comments above the
// header.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& preamble = {});

// q, p, W columns.
void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& grid,
                      const std::vector<std::string>& preamble = {});

// Standard preamble for CSV payloads.
std::vector<std::string> csv_preamble(const nlohmann::json& metadata);

// Shared JSON container with grid metadata and row-major values.
void write_wigner_json(const std::filesystem::path& path, const WignerGrid& grid,
                       const nlohmann::json& metadata);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace qews::io

#endif
