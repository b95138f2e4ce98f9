#pragma once

// File interchange: CSV tables (header row mandatory), the key=value block
// form of FunctionSpec, and the flag mini-language
//   const:c | cos:theta0,theta1,... | jump:low,high,point | file:path
// used by the CLI.

#include <filesystem>
#include <string>
#include <vector>

#include "specvol/funcspace.hpp"
#include "specvol/simulate.hpp"

namespace specvol {

// Flag mini-language.  `file:path` loads a tabulated grid from a one- or
// two-column CSV (the last column is taken as the values).
FunctionSpec parse_function_spec(const std::string& spec);

// Best-effort inverse of parse_function_spec (tabulated specs render inline).
std::string function_spec_flag(const FunctionSpec& f);

// Structured key=value block, one field per line, `kind=...` first.
std::string serialize_function_spec(const FunctionSpec& f);
FunctionSpec parse_function_spec_block(const std::string& block);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // column-major, equal lengths

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
    const std::vector<double>& column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
CsvTable read_csv(const std::filesystem::path& path);

// Observation interchange: header `i,t,y`.
void write_observation_csv(const std::filesystem::path& path, const ObservationSeries& obs);
// Accepts the `i,t,y` layout or any table whose last column holds the series.
std::vector<double> read_observation_column(const std::filesystem::path& path);

// Coefficient sidecar: header `k,theta`.
void write_cosine_series_csv(const std::filesystem::path& path, const CosineSeries& s);
CosineSeries read_cosine_series_csv(const std::filesystem::path& path);

// key=value run log (resolved configuration sidecars).
void write_key_value_file(const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace specvol
