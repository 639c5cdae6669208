#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dzlab/conditioned_mc.hpp"
#include "dzlab/ensembles.hpp"
#include "dzlab/histogram.hpp"
#include "dzlab/polyderiv.hpp"
#include "dzlab/zeta.hpp"

namespace dzlab {

using Json = nlohmann::ordered_json;

// All CSV output uses %.17g so files are byte-stable and round-trip exactly.
std::string format_double(double x);

void write_text_file(const std::filesystem::path& path, const std::string& content);

// One CSV with a header row; every cell formatted with format_double.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

Json to_json(const EigenphaseConfig& config);
EigenphaseConfig config_from_json(const Json& j);

Json to_json(const EmpiricalDistribution& dist);
EmpiricalDistribution distribution_from_json(const Json& j);

Json to_json(const DerivRootSet& set);
Json to_json(const MomentReport& report);
Json to_json(const zeta::ScanManifest& manifest);

// bin_left, bin_right, count, density (count / (width * total mass)).
void write_histogram_csv(const std::filesystem::path& path,
                         const EmpiricalDistribution& dist);

// One s value per line, no header.
void write_s_values_csv(const std::filesystem::path& path,
                        const std::vector<double>& s_values);

// beta, gamma, normalized_x, residual.
void write_zeros_csv(const std::filesystem::path& path,
                     const std::vector<zeta::ZetaPrimeZero>& zeros);

// Run manifest: command, seed, n, samples, wall_time, version, flags.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  int n = 0;
  std::int64_t samples = 0;
  double wall_time_s = 0.0;
  std::string version;
  Json flags = Json::object();
  Json extras = Json::object();
};

Json to_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

// Machine-readable failure record for nonzero exits.
void write_failure_record(const std::filesystem::path& dir, const std::string& command,
                          int exit_code, const std::string& error);

}  // namespace dzlab
