#include "dzlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dzlab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_double(row[i]);
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  write_text_file(path, out);
}

Json to_json(const EigenphaseConfig& config) {
  Json j;
  j["n"] = config.n;
  j["ensemble"] = to_string(config.ensemble);
  j["seed"] = config.seed;
  j["raw_phases"] = config.raw_phases;
  return j;
}

EigenphaseConfig config_from_json(const Json& j) {
  return EigenphaseConfig::from_raw_phases(
      j.at("n").get<int>(), j.at("raw_phases").get<std::vector<double>>(),
      ensemble_from_string(j.at("ensemble").get<std::string>()),
      j.at("seed").get<std::uint64_t>());
}

Json to_json(const EmpiricalDistribution& dist) {
  Json j;
  j["label"] = dist.label;
  j["ensemble"] = dist.ensemble;
  j["n"] = dist.n;
  j["seed"] = dist.seed;
  j["total_samples"] = dist.total_samples;
  j["nan_count"] = dist.nan_count;
  j["underflow"] = dist.underflow;
  j["overflow"] = dist.overflow;
  j["edges"] = dist.edges;
  j["masses"] = dist.masses;
  return j;
}

EmpiricalDistribution distribution_from_json(const Json& j) {
  auto d = EmpiricalDistribution::with_edges(j.at("edges").get<std::vector<double>>());
  d.masses = j.at("masses").get<std::vector<double>>();
  if (d.masses.size() + 1 != d.edges.size()) {
    throw std::invalid_argument("distribution_from_json: masses/edges mismatch");
  }
  d.underflow = j.at("underflow").get<double>();
  d.overflow = j.at("overflow").get<double>();
  d.total_samples = j.at("total_samples").get<std::int64_t>();
  d.nan_count = j.at("nan_count").get<std::int64_t>();
  d.label = j.at("label").get<std::string>();
  d.ensemble = j.at("ensemble").get<std::string>();
  d.n = j.at("n").get<int>();
  d.seed = j.at("seed").get<std::uint64_t>();
  return d;
}

Json to_json(const DerivRootSet& set) {
  Json j;
  j["n"] = set.n;
  Json roots = Json::array();
  for (const auto& r : set.roots) roots.push_back(Json::array({r.real(), r.imag()}));
  j["roots"] = std::move(roots);
  j["s_values"] = set.s_values;
  j["flagged_count"] = set.flagged_count;
  return j;
}

Json to_json(const MomentReport& report) {
  Json j;
  j["n"] = report.n;
  j["sample_count"] = report.sample_count;
  j["batch_count"] = report.batch_count;
  j["effective_sample_size"] = report.ess;
  j["low_ess_warning"] = report.low_ess_warning;
  j["mean_weight"] = report.mean_weight;
  j["mean_weight_se"] = report.mean_weight_se;
  j["mean_weight_predicted"] = report.mean_weight_predicted;
  Json moments = Json::object();
  for (int i = 0; i < kMomentObservables; ++i) {
    const auto& m = report.moments[static_cast<std::size_t>(i)];
    Json entry;
    entry["mean_re"] = m.mean.real();
    entry["mean_im"] = m.mean.imag();
    entry["std_error"] = m.std_error;
    entry["predicted"] = m.predicted;
    entry["z_score"] = m.z_score;
    moments[kMomentNames[static_cast<std::size_t>(i)]] = std::move(entry);
  }
  j["moments"] = std::move(moments);
  return j;
}

Json to_json(const zeta::ScanManifest& manifest) {
  Json j;
  j["t_lo"] = manifest.t_lo;
  j["t_hi"] = manifest.t_hi;
  j["box_count"] = manifest.box_count;
  j["subdivisions"] = manifest.subdivisions;
  j["zero_count"] = manifest.zero_count;
  j["failures"] = manifest.failures;
  return j;
}

void write_histogram_csv(const std::filesystem::path& path,
                         const EmpiricalDistribution& dist) {
  double total = dist.total_mass();
  std::vector<std::vector<double>> rows;
  rows.reserve(dist.masses.size());
  for (std::size_t i = 0; i < dist.masses.size(); ++i) {
    double width = dist.edges[i + 1] - dist.edges[i];
    double density = total > 0.0 ? dist.masses[i] / (width * total) : 0.0;
    rows.push_back({dist.edges[i], dist.edges[i + 1], dist.masses[i], density});
  }
  write_csv(path, {"bin_left", "bin_right", "count", "density"}, rows);
}

void write_s_values_csv(const std::filesystem::path& path,
                        const std::vector<double>& s_values) {
  std::string out;
  for (double s : s_values) {
    out += format_double(s);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_zeros_csv(const std::filesystem::path& path,
                     const std::vector<zeta::ZetaPrimeZero>& zeros) {
  std::vector<std::vector<double>> rows;
  rows.reserve(zeros.size());
  for (const auto& z : zeros) {
    rows.push_back({z.beta, z.gamma, z.normalized_x, z.residual});
  }
  write_csv(path, {"beta", "gamma", "normalized_x", "residual"}, rows);
}

Json to_json(const RunManifest& manifest) {
  Json j;
  j["command"] = manifest.command;
  j["seed"] = manifest.seed;
  j["n"] = manifest.n;
  j["samples"] = manifest.samples;
  j["wall_time_s"] = manifest.wall_time_s;
  j["version"] = manifest.version;
  j["flags"] = manifest.flags;
  j["extras"] = manifest.extras;
  return j;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  write_text_file(path, to_json(manifest).dump(2) + "\n");
}

void write_failure_record(const std::filesystem::path& dir, const std::string& command,
                          int exit_code, const std::string& error) {
  Json j;
  j["command"] = command;
  j["exit_code"] = exit_code;
  j["error"] = error;
  std::filesystem::create_directories(dir);
  write_text_file(dir / "failure.json", j.dump(2) + "\n");
}

}  // namespace dzlab
