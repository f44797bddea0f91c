#include "mfpinn/pinn/hf_dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfpinn/errors.hpp"

namespace mfpinn::pinn {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw DomainError("dataset CSV: cannot parse '" + cell + "'");
    }
    if (used != cell.size()) throw DomainError("dataset CSV: trailing characters in '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void HfDataset::validate() const {
  if (xi.rows() < 1) throw DomainError("dataset: needs at least one sample");
  if (t.empty()) throw DomainError("dataset: needs at least one observation time");
  if (static_cast<std::size_t>(u.rows()) != rows()) {
    throw DomainError("dataset: response rows must equal samples x sensors x times");
  }
  if (u.cols() < 1) throw DomainError("dataset: needs at least one output");
}

Eigen::MatrixXd HfDataset::inputs(const ProblemSpec& problem) const {
  validate();
  if (static_cast<std::size_t>(xi.cols()) != problem.stochastic_dims()) {
    throw DomainError("dataset: stochastic dimension does not match problem '" + problem.id + "'");
  }
  if (x.empty() == problem.space.has_value()) {
    throw DomainError("dataset: sensor locations do not match problem '" + problem.id + "'");
  }
  Eigen::MatrixXd in(static_cast<Eigen::Index>(problem.input_width()), static_cast<Eigen::Index>(rows()));
  Eigen::Index r = 0;
  for (Eigen::Index s = 0; s < xi.rows(); ++s) {
    for (std::size_t k = 0; k < sensors(); ++k) {
      for (double tv : t) {
        in.col(r).head(xi.cols()) = xi.row(s).transpose();
        if (problem.space) in(static_cast<Eigen::Index>(problem.space_index()), r) = x[k];
        in(static_cast<Eigen::Index>(problem.time_index()), r) = tv;
        ++r;
      }
    }
  }
  return in;
}

nlohmann::json dataset_manifest(const HfDataset& data, const std::string& csv_name) {
  nlohmann::json m;
  m["format"] = "mfpinn-hf-dataset";
  m["version"] = 1;
  m["csv"] = csv_name;
  m["samples"] = data.samples();
  m["stochastic_dims"] = data.xi.cols();
  m["x"] = data.x;
  m["t"] = data.t;
  m["outputs"] = data.outputs();
  m["rows"] = data.rows();
  m["provenance"] = data.provenance;
  m["seed"] = data.seed;
  m["generator"] = data.generator;
  return m;
}

void save_dataset(const HfDataset& data, const std::filesystem::path& stem) {
  data.validate();
  std::filesystem::path csv = stem;
  csv += ".csv";
  std::filesystem::path manifest = stem;
  manifest += ".json";

  std::ofstream out(csv);
  if (!out) throw DomainError("cannot open " + csv.string() + " for writing");
  const bool spatial = !data.x.empty();
  for (Eigen::Index j = 0; j < data.xi.cols(); ++j) out << "xi_" << j + 1 << ',';
  if (spatial) out << "x,";
  out << 't';
  for (Eigen::Index o = 0; o < data.u.cols(); ++o) out << ",u_" << o + 1;
  out << '\n';
  Eigen::Index r = 0;
  for (Eigen::Index s = 0; s < data.xi.rows(); ++s) {
    for (std::size_t k = 0; k < data.sensors(); ++k) {
      for (double tv : data.t) {
        for (Eigen::Index j = 0; j < data.xi.cols(); ++j) out << format_double(data.xi(s, j)) << ',';
        if (spatial) out << format_double(data.x[k]) << ',';
        out << format_double(tv);
        for (Eigen::Index o = 0; o < data.u.cols(); ++o) out << ',' << format_double(data.u(r, o));
        out << '\n';
        ++r;
      }
    }
  }
  if (!out) throw DomainError("failed writing " + csv.string());

  std::ofstream mf(manifest);
  if (!mf) throw DomainError("cannot open " + manifest.string() + " for writing");
  mf << dataset_manifest(data, csv.filename().string()).dump(2) << '\n';
}

HfDataset load_dataset(const std::filesystem::path& manifest_path) {
  std::ifstream mf(manifest_path);
  if (!mf) throw DomainError("dataset manifest not found: " + manifest_path.string());
  nlohmann::json m;
  try {
    mf >> m;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("dataset manifest is not valid JSON: " + std::string(e.what()));
  }
  if (m.value("format", "") != "mfpinn-hf-dataset") throw DomainError("not an HF dataset manifest");

  HfDataset d;
  std::size_t samples = 0, dims = 0, outputs = 0;
  try {
    samples = m.at("samples").get<std::size_t>();
    dims = m.at("stochastic_dims").get<std::size_t>();
    outputs = m.at("outputs").get<std::size_t>();
    d.x = m.at("x").get<std::vector<double>>();
    d.t = m.at("t").get<std::vector<double>>();
    d.provenance = m.value("provenance", "");
    d.seed = m.value("seed", std::uint64_t{0});
    d.generator = m.value("generator", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("dataset manifest: " + std::string(e.what()));
  }
  const std::filesystem::path csv = manifest_path.parent_path() / m.at("csv").get<std::string>();
  std::ifstream in(csv);
  if (!in) throw DomainError("dataset CSV not found: " + csv.string());

  const bool spatial = !d.x.empty();
  const std::size_t cols = dims + (spatial ? 1 : 0) + 1 + outputs;
  d.xi.resize(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(dims));
  d.u.resize(static_cast<Eigen::Index>(samples * d.sensors() * d.t.size()), static_cast<Eigen::Index>(outputs));

  std::string line;
  std::getline(in, line);  // header
  std::size_t r = 0;
  const std::size_t per_sample = d.sensors() * d.t.size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> v = split_row(line);
    if (v.size() != cols) throw DomainError("dataset CSV: row " + std::to_string(r + 1) + " has the wrong width");
    if (r >= static_cast<std::size_t>(d.u.rows())) throw DomainError("dataset CSV: more rows than the manifest declares");
    const std::size_t s = r / per_sample;
    const std::size_t k = (r / d.t.size()) % d.sensors();
    const std::size_t ti = r % d.t.size();
    for (std::size_t j = 0; j < dims; ++j) {
      const auto sj = static_cast<Eigen::Index>(j);
      if (r % per_sample == 0) {
        d.xi(static_cast<Eigen::Index>(s), sj) = v[j];
      } else if (d.xi(static_cast<Eigen::Index>(s), sj) != v[j]) {
        throw DomainError("dataset CSV: row " + std::to_string(r + 1) + " breaks the sample grid");
      }
    }
    std::size_t c = dims;
    if (spatial && v[c++] != d.x[k]) throw DomainError("dataset CSV: row " + std::to_string(r + 1) + " breaks the sensor grid");
    if (v[c++] != d.t[ti]) throw DomainError("dataset CSV: row " + std::to_string(r + 1) + " breaks the time grid");
    for (std::size_t o = 0; o < outputs; ++o) d.u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(o)) = v[c + o];
    ++r;
  }
  if (r != static_cast<std::size_t>(d.u.rows())) throw DomainError("dataset CSV: fewer rows than the manifest declares");
  return d;
}

}  // namespace mfpinn::pinn
