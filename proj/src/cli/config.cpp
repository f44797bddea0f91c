#include "mfpinn/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "mfpinn/errors.hpp"

namespace mfpinn::cli {

using nlohmann::json;

namespace {

/// Reads typed fields out of one JSON object, tracking the pointer path and
/// rejecting keys nobody asked for.
class Section {
 public:
  Section(const json* obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (obj_ && !obj_->is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    const json* sub = obj_ && obj_->contains(key) ? &obj_->at(key) : nullptr;
    return Section(sub, path_ + "/" + key);
  }

  bool has(const std::string& key) const { return obj_ && obj_->contains(key); }

  template <class T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!has(key)) return;
    try {
      out = obj_->at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "/" + key, "has the wrong type");
    }
  }

  template <class T>
  void read(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!has(key) || obj_->at(key).is_null()) return;
    T v;
    read(key, v);
    out = v;
  }

  void reject_unknown() const {
    if (!obj_) return;
    for (const auto& [key, value] : obj_->items()) {
      if (!seen_.count(key)) throw ConfigError(path_ + "/" + key, "unknown field");
    }
  }

  std::string at(const std::string& key) const { return path_ + "/" + key; }

 private:
  const json* obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_phase(Section s, PhaseConfig& p) {
  s.read("rmsprop_iterations", p.rmsprop_iterations);
  s.read("learning_rate", p.learning_rate);
  s.read("lbfgs_iterations", p.lbfgs_iterations);
  s.read("lbfgs_memory", p.lbfgs_memory);
  s.reject_unknown();
}

PhaseConfig to_phase(const pinn::PhaseBudget& b) {
  return {b.rmsprop_iterations, b.learning_rate, b.lbfgs_iterations, b.lbfgs_memory};
}

pinn::PhaseBudget to_budget(const PhaseConfig& p) {
  return {p.rmsprop_iterations, p.learning_rate, p.lbfgs_iterations, p.lbfgs_memory};
}

json phase_json(const PhaseConfig& p) {
  return {{"rmsprop_iterations", p.rmsprop_iterations},
          {"learning_rate", p.learning_rate},
          {"lbfgs_iterations", p.lbfgs_iterations},
          {"lbfgs_memory", p.lbfgs_memory}};
}

void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

void apply_preset(RunConfig& c, const std::string& id, const benchmarks::BenchmarkOptions& options) {
  benchmarks::BenchmarkDef d;
  try {
    d = benchmarks::make_benchmark(id, options);
  } catch (const DomainError& e) {
    throw ConfigError("/preset", e.what());
  }
  c.benchmark = id;
  c.options = options;
  c.hidden_layers = d.hidden_layers;
  c.width = d.width;
  c.collocation_points = d.collocation_points;
  c.lf = to_phase(d.lf_budget);
  c.tunable_layers = d.transfer.tunable_layers;
  c.lbfgs_tunable_layers = d.transfer.lbfgs_tunable_layers;
  c.transfer = to_phase(d.transfer.budget);
  c.hf_baseline = to_phase(d.hf_budget);
  c.data_samples = d.hf_grid.samples;
  c.data_x = d.hf_grid.x;
  c.data_t = d.hf_grid.t;
  if (d.hf_grid.fixed_samples) {
    const Eigen::MatrixXd& f = *d.hf_grid.fixed_samples;
    c.data_fixed_samples = std::vector<double>(f.data(), f.data() + f.size());
  }
  c.mcs_samples = d.mcs_samples;
  c.threshold = d.limit.threshold;
  c.time = d.limit.time;
  c.ensemble = d.ensemble;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("/", "config file is not valid JSON: " + std::string(e.what()));
  }
}

RunConfig resolve_config(const std::optional<json>& doc, const std::optional<std::string>& preset,
                         const std::optional<std::uint64_t>& seed_override,
                         const std::optional<std::string>& out_override) {
  Section root(doc ? &*doc : nullptr, "");
  std::optional<std::string> doc_preset, doc_benchmark;
  root.read("preset", doc_preset);
  root.read("benchmark", doc_benchmark);
  const std::optional<std::string> id = preset ? preset : (doc_preset ? doc_preset : doc_benchmark);
  if (!id) throw ConfigError("/benchmark", "no benchmark given (use --preset or a 'benchmark' field)");
  if (preset && doc_benchmark && *doc_benchmark != *preset) {
    throw ConfigError("/benchmark", "conflicts with --preset " + *preset);
  }

  benchmarks::BenchmarkOptions options;
  {
    Section s = root.child("options");
    s.read("burgers_viscosity", options.burgers_viscosity);
    s.read("cascade_input", options.cascade_input);
    s.read("burgers_nodes", options.burgers_nodes);
    s.read("rk4_step", options.rk4_step);
    s.reject_unknown();
    check(options.burgers_viscosity > 0.0, s.at("burgers_viscosity"), "must be > 0");
    check(std::isfinite(options.cascade_input) && options.cascade_input >= 0.0, s.at("cascade_input"), "must be >= 0");
    check(options.burgers_nodes >= 3, s.at("burgers_nodes"), "must be >= 3");
    check(options.rk4_step > 0.0, s.at("rk4_step"), "must be > 0");
  }

  RunConfig c;
  apply_preset(c, *id, options);
  root.read("seed", c.seed);
  if (seed_override) c.seed = *seed_override;

  std::optional<std::uint64_t> colloc_seed, init_seed, hf_seed, data_seed, mcs_seed;
  {
    Section s = root.child("network");
    s.read("hidden_layers", c.hidden_layers);
    s.read("width", c.width);
    s.reject_unknown();
    check(c.hidden_layers >= 1, s.at("hidden_layers"), "must be >= 1");
    check(c.width >= 1, s.at("width"), "must be >= 1");
  }
  {
    Section s = root.child("collocation");
    s.read("points", c.collocation_points);
    s.read("seed", colloc_seed);
    s.reject_unknown();
    check(c.collocation_points >= 1, s.at("points"), "must be >= 1");
  }
  root.read("init_seed", init_seed);
  read_phase(root.child("lf"), c.lf);
  {
    Section s = root.child("transfer");
    s.read("tunable_layers", c.tunable_layers);
    s.read("lbfgs_tunable_layers", c.lbfgs_tunable_layers);
    s.read("rmsprop_iterations", c.transfer.rmsprop_iterations);
    s.read("learning_rate", c.transfer.learning_rate);
    s.read("lbfgs_iterations", c.transfer.lbfgs_iterations);
    s.read("lbfgs_memory", c.transfer.lbfgs_memory);
    s.reject_unknown();
    const std::size_t layers = c.hidden_layers + 1;
    check(c.tunable_layers >= 1 && c.tunable_layers <= layers, s.at("tunable_layers"),
          "must lie in [1, " + std::to_string(layers) + "]");
    if (c.lbfgs_tunable_layers) {
      check(*c.lbfgs_tunable_layers >= 1 && *c.lbfgs_tunable_layers <= c.tunable_layers, s.at("lbfgs_tunable_layers"),
            "must lie in [1, tunable_layers]");
    }
  }
  {
    Section s = root.child("hf_baseline");
    s.read("rmsprop_iterations", c.hf_baseline.rmsprop_iterations);
    s.read("learning_rate", c.hf_baseline.learning_rate);
    s.read("lbfgs_iterations", c.hf_baseline.lbfgs_iterations);
    s.read("lbfgs_memory", c.hf_baseline.lbfgs_memory);
    s.read("seed", hf_seed);
    s.reject_unknown();
  }
  for (const auto& [name, phase] : {std::pair<const char*, PhaseConfig*>{"/lf", &c.lf},
                                    {"/transfer", &c.transfer},
                                    {"/hf_baseline", &c.hf_baseline}}) {
    check(phase->learning_rate > 0.0 && std::isfinite(phase->learning_rate), std::string(name) + "/learning_rate",
          "must be > 0");
    check(phase->lbfgs_memory >= 1, std::string(name) + "/lbfgs_memory", "must be >= 1");
  }
  {
    Section s = root.child("data");
    s.read("path", c.data_path);
    s.read("samples", c.data_samples);
    s.read("x", c.data_x);
    s.read("t", c.data_t);
    s.read("fixed_samples", c.data_fixed_samples);
    s.read("seed", data_seed);
    s.reject_unknown();
    check(!c.data_t.empty(), s.at("t"), "needs at least one time");
    if (c.data_fixed_samples) {
      check(!c.data_fixed_samples->empty(), s.at("fixed_samples"), "must not be empty");
      c.data_samples = c.data_fixed_samples->size();
    }
    check(c.data_samples >= 1, s.at("samples"), "must be >= 1");
  }
  root.read("checkpoint", c.checkpoint);
  {
    Section s = root.child("reliability");
    s.read("samples", c.mcs_samples);
    s.read("seed", mcs_seed);
    s.read("threshold", c.threshold);
    s.read("time", c.time);
    s.read("thresholds", c.thresholds);
    s.reject_unknown();
    check(c.mcs_samples >= 1, s.at("samples"), "must be >= 1");
    check(std::isfinite(c.threshold), s.at("threshold"), "must be finite");
    std::vector<double> sorted = c.thresholds;
    std::sort(sorted.begin(), sorted.end());
    check(sorted == c.thresholds, s.at("thresholds"), "must be ascending");
  }
  root.read("ensemble", c.ensemble);
  check(c.ensemble >= 1, "/ensemble", "must be >= 1");
  root.read("output", c.output_dir);
  if (out_override) c.output_dir = *out_override;
  check(!c.output_dir.empty(), "/output", "must not be empty");
  root.reject_unknown();

  c.collocation_seed = colloc_seed.value_or(c.seed);
  c.init_seed = init_seed.value_or(c.seed + 1);
  c.data_seed = data_seed.value_or(c.seed + 2);
  c.mcs_seed = mcs_seed.value_or(c.seed + 3);
  c.hf_init_seed = hf_seed.value_or(c.seed + 4);

  const benchmarks::BenchmarkDef def = c.benchmark_def();
  check(def.problem.time.contains(c.time), "/reliability/time", "outside the problem's time domain");
  for (double t : c.data_t) check(def.problem.time.contains(t), "/data/t", "time outside the problem's domain");
  check(c.data_x.empty() != def.problem.space.has_value(), "/data/x",
        def.problem.space ? "sensor locations are required" : "this problem has no spatial coordinate");
  if (c.data_fixed_samples) {
    check(def.problem.stochastic_dims() == 1, "/data/fixed_samples", "only supported for one stochastic input");
  }
  if (c.data_path) {
    check(std::filesystem::exists(*c.data_path), "/data/path", "file '" + *c.data_path + "' does not exist");
  }
  if (c.checkpoint) {
    check(std::filesystem::exists(*c.checkpoint), "/checkpoint", "file '" + *c.checkpoint + "' does not exist");
  }
  return c;
}

benchmarks::BenchmarkDef RunConfig::benchmark_def() const {
  benchmarks::BenchmarkDef d = benchmarks::make_benchmark(benchmark, options);
  d.hidden_layers = hidden_layers;
  d.width = width;
  d.collocation_points = collocation_points;
  d.lf_budget = to_budget(lf);
  d.transfer.tunable_layers = tunable_layers;
  d.transfer.lbfgs_tunable_layers = lbfgs_tunable_layers;
  d.transfer.budget = to_budget(transfer);
  d.hf_budget = to_budget(hf_baseline);
  d.hf_grid.samples = data_samples;
  d.hf_grid.x = data_x;
  d.hf_grid.t = data_t;
  d.hf_grid.fixed_samples.reset();
  if (data_fixed_samples) {
    d.hf_grid.fixed_samples = Eigen::Map<const Eigen::MatrixXd>(data_fixed_samples->data(),
                                                                static_cast<Eigen::Index>(data_fixed_samples->size()), 1);
  }
  d.mcs_samples = mcs_samples;
  d.limit.threshold = threshold;
  d.limit.time = time;
  d.ensemble = ensemble;
  return d;
}

json RunConfig::to_json() const {
  json j;
  j["benchmark"] = benchmark;
  j["seed"] = seed;
  j["options"] = {{"burgers_viscosity", options.burgers_viscosity},
                  {"cascade_input", options.cascade_input},
                  {"burgers_nodes", options.burgers_nodes},
                  {"rk4_step", options.rk4_step}};
  j["network"] = {{"hidden_layers", hidden_layers}, {"width", width}};
  j["collocation"] = {{"points", collocation_points}, {"seed", collocation_seed}};
  j["init_seed"] = init_seed;
  j["lf"] = phase_json(lf);
  j["transfer"] = phase_json(transfer);
  j["transfer"]["tunable_layers"] = tunable_layers;
  j["transfer"]["lbfgs_tunable_layers"] = lbfgs_tunable_layers ? json(*lbfgs_tunable_layers) : json(nullptr);
  j["hf_baseline"] = phase_json(hf_baseline);
  j["hf_baseline"]["seed"] = hf_init_seed;
  j["data"] = {{"path", data_path ? json(*data_path) : json(nullptr)},
               {"samples", data_samples},
               {"x", data_x},
               {"t", data_t},
               {"fixed_samples", data_fixed_samples ? json(*data_fixed_samples) : json(nullptr)},
               {"seed", data_seed}};
  j["checkpoint"] = checkpoint ? json(*checkpoint) : json(nullptr);
  j["reliability"] = {{"samples", mcs_samples},
                      {"seed", mcs_seed},
                      {"threshold", threshold},
                      {"time", time},
                      {"thresholds", thresholds}};
  j["ensemble"] = ensemble;
  j["output"] = output_dir;
  return j;
}

}  // namespace mfpinn::cli
