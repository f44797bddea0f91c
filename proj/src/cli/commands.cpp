#include "mfpinn/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mfpinn/benchmarks/dataset.hpp"
#include "mfpinn/benchmarks/surrogate.hpp"
#include "mfpinn/errors.hpp"
#include "mfpinn/network/checkpoint.hpp"
#include "mfpinn/pinn/collocation.hpp"
#include "mfpinn/pinn/training.hpp"
#include "mfpinn/reliability/normal.hpp"
#include "mfpinn/reliability/sampling.hpp"

namespace mfpinn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kEnsembleSeedStride = 1000003;

const char* const kDataStem = "hf_data";
const char* const kLfCheckpoint = "checkpoint_lf.json";
const char* const kMfCheckpoint = "checkpoint_mf.json";
const char* const kHfCheckpoint = "checkpoint_hf.json";

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

/// Exclusive marker file in the output directory, removed on destruction.
class OutputLock {
 public:
  explicit OutputLock(const fs::path& dir) : path_(dir / ".lock") {
    fs::create_directories(dir);
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) throw ConfigError("/output", "directory '" + dir.string() + "' is locked by another run (" +
                                             path_.string() + ")");
    std::fclose(f);
  }
  ~OutputLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  fs::path path_;
};

struct Context {
  const RunConfig& config;
  benchmarks::BenchmarkDef def;
  fs::path dir;
  std::ostream& log;
  optim::TrainingLog trace;
  std::vector<std::string> artifacts;

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
    artifacts.push_back(name);
  }
  void save(const std::string& name, const network::ParamSet& params) {
    network::save_checkpoint(params, dir / name);
    artifacts.push_back(name);
  }
  void flush_trace() {
    if (trace.empty()) return;
    trace.write_csv(dir / "train_log.csv");
    artifacts.push_back("train_log.csv");
  }
};

network::ParamSet load_checked_checkpoint(const RunConfig& c, const benchmarks::BenchmarkDef& def) {
  if (!c.checkpoint) throw ConfigError("/checkpoint", "this command needs a checkpoint");
  network::ParamSet p = [&] {
    try {
      return network::load_checkpoint(*c.checkpoint);
    } catch (const std::exception& e) {
      throw ConfigError("/checkpoint", e.what());
    }
  }();
  const network::Architecture& a = p.architecture();
  if (a.input_width() != def.problem.input_width() || a.widths().back() != def.problem.outputs) {
    throw ConfigError("/checkpoint", "network shape does not fit benchmark '" + def.id + "'");
  }
  return p;
}

pinn::HfDataset obtain_dataset(Context& ctx) {
  if (ctx.config.data_path) {
    try {
      pinn::HfDataset d = pinn::load_dataset(*ctx.config.data_path);
      if (d.xi.cols() != static_cast<Eigen::Index>(ctx.def.problem.stochastic_dims()) ||
          d.outputs() != ctx.def.problem.outputs) {
        throw ConfigError("/data/path", "dataset shape does not fit benchmark '" + ctx.def.id + "'");
      }
      return d;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("/data/path", e.what());
    }
  }
  ctx.log << "generating high-fidelity data (" << ctx.def.hf_grid.samples << " samples)\n";
  pinn::HfDataset d = benchmarks::build_hf_dataset(ctx.def, ctx.config.data_seed);
  pinn::save_dataset(d, ctx.dir / kDataStem);
  ctx.artifacts.push_back(std::string(kDataStem) + ".csv");
  ctx.artifacts.push_back(std::string(kDataStem) + ".json");
  return d;
}

pinn::TrainResult train_lf(Context& ctx, std::uint64_t colloc_seed, std::uint64_t init_seed) {
  ctx.log << "training low-fidelity network on " << ctx.def.collocation_points << " collocation points\n";
  const pinn::CollocationSet colloc =
      pinn::sample_collocation(ctx.def.problem, ctx.def.collocation_points, colloc_seed);
  pinn::TrainResult r = pinn::train_low_fidelity(ctx.def.problem, ctx.def.architecture(), colloc, ctx.def.lf_budget,
                                                 init_seed);
  ctx.log << "  final physics loss " << format_number(r.final_loss) << "\n";
  ctx.trace.append(r.log);
  return r;
}

pinn::TrainResult run_transfer(Context& ctx, const network::ParamSet& theta_l, const pinn::HfDataset& data) {
  ctx.log << "transfer update on " << data.rows() << " observations, " << ctx.def.transfer.tunable_layers
          << " tunable layer(s)\n";
  pinn::TrainResult r = pinn::transfer_update(theta_l, ctx.def.problem, data, ctx.def.transfer);
  ctx.log << "  final data loss " << format_number(r.final_loss) << "\n";
  ctx.trace.append(r.log);
  return r;
}

pinn::TrainResult run_data_only(Context& ctx, const pinn::HfDataset& data, std::uint64_t seed) {
  ctx.log << "training data-only baseline\n";
  pinn::TrainResult r =
      pinn::train_data_only(ctx.def.problem, ctx.def.architecture(), data, ctx.def.hf_budget, seed);
  ctx.trace.append(r.log);
  return r;
}

Eigen::MatrixXd mcs_samples(const Context& ctx) {
  return reliability::sample_matrix(ctx.def.problem.stochastic, ctx.def.mcs_samples, ctx.config.mcs_seed);
}

std::vector<double> oracle_responses(Context& ctx, const Eigen::MatrixXd& samples) {
  ctx.log << "evaluating the high-fidelity reference on " << samples.rows() << " samples\n";
  return ctx.def.oracle(samples, ctx.def.limit.time);
}

MethodRow oracle_row(Context& ctx, const std::vector<double>& responses) {
  const std::size_t n = responses.size();
  return {"MCS", reliability::estimate_from_responses(responses, ctx.def.limit), n, n};
}

MethodRow surrogate_row(const Context& ctx, const std::string& name, const network::ParamSet& params,
                        const Eigen::MatrixXd& samples, std::size_t hf_samples, std::size_t hf_rows) {
  const std::vector<double> g = benchmarks::surrogate_responses(ctx.def, params, samples, ctx.def.limit.time);
  return {name, reliability::estimate_from_responses(g, ctx.def.limit), hf_samples, hf_rows};
}

void report(Context& ctx, const ComparisonReport& rep) {
  ctx.write_text("results.csv", rep.to_csv());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const MethodRow& r = rep.rows[i];
    ctx.log << "  " << std::left << std::setw(10) << r.method << " P_f " << format_number(r.result.pf) << "  beta "
            << format_number(r.result.beta);
    if (i > 0) ctx.log << "  eps% " << format_number(rep.relative_error_percent(i));
    ctx.log << "\n";
  }
}

void cmd_gen_data(Context& ctx) {
  const pinn::HfDataset d = benchmarks::build_hf_dataset(ctx.def, ctx.config.data_seed);
  pinn::save_dataset(d, ctx.dir / kDataStem);
  ctx.artifacts.push_back(std::string(kDataStem) + ".csv");
  ctx.artifacts.push_back(std::string(kDataStem) + ".json");
  ctx.log << "wrote " << d.rows() << " rows to " << (ctx.dir / kDataStem).string() << ".csv\n";
}

void cmd_train_lf(Context& ctx) {
  const pinn::TrainResult lf = train_lf(ctx, ctx.config.collocation_seed, ctx.config.init_seed);
  ctx.save(kLfCheckpoint, lf.params);
}

void cmd_transfer(Context& ctx) {
  const network::ParamSet theta_l = load_checked_checkpoint(ctx.config, ctx.def);
  const pinn::HfDataset data = obtain_dataset(ctx);
  const pinn::TrainResult mf = run_transfer(ctx, theta_l, data);
  ctx.save(kMfCheckpoint, mf.params);
}

void cmd_reliability(Context& ctx) {
  const network::ParamSet params = load_checked_checkpoint(ctx.config, ctx.def);
  const Eigen::MatrixXd samples = mcs_samples(ctx);
  ComparisonReport rep;
  rep.rows.push_back(oracle_row(ctx, oracle_responses(ctx, samples)));
  rep.rows.push_back(surrogate_row(ctx, "surrogate", params, samples, 0, 0));
  report(ctx, rep);
}

void cmd_compare(Context& ctx) {
  const pinn::HfDataset data = obtain_dataset(ctx);
  const pinn::TrainResult lf = train_lf(ctx, ctx.config.collocation_seed, ctx.config.init_seed);
  ctx.save(kLfCheckpoint, lf.params);
  const pinn::TrainResult mf = run_transfer(ctx, lf.params, data);
  ctx.save(kMfCheckpoint, mf.params);
  const pinn::TrainResult hf = run_data_only(ctx, data, ctx.config.hf_init_seed);
  ctx.save(kHfCheckpoint, hf.params);

  const Eigen::MatrixXd samples = mcs_samples(ctx);
  ComparisonReport rep;
  rep.rows.push_back(oracle_row(ctx, oracle_responses(ctx, samples)));
  rep.rows.push_back(surrogate_row(ctx, "LF-PIDNN", lf.params, samples, 0, 0));
  rep.rows.push_back(surrogate_row(ctx, "HF-DNN", hf.params, samples, data.samples(), data.rows()));
  rep.rows.push_back(surrogate_row(ctx, "MF-PIDNN", mf.params, samples, data.samples(), data.rows()));
  report(ctx, rep);
}

void cmd_pf_curve(Context& ctx) {
  const std::vector<double>& thresholds = ctx.config.thresholds;
  const Eigen::MatrixXd samples = mcs_samples(ctx);
  std::vector<PfCurveRow> rows;
  auto add = [&](const std::string& method, const std::vector<double>& g) {
    const auto curve = reliability::pf_curve_from_responses(g, ctx.def.limit, thresholds);
    for (std::size_t i = 0; i < thresholds.size(); ++i) rows.push_back({method, thresholds[i], curve[i]});
  };
  add("MCS", oracle_responses(ctx, samples));
  if (ctx.config.checkpoint) {
    const network::ParamSet params = load_checked_checkpoint(ctx.config, ctx.def);
    add("surrogate", benchmarks::surrogate_responses(ctx.def, params, samples, ctx.def.limit.time));
  }
  ctx.write_text("pf_curve.csv", pf_curve_csv(rows));
}

void cmd_ensemble(Context& ctx) {
  const pinn::HfDataset data = obtain_dataset(ctx);
  const Eigen::MatrixXd samples = mcs_samples(ctx);
  const std::size_t k = ctx.def.ensemble;
  std::ostringstream members;
  members << "member,collocation_seed,init_seed,P_f,beta\n";
  double pf_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t cs = ctx.config.collocation_seed + i * kEnsembleSeedStride;
    const std::uint64_t is = ctx.config.init_seed + i * kEnsembleSeedStride;
    ctx.log << "ensemble member " << i + 1 << "/" << k << "\n";
    const pinn::TrainResult lf = train_lf(ctx, cs, is);
    const pinn::TrainResult mf = run_transfer(ctx, lf.params, data);
    const MethodRow row = surrogate_row(ctx, "MF-PIDNN", mf.params, samples, data.samples(), data.rows());
    pf_sum += row.result.pf;
    members << i << "," << cs << "," << is << "," << format_number(row.result.pf) << ","
            << format_number(row.result.beta) << "\n";
  }
  ctx.write_text("ensemble.csv", members.str());

  ComparisonReport rep;
  rep.rows.push_back(oracle_row(ctx, oracle_responses(ctx, samples)));
  reliability::ReliabilityResult mean;
  mean.n = samples.rows();
  mean.pf = pf_sum / static_cast<double>(k);
  mean.beta = reliability::reliability_index(mean.pf);
  mean.failures = static_cast<std::size_t>(std::llround(mean.pf * static_cast<double>(mean.n)));
  mean.std_error = std::sqrt(mean.pf * (1.0 - mean.pf) / static_cast<double>(mean.n));
  mean.pf_upper95 = mean.pf;
  rep.rows.push_back({"MF-PIDNN-mean", mean, data.samples(), data.rows()});
  report(ctx, rep);
}

/// Requirements that depend on the command rather than on the config alone.
void validate_for(Command c, const RunConfig& cfg) {
  switch (c) {
    case Command::kTransfer:
      if (!cfg.checkpoint) throw ConfigError("/checkpoint", "transfer needs the low-fidelity checkpoint");
      if (!cfg.data_path) throw ConfigError("/data/path", "transfer needs a high-fidelity dataset manifest");
      break;
    case Command::kReliability:
      if (!cfg.checkpoint) throw ConfigError("/checkpoint", "reliability needs a checkpoint");
      break;
    case Command::kPfCurve:
      if (cfg.thresholds.empty()) throw ConfigError("/reliability/thresholds", "pf-curve needs thresholds");
      break;
    default:
      break;
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"gen-data", "train-lf", "transfer", "reliability",
                                                 "compare",  "pf-curve", "ensemble"};
  return names;
}

Command parse_command(const std::string& name) {
  const auto& names = command_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Command>(i);
  }
  throw ConfigError("/command", "unknown command '" + name + "'");
}

std::string to_string(Command c) { return command_names().at(static_cast<std::size_t>(c)); }

double ComparisonReport::relative_error_percent(std::size_t i) const {
  if (rows.empty() || i == 0) return std::nan("");
  const double be = rows.front().result.beta;
  const double b = rows.at(i).result.beta;
  if (std::isinf(be) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  return std::abs(be - b) / std::abs(be) * 100.0;
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream s;
  s << "method,P_f,beta,N_h,N_r,eps_percent\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MethodRow& r = rows[i];
    s << r.method << "," << format_number(r.result.pf) << "," << format_number(r.result.beta) << "," << r.hf_samples
      << "," << r.hf_rows << ",";
    if (i == 0) {
      s << "-";
    } else {
      const double e = relative_error_percent(i);
      s << (std::isinf(e) ? "inf" : format_number(e));
    }
    s << "\n";
  }
  return s.str();
}

std::string pf_curve_csv(const std::vector<PfCurveRow>& rows) {
  std::ostringstream s;
  s << "method,threshold,P_f,beta,std_error\n";
  for (const PfCurveRow& r : rows) {
    s << r.method << "," << format_number(r.threshold) << "," << format_number(r.result.pf) << ","
      << format_number(r.result.beta) << "," << format_number(r.result.std_error) << "\n";
  }
  return s.str();
}

void run(Command command, const RunConfig& config, std::ostream& log) {
  validate_for(command, config);
  Context ctx{config, config.benchmark_def(), fs::path(config.output_dir), log, {}, {}};
  switch (command) {
    case Command::kGenData: cmd_gen_data(ctx); break;
    case Command::kTrainLf: cmd_train_lf(ctx); break;
    case Command::kTransfer: cmd_transfer(ctx); break;
    case Command::kReliability: cmd_reliability(ctx); break;
    case Command::kCompare: cmd_compare(ctx); break;
    case Command::kPfCurve: cmd_pf_curve(ctx); break;
    case Command::kEnsemble: cmd_ensemble(ctx); break;
  }
  ctx.flush_trace();

  json manifest;
  manifest["tool"] = "mfpinn";
  manifest["version"] = MFPINN_VERSION;
  manifest["command"] = to_string(command);
  manifest["config"] = config.to_json();
  manifest["artifacts"] = ctx.artifacts;
  std::ofstream f(ctx.dir / "manifest.json", std::ios::binary);
  f << manifest.dump(2) << "\n";
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    const Command command = parse_command(inv.command);
    std::optional<json> doc;
    if (inv.config_path) doc = load_json_file(*inv.config_path);
    const RunConfig config = resolve_config(doc, inv.preset, inv.seed, inv.out);
    validate_for(command, config);
    const OutputLock lock(config.output_dir);
    run(command, config, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: invalid setting: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const BracketError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace mfpinn::cli
