#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfpinn/cli/config.hpp"
#include "mfpinn/reliability/mcs.hpp"

namespace mfpinn::cli {

enum class Command { kGenData, kTrainLf, kTransfer, kReliability, kCompare, kPfCurve, kEnsemble };

const std::vector<std::string>& command_names();
/// ConfigError (path "/command") for an unknown name.
Command parse_command(const std::string& name);
std::string to_string(Command c);

/// One method row: P_f, beta, high-fidelity samples N_h and rows N_r.
struct MethodRow {
  std::string method;
  reliability::ReliabilityResult result;
  std::size_t hf_samples = 0;
  std::size_t hf_rows = 0;
};

/// Rows in method order; the first row is the reference for the relative
/// beta error.
struct ComparisonReport {
  std::vector<MethodRow> rows;

  /// |beta_ref - beta| / |beta_ref| * 100 for row i; +inf when either beta
  /// is infinite, NaN for the reference row itself.
  double relative_error_percent(std::size_t i) const;
  /// method,P_f,beta,N_h,N_r,eps_percent. Infinite values print as "inf",
  /// the reference row's error as "-".
  std::string to_csv() const;
};

struct PfCurveRow {
  std::string method;
  double threshold = 0.0;
  reliability::ReliabilityResult result;
};

/// method,threshold,P_f,beta,std_error
std::string pf_curve_csv(const std::vector<PfCurveRow>& rows);

/// Already-parsed command line.
struct Invocation {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Validates, takes the output directory lock, runs the command and writes
/// its artifacts plus manifest.json. Nothing is written when validation
/// fails. Returns an exit code; diagnostics go to `err`, progress to `out`.
int execute(const Invocation& inv, std::ostream& out, std::ostream& err);

/// Runs one command on a resolved config (throws instead of returning exit
/// codes). The output directory must already exist.
void run(Command command, const RunConfig& config, std::ostream& log);

}  // namespace mfpinn::cli
