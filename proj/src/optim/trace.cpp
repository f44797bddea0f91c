#include "mfpinn/optim/trace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "mfpinn/errors.hpp"

namespace mfpinn::optim {

void TrainingLog::append(const TrainingLog& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

double TrainingLog::last_loss(const std::string& phase) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->phase == phase) return it->loss;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void TrainingLog::write_csv(const std::filesystem::path& path, bool append) const {
  const bool fresh = !append || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw DomainError("cannot write training log " + path.string());
  if (fresh) out << "phase,iteration,loss,grad_norm,step\n";
  out << std::setprecision(17);
  for (const TraceEntry& e : entries_) {
    out << e.phase << ',' << e.iteration << ',' << e.loss << ',' << e.grad_norm << ',' << e.step << '\n';
  }
}

}  // namespace mfpinn::optim
