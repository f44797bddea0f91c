#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace mfpinn::optim {

struct TraceEntry {
  std::string phase;
  std::size_t iteration = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

/// Per-iteration optimizer trace, written as CSV
/// (phase,iteration,loss,grad_norm,step).
class TrainingLog {
 public:
  void add(TraceEntry e) { entries_.push_back(std::move(e)); }
  void append(const TrainingLog& other);
  const std::vector<TraceEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  /// Last recorded loss of a phase, NaN if the phase has no entries.
  double last_loss(const std::string& phase) const;

  /// Writes (or appends to) a CSV file; the header is written only when the
  /// file is new or empty.
  void write_csv(const std::filesystem::path& path, bool append = false) const;

 private:
  std::vector<TraceEntry> entries_;
};

}  // namespace mfpinn::optim
