#pragma once

#include <filesystem>
#include <string>

#include "mfpinn/network/param_set.hpp"

namespace mfpinn::network {

inline constexpr int kCheckpointVersion = 1;

/// JSON checkpoint: architecture (with input map), layout table, freeze mask
/// and parameter values. Parameter values round-trip bit-exactly.
std::string checkpoint_to_json(const ParamSet& params);
ParamSet checkpoint_from_json(const std::string& text);

void save_checkpoint(const ParamSet& params, const std::filesystem::path& path);
ParamSet load_checkpoint(const std::filesystem::path& path);

}  // namespace mfpinn::network
