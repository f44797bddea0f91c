#include "mfpinn/network/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mfpinn/errors.hpp"

namespace mfpinn::network {

using nlohmann::json;

std::string checkpoint_to_json(const ParamSet& params) {
  const Architecture& arch = params.architecture();
  json j;
  j["format"] = "mfpinn-checkpoint";
  j["version"] = kCheckpointVersion;
  std::vector<std::string> acts;
  for (Activation a : arch.activations()) acts.push_back(to_string(a));
  j["architecture"] = {{"widths", arch.widths()},
                       {"activations", acts},
                       {"input_center", arch.input_map().center},
                       {"input_scale", arch.input_map().scale}};
  json layout = json::array();
  for (const LayerSlice& s : params.layout()) {
    layout.push_back({{"offset", s.offset}, {"rows", s.rows}, {"cols", s.cols}});
  }
  j["layout"] = layout;
  j["freeze_mask"] = params.freeze_mask();
  j["values"] = std::vector<double>(params.values().begin(), params.values().end());
  return j.dump();
}

ParamSet checkpoint_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("checkpoint: malformed JSON: ") + e.what());
  }
  if (j.value("format", "") != "mfpinn-checkpoint") throw DomainError("checkpoint: unrecognised format tag");
  if (j.value("version", 0) != kCheckpointVersion) throw DomainError("checkpoint: unsupported version");
  try {
    const json& a = j.at("architecture");
    std::vector<Activation> acts;
    for (const auto& name : a.at("activations")) acts.push_back(activation_from_string(name.get<std::string>()));
    Architecture arch(a.at("widths").get<std::vector<std::size_t>>(), std::move(acts));
    arch.with_input_map(InputMap{a.at("input_center").get<std::vector<double>>(),
                                 a.at("input_scale").get<std::vector<double>>()});
    ParamSet p(arch);
    const json& layout = j.at("layout");
    if (layout.size() != p.layer_count()) throw DomainError("checkpoint: layout table does not match architecture");
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const LayerSlice& s = p.layer(i);
      if (layout[i].at("offset").get<std::size_t>() != s.offset || layout[i].at("rows").get<std::size_t>() != s.rows ||
          layout[i].at("cols").get<std::size_t>() != s.cols) {
        throw DomainError("checkpoint: layout table does not match architecture");
      }
    }
    const auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != p.size()) throw DomainError("checkpoint: parameter count mismatch");
    std::copy(values.begin(), values.end(), p.values().begin());
    p.set_freeze_mask(j.at("freeze_mask").get<std::vector<bool>>());
    return p;
  } catch (const json::exception& e) {
    throw DomainError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const ParamSet& params, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(params) << '\n';
}

ParamSet load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read checkpoint " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace mfpinn::network
