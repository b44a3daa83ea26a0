#include "spart/presets.hpp"

#include <utility>

#include "spart/errors.hpp"
#include "spart/text_format.hpp"

namespace spart {

namespace {

SpatialPartition white(int up, int low, std::vector<int> labels) {
  return SpatialPartition::from_labels(1, ColorWord::uniform(Color::white, static_cast<std::size_t>(up)),
                                       ColorWord::uniform(Color::white, static_cast<std::size_t>(low)),
                                       std::move(labels));
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& table() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> presets = {
      {"On", {"pair", "cross"}},
      {"OnStar", {"pair", "tripleCross"}},
      {"OnPlus", {"pair"}},
      {"Hn", {"pair", "four", "cross"}},
      {"HnStar", {"pair", "four", "tripleCross"}},
      {"HnPlus", {"pair", "four"}},
      {"SnPrime", {"pair", "singles", "four", "cross"}},
      {"SnPrimePlus", {"pair", "singles", "four"}},
      {"BnPrime", {"pair", "singles", "cross"}},
      {"BnPrimePlus", {"pair", "crossSingles"}},
      {"BnSharpStar", {"pair", "singles", "tripleCross"}},
      {"BnSharpPlus", {"pair", "singles"}},
  };
  return presets;
}

}  // namespace

std::vector<std::string> building_block_names() {
  return {"pair", "cross", "four", "singles", "tripleCross", "crossSingles"};
}

SpatialPartition building_block(const std::string& name) {
  if (name == "pair") return white(0, 2, {0, 0});
  if (name == "cross") return white(2, 2, {0, 1, 1, 0});
  if (name == "four") return white(2, 2, {0, 0, 0, 0});
  if (name == "singles") return white(0, 2, {0, 1});
  if (name == "tripleCross") return white(3, 3, {0, 1, 2, 2, 1, 0});
  if (name == "crossSingles") return white(2, 2, {0, 1, 2, 0});
  throw Error("unknown building block: " + name);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, blocks] : table()) out.push_back(name);
  return out;
}

Preset preset(const std::string& name) {
  for (const auto& [key, blocks] : table()) {
    if (key != name) continue;
    Preset p{key, blocks, {}};
    for (const auto& b : blocks) p.generators.push_back(building_block(b));
    return p;
  }
  throw Error("unknown preset: " + name);
}

nlohmann::json to_json(const Preset& p) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : p.generators) gens.push_back(to_text(g));
  return {{"name", p.name}, {"m", 1}, {"blocks", p.blocks}, {"generators", gens}};
}

Preset preset_from_json(const nlohmann::json& j) {
  Preset p;
  p.name = j.at("name").get<std::string>();
  if (j.contains("blocks")) p.blocks = j.at("blocks").get<std::vector<std::string>>();
  for (const auto& g : j.at("generators")) p.generators.push_back(parse_partition(g.get<std::string>()));
  return p;
}

}  // namespace spart
