#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spart/partition.hpp"

namespace spart {

// One-level, all-white building blocks of the orthogonal-type categories.
//   pair          empty upper row, both lower points joined
//   cross         the transposition
//   four          one block on two upper and two lower points
//   singles       empty upper row, two singleton lower points
//   tripleCross   upper k joined to lower 4-k
//   crossSingles  upper 1 joined to lower 2, the rest singletons
std::vector<std::string> building_block_names();
SpatialPartition building_block(const std::string& name);

struct Preset {
  std::string name;
  std::vector<std::string> blocks;
  std::vector<SpatialPartition> generators;
};

std::vector<std::string> preset_names();
// Throws spart::Error for an unknown name.
Preset preset(const std::string& name);

nlohmann::json to_json(const Preset& p);
Preset preset_from_json(const nlohmann::json& j);

}  // namespace spart
