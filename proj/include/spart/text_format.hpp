#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spart/partition.hpp"

namespace spart {

// P{m=<int>; up="<word>"; low="<word>"; blocks=[[c.l,...],...]} in canonical form.
std::string to_text(const SpatialPartition& p);

// Parses one partition. Throws SyntaxError (with line/column) on malformed
// text and the make_partition errors on invalid blocks.
SpatialPartition parse_partition(std::string_view text);

// Parses a whitespace separated sequence of partitions; '#' starts a comment.
std::vector<SpatialPartition> parse_partitions(std::string_view text);

nlohmann::json to_json(const SpatialPartition& p);
SpatialPartition partition_from_json(const nlohmann::json& j);

// Per-level grid drawing with column markers and one letter per block.
std::string render_ascii(const SpatialPartition& p);

}  // namespace spart
