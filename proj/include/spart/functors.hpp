#pragma once

#include <optional>
#include <vector>

#include "spart/partition.hpp"

namespace spart {

// Relabels levels: white points through sigma, black points through tau.
SpatialPartition perm_apply(const Permutation& sigma, const Permutation& tau, const SpatialPartition& p);

// Flattening from m*d levels to m levels, with d = |z|.
struct FlatSignature {
  int m = 1;
  ColorWord z;

  FlatSignature(int m_, ColorWord z_);
  int d() const noexcept { return static_cast<int>(z.size()); }
  int source_levels() const noexcept { return m * d(); }
};

// Image of a point of the (|x|+|y|) x (m*d) grid in the flattened grid.
Point varphi(const FlatSignature& sig, const ColorWord& x, const ColorWord& y, Point pt);

ColorWord flat_color(const FlatSignature& sig, const ColorWord& w);
SpatialPartition flat_apply(const FlatSignature& sig, const SpatialPartition& p);

// All ways to write w as a concatenation of z and conj(z) blocks, each given
// as the source word. Leftmost-greedy (z before conj(z)) comes first.
std::vector<ColorWord> factor_word(const FlatSignature& sig, const ColorWord& w);

// The unique preimage under the leftmost-greedy color factorization, or
// nothing when a row does not factor.
std::optional<SpatialPartition> flat_preimage(const FlatSignature& sig, const SpatialPartition& q);

// Every preimage, one per pair of row factorizations.
std::vector<SpatialPartition> flat_preimages_all(const FlatSignature& sig, const SpatialPartition& q);

}  // namespace spart
