#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "spart/partition.hpp"
#include "spart/tensor.hpp"

namespace spart::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline ColorWord random_word(Rng& rng, int length) {
  ColorWord w;
  for (int k = 0; k < length; ++k) w.push_back(uniform_int(rng, 0, 1) ? Color::black : Color::white);
  return w;
}

inline Grading random_grading(Rng& rng, int m, int max_dim) {
  std::vector<int> dims;
  for (int l = 0; l < m; ++l) dims.push_back(uniform_int(rng, 1, max_dim));
  return Grading(dims);
}

inline Permutation random_permutation(Rng& rng, int m) {
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) images[static_cast<std::size_t>(k)] = k + 1;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

// Random partition whose blocks only join levels of equal dimension.
inline SpatialPartition random_graded_partition(Rng& rng, int m, const ColorWord& up, const ColorWord& low,
                                                const Grading& n) {
  const int points = static_cast<int>(up.size() + low.size()) * m;
  std::vector<int> labels(static_cast<std::size_t>(points));
  std::vector<int> block_dim;
  for (int idx = 0; idx < points; ++idx) {
    const int dim = n.at(idx % m + 1);
    std::vector<int> options;
    for (int b = 0; b < static_cast<int>(block_dim.size()); ++b)
      if (block_dim[static_cast<std::size_t>(b)] == dim) options.push_back(b);
    if (options.empty() || uniform_int(rng, 0, 2) == 0) {
      labels[static_cast<std::size_t>(idx)] = static_cast<int>(block_dim.size());
      block_dim.push_back(dim);
    } else {
      labels[static_cast<std::size_t>(idx)] = options[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(options.size()) - 1))];
    }
  }
  return SpatialPartition::from_labels(m, up, low, labels);
}

inline SpatialPartition random_partition(Rng& rng, int m, const ColorWord& up, const ColorWord& low) {
  return random_graded_partition(rng, m, up, low, Grading::uniform(m, 1));
}

// Dense T_p computed by scanning every labelling of the grid.
inline std::map<std::pair<std::uint64_t, std::uint64_t>, int> dense_realization(const SpatialPartition& p,
                                                                                 const Grading& n) {
  const int m = p.levels();
  const int points = p.point_count();
  std::vector<int> value(static_cast<std::size_t>(points), 1);
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> out;
  auto dim = [&](int idx) { return n.at(idx % m + 1); };
  while (true) {
    bool constant = true;
    for (int a = 0; a < points && constant; ++a)
      for (int b = a + 1; b < points && constant; ++b)
        if (p.label_at(a) == p.label_at(b) && value[static_cast<std::size_t>(a)] != value[static_cast<std::size_t>(b)])
          constant = false;
    if (constant) {
      std::uint64_t row = 0, col = 0;
      for (int idx = 0; idx < points; ++idx) {
        const bool upper = p.is_upper_column(idx / m + 1);
        std::uint64_t& acc = upper ? col : row;
        acc = acc * static_cast<std::uint64_t>(dim(idx)) + static_cast<std::uint64_t>(value[static_cast<std::size_t>(idx)] - 1);
      }
      out[{row, col}] = 1;
    }
    int k = points - 1;
    while (k >= 0 && ++value[static_cast<std::size_t>(k)] > dim(k)) value[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
  }
  return out;
}

inline std::map<std::pair<std::uint64_t, std::uint64_t>, int> as_map(const IntegerTensor& t) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> out;
  for (const auto& [key, v] : t.entries()) out[key] = v.convert_to<int>();
  return out;
}

}  // namespace spart::testing
