#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spart/color.hpp"
#include "spart/integer.hpp"
#include "spart/permutation.hpp"

namespace spart {

// A grid point. Columns run 1..|up|+|low| (upper row first), levels 1..m.
struct Point {
  int column = 1;
  int level = 1;

  friend auto operator<=>(const Point&, const Point&) = default;
};

// A colored spatial partition on m levels.
//
// Stored as one block label per grid point, with labels numbered in order of
// first appearance under the (column, level) order. That labelling is the
// canonical form, so structural equality is equality of partitions.
class SpatialPartition {
 public:
  SpatialPartition() = default;

  // Builds from arbitrary integer labels (equal label = same block) and
  // canonicalizes. Labels are indexed by point_index().
  static SpatialPartition from_labels(int m, ColorWord up, ColorWord low, std::vector<int> labels);

  int levels() const noexcept { return m_; }
  const ColorWord& up() const noexcept { return up_; }
  const ColorWord& low() const noexcept { return low_; }
  int upper_columns() const noexcept { return static_cast<int>(up_.size()); }
  int lower_columns() const noexcept { return static_cast<int>(low_.size()); }
  int columns() const noexcept { return upper_columns() + lower_columns(); }
  int point_count() const noexcept { return columns() * m_; }
  int block_count() const noexcept { return block_count_; }

  bool is_upper_column(int column) const noexcept { return column <= upper_columns(); }
  Color column_color(int column) const;

  int point_index(Point p) const noexcept { return (p.column - 1) * m_ + (p.level - 1); }
  Point point_at(int index) const noexcept { return {index / m_ + 1, index % m_ + 1}; }

  int label(Point p) const { return labels_[static_cast<std::size_t>(point_index(p))]; }
  int label_at(int index) const { return labels_[static_cast<std::size_t>(index)]; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  // Blocks in canonical order: points sorted, blocks ordered by least point.
  std::vector<std::vector<Point>> blocks() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const SpatialPartition&, const SpatialPartition&) = default;
  friend std::strong_ordering operator<=>(const SpatialPartition& a, const SpatialPartition& b);

 private:
  int m_ = 1;
  ColorWord up_;
  ColorWord low_;
  std::vector<int> labels_;
  int block_count_ = 0;
};

// Relabels so that labels appear as 0, 1, 2, ... in index order. Returns the
// number of distinct labels.
int canonicalize_labels(std::vector<int>& labels);

// Validates the block list and returns the canonical partition.
SpatialPartition make_partition(int m, ColorWord up, ColorWord low,
                                const std::vector<std::vector<Point>>& blocks);

SpatialPartition tensor(const SpatialPartition& p, const SpatialPartition& q);
SpatialPartition involution(const SpatialPartition& p);

struct RemovedComponent {
  std::vector<int> levels;  // distinct levels touched, ascending
  int size = 0;             // number of middle points
};

// Connected middle components that vanish in a composition.
struct LoopRecord {
  std::vector<RemovedComponent> components;

  bool empty() const noexcept { return components.empty(); }
  std::size_t size() const noexcept { return components.size(); }
  // Common dimension of each component; throws GradingError when a component
  // mixes levels of different dimension.
  std::vector<int> dimensions(const Grading& n) const;
  // Product of component dimensions, the factor produced by contraction.
  Integer scalar(const Grading& n) const;
  // N^alpha with N = n_1 ... n_m and alpha = number of components.
  Integer uniform_power(const Grading& n) const;
};

struct Composition {
  SpatialPartition partition;
  LoopRecord loops;
};

// pq: q placed on top of p. Requires q.low == p.up.
Composition compose(const SpatialPartition& p, const SpatialPartition& q);

SpatialPartition identity(const ColorWord& x, int m);
SpatialPartition empty_partition(int m);
SpatialPartition amplify(const SpatialPartition& p, int k);

// Empty upper row, lower word xy, blocks {(1,i),(2,sigma(i))}.
SpatialPartition sigma_lower(const Permutation& sigma, Color x, Color y);
// Upper word x, lower word y, blocks {(1,i),(2,sigma(i))}.
SpatialPartition sigma_through(const Permutation& sigma, Color x, Color y);

int through_block_count(const SpatialPartition& p);
std::optional<SpatialPartition> invert(const SpatialPartition& p);

bool is_pair(const SpatialPartition& p);
bool is_graded(const SpatialPartition& p, const Grading& n);

// Which boundary column moves: the first/last column of the named row.
enum class Side { upper_left, upper_right, lower_left, lower_right };

// Moves one boundary column to the other row, conjugating its color.
// upper_left lands at lower_left and vice versa; likewise on the right.
SpatialPartition rotate(const SpatialPartition& p, Side side);

Side parse_side(const std::string& text);

}  // namespace spart

template <>
struct std::hash<spart::SpatialPartition> {
  std::size_t operator()(const spart::SpatialPartition& p) const noexcept { return p.hash(); }
};
