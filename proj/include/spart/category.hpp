#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spart/partition.hpp"

namespace spart {

enum class Membership { yes, no_within_bound, unknown };

const char* to_string(Membership m) noexcept;

// r in P(1, wb) and s in P(1, bw) solving the conjugate equations.
struct DualityPair {
  SpatialPartition r;
  SpatialPartition s;
};

struct ClosureOptions {
  int max_rounds = 64;
  int threads = 1;
  // Close under rotations derived from the duality pair once one is found.
  bool rotations = true;
};

// A bounded, deduplicated set of partitions on a fixed level count.
class CategorySet {
 public:
  CategorySet(int m, int bound) : m_(m), bound_(bound) {}

  // Rebuilds a stored set without re-running the closure.
  static CategorySet from_stored(int m, int bound, const std::vector<SpatialPartition>& generators,
                                 const std::vector<SpatialPartition>& partitions, bool truncated);

  int levels() const noexcept { return m_; }
  int bound() const noexcept { return bound_; }
  bool truncated() const noexcept { return truncated_; }
  int rounds() const noexcept { return rounds_; }
  std::size_t size() const noexcept { return items_.size(); }

  const std::vector<SpatialPartition>& generators() const noexcept { return generators_; }
  // Insertion order (round by round, deterministic).
  const std::vector<SpatialPartition>& all() const noexcept { return items_; }
  bool stores(const SpatialPartition& p) const { return index_.count(p) != 0; }
  // Hom-set P(x, y) in canonical order.
  std::vector<SpatialPartition> hom(const ColorWord& x, const ColorWord& y) const;
  const std::optional<DualityPair>& duality() const noexcept { return duality_; }

 private:
  friend class ClosureBuilder;

  bool insert(const SpatialPartition& p);
  void scan_duality();

  int m_;
  int bound_;
  bool truncated_ = false;
  int rounds_ = 0;
  std::vector<SpatialPartition> generators_;
  std::vector<SpatialPartition> items_;
  std::unordered_map<SpatialPartition, std::size_t> index_;
  std::map<ColorWord, std::vector<std::size_t>> by_up_;
  std::map<ColorWord, std::vector<std::size_t>> by_low_;
  std::map<int, std::vector<std::size_t>> by_columns_;
  std::optional<DualityPair> duality_;
};

// Round-by-round closure, so callers can stop as soon as a property holds.
class ClosureBuilder {
 public:
  ClosureBuilder(const std::vector<SpatialPartition>& generators, int m, int bound,
                 ClosureOptions options = {});

  // Runs one round. Returns false once a fixed point has been reached.
  bool step();
  bool at_fixed_point() const noexcept { return frontier_begin_ == cat_.items_.size() && !rotate_everything_; }
  const CategorySet& current() const noexcept { return cat_; }
  CategorySet take() { return std::move(cat_); }

 private:
  std::vector<SpatialPartition> candidates_for(std::size_t first, std::size_t last, std::size_t old_end) const;

  CategorySet cat_;
  ClosureOptions options_;
  std::size_t frontier_begin_ = 0;
  bool rotate_everything_ = false;
};

CategorySet closure(const std::vector<SpatialPartition>& generators, int m, int bound, ClosureOptions options = {});

Membership contains(const CategorySet& cat, const SpatialPartition& p);

// Every set partition of the grid, in restricted-growth order.
std::vector<SpatialPartition> enumerate_partitions(int m, const ColorWord& up, const ColorWord& low);
// Every perfect matching of the grid.
std::vector<SpatialPartition> enumerate_pair_partitions(int m, const ColorWord& up, const ColorWord& low);

inline constexpr int kEnumerationPointCap = 12;

bool check_conjugate_pair(const SpatialPartition& r, const SpatialPartition& s);
std::vector<DualityPair> duality_pairs_all(int m);

// The sigma with r == sigma_lower(sigma, white, black), if r has that form.
std::optional<Permutation> duality_permutation(const SpatialPartition& r);

bool is_rigid(const CategorySet& cat);
std::optional<Permutation> extract_duality(const CategorySet& cat);

// Nested duality partitions (r_x in P(1, x conj(x)), s_x in P(1, conj(x) x)).
std::optional<DualityPair> dual_partitions_for_word(const CategorySet& cat, const ColorWord& x);
// Checks the word-level conjugate equations for (r_x, s_x).
bool check_word_conjugate_pair(const ColorWord& x, const DualityPair& pair);

// Rotation of one boundary column computed by composing with the duality
// pair; agrees with rotate() when the pair is the amplified cup pair.
SpatialPartition derived_rotate(const DualityPair& pair, const SpatialPartition& p, Side side);

bool has_even_columns_only(const CategorySet& cat);

nlohmann::json to_json(const CategorySet& cat);
CategorySet category_from_json(const nlohmann::json& j);

}  // namespace spart
