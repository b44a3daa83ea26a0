#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spart/functors.hpp"
#include "spart/integer.hpp"
#include "spart/partition.hpp"

namespace spart {

// One tensor factor: a colored letter carrying m graded levels.
struct Axis {
  Color color = Color::white;
  Grading n;

  long long size() const { return n.product(); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

std::vector<Axis> axes_for(const ColorWord& w, const Grading& n);

// Sparse exact matrix from the input word's space (columns) to the output
// word's space (rows). Flat indices are mixed radix: first axis most
// significant, and within an axis level 1 most significant.
class IntegerTensor {
 public:
  using Index = std::uint64_t;
  using Key = std::pair<Index, Index>;

  IntegerTensor() = default;
  IntegerTensor(std::vector<Axis> rows, std::vector<Axis> cols);

  static IntegerTensor identity(const std::vector<Axis>& axes);

  const std::vector<Axis>& row_axes() const noexcept { return rows_; }
  const std::vector<Axis>& col_axes() const noexcept { return cols_; }
  Index row_size() const noexcept { return row_size_; }
  Index col_size() const noexcept { return col_size_; }

  Integer at(Index row, Index col) const;
  void set(Index row, Index col, const Integer& value);
  void add(Index row, Index col, const Integer& value);
  const std::map<Key, Integer>& entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  // Per-axis, per-level 1-based labels of a flat index.
  std::vector<int> row_labels(Index row) const;
  std::vector<int> col_labels(Index col) const;

  IntegerTensor operator*(const IntegerTensor& other) const;
  IntegerTensor scaled(const Integer& factor) const;
  IntegerTensor transpose() const;
  // Kronecker product, this factor most significant.
  IntegerTensor kron(const IntegerTensor& other) const;
  Integer total() const;

  nlohmann::json to_json() const;

  friend bool operator==(const IntegerTensor& a, const IntegerTensor& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<Axis> rows_;
  std::vector<Axis> cols_;
  Index row_size_ = 1;
  Index col_size_ = 1;
  std::map<Key, Integer> entries_;
};

// Labels are indexed by point_index() and hold 1-based values.
int delta_eval(const SpatialPartition& p, const std::vector<int>& labels, const Grading& n);

// Upper points carry the input index, lower points the output index, so
// T_p maps the space of p.up() to the space of p.low().
IntegerTensor realize(const SpatialPartition& p, const Grading& n);

// Permutation of levels on one white axis: e_b -> e_a with a_k = b_{sigma^-1(k)}.
IntegerTensor F_sigma(const Permutation& sigma, const Grading& n);

struct OpsLawReport {
  bool tensor_law = false;
  bool involution_law = false;
  bool composition_checked = false;
  bool composition_law = false;
  std::size_t removed_components = 0;
  Integer scalar = 1;        // product of removed component dimensions
  Integer uniform_power = 1;  // N^alpha, reported alongside
};

// Checks the tensor, involution and (when q.low == p.up) composition laws.
OpsLawReport verify_ops_laws(const SpatialPartition& p, const SpatialPartition& q, const Grading& n);

struct GramResult {
  std::vector<std::vector<Integer>> matrix;
  std::size_t rank = 0;
};

// Number of labellings constant on the blocks of both partitions.
Integer gram_entry(const SpatialPartition& a, const SpatialPartition& b, const Grading& n);
GramResult gram_rank(const std::vector<SpatialPartition>& ps, const Grading& n);
// Same matrix computed by summing entrywise products of realized tensors.
std::vector<std::vector<Integer>> gram_by_contraction(const std::vector<SpatialPartition>& ps, const Grading& n);

std::size_t matrix_rank(std::vector<std::vector<Integer>> rows);
// Rank of the tensors viewed as vectors of their entries.
std::size_t span_rank(const std::vector<IntegerTensor>& tensors);

std::string gram_csv(const std::vector<std::vector<Integer>>& matrix);

// Per-letter tensor product of F_sigma (white) and F_tau (black).
IntegerTensor perm_conjugator(const ColorWord& w, const Permutation& sigma, const Permutation& tau, const Grading& n);
bool verify_perm_conjugation(const Permutation& sigma, const Permutation& tau, const SpatialPartition& p,
                             const Grading& n);

// Each letter of w on m*d levels is regrouped into d slices of m levels.
// S_w maps the regrouped space onto the source space (an identity reindexing);
// Q_w maps it onto the space of the flattened word, keeping slice order for
// white letters and reversing it for black letters.
IntegerTensor flat_regrouping(const FlatSignature& sig, const ColorWord& w, const Grading& n);
IntegerTensor flat_conjugator(const FlatSignature& sig, const ColorWord& w, const Grading& n);
bool verify_flat_conjugation(const FlatSignature& sig, const SpatialPartition& p, const Grading& n);

}  // namespace spart
