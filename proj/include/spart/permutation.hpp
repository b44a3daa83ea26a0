#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spart {

// Bijection of {1..m} stored in one-line image notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int m);
  // Parses "[2,1,3]" (brackets optional).
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  // (this * other)(k) = this(other(k)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;

  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
};

// All of S_m in lexicographic order of images.
std::vector<Permutation> all_permutations(int m);

// Per-level dimensions n = (n_1, ..., n_m), all at least 1.
class Grading {
 public:
  Grading() = default;
  explicit Grading(std::vector<int> dims);

  static Grading uniform(int m, int n);
  // Parses "2,3,2".
  static Grading parse(std::string_view text);

  int levels() const noexcept { return static_cast<int>(dims_.size()); }
  // 1-based level access.
  int at(int level) const { return dims_[static_cast<std::size_t>(level - 1)]; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  long long product() const;
  bool is_uniform() const noexcept;
  // The grading repeated `times` times (n n ... n).
  Grading repeated(int times) const;

  std::string str() const;

  friend bool operator==(const Grading&, const Grading&) = default;

 private:
  std::vector<int> dims_;
};

// n_{sigma(k)} == n_k for every level k.
bool is_graded(const Permutation& sigma, const Grading& n);

}  // namespace spart
