#include "spart/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "spart/errors.hpp"

namespace spart {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '[' || text[i] == ']' || text[i] == '(' ||
                               text[i] == ')'))
      ++i;
  };
  skip();
  while (i < text.size()) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc())
      throw SyntaxError("expected integer", 1, static_cast<int>(i) + 1);
    i = static_cast<std::size_t>(ptr - text.data());
    out.push_back(value);
    skip();
    if (i < text.size()) {
      if (text[i] != ',') throw SyntaxError("expected ','", 1, static_cast<int>(i) + 1);
      ++i;
      skip();
    }
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
      throw PermutationError("not a permutation: " + str());
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> images(static_cast<std::size_t>(m));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text) { return Permutation(parse_int_list(text)); }

Permutation Permutation::operator*(const Permutation& other) const {
  if (size() != other.size()) throw LevelMismatch("permutations of different degree");
  std::vector<int> images(images_.size());
  for (int k = 1; k <= size(); ++k) images[static_cast<std::size_t>(k - 1)] = (*this)(other(k));
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(images_.size());
  for (int k = 1; k <= size(); ++k) images[static_cast<std::size_t>((*this)(k) - 1)] = k;
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < images_.size(); ++k)
    if (images_[k] != static_cast<int>(k) + 1) return false;
  return true;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(images_[k]);
  }
  return s + "]";
}

std::vector<Permutation> all_permutations(int m) {
  std::vector<int> images(static_cast<std::size_t>(m));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Grading::Grading(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw GradingError("grading needs at least one level");
  for (int d : dims_)
    if (d < 1) throw GradingError("grading entries must be at least 1");
}

Grading Grading::uniform(int m, int n) {
  return Grading(std::vector<int>(static_cast<std::size_t>(m), n));
}

Grading Grading::parse(std::string_view text) { return Grading(parse_int_list(text)); }

long long Grading::product() const {
  long long p = 1;
  for (int d : dims_) p *= d;
  return p;
}

bool Grading::is_uniform() const noexcept {
  return std::adjacent_find(dims_.begin(), dims_.end(), std::not_equal_to<>()) == dims_.end();
}

Grading Grading::repeated(int times) const {
  std::vector<int> out;
  for (int t = 0; t < times; ++t) out.insert(out.end(), dims_.begin(), dims_.end());
  return Grading(std::move(out));
}

std::string Grading::str() const {
  std::string s;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(dims_[k]);
  }
  return s;
}

bool is_graded(const Permutation& sigma, const Grading& n) {
  if (sigma.size() != n.levels()) throw LevelMismatch("permutation and grading differ in level count");
  for (int k = 1; k <= sigma.size(); ++k)
    if (n.at(sigma(k)) != n.at(k)) return false;
  return true;
}

}  // namespace spart
