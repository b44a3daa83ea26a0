#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spart/category.hpp"
#include "spart/functors.hpp"
#include "spart/partition.hpp"

namespace spart {

// Index symbol. Free symbols are i<k> (output side, lower points) and j<k>
// (input side, upper points) with k = (column-1)*m + level; bound symbols
// are summation variables numbered in first-use order.
struct Symbol {
  enum class Kind : std::uint8_t { lower = 0, upper = 1, bound = 2 };
  Kind kind = Kind::bound;
  int id = 0;

  bool is_free() const noexcept { return kind != Kind::bound; }
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// One generator entry u^{row}_{col}, or its adjoint when star is set.
struct UEntry {
  bool star = false;
  std::vector<Symbol> row;
  std::vector<Symbol> col;

  friend auto operator<=>(const UEntry&, const UEntry&) = default;
};

struct Delta {
  Symbol a;
  Symbol b;

  friend auto operator<=>(const Delta&, const Delta&) = default;
};

// coefficient * product of deltas * ordered product of entries, summed over
// every bound symbol.
struct Monomial {
  long long coefficient = 1;
  std::vector<Delta> deltas;
  std::vector<UEntry> factors;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

using Polynomial = std::vector<Monomial>;

struct IndexEquation {
  std::string label;
  int m = 1;
  Polynomial lhs;
  Polynomial rhs;

  // Same normal forms on both sides, up to swapping the sides.
  bool equivalent(const IndexEquation& other) const;
  bool trivial() const { return lhs == rhs; }
};

// Brings a monomial into normal form: equal free symbols are tied to the
// least one by deltas, bound symbols joined to free ones are substituted,
// bound symbols are renamed in first-use order.
Monomial normalize(const Monomial& raw);
Polynomial normalize(const Polynomial& raw);
IndexEquation normalize(const IndexEquation& raw);

// Text form mirroring the usual display, e.g.
//   delta[i1,i2] = sum_l u[i1,i2;l,l]
std::string to_text(const Polynomial& side);
std::string to_text(const IndexEquation& eq);
// Parses the text form; symbols other than i<k>/j<k> are bound. The result is
// normalized.
IndexEquation parse_equation(std::string_view text, int m);
nlohmann::json to_json(const IndexEquation& eq);

// The sigma with r == sigma_lower(sigma, white, black); NotDualityForm otherwise.
Permutation extract_sigma(const SpatialPartition& r);

// Entrywise form of T_p u^x = u^y T_p. Black letters are rewritten through
// (u^b)^k_l = (u^{k o sigma}_{l o sigma})^*. Trivial equations are dropped.
std::vector<IndexEquation> intertwiner_equations(const SpatialPartition& p, const Grading& n,
                                                 const std::optional<Permutation>& sigma = std::nullopt);

// u u* = 1, u* u = 1 and the same for u^b.
std::vector<IndexEquation> unitarity_equations(int m, const Permutation& sigma);

struct GeneratorRelations {
  SpatialPartition generator;
  std::vector<IndexEquation> equations;
};

struct Presentation {
  Grading n;
  Permutation sigma;
  bool sigma_from_duality_pair = true;
  std::vector<IndexEquation> unitarity;
  std::vector<GeneratorRelations> generators;
};

struct EmitOptions {
  // Column bound for the rigidity search; 0 picks max(4, widest generator).
  int bound = 0;
  int max_rounds = 6;
  int threads = 1;
};

Presentation emit_presentation(const std::vector<SpatialPartition>& generators, int m, const Grading& n,
                               EmitOptions options = {});

std::string to_text(const Presentation& pres);
nlohmann::json to_json(const Presentation& pres);

// ---- Concrete instances -------------------------------------------------

// An entry u_{row,col} (or its adjoint) with flat multi-indices.
struct ConcreteEntry {
  bool star = false;
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend auto operator<=>(const ConcreteEntry&, const ConcreteEntry&) = default;
};

using Word = std::vector<ConcreteEntry>;
// Noncommutative polynomial: word -> coefficient (no zero coefficients).
using ConcretePolynomial = std::map<Word, long long>;

struct ConcreteInstance {
  std::map<Symbol, int> assignment;  // 1-based values of the free symbols
  ConcretePolynomial lhs;
  ConcretePolynomial rhs;
};

// Every instance over the free symbols of the equation. The free symbols
// listed in `extra_free` are enumerated even when absent from the equation.
std::vector<ConcreteInstance> expand(const IndexEquation& eq, const Grading& n,
                                     const std::set<Symbol>& extra_free = {});
ConcretePolynomial expand_side(const Polynomial& side, const std::map<Symbol, int>& assignment, int m,
                               const Grading& n);

// lhs - rhs with the leading coefficient made positive; empty when trivial.
ConcretePolynomial instance_key(const ConcreteInstance& inst);
std::set<ConcretePolynomial> instance_set(const std::vector<IndexEquation>& eqs, const Grading& n);

// Flat index of a level-label vector (level 1 most significant).
std::uint32_t flat_index(const std::vector<int>& labels, const Grading& n);
std::vector<int> unflat_index(std::uint32_t flat, const Grading& n);

// ---- Projective pipeline ------------------------------------------------

struct ProjectiveGenerators {
  SpatialPartition id_bw;                  // amplified black-to-white identity
  std::vector<SpatialPartition> flat;      // preimages of the admissible C0 forms
  std::vector<SpatialPartition> flat_ids;  // preimages of id (x) C0' (x) id
  std::vector<std::string> notes;          // rotations and recolorings applied

  // id_bw first, then flat, then flat_ids.
  std::vector<SpatialPartition> all() const;
  // flat then flat_ids, the row as usually tabulated.
  std::vector<SpatialPartition> row() const;
};

// One-level identity-like partition with upper color black, lower white.
SpatialPartition id_bw();

// Recolors every row to the alternating word (white black)^k.
SpatialPartition recolor_alternating(const SpatialPartition& p);

ProjectiveGenerators projective_generators(const std::vector<SpatialPartition>& c0);

Membership flat_inverse_membership(const CategorySet& cat, const FlatSignature& sig, const SpatialPartition& p);

}  // namespace spart
