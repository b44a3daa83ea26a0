#include "spart/relations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "spart/errors.hpp"
#include "spart/text_format.hpp"

namespace spart {

namespace {

Symbol lower_sym(int id) { return {Symbol::Kind::lower, id}; }
Symbol upper_sym(int id) { return {Symbol::Kind::upper, id}; }
Symbol bound_sym(int id) { return {Symbol::Kind::bound, id}; }

bool same_terms(const Monomial& a, const Monomial& b) { return a.deltas == b.deltas && a.factors == b.factors; }

std::vector<Symbol> bound_in_use_order(const Monomial& mono) {
  std::vector<Symbol> out;
  auto visit = [&out](const Symbol& s) {
    if (!s.is_free() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& f : mono.factors) {
    for (const auto& s : f.row) visit(s);
    for (const auto& s : f.col) visit(s);
  }
  return out;
}

}  // namespace

Monomial normalize(const Monomial& raw) {
  std::map<Symbol, Symbol> parent;
  auto find = [&parent](Symbol s) {
    while (true) {
      auto it = parent.find(s);
      if (it == parent.end() || it->second == s) return s;
      s = it->second;
    }
  };
  auto touch = [&parent](const Symbol& s) { parent.emplace(s, s); };
  for (const auto& d : raw.deltas) {
    touch(d.a);
    touch(d.b);
  }
  for (const auto& f : raw.factors) {
    for (const auto& s : f.row) touch(s);
    for (const auto& s : f.col) touch(s);
  }
  // Unite towards the smaller symbol; free symbols sort before bound ones, so
  // every class root is its least free member when it has one.
  for (const auto& d : raw.deltas) {
    Symbol a = find(d.a);
    Symbol b = find(d.b);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  Monomial out;
  out.coefficient = raw.coefficient;
  for (const auto& [s, unused] : parent) {
    Symbol root = find(s);
    if (s.is_free() && root != s) out.deltas.push_back({root, s});
  }
  for (const auto& f : raw.factors) {
    UEntry e{f.star, {}, {}};
    for (const auto& s : f.row) e.row.push_back(find(s));
    for (const auto& s : f.col) e.col.push_back(find(s));
    out.factors.push_back(std::move(e));
  }
  std::map<Symbol, Symbol> rename;
  int next = 1;
  for (const auto& s : bound_in_use_order(out)) rename.emplace(s, bound_sym(next++));
  for (auto& f : out.factors) {
    for (auto& s : f.row)
      if (!s.is_free()) s = rename.at(s);
    for (auto& s : f.col)
      if (!s.is_free()) s = rename.at(s);
  }
  std::sort(out.deltas.begin(), out.deltas.end());
  out.deltas.erase(std::unique(out.deltas.begin(), out.deltas.end()), out.deltas.end());
  return out;
}

Polynomial normalize(const Polynomial& raw) {
  Polynomial terms;
  for (const auto& m : raw) terms.push_back(normalize(m));
  std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deltas != b.deltas) return a.deltas < b.deltas;
    return a.factors < b.factors;
  });
  Polynomial out;
  for (auto& t : terms) {
    if (!out.empty() && same_terms(out.back(), t)) out.back().coefficient += t.coefficient;
    else out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Monomial& m) { return m.coefficient == 0; }), out.end());
  return out;
}

IndexEquation normalize(const IndexEquation& raw) {
  return IndexEquation{raw.label, raw.m, normalize(raw.lhs), normalize(raw.rhs)};
}

bool IndexEquation::equivalent(const IndexEquation& other) const {
  IndexEquation a = normalize(*this);
  IndexEquation b = normalize(other);
  return (a.lhs == b.lhs && a.rhs == b.rhs) || (a.lhs == b.rhs && a.rhs == b.lhs);
}

// ---- Text ---------------------------------------------------------------

namespace {

std::string symbol_name(const Symbol& s, bool single_bound) {
  switch (s.kind) {
    case Symbol::Kind::lower:
      return "i" + std::to_string(s.id);
    case Symbol::Kind::upper:
      return "j" + std::to_string(s.id);
    case Symbol::Kind::bound:
      return single_bound ? "l" : "l" + std::to_string(s.id);
  }
  return "?";
}

std::string monomial_text(const Monomial& mono) {
  auto bound = bound_in_use_order(mono);
  const bool single = bound.size() == 1;
  std::vector<std::string> parts;
  if (mono.coefficient != 1 || (mono.deltas.empty() && mono.factors.empty()))
    parts.push_back(std::to_string(mono.coefficient));
  if (!bound.empty()) {
    std::sort(bound.begin(), bound.end());
    if (single) {
      parts.push_back("sum_l");
    } else {
      std::string s = "sum_{";
      for (std::size_t k = 0; k < bound.size(); ++k) s += (k ? "," : "") + symbol_name(bound[k], false);
      parts.push_back(s + "}");
    }
  }
  for (const auto& d : mono.deltas)
    parts.push_back("delta[" + symbol_name(d.a, single) + "," + symbol_name(d.b, single) + "]");
  for (const auto& f : mono.factors) {
    std::string s = f.star ? "u*[" : "u[";
    for (std::size_t k = 0; k < f.row.size(); ++k) s += (k ? "," : "") + symbol_name(f.row[k], single);
    s += ";";
    for (std::size_t k = 0; k < f.col.size(); ++k) s += (k ? "," : "") + symbol_name(f.col[k], single);
    parts.push_back(s + "]");
  }
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " " : "") + parts[k];
  return out;
}

class EquationParser {
 public:
  EquationParser(std::string_view text, int m) : text_(text), m_(m) {}

  IndexEquation parse() {
    IndexEquation eq;
    eq.m = m_;
    eq.lhs = side();
    expect('=');
    eq.rhs = side();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return normalize(eq);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, 1, static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  std::string name() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an index name");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Symbol symbol(const std::string& n) {
    auto numbered = [&n](char head) {
      if (n.size() < 2 || n[0] != head) return 0;
      int v = 0;
      for (std::size_t k = 1; k < n.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(n[k]))) return 0;
        v = v * 10 + (n[k] - '0');
      }
      return v;
    };
    if (int v = numbered('i')) return lower_sym(v);
    if (int v = numbered('j')) return upper_sym(v);
    auto it = bound_.find(n);
    if (it != bound_.end()) return it->second;
    Symbol s = bound_sym(static_cast<int>(bound_.size()) + 1);
    bound_.emplace(n, s);
    return s;
  }

  std::vector<Symbol> symbols_until(char stop) {
    std::vector<Symbol> out;
    do {
      out.push_back(symbol(name()));
    } while (accept(','));
    expect(stop);
    return out;
  }

  bool at_term_end() {
    skip();
    return pos_ >= text_.size() || text_[pos_] == '+' || text_[pos_] == '=';
  }

  Monomial term() {
    bound_.clear();
    Monomial mono;
    skip();
    bool has_content = false;
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (ec != std::errc()) fail("bad coefficient");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      mono.coefficient = v;
      has_content = true;
    }
    if (accept_word("sum_")) {
      if (accept('{')) {
        symbols_until('}');
      } else {
        symbol(name());
      }
    }
    while (!at_term_end()) {
      if (accept_word("delta[")) {
        auto syms = symbols_until(']');
        if (syms.size() != 2) fail("delta takes two indices");
        Symbol a = syms[0];
        Symbol b = syms[1];
        if (b < a) std::swap(a, b);
        mono.deltas.push_back({a, b});
      } else if (accept_word("u*[") || accept_word("u[")) {
        bool star = text_[pos_ - 2] == '*';
        UEntry e{star, symbols_until(';'), symbols_until(']')};
        if (static_cast<int>(e.row.size()) != m_ || static_cast<int>(e.col.size()) != m_)
          fail("entry needs " + std::to_string(m_) + " row and column indices");
        mono.factors.push_back(std::move(e));
      } else {
        fail("expected delta[...] or u[...]");
      }
      has_content = true;
    }
    if (!has_content) fail("empty term");
    return mono;
  }

  Polynomial side() {
    skip();
    Polynomial out;
    if (accept_word("0")) {
      if (at_term_end()) return out;
      fail("unexpected input after 0");
    }
    do {
      out.push_back(term());
    } while (accept('+'));
    return out;
  }

  std::string_view text_;
  int m_;
  std::size_t pos_ = 0;
  std::map<std::string, Symbol> bound_;
};

nlohmann::json monomial_json(const Monomial& mono) {
  auto bound = bound_in_use_order(mono);
  const bool single = bound.size() == 1;
  auto names = [single](const std::vector<Symbol>& syms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : syms) out.push_back(symbol_name(s, single));
    return out;
  };
  std::sort(bound.begin(), bound.end());
  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& d : mono.deltas) deltas.push_back({symbol_name(d.a, single), symbol_name(d.b, single)});
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : mono.factors) factors.push_back({{"star", f.star}, {"row", names(f.row)}, {"col", names(f.col)}});
  return {{"coefficient", mono.coefficient}, {"sum", names(bound)}, {"deltas", deltas}, {"factors", factors}};
}

}  // namespace

std::string to_text(const Polynomial& side) {
  if (side.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < side.size(); ++k) out += (k ? " + " : "") + monomial_text(side[k]);
  return out;
}

std::string to_text(const IndexEquation& eq) { return to_text(eq.lhs) + " = " + to_text(eq.rhs); }

IndexEquation parse_equation(std::string_view text, int m) { return EquationParser(text, m).parse(); }

nlohmann::json to_json(const IndexEquation& eq) {
  nlohmann::json lhs = nlohmann::json::array();
  for (const auto& t : eq.lhs) lhs.push_back(monomial_json(t));
  nlohmann::json rhs = nlohmann::json::array();
  for (const auto& t : eq.rhs) rhs.push_back(monomial_json(t));
  return {{"label", eq.label}, {"text", to_text(eq)}, {"lhs", lhs}, {"rhs", rhs}};
}

// ---- Emission -----------------------------------------------------------

Permutation extract_sigma(const SpatialPartition& r) {
  auto sigma = duality_permutation(r);
  if (!sigma) throw NotDualityForm("partition is not of the form sigma_lower(sigma, w, b): " + to_text(r));
  return *sigma;
}

std::vector<IndexEquation> intertwiner_equations(const SpatialPartition& p, const Grading& n,
                                                 const std::optional<Permutation>& sigma_opt) {
  const int m = p.levels();
  if (n.levels() != m) throw GradingError("grading length differs from level count");
  if (!is_graded(p, n)) throw GradingError("partition is not graded for n=(" + n.str() + ")");
  const Permutation sigma = sigma_opt ? *sigma_opt : Permutation::identity(m);
  if (sigma.size() != m) throw LevelMismatch("duality permutation has the wrong degree");
  if (!is_graded(sigma, n)) throw GradingError("duality permutation is not graded");

  const int x = p.upper_columns();
  auto free_of = [&](Point pt) {
    if (p.is_upper_column(pt.column)) return upper_sym((pt.column - 1) * m + pt.level);
    return lower_sym((pt.column - x - 1) * m + pt.level);
  };
  auto bound_of = [&](Point pt) { return bound_sym(p.point_index(pt) + 1); };

  // Entry of u^{c} at column `column`, with `row_of`/`col_of` giving the
  // symbol at each level.
  auto entry = [&](Color c, auto&& row_of, auto&& col_of) {
    UEntry e;
    e.star = c == Color::black;
    for (int s = 1; s <= m; ++s) {
      int level = c == Color::black ? sigma(s) : s;
      e.row.push_back(row_of(level));
      e.col.push_back(col_of(level));
    }
    return e;
  };

  auto block_deltas = [&](bool upper_bound) {
    std::vector<Delta> out;
    for (const auto& block : p.blocks()) {
      auto sym = [&](Point pt) {
        bool upper = p.is_upper_column(pt.column);
        return upper == upper_bound ? bound_of(pt) : free_of(pt);
      };
      for (std::size_t k = 1; k < block.size(); ++k) out.push_back({sym(block[0]), sym(block[k])});
    }
    return out;
  };

  Monomial lhs;
  lhs.deltas = block_deltas(true);
  for (int t = 1; t <= x; ++t)
    lhs.factors.push_back(entry(
        p.column_color(t), [&](int l) { return bound_of({t, l}); }, [&](int l) { return free_of({t, l}); }));

  Monomial rhs;
  rhs.deltas = block_deltas(false);
  for (int t = x + 1; t <= p.columns(); ++t)
    rhs.factors.push_back(entry(
        p.column_color(t), [&](int l) { return free_of({t, l}); }, [&](int l) { return bound_of({t, l}); }));

  IndexEquation eq = normalize(IndexEquation{to_text(p), m, {lhs}, {rhs}});
  if (eq.trivial()) return {};
  return {eq};
}

std::vector<IndexEquation> unitarity_equations(int m, const Permutation& sigma) {
  std::vector<Symbol> I, J, L, Is, Js, Ls;
  for (int s = 1; s <= m; ++s) {
    I.push_back(lower_sym(s));
    J.push_back(upper_sym(s));
    L.push_back(bound_sym(s));
    Is.push_back(lower_sym(sigma(s)));
    Js.push_back(upper_sym(sigma(s)));
    Ls.push_back(bound_sym(sigma(s)));
  }
  Monomial identity;
  for (int s = 1; s <= m; ++s) identity.deltas.push_back({lower_sym(s), upper_sym(s)});
  auto make = [&](std::string label, UEntry a, UEntry b) {
    Monomial mono;
    mono.factors = {std::move(a), std::move(b)};
    return normalize(IndexEquation{std::move(label), m, {mono}, {identity}});
  };
  return {
      make("u u* = 1", {false, I, L}, {true, J, L}),
      make("u* u = 1", {true, L, I}, {false, L, J}),
      make("ub ub* = 1", {true, Is, Ls}, {false, Js, Ls}),
      make("ub* ub = 1", {false, Ls, Is}, {true, Ls, Js}),
  };
}

Presentation emit_presentation(const std::vector<SpatialPartition>& generators, int m, const Grading& n,
                               EmitOptions options) {
  if (n.levels() != m) throw GradingError("grading length differs from level count");
  for (const auto& g : generators) {
    if (g.levels() != m) throw LevelMismatch("generator has the wrong level count");
    if (!is_graded(g, n)) throw GradingError("generator is not graded for n=(" + n.str() + "): " + to_text(g));
  }
  if (generators.empty()) throw NotRigidWithinBound("no generators, so no duality pair");

  int bound = options.bound;
  if (bound <= 0) {
    bound = 4;
    for (const auto& g : generators) bound = std::max(bound, g.columns());
  }
  ClosureOptions copts;
  copts.max_rounds = options.max_rounds;
  copts.threads = options.threads;
  ClosureBuilder builder(generators, m, bound, copts);
  for (int round = 0; round < options.max_rounds && !is_rigid(builder.current()); ++round)
    if (!builder.step()) break;

  Presentation pres;
  pres.n = n;
  if (auto sigma = extract_duality(builder.current())) {
    pres.sigma = *sigma;
  } else if (m == 1) {
    // S_1 is trivial, so the duality permutation is forced.
    pres.sigma = Permutation::identity(1);
    pres.sigma_from_duality_pair = false;
  } else {
    throw NotRigidWithinBound("no duality pair found within bound " + std::to_string(bound) + " after " +
                              std::to_string(builder.current().rounds()) + " rounds");
  }
  if (!is_graded(pres.sigma, n)) throw GradingError("duality permutation is not graded for n=(" + n.str() + ")");
  pres.unitarity = unitarity_equations(m, pres.sigma);
  for (const auto& g : generators) pres.generators.push_back({g, intertwiner_equations(g, n, pres.sigma)});
  return pres;
}

std::string to_text(const Presentation& pres) {
  std::ostringstream os;
  os << "n = (" << pres.n.str() << ")\n";
  os << "sigma = " << pres.sigma.str() << (pres.sigma_from_duality_pair ? "" : " (forced, no duality pair in bound)")
     << "\n";
  os << "unitarity:\n";
  for (const auto& eq : pres.unitarity) os << "  " << to_text(eq) << "\n";
  for (const auto& g : pres.generators) {
    os << "generator " << to_text(g.generator) << ":\n";
    if (g.equations.empty()) os << "  (trivial)\n";
    for (const auto& eq : g.equations) os << "  " << to_text(eq) << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const Presentation& pres) {
  nlohmann::json unit = nlohmann::json::array();
  for (const auto& eq : pres.unitarity) unit.push_back(to_json(eq));
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& g : pres.generators)
    for (const auto& eq : g.equations) {
      auto j = to_json(eq);
      j["generator"] = to_json(g.generator);
      eqs.push_back(std::move(j));
    }
  return {{"n", pres.n.dims()},  {"sigma", pres.sigma.images()}, {"unitary", true},
          {"unitarity", unit},   {"equations", eqs}};
}

// ---- Concrete instances -------------------------------------------------

std::uint32_t flat_index(const std::vector<int>& labels, const Grading& n) {
  std::uint32_t idx = 0;
  for (std::size_t l = 0; l < labels.size(); ++l)
    idx = idx * static_cast<std::uint32_t>(n.dims()[l]) + static_cast<std::uint32_t>(labels[l] - 1);
  return idx;
}

std::vector<int> unflat_index(std::uint32_t flat, const Grading& n) {
  std::vector<int> out(static_cast<std::size_t>(n.levels()));
  for (std::size_t l = out.size(); l-- > 0;) {
    out[l] = static_cast<int>(flat % static_cast<std::uint32_t>(n.dims()[l])) + 1;
    flat /= static_cast<std::uint32_t>(n.dims()[l]);
  }
  return out;
}

namespace {

int free_level(const Symbol& s, int m) { return (s.id - 1) % m + 1; }

// Advances an odometer; returns false after the last state.
bool advance(std::vector<int>& values, const std::vector<int>& dims) {
  for (std::size_t k = values.size(); k-- > 0;) {
    if (++values[k] <= dims[k]) return true;
    values[k] = 1;
  }
  return false;
}

}  // namespace

ConcretePolynomial expand_side(const Polynomial& side, const std::map<Symbol, int>& assignment, int m,
                               const Grading& n) {
  ConcretePolynomial out;
  for (const auto& mono : side) {
    bool alive = true;
    for (const auto& d : mono.deltas)
      if (assignment.at(d.a) != assignment.at(d.b)) alive = false;
    if (!alive) continue;
    auto bound = bound_in_use_order(mono);
    std::map<Symbol, std::size_t> slot;
    std::vector<int> dims;
    for (const auto& b : bound) {
      slot.emplace(b, dims.size());
      int level = 0;
      for (const auto& f : mono.factors) {
        for (std::size_t s = 0; s < f.row.size() && !level; ++s)
          if (f.row[s] == b || f.col[s] == b) level = static_cast<int>(s) + 1;
        if (level) break;
      }
      dims.push_back(n.at(level));
    }
    std::vector<int> values(bound.size(), 1);
    auto value_of = [&](const Symbol& s) { return s.is_free() ? assignment.at(s) : values[slot.at(s)]; };
    do {
      Word word;
      for (const auto& f : mono.factors) {
        std::vector<int> r, c;
        for (std::size_t s = 0; s < f.row.size(); ++s) {
          r.push_back(value_of(f.row[s]));
          c.push_back(value_of(f.col[s]));
        }
        word.push_back({f.star, flat_index(r, n), flat_index(c, n)});
      }
      out[word] += mono.coefficient;
    } while (advance(values, dims));
    (void)m;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<ConcreteInstance> expand(const IndexEquation& eq, const Grading& n, const std::set<Symbol>& extra_free) {
  std::set<Symbol> free = extra_free;
  for (const Polynomial* side : {&eq.lhs, &eq.rhs})
    for (const auto& mono : *side) {
      for (const auto& d : mono.deltas) {
        free.insert(d.a);
        free.insert(d.b);
      }
      for (const auto& f : mono.factors) {
        for (const auto& s : f.row)
          if (s.is_free()) free.insert(s);
        for (const auto& s : f.col)
          if (s.is_free()) free.insert(s);
      }
    }
  std::vector<Symbol> syms(free.begin(), free.end());
  std::vector<int> dims;
  for (const auto& s : syms) dims.push_back(n.at(free_level(s, eq.m)));
  std::vector<int> values(syms.size(), 1);
  std::vector<ConcreteInstance> out;
  do {
    ConcreteInstance inst;
    for (std::size_t k = 0; k < syms.size(); ++k) inst.assignment.emplace(syms[k], values[k]);
    inst.lhs = expand_side(eq.lhs, inst.assignment, eq.m, n);
    inst.rhs = expand_side(eq.rhs, inst.assignment, eq.m, n);
    out.push_back(std::move(inst));
  } while (advance(values, dims));
  return out;
}

ConcretePolynomial instance_key(const ConcreteInstance& inst) {
  ConcretePolynomial diff = inst.lhs;
  for (const auto& [w, c] : inst.rhs) diff[w] -= c;
  for (auto it = diff.begin(); it != diff.end();) it = it->second == 0 ? diff.erase(it) : std::next(it);
  if (!diff.empty() && diff.begin()->second < 0)
    for (auto& kv : diff) kv.second = -kv.second;
  return diff;
}

std::set<ConcretePolynomial> instance_set(const std::vector<IndexEquation>& eqs, const Grading& n) {
  std::set<ConcretePolynomial> out;
  for (const auto& eq : eqs)
    for (const auto& inst : expand(eq, n)) {
      auto key = instance_key(inst);
      if (!key.empty()) out.insert(std::move(key));
    }
  return out;
}

// ---- Projective pipeline ------------------------------------------------

std::vector<SpatialPartition> ProjectiveGenerators::all() const {
  std::vector<SpatialPartition> out{id_bw};
  out.insert(out.end(), flat.begin(), flat.end());
  out.insert(out.end(), flat_ids.begin(), flat_ids.end());
  return out;
}

std::vector<SpatialPartition> ProjectiveGenerators::row() const {
  std::vector<SpatialPartition> out = flat;
  out.insert(out.end(), flat_ids.begin(), flat_ids.end());
  return out;
}

SpatialPartition id_bw() { return SpatialPartition::from_labels(1, ColorWord{Color::black}, ColorWord{Color::white}, {0, 0}); }

SpatialPartition recolor_alternating(const SpatialPartition& p) {
  return SpatialPartition::from_labels(p.levels(), alternating_word(p.up().size()), alternating_word(p.low().size()),
                                       p.labels());
}

ProjectiveGenerators projective_generators(const std::vector<SpatialPartition>& c0) {
  const SpatialPartition pair = sigma_lower(Permutation::identity(1), Color::white, Color::white);
  bool has_pair = false;
  for (const auto& p : c0) {
    if (p.levels() != 1) throw LevelMismatch("projective generators need one-level partitions");
    if (!p.up().all(Color::white) || !p.low().all(Color::white))
      throw NotAllWhite("generator has black points: " + to_text(p));
    if (p.columns() % 2 != 0)
      throw OddTotalColumns("generator has an odd number of columns: " + to_text(p));
    has_pair = has_pair || p == pair;
  }
  if (!has_pair) throw ShapeError("generator set must contain the lower pair partition");

  const FlatSignature sig(1, ColorWord{Color::white, Color::black});
  const SpatialPartition id_w = identity(ColorWord{Color::white}, 1);
  ProjectiveGenerators out;
  out.id_bw = amplify(id_bw(), 2);
  auto preimage = [&](const SpatialPartition& q) {
    auto pre = flat_preimage(sig, recolor_alternating(q));
    if (!pre) throw ShapeError("alternating colors failed to factor: " + to_text(q));
    return *pre;
  };
  std::vector<SpatialPartition> admissible;
  for (const auto& p : c0) {
    SpatialPartition q = p;
    if (q.upper_columns() % 2 != 0) {
      q = rotate(q, Side::upper_left);
      out.notes.push_back("rotated upper-left column down: " + to_text(p) + " -> " + to_text(q));
    }
    if (q.up() != alternating_word(q.up().size()) || q.low() != alternating_word(q.low().size()))
      out.notes.push_back("recolored to alternating rows: " + to_text(q));
    admissible.push_back(q);
  }
  for (const auto& q : admissible) out.flat.push_back(preimage(q));
  for (const auto& q : admissible) out.flat_ids.push_back(preimage(tensor(tensor(id_w, q), id_w)));
  return out;
}

Membership flat_inverse_membership(const CategorySet& cat, const FlatSignature& sig, const SpatialPartition& p) {
  return contains(cat, flat_apply(sig, p));
}

}  // namespace spart
