#include "spart/category.hpp"

#include <algorithm>
#include <thread>

#include "spart/errors.hpp"
#include "spart/text_format.hpp"

namespace spart {

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::yes:
      return "yes";
    case Membership::no_within_bound:
      return "no-within-bound";
    case Membership::unknown:
      return "unknown";
  }
  return "unknown";
}

CategorySet CategorySet::from_stored(int m, int bound, const std::vector<SpatialPartition>& generators,
                                     const std::vector<SpatialPartition>& partitions, bool truncated) {
  CategorySet cat(m, bound);
  cat.generators_ = generators;
  for (const auto& p : partitions) {
    if (p.levels() != m) throw LevelMismatch("stored partition has the wrong level count");
    cat.insert(p);
  }
  cat.truncated_ = truncated;
  cat.scan_duality();
  return cat;
}

std::vector<SpatialPartition> CategorySet::hom(const ColorWord& x, const ColorWord& y) const {
  std::vector<SpatialPartition> out;
  auto it = by_up_.find(x);
  if (it == by_up_.end()) return out;
  for (auto i : it->second)
    if (items_[i].low() == y) out.push_back(items_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

bool CategorySet::insert(const SpatialPartition& p) {
  if (index_.count(p)) return false;
  std::size_t i = items_.size();
  items_.push_back(p);
  index_.emplace(p, i);
  by_up_[p.up()].push_back(i);
  by_low_[p.low()].push_back(i);
  by_columns_[p.columns()].push_back(i);
  return true;
}

void CategorySet::scan_duality() {
  if (duality_) return;
  const ColorWord wb{Color::white, Color::black};
  const ColorWord bw{Color::black, Color::white};
  auto rs = hom({}, wb);
  auto ss = hom({}, bw);
  for (const auto& r : rs)
    for (const auto& s : ss)
      if (check_conjugate_pair(r, s)) {
        duality_ = DualityPair{r, s};
        return;
      }
}

ClosureBuilder::ClosureBuilder(const std::vector<SpatialPartition>& generators, int m, int bound,
                               ClosureOptions options)
    : cat_(m, bound), options_(options) {
  for (const auto& g : generators) {
    if (g.levels() != m) throw LevelMismatch("generator has the wrong level count");
    if (g.columns() > bound)
      throw BoundTooSmall("generator with " + std::to_string(g.columns()) + " columns exceeds bound " +
                          std::to_string(bound));
  }
  cat_.generators_ = generators;
  cat_.insert(empty_partition(m));
  if (bound >= 2) {
    cat_.insert(identity(ColorWord{Color::white}, m));
    cat_.insert(identity(ColorWord{Color::black}, m));
  }
  for (const auto& g : generators) cat_.insert(g);
  cat_.scan_duality();
  cat_.truncated_ = true;
}

std::vector<SpatialPartition> ClosureBuilder::candidates_for(std::size_t first, std::size_t last,
                                                             std::size_t old_end) const {
  const auto& items = cat_.items_;
  const int bound = cat_.bound_;
  std::vector<SpatialPartition> out;
  for (std::size_t ai = first; ai < last; ++ai) {
    const SpatialPartition& a = items[ai];
    const bool fresh = ai >= frontier_begin_;
    if (fresh) {
      out.push_back(involution(a));
      for (const auto& [cols, members] : cat_.by_columns_) {
        if (cols + a.columns() > bound) break;
        for (auto bi : members) {
          if (bi >= old_end) break;
          out.push_back(tensor(a, items[bi]));
          out.push_back(tensor(items[bi], a));
        }
      }
      // a on top of p.
      if (auto it = cat_.by_up_.find(a.low()); it != cat_.by_up_.end())
        for (auto pi : it->second) {
          if (pi >= old_end) break;
          if (a.upper_columns() + items[pi].lower_columns() <= bound) out.push_back(compose(items[pi], a).partition);
        }
      // q on top of a.
      if (auto it = cat_.by_low_.find(a.up()); it != cat_.by_low_.end())
        for (auto qi : it->second) {
          if (qi >= old_end) break;
          if (items[qi].upper_columns() + a.lower_columns() <= bound) out.push_back(compose(a, items[qi]).partition);
        }
    }
    if (options_.rotations && cat_.duality_ && (fresh || rotate_everything_)) {
      for (Side side : {Side::upper_left, Side::upper_right, Side::lower_left, Side::lower_right}) {
        bool upper = side == Side::upper_left || side == Side::upper_right;
        if ((upper ? a.upper_columns() : a.lower_columns()) == 0) continue;
        out.push_back(derived_rotate(*cat_.duality_, a, side));
      }
    }
  }
  return out;
}

bool ClosureBuilder::step() {
  if (at_fixed_point()) {
    cat_.truncated_ = false;
    return false;
  }
  const std::size_t old_end = cat_.items_.size();
  const std::size_t scan_begin = rotate_everything_ ? 0 : frontier_begin_;
  std::vector<std::vector<SpatialPartition>> results;
  const std::size_t work = old_end - scan_begin;
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options_.threads)), work));
  if (threads <= 1) {
    results.push_back(candidates_for(scan_begin, old_end, old_end));
  } else {
    results.resize(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (work + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      std::size_t lo = scan_begin + t * chunk;
      std::size_t hi = std::min(old_end, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([this, &results, t, lo, hi, old_end] { results[t] = candidates_for(lo, hi, old_end); });
    }
    for (auto& th : pool) th.join();
  }
  rotate_everything_ = false;
  for (const auto& batch : results)
    for (const auto& p : batch)
      if (p.columns() <= cat_.bound_) cat_.insert(p);
  frontier_begin_ = old_end;
  ++cat_.rounds_;
  bool had_duality = cat_.duality_.has_value();
  cat_.scan_duality();
  if (!had_duality && cat_.duality_ && options_.rotations) rotate_everything_ = true;
  cat_.truncated_ = !at_fixed_point();
  return true;
}

CategorySet closure(const std::vector<SpatialPartition>& generators, int m, int bound, ClosureOptions options) {
  ClosureBuilder builder(generators, m, bound, options);
  for (int round = 0; round < options.max_rounds; ++round)
    if (!builder.step()) break;
  return builder.take();
}

Membership contains(const CategorySet& cat, const SpatialPartition& p) {
  if (p.levels() != cat.levels()) throw LevelMismatch("partition and category differ in level count");
  if (cat.stores(p)) return Membership::yes;
  if (p.columns() > cat.bound() || cat.truncated()) return Membership::unknown;
  return Membership::no_within_bound;
}

namespace {

void check_cap(int m, const ColorWord& up, const ColorWord& low) {
  const long long points = static_cast<long long>(up.size() + low.size()) * m;
  if (points > kEnumerationPointCap)
    throw TooLarge("enumeration over " + std::to_string(points) + " points exceeds the cap of " +
                   std::to_string(kEnumerationPointCap));
}

}  // namespace

std::vector<SpatialPartition> enumerate_partitions(int m, const ColorWord& up, const ColorWord& low) {
  check_cap(m, up, low);
  const int n = static_cast<int>(up.size() + low.size()) * m;
  std::vector<SpatialPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    out.push_back(SpatialPartition::from_labels(m, up, low, {}));
    return out;
  }
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  while (true) {
    out.push_back(SpatialPartition::from_labels(m, up, low, rgs));
    int i = n - 1;
    while (i > 0 && rgs[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) break;
    ++rgs[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], rgs[static_cast<std::size_t>(i)]);
    for (int k = i + 1; k < n; ++k) {
      rgs[static_cast<std::size_t>(k)] = 0;
      prefix_max[static_cast<std::size_t>(k)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

namespace {

void matchings(std::vector<int>& labels, int next_label, int m, const ColorWord& up, const ColorWord& low,
               std::vector<SpatialPartition>& out) {
  auto first_free = std::find(labels.begin(), labels.end(), -1);
  if (first_free == labels.end()) {
    out.push_back(SpatialPartition::from_labels(m, up, low, labels));
    return;
  }
  *first_free = next_label;
  for (auto it = first_free + 1; it != labels.end(); ++it) {
    if (*it != -1) continue;
    *it = next_label;
    matchings(labels, next_label + 1, m, up, low, out);
    *it = -1;
  }
  *first_free = -1;
}

}  // namespace

std::vector<SpatialPartition> enumerate_pair_partitions(int m, const ColorWord& up, const ColorWord& low) {
  check_cap(m, up, low);
  const int n = static_cast<int>(up.size() + low.size()) * m;
  std::vector<SpatialPartition> out;
  if (n % 2 != 0) return out;
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  matchings(labels, 0, m, up, low, out);
  return out;
}

bool check_conjugate_pair(const SpatialPartition& r, const SpatialPartition& s) {
  const ColorWord wb{Color::white, Color::black};
  const ColorWord bw{Color::black, Color::white};
  if (r.levels() != s.levels()) throw LevelMismatch("duality candidates differ in level count");
  if (!r.up().empty() || r.low() != wb) throw ShapeError("r must lie in P(1, wb)");
  if (!s.up().empty() || s.low() != bw) throw ShapeError("s must lie in P(1, bw)");
  const int m = r.levels();
  const auto id_w = identity(ColorWord{Color::white}, m);
  const auto id_b = identity(ColorWord{Color::black}, m);
  auto first = compose(tensor(involution(r), id_w), tensor(id_w, s));
  if (!first.loops.empty() || first.partition != id_w) return false;
  auto second = compose(tensor(involution(s), id_b), tensor(id_b, r));
  return second.loops.empty() && second.partition == id_b;
}

std::vector<DualityPair> duality_pairs_all(int m) {
  if (m > 4) throw TooLarge("duality pair enumeration is capped at 4 levels");
  const ColorWord wb{Color::white, Color::black};
  const ColorWord bw{Color::black, Color::white};
  auto rs = enumerate_partitions(m, {}, wb);
  auto ss = enumerate_partitions(m, {}, bw);
  const auto id_w = identity(ColorWord{Color::white}, m);
  const auto id_b = identity(ColorWord{Color::black}, m);
  std::vector<SpatialPartition> r_left;
  std::vector<SpatialPartition> r_right;
  for (const auto& r : rs) {
    r_left.push_back(tensor(involution(r), id_w));
    r_right.push_back(tensor(id_b, r));
  }
  std::vector<SpatialPartition> s_left;
  std::vector<SpatialPartition> s_right;
  for (const auto& s : ss) {
    s_left.push_back(tensor(involution(s), id_b));
    s_right.push_back(tensor(id_w, s));
  }
  std::vector<DualityPair> out;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < ss.size(); ++j) {
      auto first = compose(r_left[i], s_right[j]);
      if (!first.loops.empty() || first.partition != id_w) continue;
      auto second = compose(s_left[j], r_right[i]);
      if (!second.loops.empty() || second.partition != id_b) continue;
      out.push_back({rs[i], ss[j]});
    }
  return out;
}

std::optional<Permutation> duality_permutation(const SpatialPartition& r) {
  if (!r.up().empty() || r.low() != ColorWord{Color::white, Color::black}) return std::nullopt;
  const int m = r.levels();
  std::vector<int> images(static_cast<std::size_t>(m), 0);
  for (int i = 1; i <= m; ++i) {
    int hit = 0;
    for (int j = 1; j <= m; ++j)
      if (r.label({2, j}) == r.label({1, i})) {
        if (hit) return std::nullopt;
        hit = j;
      }
    if (!hit) return std::nullopt;
    images[static_cast<std::size_t>(i - 1)] = hit;
  }
  std::vector<bool> seen(static_cast<std::size_t>(m + 1), false);
  for (int v : images) {
    if (seen[static_cast<std::size_t>(v)]) return std::nullopt;
    seen[static_cast<std::size_t>(v)] = true;
  }
  Permutation sigma(images);
  if (sigma_lower(sigma, Color::white, Color::black) != r) return std::nullopt;
  return sigma;
}

bool is_rigid(const CategorySet& cat) { return cat.duality().has_value(); }

std::optional<Permutation> extract_duality(const CategorySet& cat) {
  if (!cat.duality()) return std::nullopt;
  return duality_permutation(cat.duality()->r);
}

bool check_word_conjugate_pair(const ColorWord& x, const DualityPair& pair) {
  if (pair.r.up().size() || pair.s.up().size()) return false;
  const ColorWord xbar = x.conjugate();
  if (pair.r.low() != x + xbar || pair.s.low() != xbar + x) return false;
  const int m = pair.r.levels();
  auto first = compose(tensor(involution(pair.r), identity(x, m)), tensor(identity(x, m), pair.s));
  if (!first.loops.empty() || first.partition != identity(x, m)) return false;
  auto second = compose(tensor(involution(pair.s), identity(xbar, m)), tensor(identity(xbar, m), pair.r));
  return second.loops.empty() && second.partition == identity(xbar, m);
}

std::optional<DualityPair> dual_partitions_for_word(const CategorySet& cat, const ColorWord& x) {
  if (!cat.duality()) throw NotRigid("category has no duality pair within its bound");
  const DualityPair& base = *cat.duality();
  const int m = cat.levels();
  auto nested = [&](const ColorWord& w) {
    SpatialPartition acc = empty_partition(m);
    ColorWord prefix;
    for (Color c : w) {
      const SpatialPartition& cup = c == Color::white ? base.r : base.s;
      SpatialPartition widen = tensor(tensor(identity(prefix, m), cup), identity(prefix.conjugate(), m));
      acc = compose(widen, acc).partition;
      prefix.push_back(c);
    }
    return acc;
  };
  DualityPair out{nested(x), nested(x.conjugate())};
  if (!check_word_conjugate_pair(x, out)) return std::nullopt;
  return out;
}

SpatialPartition derived_rotate(const DualityPair& pair, const SpatialPartition& p, Side side) {
  const int m = p.levels();
  auto cap = [&](Color left) { return involution(left == Color::white ? pair.r : pair.s); };
  auto cup = [&](Color left) { return left == Color::white ? pair.r : pair.s; };
  auto id = [m](const ColorWord& w) { return identity(w, m); };
  const int x = p.upper_columns();
  const int y = p.lower_columns();
  switch (side) {
    case Side::lower_left: {
      if (y == 0) throw EmptyRow("no lower column to rotate");
      Color c = p.low()[0];
      ColorWord rest = p.low().slice(1, static_cast<std::size_t>(y - 1));
      return compose(tensor(cap(conjugate(c)), id(rest)), tensor(id(ColorWord{conjugate(c)}), p)).partition;
    }
    case Side::lower_right: {
      if (y == 0) throw EmptyRow("no lower column to rotate");
      Color c = p.low()[static_cast<std::size_t>(y - 1)];
      ColorWord rest = p.low().slice(0, static_cast<std::size_t>(y - 1));
      return compose(tensor(id(rest), cap(c)), tensor(p, id(ColorWord{conjugate(c)}))).partition;
    }
    case Side::upper_left: {
      if (x == 0) throw EmptyRow("no upper column to rotate");
      Color c = p.up()[0];
      ColorWord rest = p.up().slice(1, static_cast<std::size_t>(x - 1));
      return compose(tensor(id(ColorWord{conjugate(c)}), p), tensor(cup(conjugate(c)), id(rest))).partition;
    }
    case Side::upper_right: {
      if (x == 0) throw EmptyRow("no upper column to rotate");
      Color c = p.up()[static_cast<std::size_t>(x - 1)];
      ColorWord rest = p.up().slice(0, static_cast<std::size_t>(x - 1));
      return compose(tensor(p, id(ColorWord{conjugate(c)})), tensor(id(rest), cup(c))).partition;
    }
  }
  throw EmptyRow("unknown side");
}

bool has_even_columns_only(const CategorySet& cat) {
  return std::all_of(cat.all().begin(), cat.all().end(), [](const SpatialPartition& p) { return p.columns() % 2 == 0; });
}

nlohmann::json to_json(const CategorySet& cat) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : cat.generators()) gens.push_back(to_json(g));
  std::vector<SpatialPartition> sorted = cat.all();
  std::sort(sorted.begin(), sorted.end());
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : sorted) parts.push_back(to_json(p));
  return {{"m", cat.levels()},      {"bound", cat.bound()},  {"truncated", cat.truncated()},
          {"generators", std::move(gens)}, {"partitions", std::move(parts)}};
}

CategorySet category_from_json(const nlohmann::json& j) {
  try {
    std::vector<SpatialPartition> gens;
    if (j.contains("generators"))
      for (const auto& g : j.at("generators")) gens.push_back(partition_from_json(g));
    std::vector<SpatialPartition> parts;
    for (const auto& p : j.at("partitions")) parts.push_back(partition_from_json(p));
    return CategorySet::from_stored(j.at("m").get<int>(), j.at("bound").get<int>(), gens, parts,
                                    j.value("truncated", false));
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("bad category JSON: ") + e.what(), 1, 1);
  }
}

}  // namespace spart
