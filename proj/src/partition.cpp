#include "spart/partition.hpp"

#include <algorithm>
#include <numeric>

#include "spart/errors.hpp"

namespace spart {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      auto& pa = parent_[static_cast<std::size_t>(a)];
      pa = parent_[static_cast<std::size_t>(pa)];
      a = pa;
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Builds a partition whose column c (1-based) is old column source[c-1].
SpatialPartition reorder_columns(const SpatialPartition& p, const std::vector<int>& source,
                                 ColorWord up, ColorWord low) {
  const int m = p.levels();
  std::vector<int> labels(source.size() * static_cast<std::size_t>(m));
  for (std::size_t c = 0; c < source.size(); ++c)
    for (int l = 1; l <= m; ++l)
      labels[c * static_cast<std::size_t>(m) + static_cast<std::size_t>(l - 1)] =
          p.label({source[c], l});
  return SpatialPartition::from_labels(m, std::move(up), std::move(low), std::move(labels));
}

}  // namespace

int canonicalize_labels(std::vector<int>& labels) {
  if (labels.empty()) return 0;
  int hi = *std::max_element(labels.begin(), labels.end());
  int lo = *std::min_element(labels.begin(), labels.end());
  std::vector<int> remap(static_cast<std::size_t>(hi - lo + 1), -1);
  int next = 0;
  for (auto& l : labels) {
    auto& r = remap[static_cast<std::size_t>(l - lo)];
    if (r < 0) r = next++;
    l = r;
  }
  return next;
}

SpatialPartition SpatialPartition::from_labels(int m, ColorWord up, ColorWord low,
                                               std::vector<int> labels) {
  if (m < 1) throw RangeError("level count must be at least 1");
  SpatialPartition p;
  p.m_ = m;
  p.up_ = std::move(up);
  p.low_ = std::move(low);
  if (labels.size() != static_cast<std::size_t>(p.point_count()))
    throw RangeError("label count does not match grid size");
  p.block_count_ = canonicalize_labels(labels);
  p.labels_ = std::move(labels);
  return p;
}

Color SpatialPartition::column_color(int column) const {
  if (column < 1 || column > columns()) throw RangeError("column out of range");
  return is_upper_column(column) ? up_[static_cast<std::size_t>(column - 1)]
                                 : low_[static_cast<std::size_t>(column - 1 - upper_columns())];
}

std::vector<std::vector<Point>> SpatialPartition::blocks() const {
  std::vector<std::vector<Point>> out(static_cast<std::size_t>(block_count_));
  for (int i = 0; i < point_count(); ++i) out[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].push_back(point_at(i));
  return out;
}

std::size_t SpatialPartition::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(m_) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (auto c : up_) mix(static_cast<std::size_t>(c) + 2);
  mix(7);
  for (auto c : low_) mix(static_cast<std::size_t>(c) + 2);
  for (int l : labels_) mix(static_cast<std::size_t>(l));
  return h;
}

std::strong_ordering operator<=>(const SpatialPartition& a, const SpatialPartition& b) {
  if (auto c = a.m_ <=> b.m_; c != 0) return c;
  if (auto c = a.up_ <=> b.up_; c != 0) return c;
  if (auto c = a.low_ <=> b.low_; c != 0) return c;
  return a.labels_ <=> b.labels_;
}

SpatialPartition make_partition(int m, ColorWord up, ColorWord low,
                                const std::vector<std::vector<Point>>& blocks) {
  if (m < 1) throw RangeError("level count must be at least 1");
  const int columns = static_cast<int>(up.size() + low.size());
  std::vector<int> labels(static_cast<std::size_t>(columns * m), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw CoverageError("empty block");
    for (const auto& pt : blocks[b]) {
      if (pt.column < 1 || pt.column > columns || pt.level < 1 || pt.level > m)
        throw RangeError("point (" + std::to_string(pt.column) + "," + std::to_string(pt.level) +
                         ") outside the grid");
      auto& slot = labels[static_cast<std::size_t>((pt.column - 1) * m + (pt.level - 1))];
      if (slot >= 0)
        throw OverlapError("point (" + std::to_string(pt.column) + "," + std::to_string(pt.level) +
                           ") appears twice");
      slot = static_cast<int>(b);
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] < 0) {
      int c = static_cast<int>(i) / m + 1;
      int l = static_cast<int>(i) % m + 1;
      throw CoverageError("point (" + std::to_string(c) + "," + std::to_string(l) + ") not covered");
    }
  return SpatialPartition::from_labels(m, std::move(up), std::move(low), std::move(labels));
}

SpatialPartition tensor(const SpatialPartition& p, const SpatialPartition& q) {
  if (p.levels() != q.levels()) throw LevelMismatch("tensor of partitions with different level counts");
  const int m = p.levels();
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(p.point_count() + q.point_count()));
  auto append = [&](const SpatialPartition& r, int from, int to, int offset) {
    for (int c = from; c <= to; ++c)
      for (int l = 1; l <= m; ++l) labels.push_back(r.label({c, l}) + offset);
  };
  const int shift = p.block_count();
  append(p, 1, p.upper_columns(), 0);
  append(q, 1, q.upper_columns(), shift);
  append(p, p.upper_columns() + 1, p.columns(), 0);
  append(q, q.upper_columns() + 1, q.columns(), shift);
  return SpatialPartition::from_labels(m, p.up() + q.up(), p.low() + q.low(), std::move(labels));
}

SpatialPartition involution(const SpatialPartition& p) {
  std::vector<int> source;
  for (int c = p.upper_columns() + 1; c <= p.columns(); ++c) source.push_back(c);
  for (int c = 1; c <= p.upper_columns(); ++c) source.push_back(c);
  return reorder_columns(p, source, p.low(), p.up());
}

std::vector<int> LoopRecord::dimensions(const Grading& n) const {
  std::vector<int> out;
  for (const auto& comp : components) {
    int dim = n.at(comp.levels.front());
    for (int l : comp.levels)
      if (n.at(l) != dim) throw GradingError("removed component joins levels of different dimension");
    out.push_back(dim);
  }
  return out;
}

Integer LoopRecord::scalar(const Grading& n) const {
  Integer s = 1;
  for (int d : dimensions(n)) s *= d;
  return s;
}

Integer LoopRecord::uniform_power(const Grading& n) const {
  Integer s = 1;
  for (std::size_t i = 0; i < components.size(); ++i) s *= n.product();
  return s;
}

Composition compose(const SpatialPartition& p, const SpatialPartition& q) {
  if (p.levels() != q.levels()) throw LevelMismatch("composition of partitions with different level counts");
  if (q.low() != p.up())
    throw ColorMismatch("cannot compose: lower colors \"" + q.low().str() + "\" of the top partition differ from upper colors \"" +
                        p.up().str() + "\"");
  const int m = p.levels();
  const int qn = q.point_count();
  const int zn = p.lower_columns() * m;
  UnionFind uf(qn + zn);

  auto p_node = [&](int index) {
    Point pt = p.point_at(index);
    if (pt.column <= p.upper_columns()) return q.point_index({q.upper_columns() + pt.column, pt.level});
    return qn + (pt.column - p.upper_columns() - 1) * m + (pt.level - 1);
  };

  std::vector<int> first(static_cast<std::size_t>(std::max(q.block_count(), p.block_count())), -1);
  for (int i = 0; i < qn; ++i) {
    auto& f = first[static_cast<std::size_t>(q.label_at(i))];
    if (f < 0) f = i;
    else uf.unite(f, i);
  }
  std::fill(first.begin(), first.end(), -1);
  for (int i = 0; i < p.point_count(); ++i) {
    int node = p_node(i);
    auto& f = first[static_cast<std::size_t>(p.label_at(i))];
    if (f < 0) f = node;
    else uf.unite(f, node);
  }

  const int xn = q.upper_columns() * m;
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(xn + zn));
  for (int i = 0; i < xn; ++i) labels.push_back(uf.find(i));
  for (int i = 0; i < zn; ++i) labels.push_back(uf.find(qn + i));

  std::vector<bool> retained(static_cast<std::size_t>(qn + zn), false);
  for (int r : labels) retained[static_cast<std::size_t>(r)] = true;

  Composition out;
  std::vector<int> component_of(static_cast<std::size_t>(qn + zn), -1);
  for (int i = xn; i < qn; ++i) {
    int root = uf.find(i);
    if (retained[static_cast<std::size_t>(root)]) continue;
    auto& idx = component_of[static_cast<std::size_t>(root)];
    if (idx < 0) {
      idx = static_cast<int>(out.loops.components.size());
      out.loops.components.emplace_back();
    }
    auto& comp = out.loops.components[static_cast<std::size_t>(idx)];
    comp.levels.push_back(q.point_at(i).level);
    comp.size += 1;
  }
  for (auto& comp : out.loops.components) {
    std::sort(comp.levels.begin(), comp.levels.end());
    comp.levels.erase(std::unique(comp.levels.begin(), comp.levels.end()), comp.levels.end());
  }
  out.partition = SpatialPartition::from_labels(m, q.up(), p.low(), std::move(labels));
  return out;
}

SpatialPartition identity(const ColorWord& x, int m) {
  const int k = static_cast<int>(x.size());
  std::vector<int> labels(static_cast<std::size_t>(2 * k * m));
  for (int c = 0; c < k; ++c)
    for (int l = 0; l < m; ++l) {
      labels[static_cast<std::size_t>(c * m + l)] = c * m + l;
      labels[static_cast<std::size_t>((k + c) * m + l)] = c * m + l;
    }
  return SpatialPartition::from_labels(m, x, x, std::move(labels));
}

SpatialPartition empty_partition(int m) { return SpatialPartition::from_labels(m, {}, {}, {}); }

SpatialPartition amplify(const SpatialPartition& p, int k) {
  if (p.levels() != 1) throw LevelMismatch("amplification needs a one-level partition");
  if (k < 1) throw RangeError("amplification factor must be at least 1");
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(p.columns() * k));
  for (int c = 1; c <= p.columns(); ++c)
    for (int l = 0; l < k; ++l) labels.push_back(p.label({c, 1}) * k + l);
  return SpatialPartition::from_labels(k, p.up(), p.low(), std::move(labels));
}

namespace {

std::vector<int> sigma_labels(const Permutation& sigma) {
  const int m = sigma.size();
  std::vector<int> labels(static_cast<std::size_t>(2 * m));
  for (int i = 1; i <= m; ++i) {
    labels[static_cast<std::size_t>(i - 1)] = i - 1;
    labels[static_cast<std::size_t>(m + sigma(i) - 1)] = i - 1;
  }
  return labels;
}

}  // namespace

SpatialPartition sigma_lower(const Permutation& sigma, Color x, Color y) {
  return SpatialPartition::from_labels(sigma.size(), {}, ColorWord{x, y}, sigma_labels(sigma));
}

SpatialPartition sigma_through(const Permutation& sigma, Color x, Color y) {
  return SpatialPartition::from_labels(sigma.size(), ColorWord{x}, ColorWord{y}, sigma_labels(sigma));
}

int through_block_count(const SpatialPartition& p) {
  std::vector<int> seen(static_cast<std::size_t>(p.block_count()), 0);
  const int split = p.upper_columns() * p.levels();
  for (int i = 0; i < p.point_count(); ++i) seen[static_cast<std::size_t>(p.label_at(i))] |= (i < split) ? 1 : 2;
  return static_cast<int>(std::count(seen.begin(), seen.end(), 3));
}

std::optional<SpatialPartition> invert(const SpatialPartition& p) {
  if (p.upper_columns() != p.lower_columns()) return std::nullopt;
  SpatialPartition star = involution(p);
  auto a = compose(star, p);
  if (!a.loops.empty() || a.partition != identity(p.up(), p.levels())) return std::nullopt;
  auto b = compose(p, star);
  if (!b.loops.empty() || b.partition != identity(p.low(), p.levels())) return std::nullopt;
  return star;
}

bool is_pair(const SpatialPartition& p) {
  std::vector<int> size(static_cast<std::size_t>(p.block_count()), 0);
  for (int l : p.labels()) ++size[static_cast<std::size_t>(l)];
  return std::all_of(size.begin(), size.end(), [](int s) { return s == 2; });
}

bool is_graded(const SpatialPartition& p, const Grading& n) {
  if (n.levels() != p.levels()) throw LevelMismatch("grading and partition differ in level count");
  std::vector<int> dim(static_cast<std::size_t>(p.block_count()), 0);
  for (int i = 0; i < p.point_count(); ++i) {
    int d = n.at(p.point_at(i).level);
    auto& slot = dim[static_cast<std::size_t>(p.label_at(i))];
    if (slot == 0) slot = d;
    else if (slot != d) return false;
  }
  return true;
}

SpatialPartition rotate(const SpatialPartition& p, Side side) {
  const int x = p.upper_columns();
  const int y = p.lower_columns();
  std::vector<int> source;
  ColorWord up;
  ColorWord low;
  switch (side) {
    case Side::lower_left:
      if (y == 0) throw EmptyRow("no lower column to rotate");
      source.push_back(x + 1);
      for (int c = 1; c <= x; ++c) source.push_back(c);
      for (int c = x + 2; c <= x + y; ++c) source.push_back(c);
      up = ColorWord{conjugate(p.low()[0])} + p.up();
      low = p.low().slice(1, static_cast<std::size_t>(y - 1));
      break;
    case Side::lower_right:
      if (y == 0) throw EmptyRow("no lower column to rotate");
      for (int c = 1; c <= x; ++c) source.push_back(c);
      source.push_back(x + y);
      for (int c = x + 1; c < x + y; ++c) source.push_back(c);
      up = p.up() + ColorWord{conjugate(p.low()[static_cast<std::size_t>(y - 1)])};
      low = p.low().slice(0, static_cast<std::size_t>(y - 1));
      break;
    case Side::upper_left:
      if (x == 0) throw EmptyRow("no upper column to rotate");
      for (int c = 2; c <= x; ++c) source.push_back(c);
      source.push_back(1);
      for (int c = x + 1; c <= x + y; ++c) source.push_back(c);
      up = p.up().slice(1, static_cast<std::size_t>(x - 1));
      low = ColorWord{conjugate(p.up()[0])} + p.low();
      break;
    case Side::upper_right:
      if (x == 0) throw EmptyRow("no upper column to rotate");
      for (int c = 1; c < x; ++c) source.push_back(c);
      for (int c = x + 1; c <= x + y; ++c) source.push_back(c);
      source.push_back(x);
      up = p.up().slice(0, static_cast<std::size_t>(x - 1));
      low = p.low() + ColorWord{conjugate(p.up()[static_cast<std::size_t>(x - 1)])};
      break;
  }
  return reorder_columns(p, source, std::move(up), std::move(low));
}

Side parse_side(const std::string& text) {
  if (text == "upper-left") return Side::upper_left;
  if (text == "upper-right") return Side::upper_right;
  if (text == "lower-left") return Side::lower_left;
  if (text == "lower-right") return Side::lower_right;
  throw SyntaxError("unknown side \"" + text + "\"", 1, 1);
}

}  // namespace spart
