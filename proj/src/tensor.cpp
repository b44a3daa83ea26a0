#include "spart/tensor.hpp"

#include <numeric>
#include <sstream>

#include "spart/errors.hpp"

namespace spart {

namespace {

using Index = IntegerTensor::Index;

// Radices of the (axis, level) digits, most significant first.
std::vector<Index> digit_radices(const std::vector<Axis>& axes) {
  std::vector<Index> out;
  for (const auto& a : axes)
    for (int d : a.n.dims()) out.push_back(static_cast<Index>(d));
  return out;
}

std::vector<Index> digit_strides(const std::vector<Axis>& axes) {
  auto radices = digit_radices(axes);
  std::vector<Index> strides(radices.size(), 1);
  for (std::size_t i = radices.size(); i-- > 1;) strides[i - 1] = strides[i] * radices[i];
  return strides;
}

Index space_size(const std::vector<Axis>& axes) {
  Index s = 1;
  for (const auto& a : axes) s *= static_cast<Index>(a.size());
  return s;
}

std::vector<int> labels_of(const std::vector<Axis>& axes, Index flat) {
  auto radices = digit_radices(axes);
  std::vector<int> out(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = static_cast<int>(flat % radices[i]) + 1;
    flat /= radices[i];
  }
  return out;
}

void require_graded(const SpatialPartition& p, const Grading& n) {
  if (n.levels() != p.levels()) throw GradingError("grading has " + std::to_string(n.levels()) +
                                                   " levels, partition has " + std::to_string(p.levels()));
  if (!is_graded(p, n)) throw GradingError("partition is not graded for n=(" + n.str() + ")");
}

void require_graded(const Permutation& sigma, const Grading& n) {
  if (sigma.size() != n.levels()) throw GradingError("permutation degree differs from grading length");
  if (!is_graded(sigma, n)) throw GradingError("permutation " + sigma.str() + " is not graded for n=(" + n.str() + ")");
}

// Single-axis tensor with the given entry map (flat col -> flat row).
IntegerTensor level_permutation(const Permutation& sigma, const Grading& n, Color color) {
  std::vector<Axis> axis{Axis{color, n}};
  IntegerTensor out(axis, axis);
  const Index size = static_cast<Index>(n.product());
  for (Index b = 0; b < size; ++b) {
    auto bl = labels_of(axis, b);
    std::vector<int> al(bl.size());
    for (int k = 1; k <= sigma.size(); ++k)
      al[static_cast<std::size_t>(k - 1)] = bl[static_cast<std::size_t>(sigma.inverse()(k) - 1)];
    Index a = 0;
    for (std::size_t k = 0; k < al.size(); ++k) a = a * static_cast<Index>(n.dims()[k]) + static_cast<Index>(al[k] - 1);
    out.set(a, b, 1);
  }
  return out;
}

}  // namespace

std::vector<Axis> axes_for(const ColorWord& w, const Grading& n) {
  std::vector<Axis> out;
  for (Color c : w) out.push_back(Axis{c, n});
  return out;
}

IntegerTensor::IntegerTensor(std::vector<Axis> rows, std::vector<Axis> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)), row_size_(space_size(rows_)), col_size_(space_size(cols_)) {}

IntegerTensor IntegerTensor::identity(const std::vector<Axis>& axes) {
  IntegerTensor out(axes, axes);
  for (Index i = 0; i < out.row_size_; ++i) out.entries_.emplace(Key{i, i}, 1);
  return out;
}

Integer IntegerTensor::at(Index row, Index col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Integer(0) : it->second;
}

void IntegerTensor::set(Index row, Index col, const Integer& value) {
  if (row >= row_size_ || col >= col_size_) throw RangeError("tensor index out of range");
  if (value == 0) entries_.erase({row, col});
  else entries_[{row, col}] = value;
}

void IntegerTensor::add(Index row, Index col, const Integer& value) {
  if (row >= row_size_ || col >= col_size_) throw RangeError("tensor index out of range");
  auto& slot = entries_[{row, col}];
  slot += value;
  if (slot == 0) entries_.erase({row, col});
}

std::vector<int> IntegerTensor::row_labels(Index row) const { return labels_of(rows_, row); }
std::vector<int> IntegerTensor::col_labels(Index col) const { return labels_of(cols_, col); }

IntegerTensor IntegerTensor::operator*(const IntegerTensor& other) const {
  if (col_size_ != other.row_size_) throw ShapeError("matrix product of incompatible sizes");
  std::map<Index, std::vector<std::pair<Index, const Integer*>>> by_row;
  for (const auto& [key, value] : other.entries_) by_row[key.first].emplace_back(key.second, &value);
  IntegerTensor out(rows_, other.cols_);
  for (const auto& [key, value] : entries_) {
    auto it = by_row.find(key.second);
    if (it == by_row.end()) continue;
    for (const auto& [col, v] : it->second) out.add(key.first, col, value * *v);
  }
  return out;
}

IntegerTensor IntegerTensor::scaled(const Integer& factor) const {
  IntegerTensor out(rows_, cols_);
  if (factor == 0) return out;
  for (const auto& [key, value] : entries_) out.entries_.emplace(key, value * factor);
  return out;
}

IntegerTensor IntegerTensor::transpose() const {
  IntegerTensor out(cols_, rows_);
  for (const auto& [key, value] : entries_) out.entries_.emplace(Key{key.second, key.first}, value);
  return out;
}

IntegerTensor IntegerTensor::kron(const IntegerTensor& other) const {
  std::vector<Axis> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  std::vector<Axis> cols = cols_;
  cols.insert(cols.end(), other.cols_.begin(), other.cols_.end());
  IntegerTensor out(std::move(rows), std::move(cols));
  for (const auto& [a, va] : entries_)
    for (const auto& [b, vb] : other.entries_)
      out.entries_.emplace(Key{a.first * other.row_size_ + b.first, a.second * other.col_size_ + b.second}, va * vb);
  return out;
}

Integer IntegerTensor::total() const {
  Integer s = 0;
  for (const auto& kv : entries_) s += kv.second;
  return s;
}

nlohmann::json IntegerTensor::to_json() const {
  auto shape = [](const std::vector<Axis>& axes) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : axes) out.push_back({{"color", std::string(1, to_char(a.color))}, {"dims", a.n.dims()}});
    return out;
  };
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, value] : entries_)
    entries.push_back({row_labels(key.first), col_labels(key.second), value.convert_to<long long>()});
  return {{"row_shape", shape(rows_)}, {"col_shape", shape(cols_)}, {"entries", std::move(entries)}};
}

int delta_eval(const SpatialPartition& p, const std::vector<int>& labels, const Grading& n) {
  require_graded(p, n);
  if (labels.size() != static_cast<std::size_t>(p.point_count())) throw RangeError("one label per point required");
  std::vector<int> seen(static_cast<std::size_t>(p.block_count()), 0);
  for (int i = 0; i < p.point_count(); ++i) {
    int v = labels[static_cast<std::size_t>(i)];
    if (v < 1 || v > n.at(p.point_at(i).level)) throw RangeError("label outside its level dimension");
    auto& s = seen[static_cast<std::size_t>(p.label_at(i))];
    if (s == 0) s = v;
    else if (s != v) return 0;
  }
  return 1;
}

IntegerTensor realize(const SpatialPartition& p, const Grading& n) {
  require_graded(p, n);
  IntegerTensor out(axes_for(p.low(), n), axes_for(p.up(), n));
  const int m = p.levels();
  const auto row_strides = digit_strides(out.row_axes());
  const auto col_strides = digit_strides(out.col_axes());
  // Per block: the dimension and the combined row/col stride of its points.
  std::vector<int> dim(static_cast<std::size_t>(p.block_count()), 1);
  std::vector<Index> row_weight(static_cast<std::size_t>(p.block_count()), 0);
  std::vector<Index> col_weight(static_cast<std::size_t>(p.block_count()), 0);
  for (int i = 0; i < p.point_count(); ++i) {
    Point pt = p.point_at(i);
    auto b = static_cast<std::size_t>(p.label_at(i));
    dim[b] = n.at(pt.level);
    if (p.is_upper_column(pt.column))
      col_weight[b] += col_strides[static_cast<std::size_t>((pt.column - 1) * m + pt.level - 1)];
    else
      row_weight[b] += row_strides[static_cast<std::size_t>((pt.column - p.upper_columns() - 1) * m + pt.level - 1)];
  }
  std::vector<int> value(static_cast<std::size_t>(p.block_count()), 0);
  while (true) {
    Index row = 0;
    Index col = 0;
    for (std::size_t b = 0; b < value.size(); ++b) {
      row += row_weight[b] * static_cast<Index>(value[b]);
      col += col_weight[b] * static_cast<Index>(value[b]);
    }
    out.set(row, col, 1);
    std::size_t b = 0;
    while (b < value.size() && ++value[b] == dim[b]) value[b++] = 0;
    if (b == value.size()) break;
  }
  return out;
}

IntegerTensor F_sigma(const Permutation& sigma, const Grading& n) {
  require_graded(sigma, n);
  return level_permutation(sigma, n, Color::white);
}

OpsLawReport verify_ops_laws(const SpatialPartition& p, const SpatialPartition& q, const Grading& n) {
  if (p.levels() != q.levels()) throw ShapeError("partitions differ in level count");
  OpsLawReport report;
  const IntegerTensor tp = realize(p, n);
  const IntegerTensor tq = realize(q, n);
  report.tensor_law = realize(tensor(p, q), n) == tp.kron(tq);
  report.involution_law = realize(involution(p), n) == tp.transpose();
  if (q.low() == p.up()) {
    auto comp = compose(p, q);
    report.composition_checked = true;
    report.removed_components = comp.loops.size();
    report.scalar = comp.loops.scalar(n);
    report.uniform_power = comp.loops.uniform_power(n);
    report.composition_law = tp * tq == realize(comp.partition, n).scaled(report.scalar);
  }
  return report;
}

Integer gram_entry(const SpatialPartition& a, const SpatialPartition& b, const Grading& n) {
  if (a.up() != b.up() || a.low() != b.low() || a.levels() != b.levels())
    throw ShapeError("Gram entries need partitions with equal colors");
  require_graded(a, n);
  require_graded(b, n);
  const int points = a.point_count();
  std::vector<int> parent(static_cast<std::size_t>(points));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  for (const SpatialPartition* r : {&a, &b}) {
    std::vector<int> first(static_cast<std::size_t>(r->block_count()), -1);
    for (int i = 0; i < points; ++i) {
      auto& f = first[static_cast<std::size_t>(r->label_at(i))];
      if (f < 0) {
        f = i;
      } else {
        int x = find(f);
        int y = find(i);
        if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
      }
    }
  }
  Integer value = 1;
  for (int i = 0; i < points; ++i)
    if (find(i) == i) value *= n.at(a.point_at(i).level);
  return value;
}

std::size_t matrix_rank(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (auto& r : rows) m.emplace_back(r.begin(), r.end());
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t span_rank(const std::vector<IntegerTensor>& tensors) {
  std::map<IntegerTensor::Key, std::size_t> column;
  for (const auto& t : tensors)
    for (const auto& kv : t.entries()) column.emplace(kv.first, 0);
  std::size_t next = 0;
  for (auto& kv : column) kv.second = next++;
  std::vector<std::vector<Integer>> rows;
  for (const auto& t : tensors) {
    std::vector<Integer> row(column.size(), 0);
    for (const auto& [key, value] : t.entries()) row[column[key]] = value;
    rows.push_back(std::move(row));
  }
  if (column.empty()) return 0;
  return matrix_rank(std::move(rows));
}

GramResult gram_rank(const std::vector<SpatialPartition>& ps, const Grading& n) {
  GramResult out;
  for (const auto& a : ps) {
    std::vector<Integer> row;
    for (const auto& b : ps) row.push_back(gram_entry(a, b, n));
    out.matrix.push_back(std::move(row));
  }
  out.rank = matrix_rank(out.matrix);
  return out;
}

std::vector<std::vector<Integer>> gram_by_contraction(const std::vector<SpatialPartition>& ps, const Grading& n) {
  std::vector<IntegerTensor> ts;
  for (const auto& p : ps) ts.push_back(realize(p, n));
  std::vector<std::vector<Integer>> out;
  for (const auto& a : ts) {
    std::vector<Integer> row;
    for (const auto& b : ts) {
      Integer s = 0;
      for (const auto& [key, value] : a.entries()) s += value * b.at(key.first, key.second);
      row.push_back(s);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string gram_csv(const std::vector<std::vector<Integer>>& matrix) {
  std::ostringstream os;
  for (const auto& row : matrix) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

IntegerTensor perm_conjugator(const ColorWord& w, const Permutation& sigma, const Permutation& tau, const Grading& n) {
  require_graded(sigma, n);
  require_graded(tau, n);
  IntegerTensor out = IntegerTensor::identity({});
  for (Color c : w) out = out.kron(level_permutation(c == Color::white ? sigma : tau, n, c));
  return out;
}

bool verify_perm_conjugation(const Permutation& sigma, const Permutation& tau, const SpatialPartition& p,
                             const Grading& n) {
  require_graded(p, n);
  IntegerTensor qx = perm_conjugator(p.up(), sigma, tau, n);
  IntegerTensor qy = perm_conjugator(p.low(), sigma, tau, n);
  return realize(perm_apply(sigma, tau, p), n) == qy * realize(p, n) * qx.transpose();
}

namespace {

std::vector<Axis> regrouped_axes(const FlatSignature& sig, Color letter, const Grading& n) {
  std::vector<Axis> out;
  for (int k = 0; k < sig.d(); ++k) {
    Color c = sig.z[static_cast<std::size_t>(k)];
    out.push_back(Axis{letter == Color::white ? c : conjugate(c), n});
  }
  return out;
}

void require_flat_grading(const FlatSignature& sig, const Grading& n) {
  if (n.levels() != sig.m) throw GradingError("grading length must equal the flattened level count");
}

}  // namespace

IntegerTensor flat_regrouping(const FlatSignature& sig, const ColorWord& w, const Grading& n) {
  require_flat_grading(sig, n);
  IntegerTensor out = IntegerTensor::identity({});
  const Grading source = n.repeated(sig.d());
  for (Color c : w) {
    IntegerTensor letter({Axis{c, source}}, regrouped_axes(sig, c, n));
    for (Index i = 0; i < letter.row_size(); ++i) letter.set(i, i, 1);
    out = out.kron(letter);
  }
  return out;
}

IntegerTensor flat_conjugator(const FlatSignature& sig, const ColorWord& w, const Grading& n) {
  require_flat_grading(sig, n);
  IntegerTensor out = IntegerTensor::identity({});
  const Index slice = static_cast<Index>(n.product());
  const int d = sig.d();
  for (Color c : w) {
    IntegerTensor letter(axes_for(flat_color(sig, ColorWord{c}), n), regrouped_axes(sig, c, n));
    for (Index i = 0; i < letter.col_size(); ++i) {
      if (c == Color::white) {
        letter.set(i, i, 1);
        continue;
      }
      std::vector<Index> digits(static_cast<std::size_t>(d));
      Index rest = i;
      for (int k = d; k-- > 0;) {
        digits[static_cast<std::size_t>(k)] = rest % slice;
        rest /= slice;
      }
      Index j = 0;
      for (int k = d; k-- > 0;) j = j * slice + digits[static_cast<std::size_t>(k)];
      letter.set(j, i, 1);
    }
    out = out.kron(letter);
  }
  return out;
}

bool verify_flat_conjugation(const FlatSignature& sig, const SpatialPartition& p, const Grading& n) {
  require_flat_grading(sig, n);
  if (p.levels() != sig.source_levels()) throw LevelMismatch("flattening expects m*d source levels");
  require_graded(p, n.repeated(sig.d()));
  const IntegerTensor t_flat = realize(flat_apply(sig, p), n);
  const IntegerTensor qx = flat_conjugator(sig, p.up(), n);
  const IntegerTensor qy = flat_conjugator(sig, p.low(), n);
  const IntegerTensor sx = flat_regrouping(sig, p.up(), n);
  const IntegerTensor sy = flat_regrouping(sig, p.low(), n);
  return qy.transpose() * t_flat * qx == sy.transpose() * realize(p, n.repeated(sig.d())) * sx;
}

}  // namespace spart
