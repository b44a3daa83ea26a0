#include "spart/functors.hpp"

#include "spart/errors.hpp"

namespace spart {

SpatialPartition perm_apply(const Permutation& sigma, const Permutation& tau, const SpatialPartition& p) {
  const int m = p.levels();
  if (sigma.size() != m || tau.size() != m) throw LevelMismatch("permutation degree differs from level count");
  std::vector<int> labels(static_cast<std::size_t>(p.point_count()));
  for (int c = 1; c <= p.columns(); ++c) {
    const Permutation& rho = p.column_color(c) == Color::white ? sigma : tau;
    for (int l = 1; l <= m; ++l) labels[static_cast<std::size_t>(p.point_index({c, rho(l)}))] = p.label({c, l});
  }
  return SpatialPartition::from_labels(m, p.up(), p.low(), std::move(labels));
}

FlatSignature::FlatSignature(int m_, ColorWord z_) : m(m_), z(std::move(z_)) {
  if (m < 1) throw RangeError("flattening target needs at least one level");
  if (z.empty()) throw RangeError("flattening word must be nonempty");
}

Point varphi(const FlatSignature& sig, const ColorWord& x, const ColorWord& y, Point pt) {
  const int columns = static_cast<int>(x.size() + y.size());
  if (pt.column < 1 || pt.column > columns || pt.level < 1 || pt.level > sig.source_levels())
    throw RangeError("point outside the source grid");
  const int d = sig.d();
  const int j = (pt.level - 1) % sig.m + 1;
  const int k = (pt.level - 1) / sig.m;
  const int i = pt.column;
  Color c = i <= static_cast<int>(x.size()) ? x[static_cast<std::size_t>(i - 1)]
                                            : y[static_cast<std::size_t>(i - 1 - static_cast<int>(x.size()))];
  if (c == Color::white) return {i * d - d + k + 1, j};
  return {i * d - k, j};
}

ColorWord flat_color(const FlatSignature& sig, const ColorWord& w) {
  const ColorWord zbar = sig.z.conjugate();
  ColorWord out;
  for (Color c : w) out = out + (c == Color::white ? sig.z : zbar);
  return out;
}

SpatialPartition flat_apply(const FlatSignature& sig, const SpatialPartition& p) {
  if (p.levels() != sig.source_levels()) throw LevelMismatch("flattening expects m*d source levels");
  ColorWord up = flat_color(sig, p.up());
  ColorWord low = flat_color(sig, p.low());
  const int target_points = static_cast<int>(up.size() + low.size()) * sig.m;
  std::vector<int> labels(static_cast<std::size_t>(target_points));
  for (int i = 0; i < p.point_count(); ++i) {
    Point img = varphi(sig, p.up(), p.low(), p.point_at(i));
    labels[static_cast<std::size_t>((img.column - 1) * sig.m + (img.level - 1))] = p.label_at(i);
  }
  return SpatialPartition::from_labels(sig.m, std::move(up), std::move(low), std::move(labels));
}

namespace {

void factor_from(const ColorWord& w, std::size_t pos, const ColorWord& z, const ColorWord& zbar,
                 std::vector<Color>& prefix, std::vector<ColorWord>& out) {
  if (pos == w.size()) {
    out.emplace_back(prefix);
    return;
  }
  auto matches = [&](const ColorWord& block) {
    if (pos + block.size() > w.size()) return false;
    for (std::size_t t = 0; t < block.size(); ++t)
      if (w[pos + t] != block[t]) return false;
    return true;
  };
  if (matches(z)) {
    prefix.push_back(Color::white);
    factor_from(w, pos + z.size(), z, zbar, prefix, out);
    prefix.pop_back();
  }
  if (matches(zbar)) {
    prefix.push_back(Color::black);
    factor_from(w, pos + z.size(), z, zbar, prefix, out);
    prefix.pop_back();
  }
}

SpatialPartition unflatten(const FlatSignature& sig, const SpatialPartition& q, const ColorWord& x,
                           const ColorWord& y) {
  const int source_m = sig.source_levels();
  const int columns = static_cast<int>(x.size() + y.size());
  std::vector<int> labels(static_cast<std::size_t>(columns * source_m));
  for (int c = 1; c <= columns; ++c)
    for (int l = 1; l <= source_m; ++l)
      labels[static_cast<std::size_t>((c - 1) * source_m + (l - 1))] = q.label(varphi(sig, x, y, {c, l}));
  return SpatialPartition::from_labels(source_m, x, y, std::move(labels));
}

}  // namespace

std::vector<ColorWord> factor_word(const FlatSignature& sig, const ColorWord& w) {
  std::vector<ColorWord> out;
  std::vector<Color> prefix;
  factor_from(w, 0, sig.z, sig.z.conjugate(), prefix, out);
  return out;
}

std::optional<SpatialPartition> flat_preimage(const FlatSignature& sig, const SpatialPartition& q) {
  if (q.levels() != sig.m) return std::nullopt;
  auto xs = factor_word(sig, q.up());
  auto ys = factor_word(sig, q.low());
  if (xs.empty() || ys.empty()) return std::nullopt;
  return unflatten(sig, q, xs.front(), ys.front());
}

std::vector<SpatialPartition> flat_preimages_all(const FlatSignature& sig, const SpatialPartition& q) {
  std::vector<SpatialPartition> out;
  if (q.levels() != sig.m) return out;
  for (const auto& x : factor_word(sig, q.up()))
    for (const auto& y : factor_word(sig, q.low())) out.push_back(unflatten(sig, q, x, y));
  return out;
}

}  // namespace spart
