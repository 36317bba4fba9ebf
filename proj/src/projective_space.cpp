#include "minihyper/projective_space.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace minihyper {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in geometry count");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

// Normalized coefficient vectors of PG(d,q) in lexicographic order.
std::vector<int> projective_points(int d, int q) {
  const int len = d + 1;
  std::vector<int> out;
  std::vector<int> c(len, 0);
  const std::int64_t total = checked_pow(q, len);
  for (std::int64_t x = 1; x < total; ++x) {
    std::int64_t t = x;
    for (int i = len - 1; i >= 0; --i) {
      c[i] = static_cast<int>(t % q);
      t /= q;
    }
    int lead = 0;
    for (int i = 0; i < len; ++i)
      if (c[i] != 0) {
        lead = c[i];
        break;
      }
    if (lead == 1) out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace

std::int64_t v(int k, int q) {
  if (k < 0) throw std::invalid_argument("v(k,q) requires k >= 0");
  if (q < 2) throw std::invalid_argument("v(k,q) requires q >= 2");
  std::int64_t sum = 0, term = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_add_overflow(sum, term, &sum)) throw std::overflow_error("v(k,q) overflows 64 bits");
    if (i + 1 < k) term = checked_mul(term, q);
  }
  return sum;
}

std::int64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  // After step i the running value is [n choose i+1]_q, so each division is exact.
  std::int64_t result = 1;
  for (int i = 0; i < k; ++i) {
    std::int64_t num = checked_pow(q, n - i) - 1;
    std::int64_t den = checked_pow(q, i + 1) - 1;
    __int128 t = static_cast<__int128>(result) * num;
    t /= den;
    if (t > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("gaussian binomial overflows");
    result = static_cast<std::int64_t>(t);
  }
  return result;
}

SquareMatrix SquareMatrix::identity(int size) {
  SquareMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

std::size_t Geometry::KeyHash::operator()(const std::vector<PackedVector>& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : k) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

Geometry::Geometry(Private, int r, int q, const SizeBudget& budget) : r_(r), field_(q) {
  if (r < 1) throw std::invalid_argument("projective dimension must be at least 1");
  const std::int64_t npts = v(r + 1, q);
  if (npts > budget.max_points)
    throw std::length_error("PG(" + std::to_string(r) + "," + std::to_string(q) + ") has " +
                            std::to_string(npts) + " points, above the size budget of " +
                            std::to_string(budget.max_points));
  const std::int64_t nvec = checked_pow(q, r + 1);
  if (nvec > (std::int64_t{1} << 30)) throw std::length_error("vector space too large");
  num_points_ = static_cast<int>(npts);
  num_vectors_ = static_cast<std::uint32_t>(nvec);

  pow_.resize(r + 2);
  pow_[0] = 1;
  for (int i = 1; i <= r + 1; ++i) pow_[i] = pow_[i - 1] * q;

  point_of_vec_.assign(num_vectors_, -1);
  leading_of_vec_.assign(num_vectors_, 0);
  coords_.reserve(static_cast<std::size_t>(num_points_) * (r + 1));
  std::vector<int> c(r + 1);
  for (PackedVector x = 1; x < num_vectors_; ++x) {
    unpack(x, c);
    int lead = 0;
    for (int i = 0; i <= r; ++i)
      if (c[i] != 0) {
        lead = c[i];
        break;
      }
    leading_of_vec_[x] = static_cast<std::uint8_t>(lead);
    if (lead == 1) {
      point_of_vec_[x] = static_cast<int>(point_vec_.size());
      point_vec_.push_back(x);
      coords_.insert(coords_.end(), c.begin(), c.end());
    }
  }
  for (PackedVector x = 1; x < num_vectors_; ++x) {
    if (leading_of_vec_[x] != 1) {
      PackedVector n = vec_scale(field_.inv(leading_of_vec_[x]), x);
      point_of_vec_[x] = point_of_vec_[n];
    }
  }

  chart_coeffs_.resize(r + 1);
  for (int d = 0; d <= r; ++d) chart_coeffs_[d] = projective_points(d, q);

  flats_.resize(r + 1);
  index_.resize(r + 1);
  for (int d = 0; d <= r; ++d) once_.push_back(std::make_unique<std::once_flag>());

  std::call_once(*once_[0], [&] { build_dimension(0); });
  std::call_once(*once_[r - 1], [&] { build_dimension(r - 1); });
  std::call_once(*once_[r], [&] { build_dimension(r); });

  // incidence
  words_ = (static_cast<std::size_t>(num_points_) + 63) / 64;
  hyper_bits_.assign(words_ * num_points_, 0);
  hyper_per_point_ = static_cast<std::size_t>(v(r, q));
  through_.assign(hyper_per_point_ * num_points_, 0);
  std::vector<std::size_t> fill(num_points_, 0);
  for (int h = 0; h < num_points_; ++h) {
    for (int p : flats_[r - 1][h].points) {
      hyper_bits_[static_cast<std::size_t>(h) * words_ + (p >> 6)] |= std::uint64_t{1} << (p & 63);
      through_[static_cast<std::size_t>(p) * hyper_per_point_ + fill[p]++] = h;
    }
  }

  std::int64_t middle = 0;
  for (int d = 1; d + 1 < r; ++d) middle += gaussian_binomial(r + 1, d + 1, q);
  if (middle <= budget.max_eager_flats)
    for (int d = 1; d + 1 < r; ++d) std::call_once(*once_[d], [&] { build_dimension(d); });
}

std::shared_ptr<const Geometry> Geometry::build(int r, int q, const SizeBudget& budget) {
  return std::make_shared<const Geometry>(Private{}, r, q, budget);
}

std::shared_ptr<const Geometry> Geometry::shared(int r, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Geometry>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{r, q}];
  if (!slot) slot = build(r, q);
  return slot;
}

std::shared_ptr<const Geometry> build_geometry(int r, int q, const SizeBudget& budget) {
  return Geometry::build(r, q, budget);
}

PackedVector Geometry::pack(std::span<const int> c) const {
  if (static_cast<int>(c.size()) != r_ + 1) throw std::invalid_argument("coordinate vector has wrong length");
  PackedVector x = 0;
  for (int ci : c) x = x * q() + static_cast<PackedVector>(field_.reduce(ci));
  return x;
}

void Geometry::unpack(PackedVector x, std::span<int> out) const {
  for (int i = r_; i >= 0; --i) {
    out[i] = static_cast<int>(x % q());
    x /= q();
  }
}

PackedVector Geometry::vec_add(PackedVector a, PackedVector b) const {
  const int qq = q();
  PackedVector out = 0;
  for (int i = 0; i <= r_; ++i) {
    int s = static_cast<int>(a % qq) + static_cast<int>(b % qq);
    if (s >= qq) s -= qq;
    out += static_cast<PackedVector>(s) * pow_[i];
    a /= qq;
    b /= qq;
  }
  return out;
}

PackedVector Geometry::vec_scale(int s, PackedVector a) const {
  const int qq = q();
  PackedVector out = 0;
  for (int i = 0; i <= r_; ++i) {
    out += static_cast<PackedVector>(field_.mul(s, static_cast<int>(a % qq))) * pow_[i];
    a /= qq;
  }
  return out;
}

int Geometry::dot(PackedVector a, PackedVector b) const {
  const int qq = q();
  int s = 0;
  for (int i = 0; i <= r_; ++i) {
    s = (s + static_cast<int>(a % qq) * static_cast<int>(b % qq)) % qq;
    a /= qq;
    b /= qq;
  }
  return s;
}

int Geometry::point_index(std::span<const int> c) const {
  const int p = point_of(pack(c));
  if (p < 0) throw std::invalid_argument("the zero vector is not a point");
  return p;
}

int Geometry::rref(std::vector<PackedVector>& rows, std::vector<int>* pivots) const {
  const int n = r_ + 1;
  std::vector<std::vector<int>> m(rows.size(), std::vector<int>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) unpack(rows[i], m[i]);
  int rank = 0;
  std::vector<int> piv;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    int sel = -1;
    for (std::size_t i = rank; i < m.size(); ++i)
      if (m[i][col] != 0) {
        sel = static_cast<int>(i);
        break;
      }
    if (sel < 0) continue;
    std::swap(m[rank], m[sel]);
    const int inv = field_.inv(m[rank][col]);
    for (int j = 0; j < n; ++j) m[rank][j] = field_.mul(m[rank][j], inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) == rank || m[i][col] == 0) continue;
      const int f = m[i][col];
      for (int j = 0; j < n; ++j) m[i][j] = field_.sub(m[i][j], field_.mul(f, m[rank][j]));
    }
    piv.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  for (int i = 0; i < rank; ++i) rows[i] = pack(m[i]);
  if (pivots) *pivots = std::move(piv);
  return rank;
}

void Geometry::make_flat(int dim, std::vector<PackedVector> rows, Flat& out) const {
  out.dim = dim;
  rref(rows, &out.pivots);
  out.basis.clear();
  for (auto row : rows) out.basis.push_back(point_of(row));
  const auto& coeffs = chart_coeffs_[dim];
  const int len = dim + 1;
  const std::size_t count = coeffs.size() / len;
  out.chart.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    PackedVector x = 0;
    for (int i = 0; i < len; ++i) {
      const int lam = coeffs[j * len + i];
      if (lam != 0) x = vec_add(x, vec_scale(lam, rows[i]));
    }
    out.chart[j] = point_of(x);
  }
  out.points = out.chart;
  std::sort(out.points.begin(), out.points.end());
}

void Geometry::build_dimension(int dim) const {
  const int n = r_ + 1;
  const int k = dim + 1;
  const int qq = q();
  std::vector<Flat> result;
  std::vector<std::vector<PackedVector>> keys;

  // Enumerate reduced row echelon forms with k rows.
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;  // (row, col)
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!std::binary_search(piv.begin(), piv.end(), j)) free.emplace_back(i, j);
    std::vector<int> vals(free.size(), 0);
    while (true) {
      std::vector<std::vector<int>> m(k, std::vector<int>(n, 0));
      for (int i = 0; i < k; ++i) m[i][piv[i]] = 1;
      for (std::size_t f = 0; f < free.size(); ++f) m[free[f].first][free[f].second] = vals[f];
      std::vector<PackedVector> rows;
      for (auto& row : m) rows.push_back(pack(row));
      Flat fl;
      make_flat(dim, rows, fl);
      keys.push_back(rows);
      result.push_back(std::move(fl));
      std::size_t pos = 0;
      while (pos < vals.size() && ++vals[pos] == qq) vals[pos++] = 0;
      if (pos == vals.size()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }

  std::vector<std::size_t> order(result.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (dim == r_ - 1) {
    // Place hyperplane at the index of its dual point.
    std::vector<std::size_t> slot(result.size());
    for (std::size_t i = 0; i < result.size(); ++i) {
      auto& fl = result[i];
      std::vector<int> normal(n, 0);
      // Free column of the echelon form.
      int freecol = 0;
      while (std::binary_search(fl.pivots.begin(), fl.pivots.end(), freecol)) ++freecol;
      normal[freecol] = 1;
      std::vector<int> row(n);
      for (std::size_t b = 0; b < fl.basis.size(); ++b) {
        unpack(keys[i][b], row);
        normal[fl.pivots[b]] = field_.neg(row[freecol]);
      }
      const int h = point_of(pack(normal));
      auto c = coords(h);
      fl.dual.assign(c.begin(), c.end());
      slot[h] = i;
    }
    order = slot;
  } else if (dim == 0) {
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return result[a].basis[0] < result[b].basis[0]; });
  } else {
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return result[a].points < result[b].points; });
  }
  std::vector<Flat> sorted;
  sorted.reserve(result.size());
  FlatIndex idx;
  for (std::size_t i = 0; i < order.size(); ++i) {
    idx.emplace(keys[order[i]], static_cast<int>(i));
    sorted.push_back(std::move(result[order[i]]));
  }
  flats_[dim] = std::move(sorted);
  index_[dim] = std::move(idx);
}

const std::vector<Flat>& Geometry::flats(int dim) const {
  if (dim < 0 || dim > r_) throw std::out_of_range("flat dimension out of range");
  std::call_once(*once_[dim], [&] { build_dimension(dim); });
  return flats_[dim];
}

std::int64_t Geometry::num_flats(int dim) const { return gaussian_binomial(r_ + 1, dim + 1, q()); }

FlatRef Geometry::span_of_vectors(std::span<const PackedVector> vecs) const {
  std::vector<PackedVector> rows;
  for (auto x : vecs)
    if (x != 0) rows.push_back(x);
  if (rows.empty()) throw std::invalid_argument("cannot span the empty set");
  const int rank = rref(rows, nullptr);
  const int dim = rank - 1;
  if (dim == r_) return {r_, 0};
  if (dim == 0) return {0, point_of(rows[0])};
  flats(dim);
  auto it = index_[dim].find(rows);
  if (it == index_[dim].end()) throw std::logic_error("flat missing from geometry tables");
  return {dim, it->second};
}

FlatRef Geometry::span_of_points(std::span<const int> points) const {
  std::vector<PackedVector> vecs;
  vecs.reserve(points.size());
  for (int p : points) vecs.push_back(packed(p));
  return span_of_vectors(vecs);
}

FlatRef Geometry::locate(const Flat& f) const { return span_of_points(f.basis); }

std::vector<int> Geometry::hyperplanes_containing(const Flat& f) const {
  std::vector<int> out;
  if (f.dim >= r_) return out;
  for (int h : hyperplanes_through(f.basis[0])) {
    bool all = true;
    for (std::size_t i = 1; i < f.basis.size() && all; ++i) all = hyperplane_contains(h, f.basis[i]);
    if (all) out.push_back(h);
  }
  return out;
}

bool incident(const Geometry& g, const Flat& f, int point) {
  if (f.dim == g.r()) return true;
  if (f.dim == g.r() - 1 && !f.dual.empty()) return g.dot(g.pack(f.dual), g.packed(point)) == 0;
  return std::binary_search(f.points.begin(), f.points.end(), point);
}

FlatRef span(const Geometry& g, std::span<const FlatRef> parts) {
  std::vector<int> pts;
  for (auto f : parts) {
    const auto& b = g.flat(f).basis;
    pts.insert(pts.end(), b.begin(), b.end());
  }
  return g.span_of_points(pts);
}

FlatRef span_points(const Geometry& g, std::span<const int> points) { return g.span_of_points(points); }

int project(const Geometry& g, const Flat& delta, const Flat& pi, int Q) {
  if (delta.dim + pi.dim != g.r() - 1)
    throw std::invalid_argument("projection needs flats of complementary dimension");
  std::vector<int> common;
  std::set_intersection(delta.points.begin(), delta.points.end(), pi.points.begin(), pi.points.end(),
                        std::back_inserter(common));
  if (!common.empty()) throw std::invalid_argument("projection center and target must be disjoint");
  if (std::binary_search(delta.points.begin(), delta.points.end(), Q))
    throw std::domain_error("projection undefined on center");
  std::vector<int> gens = delta.basis;
  gens.push_back(Q);
  const Flat& s = g.flat(g.span_of_points(gens));
  common.clear();
  std::set_intersection(s.points.begin(), s.points.end(), pi.points.begin(), pi.points.end(),
                        std::back_inserter(common));
  if (common.size() != 1) throw std::logic_error("projection image is not a single point");
  return common[0];
}

int determinant(const SquareMatrix& m, const PrimeField& field) {
  SquareMatrix a = m;
  const int n = a.n;
  int det = 1;
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(sel, j));
      det = field.neg(det);
    }
    det = field.mul(det, a(col, col));
    const int inv = field.inv(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      const int f = field.mul(a(i, col), inv);
      if (f == 0) continue;
      for (int j = col; j < n; ++j) a(i, j) = field.sub(a(i, j), field.mul(f, a(col, j)));
    }
  }
  return det;
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b, const PrimeField& field) {
  SquareMatrix c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      int s = 0;
      for (int k = 0; k < a.n; ++k) s = field.add(s, field.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

SquareMatrix inverse(const SquareMatrix& m, const PrimeField& field) {
  const int n = m.n;
  SquareMatrix a = m, inv = SquareMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) throw std::invalid_argument("matrix is singular");
    for (int j = 0; j < n; ++j) {
      std::swap(a(col, j), a(sel, j));
      std::swap(inv(col, j), inv(sel, j));
    }
    const int p = field.inv(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = field.mul(a(col, j), p);
      inv(col, j) = field.mul(inv(col, j), p);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const int f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) = field.sub(a(i, j), field.mul(f, a(col, j)));
        inv(i, j) = field.sub(inv(i, j), field.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

Collineation::Collineation(std::shared_ptr<const Geometry> g, SquareMatrix m) : g_(std::move(g)), m_(std::move(m)) {
  if (m_.n != g_->r() + 1) throw std::invalid_argument("collineation matrix has wrong size");
  for (auto& x : m_.a) x = g_->field().reduce(x);
  if (determinant(m_, g_->field()) == 0) throw std::invalid_argument("collineation matrix is singular");
}

PackedVector Collineation::apply_vector(PackedVector x) const {
  const int n = m_.n;
  std::vector<int> c(n), y(n, 0);
  g_->unpack(x, c);
  const auto& f = g_->field();
  for (int i = 0; i < n; ++i) {
    int s = 0;
    for (int j = 0; j < n; ++j) s = f.add(s, f.mul(m_(i, j), c[j]));
    y[i] = s;
  }
  return g_->pack(y);
}

int Collineation::apply(int point) const { return g_->point_of(apply_vector(g_->packed(point))); }

FlatRef Collineation::apply(const Flat& f) const {
  std::vector<int> img;
  for (int b : f.basis) img.push_back(apply(b));
  return g_->span_of_points(img);
}

std::vector<int> Collineation::point_permutation() const {
  std::vector<int> out(g_->num_points());
  for (int p = 0; p < g_->num_points(); ++p) out[p] = apply(p);
  return out;
}

int apply_collineation(const std::shared_ptr<const Geometry>& g, const SquareMatrix& m, int point) {
  return Collineation(g, m).apply(point);
}

}  // namespace minihyper
