#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "minihyper/prime_field.hpp"

namespace minihyper {

/// Number of points of PG(k-1,q), i.e. (q^k - 1)/(q - 1). v(0,q) = 0.
/// Throws std::overflow_error instead of wrapping.
std::int64_t v(int k, int q);

/// Gaussian binomial coefficient [n choose k]_q, the number of
/// (k-1)-dimensional flats of PG(n-1,q). Throws std::overflow_error.
std::int64_t gaussian_binomial(int n, int k, int q);

/// Coordinates packed as a base-q integer, first coordinate most significant.
/// Numeric order of packed vectors is the lexicographic order of coordinates.
using PackedVector = std::uint32_t;

/// Handle to a flat stored in a Geometry.
struct FlatRef {
  int dim = 0;
  int index = 0;
  friend bool operator==(FlatRef, FlatRef) = default;
  friend auto operator<=>(FlatRef, FlatRef) = default;
};

struct Flat {
  int dim = 0;
  /// Reduced-echelon basis rows, as point indices (each row is normalized).
  std::vector<int> basis;
  /// Pivot column of each basis row.
  std::vector<int> pivots;
  /// Sorted point indices.
  std::vector<int> points;
  /// Points in chart order: chart[j] is the point whose coordinates in the
  /// basis are the coordinates of point j of PG(dim,q).
  std::vector<int> chart;
  /// Hyperplanes only: normalized coefficients of the defining linear form.
  std::vector<int> dual;

  std::size_t size() const { return points.size(); }
};

struct SizeBudget {
  std::int64_t max_points = 1 << 20;
  /// Middle-dimension flats are enumerated at build time when their total
  /// count stays below this; otherwise each dimension is built on first use.
  std::int64_t max_eager_flats = 100000;
};

/// A dense (r+1)x(r+1) matrix over GF(q).
struct SquareMatrix {
  int n = 0;
  std::vector<int> a;

  SquareMatrix() = default;
  explicit SquareMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0) {}
  static SquareMatrix identity(int size);

  int& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  int operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// The projective space PG(r,q) over a prime field: points in lexicographic
/// normalized order, flats of every dimension, and hyperplane incidence bitsets.
/// Hyperplane h is the zero set of the form whose coefficients are the
/// coordinates of point h. Immutable once built; safe for concurrent reads.
class Geometry {
  struct Private {};

 public:
  Geometry(Private, int r, int q, const SizeBudget& budget);
  Geometry(const Geometry&) = delete;
  Geometry& operator=(const Geometry&) = delete;

  static std::shared_ptr<const Geometry> build(int r, int q, const SizeBudget& budget = {});
  /// Process-wide cache of geometries built with the default budget.
  static std::shared_ptr<const Geometry> shared(int r, int q);

  int r() const { return r_; }
  int q() const { return field_.order(); }
  const PrimeField& field() const { return field_; }

  int num_points() const { return num_points_; }
  int num_hyperplanes() const { return num_points_; }
  std::span<const int> coords(int p) const {
    return {coords_.data() + static_cast<std::size_t>(p) * (r_ + 1), static_cast<std::size_t>(r_ + 1)};
  }

  // Packed-vector arithmetic.
  std::uint32_t num_vectors() const { return num_vectors_; }
  PackedVector packed(int p) const { return point_vec_[p]; }
  PackedVector pack(std::span<const int> c) const;
  void unpack(PackedVector x, std::span<int> out) const;
  PackedVector vec_add(PackedVector a, PackedVector b) const;
  PackedVector vec_scale(int s, PackedVector a) const;
  int dot(PackedVector a, PackedVector b) const;
  /// Point index of the normalization of x, or -1 for the zero vector.
  int point_of(PackedVector x) const { return point_of_vec_[x]; }
  /// Leading (first nonzero) coordinate of x; 0 for the zero vector.
  int leading(PackedVector x) const { return leading_of_vec_[x]; }

  /// Index of the point with the given (not necessarily normalized) coordinates.
  int point_index(std::span<const int> c) const;

  const std::vector<Flat>& flats(int dim) const;
  const Flat& flat(FlatRef f) const { return flats(f.dim)[f.index]; }
  const Flat& hyperplane(int h) const { return flats_[r_ - 1][h]; }
  const Flat& whole_space() const { return flats_[r_][0]; }
  std::int64_t num_flats(int dim) const;

  bool hyperplane_contains(int h, int p) const {
    return (hyper_bits_[static_cast<std::size_t>(h) * words_ + (p >> 6)] >> (p & 63)) & 1U;
  }
  std::span<const std::uint64_t> hyperplane_bits(int h) const {
    return {hyper_bits_.data() + static_cast<std::size_t>(h) * words_, words_};
  }
  std::span<const int> hyperplanes_through(int p) const {
    return {through_.data() + static_cast<std::size_t>(p) * hyper_per_point_, hyper_per_point_};
  }

  /// Smallest flat containing all given vectors (zero vectors ignored).
  /// At least one nonzero vector is required.
  FlatRef span_of_vectors(std::span<const PackedVector> vecs) const;
  FlatRef span_of_points(std::span<const int> points) const;
  FlatRef locate(const Flat& f) const;

  /// Hyperplanes containing every point of f.
  std::vector<int> hyperplanes_containing(const Flat& f) const;

 private:
  void build_dimension(int dim) const;
  void make_flat(int dim, std::vector<PackedVector> rows, Flat& out) const;
  int rref(std::vector<PackedVector>& rows, std::vector<int>* pivots) const;

  int r_;
  PrimeField field_;
  int num_points_ = 0;
  std::uint32_t num_vectors_ = 0;
  std::vector<std::uint32_t> pow_;
  std::vector<int> point_of_vec_;
  std::vector<std::uint8_t> leading_of_vec_;
  std::vector<PackedVector> point_vec_;
  std::vector<int> coords_;
  // chart_coeffs_[d]: coordinates of the points of PG(d,q), row-major.
  std::vector<std::vector<int>> chart_coeffs_;

  std::size_t words_ = 0;
  std::vector<std::uint64_t> hyper_bits_;
  std::size_t hyper_per_point_ = 0;
  std::vector<int> through_;

  struct KeyHash {
    std::size_t operator()(const std::vector<PackedVector>& k) const noexcept;
  };
  using FlatIndex = std::unordered_map<std::vector<PackedVector>, int, KeyHash>;

  // Middle dimensions may be filled lazily; guarded by once-flags.
  mutable std::vector<std::vector<Flat>> flats_;
  mutable std::vector<FlatIndex> index_;
  mutable std::vector<std::unique_ptr<std::once_flag>> once_;
};

/// build_geometry(r,q): rejects non-prime q and spaces beyond the size budget.
std::shared_ptr<const Geometry> build_geometry(int r, int q, const SizeBudget& budget = {});

bool incident(const Geometry& g, const Flat& f, int point);

/// Smallest flat containing all given flats.
FlatRef span(const Geometry& g, std::span<const FlatRef> parts);
FlatRef span_points(const Geometry& g, std::span<const int> points);

/// The projection from `delta` onto the complementary flat `pi`: the unique
/// point of pi on the span of delta and Q.
int project(const Geometry& g, const Flat& delta, const Flat& pi, int Q);

/// An invertible linear map acting on points of a geometry.
class Collineation {
 public:
  Collineation(std::shared_ptr<const Geometry> g, SquareMatrix m);

  const SquareMatrix& matrix() const { return m_; }
  PackedVector apply_vector(PackedVector x) const;
  int apply(int point) const;
  FlatRef apply(const Flat& f) const;
  /// image[p] = index of the image of point p.
  std::vector<int> point_permutation() const;

 private:
  std::shared_ptr<const Geometry> g_;
  SquareMatrix m_;
};

int determinant(const SquareMatrix& m, const PrimeField& field);
SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b, const PrimeField& field);
SquareMatrix inverse(const SquareMatrix& m, const PrimeField& field);

int apply_collineation(const std::shared_ptr<const Geometry>& g, const SquareMatrix& m, int point);

}  // namespace minihyper
