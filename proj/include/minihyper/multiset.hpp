#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minihyper/projective_space.hpp"

namespace minihyper {

using Mult = std::int64_t;

/// A multiplicity function on the points of a geometry.
class Multiset {
 public:
  explicit Multiset(std::shared_ptr<const Geometry> g);
  Multiset(std::shared_ptr<const Geometry> g, std::vector<Mult> mult);

  /// chi_F: multiplicity 1 on the points of f.
  static Multiset indicator(std::shared_ptr<const Geometry> g, const Flat& f);
  static Multiset indicator(std::shared_ptr<const Geometry> g, std::span<const int> points);

  const Geometry& geometry() const { return *geom_; }
  const std::shared_ptr<const Geometry>& geometry_ptr() const { return geom_; }

  Mult operator[](int p) const { return mult_[p]; }
  std::span<const Mult> values() const { return mult_; }
  std::size_t size() const { return mult_.size(); }

  Mult cardinality() const;
  Mult max_point_multiplicity() const;
  bool is_projective() const { return max_point_multiplicity() <= 1; }

  Multiset with_point(int p, Mult delta) const;
  Multiset scaled(Mult factor) const;

  Multiset& operator+=(const Multiset& o);
  Multiset& operator-=(const Multiset& o);
  friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }
  friend Multiset operator-(Multiset a, const Multiset& b) { return a -= b; }
  friend bool operator==(const Multiset& a, const Multiset& b);

 private:
  std::shared_ptr<const Geometry> geom_;
  std::vector<Mult> mult_;
};

enum class Mode { arc, minihyper };

std::string to_string(Mode m);
Mode parse_mode(std::string_view s);

struct SpectrumReport {
  std::map<Mult, std::int64_t> a;       ///< hyperplane multiplicity -> count
  std::map<Mult, std::int64_t> lambda;  ///< point multiplicity -> count
  Mult n = 0;
  Mult w_min = 0;
  Mult w_max = 0;

  std::int64_t a_at(Mult i) const {
    auto it = a.find(i);
    return it == a.end() ? 0 : it->second;
  }
  std::int64_t lambda_at(Mult j) const {
    auto it = lambda.find(j);
    return it == lambda.end() ? 0 : it->second;
  }
};

struct Parameters {
  Mult n = 0;
  Mult w = 0;
  Mode mode = Mode::minihyper;
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

Mult multiplicity(const Multiset& k, const Flat& f);
/// K(H) for every hyperplane, indexed like Geometry::hyperplane.
std::vector<Mult> hyperplane_multiplicities(const Multiset& k);

SpectrumReport spectrum(const Multiset& k);
/// (n,w) with w the maximum (arc) or minimum (minihyper) hyperplane multiplicity.
Parameters parameters(const Multiset& k, Mode mode);
/// Largest multiplicity of a flat of dimension `dim`.
Mult gamma(const Multiset& k, int dim);

/// s - K pointwise. Throws std::invalid_argument when s is below the largest
/// point multiplicity.
Multiset complement(const Multiset& k, Mult s);

/// The restriction of K to f, as a multiset on PG(dim f, q) through the chart
/// given by the echelon basis of f.
Multiset restrict_to(const Multiset& k, const Flat& f);

/// Induced multiset K^phi of the projection from delta onto pi. The result is
/// supported on the points of pi and lives in the ambient geometry, so
/// multiplicity(result, phi(S)) = K(S) - K(delta) for every flat S through delta.
Multiset project_multiset(const Multiset& k, const Flat& delta, const Flat& pi);

/// Points P with K(P) >= 1 such that every hyperplane through P has
/// multiplicity at least w+1; removing one unit at P keeps an (n-1,w)-minihyper.
std::vector<int> one_reducible_points(const Multiset& f, Mult w);

/// A multiset D <= F of total t such that F - D is an (n-t,w)-minihyper, if one
/// exists. Supports of size <= t are searched exhaustively. t above `max_t`
/// is refused with std::invalid_argument.
std::optional<Multiset> t_reducible(const Multiset& f, Mult w, int t, int max_t = 2);

/// A multiset D of total t such that K + D is an (n+t,w)-arc, if one exists.
std::optional<Multiset> t_extendable(const Multiset& k, Mult w, int t, int max_t = 2);

// Text format: "PG r q" then one "c0 ... cr m" line per point with m > 0.
std::string to_text(const Multiset& k);
Multiset parse_multiset(std::string_view text);
Multiset read_multiset_file(const std::string& path);
void write_multiset_file(const Multiset& k, const std::string& path);

}  // namespace minihyper
