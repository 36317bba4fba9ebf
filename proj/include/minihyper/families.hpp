#pragma once

#include <string>
#include <vector>

#include "minihyper/multiset.hpp"

namespace minihyper {

/// Sum of indicator multisets of the given flats.
Multiset sum_of_flats(const std::shared_ptr<const Geometry>& g, std::span<const FlatRef> flats);

/// Points of x0*x1 = x2^2 in PG(2,q): a conic, q+1 points no three collinear.
std::vector<int> conic_points(const Geometry& g);
/// Points of x0*x1 + x2^2 + x3^2 = 0 in PG(3,3): the 10 points of an elliptic quadric.
std::vector<int> elliptic_quadric_points(const Geometry& g);
/// Whether no three of the points are collinear.
bool is_cap(const Geometry& g, std::span<const int> points);

/// 55 points of PG(4,3) meeting every solid in 10 or 19 points: the union of
/// the classes {1,3,4,5,9} of omega^i (i mod 11), omega primitive in GF(3^5)
/// with omega^5 = omega^4 + 2.
std::vector<int> cyclotomic_55_points(const Geometry& g);

/// The flat-sum families and witnesses used by the checks. Every entry knows
/// its ambient space and expected parameters.
struct FamilyInfo {
  std::string name;
  int r = 0;
  int q = 0;
  Parameters expected;
  std::string description;
};

const std::vector<FamilyInfo>& family_catalog();
/// Builds a named family in Geometry::shared(r,q). Throws std::invalid_argument
/// for unknown names.
Multiset construct_family(const std::string& name);

// Embeds a multiset of PG(3,q) into the given solid of PG(4,q) via its chart.
Multiset embed_in_hyperplane(const Multiset& k, const std::shared_ptr<const Geometry>& ambient, int hyperplane);

}  // namespace minihyper
