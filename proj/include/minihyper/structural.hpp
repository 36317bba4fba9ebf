#pragma once

#include <string>
#include <vector>

#include "minihyper/multiset.hpp"

namespace minihyper {

/// Decompositions K = sum of chi_{f_i} with dim f_i = dims[i] (dims sorted
/// descending). Returns the flats of the first decomposition found.
std::optional<std::vector<FlatRef>> decompose_into_flats(const Multiset& k, std::vector<int> dims);

/// Whether K is chi_{pi1 u pi2} + chi_M1 + chi_M2 for distinct planes pi1, pi2
/// and skew lines M1, M2 each meeting pi1 u pi2 only in points of the common
/// line (PG(3,q)).
bool is_two_planes_two_lines(const Multiset& k);

/// Family labels, e.g. "projective", "cap-complement", "(21,6)-type-(alpha)",
/// "(30,9)-type-(c)", "(70,22)-type-(A)", "(70,22)-type-(B)". Sorted.
std::vector<std::string> structural_match(const Multiset& k);

}  // namespace minihyper
