#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minihyper/multiset.hpp"

namespace minihyper {

/// Per-point invariant: the multiplicity in the high 32 bits, a hash of the
/// sorted multiplicities of the hyperplanes through the point in the low bits.
/// Unchanged by collineations. Multiplicities must stay below 2^31.
std::vector<std::uint64_t> point_keys(const Multiset& k);

struct CanonicalForm {
  /// K relabelled by `transform`: canonical[i] = K[transform . x_i].
  Multiset multiset;
  std::int64_t automorphism_order = 0;
  /// Equal for two multisets of one geometry iff they are projectively equivalent.
  std::string certificate;
  SquareMatrix transform;
};

/// Lexicographically largest relabelling of the point keys over PGL(r+1,q),
/// found by backtracking over the columns of the transforming matrix with
/// automorphism pruning. The automorphism order counts the optimal leaves.
CanonicalForm canonical_form(const Multiset& k);

/// (r, q, canonical multiplicities) as a compact string.
std::string make_certificate(int r, int q, std::span<const Mult> canonical);

/// Whether two multisets of the same geometry are projectively equivalent.
bool equivalent(const Multiset& a, const Multiset& b);

}  // namespace minihyper
