#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minihyper/multiset.hpp"

namespace minihyper {

struct CodeParams {
  std::int64_t n = 0;
  int k = 0;
  std::int64_t d = 0;
  int q = 0;
  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// A k x n generator matrix over GF(q) of full rank with no zero column.
class GeneratorMatrix {
 public:
  GeneratorMatrix(int k, int n, int q, std::vector<int> entries);

  int k() const { return k_; }
  int n() const { return n_; }
  int q() const { return q_; }
  int operator()(int row, int col) const { return entries_[static_cast<std::size_t>(row) * n_ + col]; }
  std::vector<int> column(int col) const;

 private:
  int k_, n_, q_;
  std::vector<int> entries_;
};

/// g_q(k,d) = sum_{i<k} ceil(d / q^i).
std::int64_t griesmer_bound(int q, int k, std::int64_t d);

/// Column multiset of G in PG(k-1,q).
Multiset arc_from_generator(const GeneratorMatrix& g);

/// A generator matrix whose columns are the points of K, repeated by multiplicity.
/// The points of K must span the whole space.
GeneratorMatrix generator_from_arc(const Multiset& k);

/// [n, r+1, n - w_max] for the arc K.
CodeParams code_parameters(const Multiset& arc);
bool meets_griesmer_bound(const CodeParams& c);

struct DistanceCheck {
  std::int64_t by_enumeration = 0;  ///< minimum weight over projective codeword classes
  std::int64_t by_arc = 0;          ///< n - max hyperplane multiplicity of the column arc
};

/// Both routes to the minimum distance. Refuses (std::length_error) when
/// q^k exceeds `max_codewords`.
DistanceCheck min_distance_routes(const GeneratorMatrix& g, std::int64_t max_codewords = std::int64_t{1} << 26);

/// Minimum distance; throws std::logic_error if the two routes disagree.
std::int64_t min_distance(const GeneratorMatrix& g, std::int64_t max_codewords = std::int64_t{1} << 26);

// File format: "k n q" then k rows of n entries (space separated or packed digits).
GeneratorMatrix parse_generator(std::string_view text);
std::string to_text(const GeneratorMatrix& g);
GeneratorMatrix read_generator_file(const std::string& path);

}  // namespace minihyper
