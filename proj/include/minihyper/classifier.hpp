#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minihyper/canonical.hpp"
#include "minihyper/multiset.hpp"

namespace minihyper {

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t prunes = 0;           ///< cut by counting bounds
  std::int64_t symmetry_prunes = 0;  ///< cut because a relabelling beats the prefix
  std::int64_t leaves = 0;           ///< complete assignments reaching canonical dedupe
  std::int64_t tasks_total = 0;
  std::int64_t tasks_done = 0;
  double wall_seconds = 0;           ///< not part of the catalog file
};

struct Catalog {
  int r = 0;
  int q = 0;
  Mult n = 0;
  Mult w = 0;
  Mode mode = Mode::minihyper;
  Mult cap = 1;
  bool complete = false;
  /// Sorted by certificate.
  std::vector<CanonicalForm> representatives;
  SearchStats stats;
};

struct ClassifyOptions {
  int threads = 1;
  /// Total search nodes allowed; 0 means unlimited.
  std::int64_t node_budget = 0;
  /// Frontier file: read on start when it exists, written when the search stops
  /// early. Empty disables.
  std::string frontier_path;
  /// Depth at which the tree is cut into independent tasks.
  int split_depth = 4;
  /// Search nodes per prefix relabelling test.
  std::int64_t symmetry_check_budget = 4000;
};

/// Every (n,w)-minihyper (or arc) of PG(r,q) with point multiplicities <= cap,
/// up to projective equivalence. Throws std::invalid_argument for cap < 1 or
/// geometries beyond the default budget.
Catalog classify(int r, int q, Mult n, Mult w, Mode mode, Mult cap, const ClassifyOptions& opts = {});

// Catalog text format: "CATALOG r q n w mode cap complete|incomplete", then one
// multiset block per representative separated by blank lines, then "#" stats.
std::string to_text(const Catalog& c);
Catalog parse_catalog(std::string_view text);
void write_catalog_file(const Catalog& c, const std::string& path);
Catalog read_catalog_file(const std::string& path);

}  // namespace minihyper
