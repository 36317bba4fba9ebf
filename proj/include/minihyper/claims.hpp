#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace minihyper {

enum class ClaimStatus { pass, fail, unresolved };
std::string to_string(ClaimStatus s);

struct ClaimResult {
  int id = 0;
  std::string key;        ///< short stable name, e.g. "(21,6)-classification"
  std::string statement;  ///< what is checked
  ClaimStatus status = ClaimStatus::fail;
  std::string detail;
  double seconds = 0;
};

struct ClaimOptions {
  int threads = 1;
  /// Node budget for each classification; 0 means unlimited.
  std::int64_t budget = 0;
  std::uint64_t seed = 20240601;
  int fuzz_count = 10000;
  /// Ids to run; empty runs all twelve.
  std::vector<int> only;
};

/// The acceptance checks, one result per id in 1..12.
std::vector<ClaimResult> run_claims(const ClaimOptions& opts = {});

struct PropertyStats {
  std::int64_t multisets = 0;
  std::int64_t checks = 0;
  std::int64_t spectrum_violations = 0;
  std::int64_t complement_violations = 0;
  std::int64_t projection_violations = 0;
  std::int64_t collineation_violations = 0;
  std::int64_t total_violations() const {
    return spectrum_violations + complement_violations + projection_violations + collineation_violations;
  }
};

/// Random multisets over PG(2,3) and PG(3,3): spectrum identities, the
/// complement parameter transform, the projection contract and invariance of
/// spectra under random collineations.
PropertyStats property_suite(std::uint64_t seed, int count);

/// Generator matrices (text format) used by the distance cross-check.
struct FixtureCode {
  std::string name;
  std::string text;
  std::int64_t expected_d;
};
const std::vector<FixtureCode>& fixture_codes();

}  // namespace minihyper
