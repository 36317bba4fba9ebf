#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minihyper/classifier.hpp"
#include "minihyper/multiset.hpp"
#include "minihyper/theorems.hpp"

namespace minihyper {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema = 1;

/// Everything `analyze` prints for one multiset.
struct Analysis {
  Multiset multiset;
  SpectrumReport spectrum;
  Parameters as_minihyper;
  Parameters as_arc;
  std::vector<Mult> gammas;  ///< gamma_j for j = 0..r
  BoundAudit eq1;
  BoundAudit eq2;
  std::vector<TheoremReport> theorems;
  std::optional<StandardEquations> standard;
  std::vector<std::string> labels;
};

/// Runs every checker that makes sense for the geometry of K (Kanda needs
/// q = 3, the standard equations need a 70-point multiset of PG(4,3)).
Analysis analyze(const Multiset& k);

/// Largest e >= 1 with w = n (mod p^e), or 1 when there is none.
int ward_exponent(Mult n, Mult w, int p);

Json point_json(const Geometry& g, int p);
Json to_json(const SpectrumReport& s);
Json to_json(const TheoremReport& r, const Geometry& g);
Json to_json(const StandardEquations& s);
Json to_json(const Analysis& a);
Json to_json(const Catalog& c);

std::string to_text(const TheoremReport& r, const Geometry& g);
std::string to_text(const StandardEquations& s);
std::string to_text(const Analysis& a);
/// Short human summary of a catalog (the file format is to_text(Catalog)).
std::string summary_text(const Catalog& c);

}  // namespace minihyper
