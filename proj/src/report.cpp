#include "minihyper/report.hpp"

#include <sstream>

#include "minihyper/structural.hpp"

namespace minihyper {

namespace {

std::string coords_text(const Geometry& g, int p) {
  std::string s = "(";
  const auto c = g.coords(p);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

std::string params_text(const Parameters& p) {
  return "(" + std::to_string(p.n) + "," + std::to_string(p.w) + ")";
}

Json params_json(const Parameters& p) { return Json{{"n", p.n}, {"w", p.w}, {"mode", to_string(p.mode)}}; }

Json counts_json(const std::map<Mult, std::int64_t>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::string counts_text(const std::map<Mult, std::int64_t>& m) {
  std::string s = "{";
  bool first = true;
  // largest multiplicity first, as spectra are usually written
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(it->first) + ":" + std::to_string(it->second);
  }
  return s + "}";
}

Json conclusion_json(const Conclusion& c, const Geometry& g) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ReductionPoints> || std::is_same_v<T, ExtensionPoints>) {
          Json pts = Json::array();
          for (int p : x.points) pts.push_back(point_json(g, p));
          return Json{{"kind", std::is_same_v<T, ReductionPoints> ? "reduction-points" : "extension-points"},
                      {"points", pts},
                      {"result", params_json(x.result)}};
        } else if constexpr (std::is_same_v<T, LineSplit>) {
          Json pts = Json::array();
          for (int p : x.line_points) pts.push_back(point_json(g, p));
          return Json{{"kind", "line-split"}, {"line", x.line}, {"line_points", pts}, {"residual", params_json(x.residual)}};
        } else if constexpr (std::is_same_v<T, Divisibility>) {
          return Json{{"kind", "divisibility"}, {"modulus", x.modulus}, {"residue", x.residue}};
        } else {
          Json d = Json::array();
          for (int p = 0; p < static_cast<int>(x.delta.size()); ++p)
            if (x.delta[p]) d.push_back(Json{{"point", point_json(g, p)}, {"change", x.delta[p]}});
          return Json{{"kind", x.reduction ? "two-reduction" : "two-extension"},
                      {"delta", d},
                      {"result", params_json(x.result)}};
        }
      },
      c);
}

std::string conclusion_text(const Conclusion& c, const Geometry& g) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ReductionPoints> || std::is_same_v<T, ExtensionPoints>) {
          os << (std::is_same_v<T, ReductionPoints> ? "reduction point(s):" : "extension point(s):");
          for (int p : x.points) os << ' ' << coords_text(g, p);
          if (x.points.size() == 1) os << " -> " << params_text(x.result);
        } else if constexpr (std::is_same_v<T, LineSplit>) {
          os << "line L:";
          for (int p : x.line_points) os << ' ' << coords_text(g, p);
          os << "; F' = F - chi_L has parameters " << params_text(x.residual);
        } else if constexpr (std::is_same_v<T, Divisibility>) {
          os << "every hyperplane = " << x.residue << " (mod " << x.modulus << ")";
        } else {
          os << (x.reduction ? "2-reduction:" : "2-extension:");
          for (int p = 0; p < static_cast<int>(x.delta.size()); ++p)
            if (x.delta[p]) os << ' ' << coords_text(g, p) << "x" << x.delta[p];
          os << " -> " << params_text(x.result);
        }
      },
      c);
  return os.str();
}

}  // namespace

int ward_exponent(Mult n, Mult w, int p) {
  int e = 0;
  Mult pe = p;
  while (e < 30 && ((w - n) % pe + pe) % pe == 0 && w != n) {
    ++e;
    pe *= p;
  }
  return std::max(e, 1);
}

Analysis analyze(const Multiset& k) {
  const auto& g = k.geometry();
  Analysis a{k, spectrum(k), parameters(k, Mode::minihyper), parameters(k, Mode::arc), {}, {}, {}, {}, {}, {}};
  for (int j = 0; j <= g.r(); ++j) a.gammas.push_back(gamma(k, j));
  a.eq1 = audit_eq1(k);
  a.eq2 = audit_eq2(k);
  for (Mode mode : {Mode::minihyper, Mode::arc}) {
    const Parameters p = mode == Mode::minihyper ? a.as_minihyper : a.as_arc;
    a.theorems.push_back(ward_check(k, mode, ward_exponent(p.n, p.w, g.q())));
    a.theorems.push_back(hill_lizak(k, mode));
    if (g.q() == 3) a.theorems.push_back(kanda(k, mode));
  }
  a.theorems.push_back(main_reduction(k));
  if (g.r() == 4 && g.q() == 3 && k.cardinality() == 70) a.standard = standard_equations(k);
  a.labels = structural_match(k);
  return a;
}

Json point_json(const Geometry& g, int p) {
  const auto c = g.coords(p);
  return Json(std::vector<int>(c.begin(), c.end()));
}

Json to_json(const SpectrumReport& s) {
  return Json{{"n", s.n}, {"w_min", s.w_min}, {"w_max", s.w_max}, {"a", counts_json(s.a)}, {"lambda", counts_json(s.lambda)}};
}

Json to_json(const TheoremReport& r, const Geometry& g) {
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses) hyps.push_back(Json{{"name", h.name}, {"satisfied", h.satisfied}, {"evidence", h.evidence}});
  Json res = Json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  Json j{{"theorem", to_string(r.theorem)},
         {"mode", to_string(r.mode)},
         {"input", params_json(r.input)},
         {"hypotheses", hyps},
         {"applicable", r.applicable},
         {"conclusion", r.conclusion ? conclusion_json(*r.conclusion, g) : Json(nullptr)},
         {"conclusion_verified", r.conclusion_verified},
         {"falsified", r.falsified()},
         {"violations", r.violations},
         {"inconsistencies", r.inconsistencies},
         {"residuals", res}};
  return j;
}

Json to_json(const StandardEquations& s) {
  return Json{{"hyperplane_count", s.hyperplane_count},
              {"incidence_sum", s.incidence_sum},
              {"pair_sum", s.pair_sum},
              {"pair_rhs", s.pair_rhs},
              {"residual_count", s.residual_count},
              {"residual_incidence", s.residual_incidence},
              {"residual_pairs", s.residual_pairs},
              {"residual_reduced_lambda3_x27", s.residual_reduced_lambda3_x27},
              {"residual_reduced_lambda6_x27", s.residual_reduced_lambda6_x27},
              {"support_in_six_values", s.support_in_six_values},
              {"points_above_4", s.points_above_4},
              {"balanced_reading", s.balanced_reading}};
}

Json to_json(const Analysis& a) {
  const auto& g = a.multiset.geometry();
  Json th = Json::array();
  for (const auto& r : a.theorems) th.push_back(to_json(r, g));
  Json j{{"schema", report_schema},
         {"command", "analyze"},
         {"geometry", Json{{"r", g.r()}, {"q", g.q()}}},
         {"parameters", Json{{"minihyper", params_json(a.as_minihyper)}, {"arc", params_json(a.as_arc)}}},
         {"spectrum", to_json(a.spectrum)},
         {"gamma", a.gammas},
         {"bound_audits",
          Json{{"eq1", Json{{"checked", a.eq1.checked}, {"violations", a.eq1.violations}}},
               {"eq2", Json{{"checked", a.eq2.checked}, {"violations", a.eq2.violations}}}}},
         {"theorems", th},
         {"standard_equations", a.standard ? to_json(*a.standard) : Json(nullptr)},
         {"labels", a.labels}};
  return j;
}

Json to_json(const Catalog& c) {
  Json reps = Json::array();
  for (const auto& r : c.representatives) {
    Json pts = Json::array();
    const auto& g = r.multiset.geometry();
    for (int p = 0; p < g.num_points(); ++p)
      if (r.multiset[p]) pts.push_back(Json{{"point", point_json(g, p)}, {"m", r.multiset[p]}});
    reps.push_back(Json{{"certificate", r.certificate},
                        {"automorphism_order", r.automorphism_order},
                        {"labels", structural_match(r.multiset)},
                        {"points", pts}});
  }
  return Json{{"schema", report_schema},
              {"command", "classify"},
              {"r", c.r},
              {"q", c.q},
              {"n", c.n},
              {"w", c.w},
              {"mode", to_string(c.mode)},
              {"multiplicity_cap", c.cap},
              {"complete", c.complete},
              {"representatives", reps},
              {"search_stats",
               Json{{"nodes", c.stats.nodes},
                    {"prunes", c.stats.prunes},
                    {"symmetry_prunes", c.stats.symmetry_prunes},
                    {"leaves", c.stats.leaves},
                    {"tasks_done", c.stats.tasks_done},
                    {"tasks_total", c.stats.tasks_total}}}};
}

std::string to_text(const TheoremReport& r, const Geometry& g) {
  std::ostringstream os;
  os << to_string(r.theorem) << " [" << to_string(r.mode) << "] on " << params_text(r.input) << ": "
     << (r.falsified() ? "FALSIFIED" : r.applicable ? (r.conclusion_verified ? "verified" : "applicable")
                                                    : "not applicable")
     << '\n';
  for (const auto& h : r.hypotheses)
    os << "  [" << (h.satisfied ? "x" : " ") << "] " << h.name << " -- " << h.evidence << '\n';
  if (r.conclusion) os << "  conclusion: " << conclusion_text(*r.conclusion, g) << '\n';
  for (const auto& v : r.violations) os << "  VIOLATION: " << v << '\n';
  for (const auto& v : r.inconsistencies) os << "  inconsistent input: " << v << '\n';
  for (const auto& [k, v] : r.residuals) os << "  " << k << " = " << v << '\n';
  return os.str();
}

std::string to_text(const StandardEquations& s) {
  std::ostringstream os;
  os << "standard equations:\n"
     << "  sum a_i = " << s.hyperplane_count << " (residual " << s.residual_count << ")\n"
     << "  sum i a_i = " << s.incidence_sum << " (residual " << s.residual_incidence << ")\n"
     << "  sum C(i,2) a_i = " << s.pair_sum << ", right side " << s.pair_rhs << " (residual " << s.residual_pairs
     << ")\n"
     << "  reduced identity x27, Lambda_3 reading: residual " << s.residual_reduced_lambda3_x27 << '\n'
     << "  reduced identity x27, Lambda_6 reading: residual " << s.residual_reduced_lambda6_x27 << '\n'
     << "  balanced reading: " << s.balanced_reading << '\n'
     << "  spectrum within {22,25,31,34,40,43}: " << (s.support_in_six_values ? "yes" : "no") << '\n'
     << "  points of multiplicity > 4: " << s.points_above_4 << '\n';
  return os.str();
}

std::string to_text(const Analysis& a) {
  const auto& g = a.multiset.geometry();
  std::ostringstream os;
  os << "PG(" << g.r() << "," << g.q() << ")\n";
  os << "as minihyper: " << params_text(a.as_minihyper) << "\n";
  os << "as arc: " << params_text(a.as_arc) << "\n";
  os << "a = " << counts_text(a.spectrum.a) << "\n";
  os << "lambda = " << counts_text(a.spectrum.lambda) << "\n";
  os << "gamma =";
  for (Mult x : a.gammas) os << ' ' << x;
  os << "\n";
  os << "eq1 audit: " << a.eq1.checked << " flats, " << a.eq1.violations << " below bound\n";
  os << "eq2 audit: " << a.eq2.checked << " hyperlines, " << a.eq2.violations << " below bound\n";
  os << "labels:";
  if (a.labels.empty()) os << " (none)";
  for (const auto& l : a.labels) os << ' ' << l;
  os << "\n\n";
  for (const auto& r : a.theorems) os << to_text(r, g) << '\n';
  if (a.standard) os << to_text(*a.standard);
  return os.str();
}

std::string summary_text(const Catalog& c) {
  std::ostringstream os;
  os << "(" << c.n << "," << c.w << ")-" << to_string(c.mode) << "s in PG(" << c.r << "," << c.q << ") with cap " << c.cap
     << ": " << c.representatives.size() << " class(es), " << (c.complete ? "complete" : "INCOMPLETE") << '\n';
  for (const auto& r : c.representatives) {
    os << "  " << r.certificate << "  |Aut| = " << r.automorphism_order;
    const auto labels = structural_match(r.multiset);
    if (!labels.empty()) {
      os << "  [";
      for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << labels[i];
      os << "]";
    }
    os << '\n';
  }
  os << "  nodes " << c.stats.nodes << ", bound prunes " << c.stats.prunes << ", symmetry prunes "
     << c.stats.symmetry_prunes << ", tasks " << c.stats.tasks_done << "/" << c.stats.tasks_total << '\n';
  return os.str();
}

}  // namespace minihyper
