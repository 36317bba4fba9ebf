#include "minihyper/claims.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "minihyper/classifier.hpp"
#include "minihyper/code_bridge.hpp"
#include "minihyper/families.hpp"
#include "minihyper/structural.hpp"
#include "minihyper/theorems.hpp"

namespace minihyper {

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "PASS";
    case ClaimStatus::fail: return "FAIL";
    case ClaimStatus::unresolved: return "UNRESOLVED";
  }
  return "?";
}

const std::vector<FixtureCode>& fixture_codes() {
  static const std::vector<FixtureCode> codes = {
      {"[10,4,6]_3 elliptic quadric", "4 10 3\n0111111111\n1011112222\n0011220012\n0012121200\n", 6},
      {"[8,3,5]_3 complement of line plus point", "3 8 3\n00111111\n11001122\n12121212\n", 5},
      {"[11,6,5]_3 ternary Golay", "6 11 3\n20121100000\n02012110000\n00201211000\n00020121100\n00002012110\n00000201211\n", 5},
      {"[4,2,3]_3 Hamming", "2 4 3\n1011\n0112\n", 3},
      {"[3,3,1]_3 identity", "3 3 3\n100\n010\n001\n", 1},
      {"[3,1,3]_3 repetition", "1 3 3\n111\n", 3},
  };
  return codes;
}

namespace {

// drops the separator left after the last item
std::string trimmed(std::string s) {
  while (s.size() >= 2 && s.compare(s.size() - 2, 2, "; ") == 0) s.resize(s.size() - 2);
  return s;
}

using Clock = std::chrono::steady_clock;

Multiset random_multiset(const std::shared_ptr<const Geometry>& g, std::mt19937_64& rng, Mult maxm) {
  std::uniform_int_distribution<Mult> d(0, maxm);
  std::vector<Mult> m(g->num_points());
  for (auto& x : m) x = d(rng);
  return Multiset(g, std::move(m));
}

SquareMatrix random_invertible(const Geometry& g, std::mt19937_64& rng) {
  const int n = g.r() + 1;
  std::uniform_int_distribution<int> d(0, g.q() - 1);
  for (;;) {
    SquareMatrix m(n);
    for (auto& x : m.a) x = d(rng);
    if (determinant(m, g.field()) != 0) return m;
  }
}

bool contains(const Flat& big, const Flat& small) {
  return std::includes(big.points.begin(), big.points.end(), small.points.begin(), small.points.end());
}

bool disjoint(const Flat& a, const Flat& b) {
  std::vector<int> meet;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), std::back_inserter(meet));
  return meet.empty();
}

std::string params(const Parameters& p) { return "(" + std::to_string(p.n) + "," + std::to_string(p.w) + ")"; }

bool all_solids_one_mod_three(const Multiset& f) {
  const auto hm = hyperplane_multiplicities(f);
  return std::all_of(hm.begin(), hm.end(), [](Mult m) { return m % 3 == 1; });
}

const char* const witness_names[] = {"70-22-A-a", "70-22-A-b", "70-22-A-c"};

ClaimResult geometry_counts() {
  ClaimResult r{1, "geometry-counts", "PG(4,3): 121 points, 121 solids; PG(3,3): 40 points, 130 lines, 40 planes", {}, {}, 0};
  const auto g4 = Geometry::shared(4, 3);
  const auto g3 = Geometry::shared(3, 3);
  const std::int64_t lines_oracle = gaussian_binomial(4, 2, 3);
  const bool ok = g4->num_points() == 121 && g4->num_hyperplanes() == 121 && g4->num_flats(3) == 121 &&
                  g3->num_points() == 40 && g3->num_flats(1) == 130 && g3->num_flats(2) == 40 && lines_oracle == 130 &&
                  static_cast<std::int64_t>(g3->flats(1).size()) == 130;
  std::ostringstream os;
  os << "PG(4,3) " << g4->num_points() << " points / " << g4->num_flats(3) << " solids; PG(3,3) " << g3->num_points()
     << " points / " << g3->flats(1).size() << " lines (Gaussian binomial " << lines_oracle << ") / " << g3->num_flats(2)
     << " planes";
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClassifyOptions classify_options(const ClaimOptions& o) {
  ClassifyOptions c;
  c.threads = o.threads;
  c.node_budget = o.budget;
  return c;
}

ClaimResult no_11_3(const ClaimOptions& o) {
  ClaimResult r{2, "no-(11,3)-planar", "classify(2,3,11,3,minihyper,cap=3) is empty", {}, {}, 0};
  const Catalog c = classify(2, 3, 11, 3, Mode::minihyper, 3, classify_options(o));
  if (!c.complete) {
    r.status = ClaimStatus::unresolved;
    r.detail = "search budget exhausted after " + std::to_string(c.stats.nodes) + " nodes";
    return r;
  }
  r.status = c.representatives.empty() ? ClaimStatus::pass : ClaimStatus::fail;
  r.detail = std::to_string(c.representatives.size()) + " classes, " + std::to_string(c.stats.nodes) + " search nodes";
  return r;
}

ClaimResult planar_9_2(const ClaimOptions& o) {
  ClaimResult r{3, "(9,2)-oval-complement", "classify(2,3,9,2,cap=1) contains the complement of a 4-point oval", {}, {}, 0};
  const Catalog c = classify(2, 3, 9, 2, Mode::minihyper, 1, classify_options(o));
  if (!c.complete) {
    r.status = ClaimStatus::unresolved;
    r.detail = "search budget exhausted";
    return r;
  }
  const auto g = Geometry::shared(2, 3);
  int found = 0;
  for (const auto& rep : c.representatives) {
    std::vector<int> zeros;
    for (int p = 0; p < g->num_points(); ++p)
      if (rep.multiset[p] == 0) zeros.push_back(p);
    if (zeros.size() == 4 && is_cap(*g, zeros)) ++found;
  }
  r.status = found > 0 ? ClaimStatus::pass : ClaimStatus::fail;
  r.detail = std::to_string(c.representatives.size()) + " class(es); " + std::to_string(found) + " with an oval as zero set";
  return r;
}

ClaimResult classification_21_6(const ClaimOptions& o) {
  ClaimResult r{4, "(21,6)-classification",
                "classify(3,3,21,6,cap=3): every class has exactly one of the labels alpha/beta/gamma, alpha present",
                {}, {}, 0};
  const Catalog c = classify(3, 3, 21, 6, Mode::minihyper, 3, classify_options(o));
  if (!c.complete) {
    r.status = ClaimStatus::unresolved;
    r.detail = "search budget exhausted after " + std::to_string(c.stats.nodes) + " nodes";
    return r;
  }
  std::map<std::string, int> per_label;
  std::vector<std::string> bad;
  for (const auto& rep : c.representatives) {
    int hits = 0;
    for (const auto& l : structural_match(rep.multiset))
      if (l.rfind("(21,6)-type-", 0) == 0) {
        ++hits;
        ++per_label[l.substr(12)];
      }
    if (hits != 1)
      bad.push_back(rep.certificate + " (" + std::to_string(hits) + " labels, max multiplicity " +
                    std::to_string(rep.multiset.max_point_multiplicity()) + ")");
  }
  std::ostringstream os;
  os << c.representatives.size() << " classes;";
  for (const auto& [l, n] : per_label) os << ' ' << l << ':' << n;
  for (const auto& b : bad) os << "; unlabelled class " << b;
  r.detail = trimmed(os.str());
  r.status = bad.empty() && per_label.count("(alpha)") ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult witnesses_70_22() {
  ClaimResult r{5, "(70,22)-witnesses", "solid + (30,9) of type (a)/(b)/(c) is a (70,22)-minihyper, all solids = 1 (mod 3)",
                {}, {}, 0};
  bool ok = true;
  std::ostringstream os;
  const char* sub[] = {"(70,22)-type-(A)/(a)", "(70,22)-type-(A)/(b)", "(70,22)-type-(A)/(c)"};
  for (int i = 0; i < 3; ++i) {
    const Multiset f = construct_family(witness_names[i]);
    const Parameters p = parameters(f, Mode::minihyper);
    const auto labels = structural_match(f);
    const bool typed = std::find(labels.begin(), labels.end(), sub[i]) != labels.end();
    const bool mod3 = all_solids_one_mod_three(f);
    ok &= p == Parameters{70, 22, Mode::minihyper} && typed && mod3;
    os << (i ? "; " : "") << witness_names[i] << ' ' << params(p) << (typed ? " typed" : " UNTYPED")
       << (mod3 ? " solids=1 mod 3" : " solid residue off");
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult solid_set() {
  ClaimResult r{6, "solid-multiplicity-set", "witnesses with no solid >= 49 have solids in {22,25,31,34,40,43}", {}, {}, 0};
  const std::set<Mult> six{22, 25, 31, 34, 40, 43};
  std::ostringstream os;
  bool ok = true;
  int examined = 0;
  for (const char* name : {"70-22-A-a", "70-22-A-b", "70-22-A-c", "70-22-B"}) {
    const auto hm = hyperplane_multiplicities(construct_family(name));
    const Mult top = *std::max_element(hm.begin(), hm.end());
    if (top >= 49) {
      os << name << " skipped (solid of multiplicity " << top << "); ";
      continue;
    }
    ++examined;
    std::set<Mult> seen(hm.begin(), hm.end());
    const bool in = std::includes(six.begin(), six.end(), seen.begin(), seen.end());
    ok &= in;
    os << name << " solids {";
    bool first = true;
    for (Mult m : seen) {
      os << (first ? "" : ",") << m;
      first = false;
    }
    os << "}" << (in ? "" : " OUTSIDE") << "; ";
  }
  if (examined == 0) {
    ok = false;
    os << "no witness qualifies";
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult standard_eqs() {
  ClaimResult r{7, "standard-equations", "count, incidence (= 2800) and pair identities balance; reduced identity under Lambda_3",
                {}, {}, 0};
  bool ok = true;
  std::ostringstream os;
  for (const char* name : {"70-22-A-a", "70-22-A-b", "70-22-A-c", "70-22-A-triple"}) {
    const auto s = standard_equations(construct_family(name));
    const bool good = s.residual_count == 0 && s.residual_incidence == 0 && s.incidence_sum == 2800 &&
                      s.residual_pairs == 0 && s.residual_reduced_lambda3_x27 == 0;
    ok &= good;
    os << name << ": residuals " << s.residual_count << "/" << s.residual_incidence << "/" << s.residual_pairs << "/"
       << s.residual_reduced_lambda3_x27 << ", balanced reading " << s.balanced_reading << "; ";
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult line_split() {
  ClaimResult r{8, "line-splitting", "plane + line in PG(3,3): applicable, unique L, F' = (13,4)", {}, {}, 0};
  const Multiset f = construct_family("plane-plus-line");
  const auto rep = main_reduction(f);
  bool ok = rep.applicable && rep.conclusion_verified && rep.conclusion;
  std::ostringstream os;
  os << "applicable " << rep.applicable << ", verified " << rep.conclusion_verified;
  if (ok) {
    const auto& c = std::get<LineSplit>(*rep.conclusion);
    ok = c.residual == Parameters{13, 4, Mode::minihyper} && c.line_points.size() == 4;
    os << ", F' " << params(c.residual);
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult griesmer_witnesses() {
  ClaimResult r{9, "griesmer-complement", "g_3(5,114) = 172; complements at s = 2 are (172,58)-arcs of Griesmer codes", {}, {},
                0};
  const auto gb = griesmer_bound(3, 5, 114);
  bool ok = gb == 172;
  std::ostringstream os;
  os << "g_3(5,114) = " << gb;
  for (const char* name : witness_names) {
    const Multiset f = construct_family(name);
    if (f.max_point_multiplicity() > 2) {
      ok = false;
      os << "; " << name << " has a triple point";
      continue;
    }
    const Multiset arc = complement(f, 2);
    const Parameters p = parameters(arc, Mode::arc);
    const CodeParams cp = code_parameters(arc);
    const bool good = p == Parameters{172, 58, Mode::arc} && meets_griesmer_bound(cp);
    ok &= good;
    os << "; " << name << " -> " << params(p) << " [" << cp.n << "," << cp.k << "," << cp.d << "]_3"
       << (good ? "" : " NOT Griesmer");
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult hill_lizak_example() {
  ClaimResult r{10, "hill-lizak-(5,1)", "line + point in PG(2,3): hypotheses hold, unique reduction point P", {}, {}, 0};
  const Multiset f = construct_family("line-plus-point");
  const auto rep = hill_lizak(f, Mode::minihyper);
  // brute force over all 13 lines and points
  const auto& g = f.geometry();
  std::vector<int> oracle;
  for (int p = 0; p < g.num_points(); ++p) {
    if (f[p] == 0) continue;
    const Multiset red = f.with_point(p, -1);
    bool blocked = true;
    for (const auto& l : g.flats(1)) blocked &= multiplicity(red, l) >= 1;
    if (blocked) oracle.push_back(p);
  }
  bool ok = rep.applicable && rep.conclusion_verified && oracle.size() == 1;
  if (ok) {
    const auto& c = std::get<ReductionPoints>(*rep.conclusion);
    ok = c.points == oracle && c.result == Parameters{4, 1, Mode::minihyper};
  }
  r.detail = "applicable " + std::to_string(rep.applicable) + ", oracle finds " + std::to_string(oracle.size()) +
             " reduction point(s)";
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

ClaimResult properties(const ClaimOptions& o) {
  ClaimResult r{11, "property-suite", "random multisets: spectrum identities, complement, projection, collineation invariance",
                {}, {}, 0};
  const PropertyStats s = property_suite(o.seed, o.fuzz_count);
  std::ostringstream os;
  os << s.multisets << " multisets, " << s.checks << " checks; violations: spectrum " << s.spectrum_violations
     << ", complement " << s.complement_violations << ", projection " << s.projection_violations << ", collineation "
     << s.collineation_violations;
  r.detail = trimmed(os.str());
  r.status = s.total_violations() == 0 && s.multisets >= 10000 ? ClaimStatus::pass : ClaimStatus::fail;
  if (s.total_violations() == 0 && s.multisets < 10000) r.detail += " (fewer than 10^4 multisets)";
  return r;
}

ClaimResult distances() {
  ClaimResult r{12, "min-distance-cross-check", "codeword enumeration d = n - w_max of the column arc for every fixture code",
                {}, {}, 0};
  bool ok = true;
  std::ostringstream os;
  for (const auto& fc : fixture_codes()) {
    const GeneratorMatrix g = parse_generator(fc.text);
    const auto d = min_distance_routes(g);
    const bool good = d.by_enumeration == d.by_arc && d.by_arc == fc.expected_d;
    ok &= good;
    os << fc.name << ": " << d.by_enumeration << "/" << d.by_arc << (good ? "" : " MISMATCH") << "; ";
  }
  r.detail = trimmed(os.str());
  r.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
  return r;
}

}  // namespace

PropertyStats property_suite(std::uint64_t seed, int count) {
  PropertyStats s;
  std::mt19937_64 rng(seed);
  const std::shared_ptr<const Geometry> geoms[] = {Geometry::shared(2, 3), Geometry::shared(3, 3)};
  for (int i = 0; i < count; ++i) {
    const auto& g = geoms[i % 2];
    const int r = g->r(), q = g->q();
    const Mult maxm = 1 + static_cast<Mult>(rng() % 3);
    const Multiset k = random_multiset(g, rng, maxm);
    ++s.multisets;
    const Mult n = k.cardinality();

    // spectrum identities
    const auto sp = spectrum(k);
    std::int64_t sum_a = 0, sum_ia = 0;
    for (const auto& [m, c] : sp.a) {
      sum_a += c;
      sum_ia += m * c;
    }
    s.checks += 2;
    s.spectrum_violations += (sum_a != v(r + 1, q)) + (sum_ia != n * v(r, q));

    // complement at s >= max multiplicity
    const Mult sc = maxm + static_cast<Mult>(rng() % 2);
    const Parameters arc = parameters(k, Mode::arc);
    const Parameters mh = parameters(complement(k, sc), Mode::minihyper);
    ++s.checks;
    s.complement_violations += mh != Parameters{sc * v(r + 1, q) - arc.n, sc * v(r, q) - arc.w, Mode::minihyper};

    // projection from a random point (or line in PG(3,3)) onto a disjoint complement
    const int ddim = r == 3 ? static_cast<int>(rng() % 2) : 0;
    const auto& dflats = g->flats(ddim);
    const Flat& delta = dflats[rng() % dflats.size()];
    const auto& pflats = g->flats(r - 1 - ddim);
    const std::size_t start = rng() % pflats.size();
    const Flat* pi = nullptr;
    for (std::size_t t = 0; t < pflats.size() && !pi; ++t) {
      const Flat& cand = pflats[(start + t) % pflats.size()];
      if (disjoint(cand, delta)) pi = &cand;
    }
    const Multiset kp = project_multiset(k, delta, *pi);
    const Mult kd = multiplicity(k, delta);
    for (int d = ddim + 1; d < r; ++d)
      for (const auto& sflat : g->flats(d)) {
        if (!contains(sflat, delta)) continue;
        std::vector<int> image;
        std::set_intersection(sflat.points.begin(), sflat.points.end(), pi->points.begin(), pi->points.end(),
                              std::back_inserter(image));
        Mult img = 0;
        for (int p : image) img += kp[p];
        ++s.checks;
        s.projection_violations += img != multiplicity(k, sflat) - kd;
      }

    // collineation invariance of the spectrum
    const Collineation m(g, random_invertible(*g, rng));
    const auto perm = m.point_permutation();
    std::vector<Mult> moved(g->num_points(), 0);
    for (int p = 0; p < g->num_points(); ++p) moved[perm[p]] = k[p];
    const auto sp2 = spectrum(Multiset(g, std::move(moved)));
    ++s.checks;
    s.collineation_violations += sp2.a != sp.a || sp2.lambda != sp.lambda;
  }
  return s;
}

std::vector<ClaimResult> run_claims(const ClaimOptions& opts) {
  const std::vector<std::function<ClaimResult()>> all = {
      geometry_counts,
      [&] { return no_11_3(opts); },
      [&] { return planar_9_2(opts); },
      [&] { return classification_21_6(opts); },
      witnesses_70_22,
      solid_set,
      standard_eqs,
      line_split,
      griesmer_witnesses,
      hill_lizak_example,
      [&] { return properties(opts); },
      distances,
  };
  std::vector<ClaimResult> out;
  for (int id = 1; id <= static_cast<int>(all.size()); ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    const auto t0 = Clock::now();
    ClaimResult r;
    try {
      r = all[id - 1]();
    } catch (const std::exception& e) {
      r.id = id;
      r.key = "claim-" + std::to_string(id);
      r.status = ClaimStatus::fail;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace minihyper
