#include <doctest.h>

#include "minihyper/classifier.hpp"
#include "minihyper/code_bridge.hpp"
#include "minihyper/families.hpp"
#include "minihyper/theorems.hpp"

using namespace minihyper;

namespace {

Multiset from_vector(int r, std::vector<Mult> m) { return Multiset(Geometry::shared(r, 3), std::move(m)); }

int off_line_point(const Multiset& lp) {
  // the point of chi_L + chi_P that lies on no line of multiplicity 4
  const auto& g = lp.geometry();
  for (int p = 0; p < g.num_points(); ++p) {
    if (lp[p] == 0) continue;
    bool on_full = false;
    for (const auto& l : g.flats(1))
      if (std::binary_search(l.points.begin(), l.points.end(), p) && multiplicity(lp, l) == 4) on_full = true;
    if (!on_full) return p;
  }
  return -1;
}

std::int64_t brute_ceil(std::int64_t a, std::int64_t b) {
  // ceil(a/b), b > 0, by stepping
  std::int64_t c = 0;
  if (a > 0)
    while (c * b < a) ++c;
  else
    while ((c - 1) * b >= a) --c;
  return c;
}

}  // namespace

TEST_CASE("eq1 bound") {
  CHECK(eq1_bound(70, 22, 4, 3, 2) == 6);
  CHECK(eq1_bound(70, 22, 4, 3, 1) == 1);
  CHECK(eq1_bound(70, 22, 4, 3, 0) == -1);
  for (Mult n = 1; n < 80; n += 3)
    for (Mult w = 0; w <= n; w += 2)
      for (int s = 0; s < 4; ++s) {
        const std::int64_t num = v(4 - s, 3) * w - v(3 - s, 3) * n;
        std::int64_t den = 1;
        for (int i = 0; i < 3 - s; ++i) den *= 3;
        CHECK(eq1_bound(n, w, 4, 3, s) == brute_ceil(num, den));
      }
}

TEST_CASE("eq2 bound") {
  CHECK(eq2_bound(70, 22, 3, 22) == 6);
  CHECK(eq2_bound(70, 22, 3, 43) == 13);
  CHECK(eq2_bound(30, 30, 3, 30) == 30);
  const Rational r = eq2_bound_exact(70, 22, 3, 25);
  CHECK(r.num * 3 == r.den * (22 * 3 - 45));
  CHECK(eq2_bound(70, 22, 3, 25) == 7);
}

TEST_CASE("gamma bound") {
  CHECK(gamma_bound(0, 3, 5, 114, 0) == 2);
  CHECK(gamma_bound(0, 3, 4, 60, 0) == 3);
  CHECK(gamma_bound(4, 3, 5, 114, 4) == 4 + griesmer_bound(3, 5, 114));
  CHECK(gamma_bound(0, 3, 4, 33, 3) == griesmer_bound(3, 4, 33));
}

TEST_CASE("Eq1 and Eq2 are sound on every minihyper family") {
  for (const auto& fam : family_catalog()) {
    if (fam.expected.mode != Mode::minihyper) continue;
    const Multiset f = construct_family(fam.name);
    INFO(fam.name);
    REQUIRE(parameters(f, Mode::minihyper) == fam.expected);
    const auto a1 = audit_eq1(f);
    CHECK(a1.checked > 0);
    CHECK(a1.violations == 0);
    const auto a2 = audit_eq2(f);
    CHECK(a2.checked > 0);
    CHECK(a2.violations == 0);
  }
}

TEST_CASE("Ward divisibility") {
  const Multiset w = construct_family("70-22-A-a");
  const auto rep = ward_check(w, Mode::minihyper, 1);
  CHECK(rep.applicable);
  CHECK(rep.conclusion_verified);
  CHECK(rep.inconsistencies.empty());
  REQUIRE(rep.conclusion);
  const auto& d = std::get<Divisibility>(*rep.conclusion);
  CHECK(d.modulus == 3);
  CHECK(d.residue == 1);
  for (Mult m : hyperplane_multiplicities(w)) CHECK(m % 3 == 1);

  const Multiset lp = construct_family("line-plus-point");
  const auto r2 = ward_check(lp, Mode::minihyper, 1);
  CHECK_FALSE(r2.applicable);
  CHECK_FALSE(r2.conclusion);
  CHECK_THROWS_AS(ward_check(lp, Mode::minihyper, 0), std::invalid_argument);

  // e = 2 for a plane: w - n = -9
  const Multiset pi = construct_family("plane");
  CHECK(ward_check(pi, Mode::minihyper, 2).conclusion_verified);
}

TEST_CASE("Hill-Lizak on the (5,1)-minihyper") {
  const Multiset lp = construct_family("line-plus-point");
  const auto rep = hill_lizak(lp, Mode::minihyper);
  for (const auto& h : rep.hypotheses) CHECK_MESSAGE(h.satisfied, h.name << ": " << h.evidence);
  CHECK(rep.applicable);
  CHECK(rep.conclusion_verified);
  REQUIRE(rep.conclusion);
  const auto& c = std::get<ReductionPoints>(*rep.conclusion);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0] == off_line_point(lp));
  CHECK(c.result == Parameters{4, 1, Mode::minihyper});

  CHECK_FALSE(hill_lizak(construct_family("70-22-A-a"), Mode::minihyper).applicable);
  const auto line = hill_lizak(Multiset::indicator(lp.geometry_ptr(), lp.geometry().flats(1)[0]), Mode::minihyper);
  CHECK_FALSE(line.applicable);
  CHECK_FALSE(line.hypotheses[0].satisfied);
}

TEST_CASE("Hill-Lizak in arc mode: the complement of the (5,1)-minihyper extends at one point") {
  const Multiset lp = construct_family("line-plus-point");
  const Multiset arc = complement(lp, 1);
  const auto rep = hill_lizak(arc, Mode::arc);
  CHECK(rep.applicable);
  CHECK(rep.conclusion_verified);
  const auto& c = std::get<ExtensionPoints>(*rep.conclusion);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0] == off_line_point(lp));
  CHECK(c.result == Parameters{9, 3, Mode::arc});
}

TEST_CASE("Kanda windows and conclusions") {
  // (70,22): 22 mod 9 = 4 is outside {5,6,7}
  CHECK_FALSE(kanda(construct_family("70-22-A-a"), Mode::minihyper).applicable);
  CHECK_THROWS_AS(kanda(Multiset(Geometry::shared(2, 5)), Mode::minihyper), std::invalid_argument);

  // instances found by scanning small catalogs of PG(2,3)
  const Multiset m = from_vector(2, {2, 2, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  REQUIRE(parameters(m, Mode::minihyper) == Parameters{14, 3, Mode::minihyper});
  const auto rm = kanda(m, Mode::minihyper);
  CHECK(rm.applicable);
  CHECK(rm.conclusion_verified);
  const auto& tm = std::get<TwoStep>(*rm.conclusion);
  CHECK(tm.reduction);
  CHECK(tm.result == Parameters{12, 3, Mode::minihyper});

  const Multiset a = from_vector(2, {1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 1});
  REQUIRE(parameters(a, Mode::arc) == Parameters{11, 4, Mode::arc});
  const auto ra = kanda(a, Mode::arc);
  CHECK(ra.applicable);
  CHECK(ra.conclusion_verified);
  CHECK(std::get<TwoStep>(*ra.conclusion).result == Parameters{13, 4, Mode::arc});
  // the same multiset misses the minihyper window
  CHECK_FALSE(kanda(a, Mode::minihyper).applicable);
}

TEST_CASE("Kanda as literally stated fails on the all-one plane") {
  // every line has 4 = 13 (mod 9), yet no (11,4)-minihyper and no (15,4)-arc exist:
  // 11 * 4 < 13 * 4 incidences, and any added point lifts a line to 5.
  const Multiset ones = from_vector(2, std::vector<Mult>(13, 1));
  const auto rm = kanda(ones, Mode::minihyper);
  CHECK(rm.applicable);
  CHECK(rm.falsified());
  const auto ra = kanda(ones, Mode::arc);
  CHECK(ra.applicable);
  CHECK(ra.falsified());
}

TEST_CASE("line splitting on plane + line") {
  const Multiset f = construct_family("plane-plus-line");
  const auto rep = main_reduction(f);
  for (const auto& h : rep.hypotheses) CHECK_MESSAGE(h.satisfied, h.name << ": " << h.evidence);
  CHECK(rep.applicable);
  CHECK(rep.conclusion_verified);
  CHECK(rep.violations.empty());
  const auto& c = std::get<LineSplit>(*rep.conclusion);
  CHECK(c.residual == Parameters{13, 4, Mode::minihyper});
  CHECK(c.line_points.size() == 4);
  // L: three single points outside the plane and the double point where it meets the plane
  const auto& g = f.geometry();
  CHECK(multiplicity(f, g.flats(1)[c.line]) == 5);
  int singles = 0;
  for (int p : c.line_points) singles += f[p] == 1;
  CHECK(singles == 3);
  CHECK(rep.residuals.at("dual_arc_open_lines") == 0);
  // oracle: the planes of multiplicity = 17 (mod 9) are exactly the planes through L
  const auto hm = hyperplane_multiplicities(f);
  const Flat& L = g.flats(1)[c.line];
  for (int h = 0; h < g.num_hyperplanes(); ++h) {
    const auto& hp = g.hyperplane(h).points;
    const bool through = std::includes(hp.begin(), hp.end(), L.points.begin(), L.points.end());
    CHECK(through == ((hm[h] - 17) % 9 == 0));
  }
  // read-only
  CHECK(f == construct_family("plane-plus-line"));
}

TEST_CASE("line splitting holds on the complete (17,5) catalog at cap 2") {
  const Catalog c = classify(3, 3, 17, 5, Mode::minihyper, 2);
  REQUIRE(c.complete);
  CHECK(c.representatives.size() == 2);
  for (const auto& rep : c.representatives) {
    const auto r = main_reduction(rep.multiset);
    CHECK(r.applicable);
    CHECK(r.conclusion_verified);
    CHECK(std::get<LineSplit>(*r.conclusion).residual == Parameters{13, 4, Mode::minihyper});
  }
}

TEST_CASE("line splitting on the (66,21) + line witness") {
  const Multiset f = construct_family("70-22-B");
  const auto rep = main_reduction(f);
  CHECK(rep.applicable);
  CHECK(rep.conclusion_verified);
  const auto& c = std::get<LineSplit>(*rep.conclusion);
  CHECK(c.residual == Parameters{66, 21, Mode::minihyper});
  // L is spanned by (1,0,0,0,0) and (0,1,0,0,0)
  const auto& g = f.geometry();
  std::vector<int> expect;
  for (int p = 0; p < g.num_points(); ++p) {
    const auto x = g.coords(p);
    if (x[2] == 0 && x[3] == 0 && x[4] == 0) expect.push_back(p);
  }
  CHECK(c.line_points == expect);
}

TEST_CASE("line splitting hypotheses that fail") {
  const Multiset pi = construct_family("plane");
  const auto two = main_reduction(pi.scaled(2));  // (26,8): 8 - 26 = 0 (mod 9)
  CHECK_FALSE(two.applicable);
  CHECK_FALSE(two.hypotheses[0].satisfied);
  CHECK_FALSE(two.conclusion);

  // plane + line - their common point: (16,4), w = n - 3 (mod 9) but planes off
  // that point carry 5, which is neither 13 nor 16 (mod 9)
  std::vector<Mult> m(40, 0);
  for (int p = 0; p < 16; ++p) m[p] = 1;
  const Multiset f = from_vector(3, m);
  REQUIRE(parameters(f, Mode::minihyper) == Parameters{16, 4, Mode::minihyper});
  const auto rep = main_reduction(f);
  CHECK(rep.hypotheses[0].satisfied);
  CHECK_FALSE(rep.hypotheses[1].satisfied);
  CHECK(rep.hypotheses[1].evidence.find("hyperplane") != std::string::npos);
  CHECK(rep.hypotheses[1].evidence.find("multiplicity 5") != std::string::npos);
  CHECK_FALSE(rep.applicable);
}

TEST_CASE("dual arc of plane + line") {
  const Multiset f = construct_family("plane-plus-line");
  const DualArc arc = make_dual_arc(f);
  int ones = 0;
  for (auto x : arc.value) ones += x;
  CHECK(ones == 4);  // the pencil of planes through L
  CHECK(dual_arc_open_lines(f, arc) == 0);
}

TEST_CASE("divisibility") {
  auto g = Geometry::shared(3, 3);
  CHECK(is_divisible(construct_family("plane"), 3));
  CHECK(is_divisible(Multiset(g), 3));
  CHECK(is_divisible(construct_family("plane-plus-line"), 3));  // planes carry 14, 8 or 5
  CHECK_FALSE(is_divisible(construct_family("line-plus-point"), 3));
}

TEST_CASE("standard equations on the (70,22) witnesses") {
  for (const char* name : {"70-22-A-a", "70-22-A-b", "70-22-A-c", "70-22-A-triple", "70-22-B"}) {
    INFO(name);
    const Multiset f = construct_family(name);
    const auto s = standard_equations(f);
    CHECK(s.hyperplane_count == 121);
    CHECK(s.incidence_sum == 2800);
    CHECK(s.residual_count == 0);
    CHECK(s.residual_incidence == 0);
    CHECK(s.residual_pairs == 0);
    CHECK(s.residual_reduced_lambda3_x27 == 0);
    CHECK(s.points_above_4 == 0);
    // pair identity independently: sum_H C(F(H),2) over all solids
    std::int64_t pairs = 0;
    for (Mult x : hyperplane_multiplicities(f)) pairs += x * (x - 1) / 2;
    CHECK(pairs == s.pair_sum);
    CHECK(s.pair_rhs == s.pair_sum);
  }
  const auto t = standard_equations(construct_family("70-22-A-triple"));
  CHECK(spectrum(construct_family("70-22-A-triple")).lambda_at(3) > 0);
  CHECK(t.residual_reduced_lambda6_x27 != 0);
  CHECK(t.balanced_reading == "lambda3");
  CHECK(standard_equations(construct_family("70-22-A-a")).balanced_reading == "both");

  CHECK_THROWS_AS(standard_equations(construct_family("plane")), std::invalid_argument);
  CHECK_THROWS_AS(standard_equations(Multiset(Geometry::shared(4, 3))), std::invalid_argument);
}

TEST_CASE("theorem names") {
  for (auto id : {TheoremId::ward, TheoremId::hill_lizak, TheoremId::kanda, TheoremId::main_reduction})
    CHECK(parse_theorem(to_string(id)) == id);
  CHECK(to_string(TheoremId::main_reduction) == "main-reduction");
  CHECK_THROWS(parse_theorem("nope"));
}
