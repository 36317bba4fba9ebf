#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include "minihyper/families.hpp"
#include "minihyper/multiset.hpp"

using namespace minihyper;

namespace {

// Spectrum straight from coordinates: hyperplane u is {x : u.x = 0}.
std::map<Mult, std::int64_t> spectrum_oracle(const Multiset& k) {
  const auto& g = k.geometry();
  std::map<Mult, std::int64_t> a;
  for (int u = 0; u < g.num_points(); ++u) {
    Mult s = 0;
    for (int p = 0; p < g.num_points(); ++p) {
      int dot = 0;
      for (int i = 0; i <= g.r(); ++i) dot += g.coords(u)[i] * g.coords(p)[i];
      if (dot % g.q() == 0) s += k[p];
    }
    ++a[s];
  }
  return a;
}

Multiset random_multiset(const std::shared_ptr<const Geometry>& g, std::mt19937_64& rng, Mult maxm) {
  std::uniform_int_distribution<Mult> d(0, maxm);
  std::vector<Mult> m(g->num_points());
  for (auto& x : m) x = d(rng);
  return Multiset(g, m);
}

int find_line_in(const Geometry& g, const Flat& plane) {
  for (int i = 0; i < static_cast<int>(g.flats(1).size()); ++i) {
    const auto& l = g.flats(1)[i].points;
    if (std::includes(plane.points.begin(), plane.points.end(), l.begin(), l.end())) return i;
  }
  return -1;
}

}  // namespace

TEST_CASE("multiplicity of flats") {
  auto g = Geometry::shared(3, 3);
  const Flat& pi = g->hyperplane(0);
  const Multiset k = Multiset::indicator(g, pi);
  CHECK(multiplicity(k, pi) == 13);
  for (int h = 1; h < g->num_hyperplanes(); ++h) CHECK(multiplicity(k, g->hyperplane(h)) == 4);
  const Multiset empty(g);
  for (const auto& l : g->flats(1)) CHECK(multiplicity(empty, l) == 0);
}

TEST_CASE("spectrum examples agree with the coordinate oracle") {
  auto g3 = Geometry::shared(3, 3);
  const Multiset pi = Multiset::indicator(g3, g3->hyperplane(5));
  const auto sp = spectrum(pi);
  CHECK(sp.a == std::map<Mult, std::int64_t>{{4, 39}, {13, 1}});
  CHECK(sp.lambda == std::map<Mult, std::int64_t>{{0, 27}, {1, 13}});
  CHECK(sp.a == spectrum_oracle(pi));

  const auto sp2 = spectrum(pi.scaled(2));
  CHECK(sp2.a == std::map<Mult, std::int64_t>{{8, 39}, {26, 1}});

  auto g2 = Geometry::shared(2, 3);
  const Multiset lp = construct_family("line-plus-point");
  const auto s = spectrum(lp);
  CHECK(s.a == std::map<Mult, std::int64_t>{{1, 8}, {2, 4}, {4, 1}});
  CHECK(s.a == spectrum_oracle(lp));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Multiset k = random_multiset(i % 2 ? g2 : g3, rng, 3);
    CHECK(spectrum(k).a == spectrum_oracle(k));
  }
}

TEST_CASE("parameters") {
  auto g3 = Geometry::shared(3, 3);
  const Multiset pi = Multiset::indicator(g3, g3->hyperplane(0));
  CHECK(parameters(pi, Mode::minihyper) == Parameters{13, 4, Mode::minihyper});
  CHECK(parameters(pi, Mode::arc) == Parameters{13, 13, Mode::arc});
  auto g2 = Geometry::shared(2, 3);
  CHECK(parameters(Multiset(g2).with_point(3, 1), Mode::arc) == Parameters{1, 1, Mode::arc});
  for (const char* name : {"70-22-A-a", "70-22-A-b", "70-22-A-c"})
    CHECK(parameters(construct_family(name), Mode::minihyper) == Parameters{70, 22, Mode::minihyper});
}

TEST_CASE("gamma") {
  auto g = Geometry::shared(3, 3);
  const Multiset pi = Multiset::indicator(g, g->hyperplane(0));
  CHECK(gamma(pi, 0) == 1);
  CHECK(gamma(pi, 1) == 4);
  CHECK(gamma(pi, 2) == 13);
  CHECK(gamma(pi, 3) == 13);
  CHECK(gamma(pi.scaled(2), 2) == 26);
  CHECK_THROWS(gamma(pi, 4));
}

TEST_CASE("complement") {
  auto g3 = Geometry::shared(3, 3);
  const auto cap = elliptic_quadric_points(*g3);
  const Multiset c = Multiset::indicator(g3, cap);
  CHECK(parameters(c, Mode::arc) == Parameters{10, 4, Mode::arc});
  CHECK(parameters(complement(c, 1), Mode::minihyper) == Parameters{30, 9, Mode::minihyper});
  CHECK(complement(complement(c, 3), 3) == c);
  CHECK_THROWS_AS(complement(c.scaled(2), 1), std::invalid_argument);

  // (70,22) with max multiplicity 2 -> (172,58)-arc at s = 2
  const Multiset f = construct_family("70-22-A-a");
  REQUIRE(f.max_point_multiplicity() <= 2);
  CHECK(parameters(complement(f, 2), Mode::arc) == Parameters{172, 58, Mode::arc});
}

TEST_CASE("restriction") {
  auto g3 = Geometry::shared(3, 3);
  const Flat& pi = g3->hyperplane(0);
  const Multiset k = Multiset::indicator(g3, pi);
  const int li = find_line_in(*g3, pi);
  REQUIRE(li >= 0);
  const Multiset rl = restrict_to(k, g3->flats(1)[li]);
  CHECK(rl.geometry().r() == 1);
  CHECK(rl.values().size() == 4);
  for (Mult x : rl.values()) CHECK(x == 1);

  // plane + line: the 14-plane restricts to a plane with one double point
  const Multiset f = construct_family("plane-plus-line");
  const auto hm = hyperplane_multiplicities(f);
  int h14 = -1;
  for (int h = 0; h < g3->num_hyperplanes(); ++h)
    if (hm[h] == 14) h14 = h;
  REQUIRE(h14 >= 0);
  const Multiset r = restrict_to(f, g3->hyperplane(h14));
  CHECK(r.cardinality() == 14);
  CHECK(spectrum(r).a == spectrum_oracle(r));
  CHECK(spectrum(r).a == std::map<Mult, std::int64_t>{{4, 9}, {5, 4}});

  // hyperplanes of the restriction carry the multiplicities of hyperlines
  const Multiset w = construct_family("70-22-A-b");
  auto g4 = w.geometry_ptr();
  for (int h : {0, 17, 120}) {
    const Flat& solid = g4->hyperplane(h);
    const Multiset rs = restrict_to(w, solid);
    CHECK(rs.cardinality() == multiplicity(w, solid));
    std::multiset<Mult> lhs, rhs;
    for (Mult x : hyperplane_multiplicities(rs)) lhs.insert(x);
    for (const auto& t : g4->flats(2))
      if (std::includes(solid.points.begin(), solid.points.end(), t.points.begin(), t.points.end()))
        rhs.insert(multiplicity(w, t));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("projection") {
  auto g = Geometry::shared(3, 3);
  const Flat& delta = g->flats(1)[0];
  const Flat* pi = nullptr;
  for (const auto& l : g->flats(1)) {
    std::vector<int> meet;
    std::set_intersection(l.points.begin(), l.points.end(), delta.points.begin(), delta.points.end(),
                          std::back_inserter(meet));
    if (meet.empty()) {
      pi = &l;
      break;
    }
  }
  REQUIRE(pi);
  const Multiset centre = Multiset::indicator(g, delta);
  CHECK(project_multiset(centre, delta, *pi).cardinality() == 0);

  int q_out = 0;
  while (std::binary_search(delta.points.begin(), delta.points.end(), q_out)) ++q_out;
  const Multiset single = Multiset(g).with_point(q_out, 3);
  const Multiset img = project_multiset(single, delta, *pi);
  CHECK(img.cardinality() == 3);
  CHECK(img[project(*g, delta, *pi, q_out)] == 3);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const Multiset k = random_multiset(g, rng, 2);
    const Multiset kp = project_multiset(k, delta, *pi);
    CHECK(kp.cardinality() == k.cardinality() - multiplicity(k, delta));
    for (const auto& h : g->flats(2)) {
      if (!std::includes(h.points.begin(), h.points.end(), delta.points.begin(), delta.points.end())) continue;
      std::vector<int> image;
      std::set_intersection(h.points.begin(), h.points.end(), pi->points.begin(), pi->points.end(),
                            std::back_inserter(image));
      REQUIRE(image.size() == 1);
      CHECK(kp[image[0]] == multiplicity(k, h) - multiplicity(k, delta));
    }
  }
}

TEST_CASE("one-point reductions") {
  auto g2 = Geometry::shared(2, 3);
  const Multiset lp = construct_family("line-plus-point");
  const auto pts = one_reducible_points(lp, 1);
  REQUIRE(pts.size() == 1);
  // brute force: the only point whose removal keeps every line blocked
  std::vector<int> oracle;
  for (int p = 0; p < g2->num_points(); ++p) {
    if (lp[p] == 0) continue;
    const Multiset r = lp.with_point(p, -1);
    bool ok = true;
    for (const auto& l : g2->flats(1)) ok &= multiplicity(r, l) >= 1;
    if (ok) oracle.push_back(p);
  }
  CHECK(pts == oracle);

  const Multiset line = Multiset::indicator(g2, g2->flats(1)[0]);
  CHECK(one_reducible_points(line, 1).empty());

  const Multiset f31 = construct_family("two-planes-plus-line-plus-point");
  const auto r31 = one_reducible_points(f31, 9);
  CHECK(!r31.empty());
  for (int p : r31) CHECK(parameters(f31.with_point(p, -1), Mode::minihyper) == Parameters{30, 9, Mode::minihyper});
}

TEST_CASE("t-reducibility") {
  const Multiset lp = construct_family("line-plus-point");
  const auto d1 = t_reducible(lp, 1, 1);
  REQUIRE(d1);
  CHECK(d1->cardinality() == 1);
  const auto pts = one_reducible_points(lp, 1);
  CHECK((*d1)[pts[0]] == 1);

  const Multiset red = construct_family("plane-plus-two-lines-plus-point");
  const auto dr = t_reducible(red, 6, 1);
  REQUIRE(dr);
  CHECK(parameters(red - *dr, Mode::minihyper) == Parameters{21, 6, Mode::minihyper});

  const Multiset irr = construct_family("plane-plus-oval-complement");
  CHECK(parameters(irr, Mode::minihyper) == Parameters{22, 6, Mode::minihyper});
  CHECK_FALSE(t_reducible(irr, 6, 1));
  CHECK_FALSE(t_reducible(irr, 6, 2));

  CHECK_THROWS_AS(t_reducible(lp, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(t_reducible(lp, 1, 0), std::invalid_argument);
}

TEST_CASE("t-extendability") {
  auto g = Geometry::shared(2, 3);
  // two points: a (2,2)-arc extends to (4,2) but only with points keeping every line <= 2
  const Multiset two = Multiset(g).with_point(0, 1).with_point(1, 1);
  const auto d = t_extendable(two, 2, 2);
  REQUIRE(d);
  CHECK(parameters(two + *d, Mode::arc) == Parameters{4, 2, Mode::arc});
  const Multiset conic = Multiset::indicator(g, conic_points(*g));
  CHECK(parameters(conic, Mode::arc) == Parameters{4, 2, Mode::arc});
  CHECK_FALSE(t_extendable(conic, 2, 1));  // an oval in PG(2,3) is complete
}

TEST_CASE("text format round trip") {
  auto g = Geometry::shared(3, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Multiset k = random_multiset(g, rng, 4);
    const std::string t = to_text(k);
    CHECK(parse_multiset(t) == k);
    CHECK(to_text(parse_multiset(t)) == t);
  }
  const Multiset lp = construct_family("line-plus-point");
  CHECK(to_text(lp).rfind("PG 2 3\n", 0) == 0);
  CHECK(to_text(lp).back() == '\n');

  const std::string path = (std::filesystem::temp_directory_path() / "minihyper_ms.txt").string();
  write_multiset_file(lp, path);
  CHECK(read_multiset_file(path) == lp);
  std::filesystem::remove(path);

  CHECK_THROWS(parse_multiset(""));
  CHECK_THROWS(parse_multiset("PG 2 3\n0 0 1\n"));
  CHECK_THROWS(parse_multiset("PG 2 3\n0 0 3 1\n"));
  CHECK_THROWS(parse_multiset("PG 2 3\n0 0 1 -1\n"));
  CHECK_THROWS(parse_multiset("PG 2 3\n0 0 x 1\n"));
  CHECK_THROWS(parse_multiset("XX 2 3\n"));
  CHECK_THROWS(read_multiset_file("/nonexistent/file"));
}
