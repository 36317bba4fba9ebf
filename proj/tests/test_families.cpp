#include <doctest.h>

#include <set>

#include "minihyper/families.hpp"
#include "minihyper/structural.hpp"

using namespace minihyper;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

// No three collinear, by testing every triple against the line through two of them.
bool cap_oracle(const Geometry& g, const std::vector<int>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const int a[2] = {pts[i], pts[j]};
      const Flat& l = g.flat(span_points(g, a));
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (std::binary_search(l.points.begin(), l.points.end(), pts[k])) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("every family has its advertised parameters") {
  std::set<std::string> names;
  for (const auto& fam : family_catalog()) {
    INFO(fam.name);
    CHECK(names.insert(fam.name).second);
    const Multiset k = construct_family(fam.name);
    CHECK(k.geometry().r() == fam.r);
    CHECK(k.geometry().q() == fam.q);
    CHECK(parameters(k, fam.expected.mode) == fam.expected);
    CHECK(!fam.description.empty());
  }
  CHECK_THROWS_AS(construct_family("no-such-family"), std::invalid_argument);
}

TEST_CASE("conic and elliptic quadric are caps") {
  auto g2 = Geometry::shared(2, 3);
  const auto conic = conic_points(*g2);
  CHECK(conic.size() == 4);
  CHECK(is_cap(*g2, conic));
  CHECK(cap_oracle(*g2, conic));
  for (int p : conic) {
    const auto x = g2->coords(p);
    CHECK((x[0] * x[1] - x[2] * x[2] + 9) % 3 == 0);
  }

  auto g3 = Geometry::shared(3, 3);
  const auto q = elliptic_quadric_points(*g3);
  CHECK(q.size() == 10);
  CHECK(is_cap(*g3, q));
  CHECK(cap_oracle(*g3, q));

  const auto& line = g3->flats(1)[7].points;
  CHECK_FALSE(is_cap(*g3, line));
  CHECK_FALSE(cap_oracle(*g3, line));
}

TEST_CASE("the cyclotomic 55-set meets every solid in 10 or 19 points") {
  auto g = Geometry::shared(4, 3);
  const auto pts = cyclotomic_55_points(*g);
  CHECK(pts.size() == 55);
  CHECK(std::set<int>(pts.begin(), pts.end()).size() == 55);
  std::map<int, int> sizes;
  for (int h = 0; h < g->num_hyperplanes(); ++h) {
    const auto& s = g->hyperplane(h).points;
    int c = 0;
    for (int p : pts) c += std::binary_search(s.begin(), s.end(), p);
    ++sizes[c];
  }
  CHECK(sizes.size() == 2);
  CHECK(sizes.count(10) == 1);
  CHECK(sizes.count(19) == 1);
  // counting: 10 a + 19 b = 55 * 40 and a + b = 121
  CHECK(10 * sizes[10] + 19 * sizes[19] == 55 * 40);
}

TEST_CASE("embedding into a solid keeps restricted parameters") {
  auto g4 = Geometry::shared(4, 3);
  const Multiset k = construct_family("cap-complement");
  for (int h : {0, 40, 120}) {
    const Multiset e = embed_in_hyperplane(k, g4, h);
    CHECK(e.cardinality() == 30);
    const auto& s = g4->hyperplane(h).points;
    for (int p = 0; p < g4->num_points(); ++p)
      if (e[p] > 0) CHECK(std::binary_search(s.begin(), s.end(), p));
    CHECK(spectrum(restrict_to(e, g4->hyperplane(h))).a == spectrum(k).a);
  }
}

TEST_CASE("flat decompositions") {
  const Multiset a = construct_family("plane-plus-two-lines");
  const auto d = decompose_into_flats(a, {1, 2, 1});
  REQUIRE(d);
  CHECK(d->size() == 3);
  CHECK((*d)[0].dim == 2);
  CHECK(sum_of_flats(a.geometry_ptr(), *d) == a);
  CHECK_FALSE(decompose_into_flats(a, {2, 2}));
  CHECK_FALSE(decompose_into_flats(construct_family("cap-complement"), {2, 2, 1}));
  CHECK(decompose_into_flats(construct_family("two-planes-plus-line"), {2, 2, 1}));
}

TEST_CASE("structural labels of the planar and (21,6) families") {
  CHECK(has(structural_match(construct_family("oval-complement")), "oval-complement"));
  CHECK(has(structural_match(construct_family("oval-complement")), "projective"));
  CHECK_FALSE(has(structural_match(construct_family("line-plus-point")), "oval-complement"));

  const auto l = structural_match(construct_family("plane-plus-two-lines"));
  CHECK(has(l, "(21,6)-type-(alpha)"));
  CHECK_FALSE(has(l, "(21,6)-type-(beta)"));
  CHECK_FALSE(has(l, "(21,6)-type-(gamma)"));
  CHECK(std::is_sorted(l.begin(), l.end()));
}

TEST_CASE("structural labels of the (30,9) families") {
  const auto a = structural_match(construct_family("two-planes-plus-line"));
  CHECK(has(a, "(30,9)-type-(a)"));
  CHECK_FALSE(has(a, "(30,9)-type-(c)"));
  const auto b = structural_match(construct_family("two-planes-two-lines"));
  CHECK(has(b, "(30,9)-type-(b)"));
  CHECK_FALSE(has(b, "(30,9)-type-(a)"));
  CHECK(is_two_planes_two_lines(construct_family("two-planes-two-lines")));
  CHECK_FALSE(is_two_planes_two_lines(construct_family("two-planes-plus-line")));
  const auto c = structural_match(construct_family("cap-complement"));
  CHECK(has(c, "(30,9)-type-(c)"));
  CHECK(has(c, "cap-complement"));
  CHECK(has(c, "projective"));
}

TEST_CASE("structural labels of the (70,22) witnesses") {
  const auto a = structural_match(construct_family("70-22-A-a"));
  CHECK(has(a, "(70,22)-type-(A)"));
  CHECK(has(a, "(70,22)-type-(A)/(a)"));
  CHECK(has(structural_match(construct_family("70-22-A-b")), "(70,22)-type-(A)/(b)"));
  CHECK(has(structural_match(construct_family("70-22-A-c")), "(70,22)-type-(A)/(c)"));
  const auto b = structural_match(construct_family("70-22-B"));
  CHECK(has(b, "(70,22)-type-(B)"));
  CHECK_FALSE(has(b, "(70,22)-type-(A)"));
}

TEST_CASE("witness multiplicity profile") {
  for (const char* name : {"70-22-A-a", "70-22-A-b", "70-22-A-c"}) {
    const Multiset f = construct_family(name);
    CHECK(f.max_point_multiplicity() <= 2);
    for (Mult m : hyperplane_multiplicities(f)) CHECK(m % 3 == 1);
  }
  CHECK(construct_family("70-22-A-triple").max_point_multiplicity() == 3);

  // the type-(B) witness has no solid of multiplicity 49 or more
  const Multiset b = construct_family("70-22-B");
  const std::set<Mult> six{22, 25, 31, 34, 40, 43};
  for (Mult m : hyperplane_multiplicities(b)) {
    CHECK(m < 49);
    CHECK(six.count(m) == 1);
  }
}
