#include "minihyper/families.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace minihyper {

namespace {

int pt(const Geometry& g, std::initializer_list<int> c) {
  std::vector<int> v(c);
  return g.point_index(v);
}

FlatRef flat_of(const Geometry& g, std::initializer_list<std::initializer_list<int>> gens) {
  std::vector<int> pts;
  for (const auto& c : gens) pts.push_back(pt(g, c));
  return span_points(g, pts);
}

int hyperplane_of(const Geometry& g, std::initializer_list<int> dual) { return pt(g, dual); }

Multiset flat_sum(const std::shared_ptr<const Geometry>& g, std::initializer_list<FlatRef> flats) {
  std::vector<FlatRef> v(flats);
  return sum_of_flats(g, v);
}

Multiset set_union(const std::shared_ptr<const Geometry>& g, std::initializer_list<FlatRef> flats) {
  std::vector<Mult> m(g->num_points(), 0);
  for (auto f : flats)
    for (int p : g->flat(f).points) m[p] = 1;
  return Multiset(g, std::move(m));
}

FlatRef hyperplane_ref(const Geometry& g, int h) { return {g.r() - 1, h}; }

// PG(3,3) building blocks. Coordinates (x0,x1,x2,x3).
Multiset plane_3() {
  auto g = Geometry::shared(3, 3);
  return flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1}))});
}

Multiset plane_plus_line() {
  auto g = Geometry::shared(3, 3);
  return flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1})), flat_of(*g, {{1, 0, 0, 0}, {0, 0, 0, 1}})});
}

Multiset plane_plus_two_lines() {
  auto g = Geometry::shared(3, 3);
  return flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1})), flat_of(*g, {{1, 0, 0, 0}, {0, 0, 0, 1}}),
                      flat_of(*g, {{0, 1, 0, 1}, {0, 0, 1, 0}})});
}

Multiset two_planes_plus_line() {
  auto g = Geometry::shared(3, 3);
  return flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1})),
                      hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 1, 0})), flat_of(*g, {{1, 0, 0, 0}, {0, 0, 1, 1}})});
}

// Union of the planes x3 = 0 and x2 = 0 (common line x2 = x3 = 0) plus two
// skew lines through the points (1,0,0,0) and (0,1,0,0) of the common line.
Multiset two_planes_two_lines() {
  auto g = Geometry::shared(3, 3);
  Multiset u = set_union(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1})),
                             hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 1, 0}))});
  return u + flat_sum(g, {flat_of(*g, {{1, 0, 0, 0}, {0, 0, 1, 1}}), flat_of(*g, {{0, 1, 0, 0}, {0, 0, 1, 2}})});
}

Multiset cap_complement() {
  auto g = Geometry::shared(3, 3);
  const auto cap = elliptic_quadric_points(*g);
  return complement(Multiset::indicator(g, cap), 1);
}

Multiset oval_complement() {
  auto g = Geometry::shared(2, 3);
  return complement(Multiset::indicator(g, conic_points(*g)), 1);
}

Multiset line_plus_point() {
  auto g = Geometry::shared(2, 3);
  Multiset k = flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 1}))});
  return k.with_point(pt(*g, {0, 0, 1}), 1);
}

// Plane x3 = 0 plus the complement of a conic inside the plane x2 = 0.
Multiset plane_plus_oval_complement() {
  auto g = Geometry::shared(3, 3);
  auto g2 = Geometry::shared(2, 3);
  const Flat& other = g->hyperplane(hyperplane_of(*g, {0, 0, 1, 0}));
  Multiset k = flat_sum(g, {hyperplane_ref(*g, hyperplane_of(*g, {0, 0, 0, 1}))});
  const Multiset oc = oval_complement();
  std::vector<Mult> m(k.values().begin(), k.values().end());
  for (int j = 0; j < g2->num_points(); ++j) m[other.chart[j]] += oc[j];
  return Multiset(g, std::move(m));
}

Multiset plus_point(Multiset k, std::initializer_list<int> c) {
  const int p = pt(k.geometry(), c);
  return k.with_point(p, 1);
}

// PG(4,3) witnesses.

// A solid S such that chi_S + rest is a (70,22)-minihyper whose point
// multiplicities stay within max_mult, scanning solids in index order.
Multiset add_solid(const Multiset& rest, Mult max_mult, bool want_max_exact) {
  auto g = rest.geometry_ptr();
  for (int s = 0; s < g->num_hyperplanes(); ++s) {
    Multiset f = rest + Multiset::indicator(g, g->hyperplane(s));
    const Mult mx = f.max_point_multiplicity();
    if (want_max_exact ? mx != max_mult : mx > max_mult) continue;
    if (parameters(f, Mode::minihyper) == Parameters{70, 22, Mode::minihyper}) return f;
  }
  throw std::logic_error("no solid completes the witness");
}

// Two planes meeting in one point plus a line disjoint from both: a
// (30,9)-minihyper of PG(4,3) not contained in a solid.
Multiset spread_two_planes_plus_line() {
  auto g = Geometry::shared(4, 3);
  const FlatRef p1 = flat_of(*g, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  const FlatRef p2 = flat_of(*g, {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
  const auto& a = g->flat(p1).points;
  const auto& b = g->flat(p2).points;
  for (const auto& l : g->flats(1)) {
    bool disjoint = true;
    for (int p : l.points)
      if (std::binary_search(a.begin(), a.end(), p) || std::binary_search(b.begin(), b.end(), p)) disjoint = false;
    if (disjoint) return flat_sum(g, {p1, p2, g->locate(l)});
  }
  throw std::logic_error("no line avoids both planes");
}

Multiset witness_a() { return add_solid(spread_two_planes_plus_line(), 2, false); }

Multiset witness_b() {
  auto g = Geometry::shared(4, 3);
  return add_solid(embed_in_hyperplane(two_planes_two_lines(), g, hyperplane_of(*g, {0, 0, 0, 0, 1})), 2, false);
}

Multiset witness_c() {
  auto g = Geometry::shared(4, 3);
  return add_solid(embed_in_hyperplane(cap_complement(), g, hyperplane_of(*g, {0, 0, 0, 0, 1})), 2, false);
}

// Two planes + line inside one solid: every other solid adds a triple point.
Multiset witness_triple() {
  auto g = Geometry::shared(4, 3);
  return add_solid(embed_in_hyperplane(two_planes_plus_line(), g, hyperplane_of(*g, {0, 0, 0, 0, 1})), 3, true);
}

Multiset cyclotomic_arc() {
  auto g = Geometry::shared(4, 3);
  return Multiset::indicator(g, cyclotomic_55_points(*g));
}

Multiset minihyper_66_21() { return complement(cyclotomic_arc(), 1); }

Multiset witness_type_b() {
  auto g = Geometry::shared(4, 3);
  return minihyper_66_21() + flat_sum(g, {flat_of(*g, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}})});
}

struct Entry {
  FamilyInfo info;
  std::function<Multiset()> build;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {{"line-plus-point", 2, 3, {5, 1, Mode::minihyper}, "a line and a point off it"}, line_plus_point},
      {{"oval-complement", 2, 3, {9, 2, Mode::minihyper}, "complement of the conic x0x1 = x2^2"}, oval_complement},
      {{"plane", 3, 3, {13, 4, Mode::minihyper}, "the plane x3 = 0"}, plane_3},
      {{"plane-plus-line", 3, 3, {17, 5, Mode::minihyper}, "a plane and a line not in it"}, plane_plus_line},
      {{"plane-plus-two-lines", 3, 3, {21, 6, Mode::minihyper}, "a plane and two lines"}, plane_plus_two_lines},
      {{"plane-plus-two-lines-plus-point", 3, 3, {22, 6, Mode::minihyper}, "a plane, two lines and a point"},
       [] { return plus_point(plane_plus_two_lines(), {0, 0, 1, 2}); }},
      {{"plane-plus-oval-complement", 3, 3, {22, 6, Mode::minihyper},
        "a plane plus the complement of an oval in another plane"},
       plane_plus_oval_complement},
      {{"two-planes-plus-line", 3, 3, {30, 9, Mode::minihyper}, "two planes and a line"}, two_planes_plus_line},
      {{"two-planes-two-lines", 3, 3, {30, 9, Mode::minihyper},
        "union of two planes plus two skew lines through points of their common line"},
       two_planes_two_lines},
      {{"cap-complement", 3, 3, {30, 9, Mode::minihyper}, "complement of the elliptic quadric (a 10-cap)"},
       cap_complement},
      {{"two-planes-plus-line-plus-point", 3, 3, {31, 9, Mode::minihyper}, "two planes, a line and a point"},
       [] { return plus_point(two_planes_plus_line(), {0, 1, 2, 1}); }},
      {{"70-22-A-a", 4, 3, {70, 22, Mode::minihyper},
        "a solid plus two planes meeting in a point and a line; point multiplicities <= 2"},
       witness_a},
      {{"70-22-A-b", 4, 3, {70, 22, Mode::minihyper},
        "a solid plus the two-planes-two-lines minihyper of another solid; point multiplicities <= 2"},
       witness_b},
      {{"70-22-A-c", 4, 3, {70, 22, Mode::minihyper},
        "a solid plus the 10-cap complement of another solid; point multiplicities <= 2"},
       witness_c},
      {{"70-22-A-triple", 4, 3, {70, 22, Mode::minihyper},
        "a solid plus two planes and a line of another solid; has triple points"},
       witness_triple},
      {{"55-19-arc", 4, 3, {55, 19, Mode::arc}, "union of five cyclotomic classes of GF(3^5)"}, cyclotomic_arc},
      {{"66-21", 4, 3, {66, 21, Mode::minihyper}, "complement of the cyclotomic (55,19)-arc"}, minihyper_66_21},
      {{"70-22-B", 4, 3, {70, 22, Mode::minihyper}, "the cyclotomic (66,21)-minihyper plus a line"}, witness_type_b},
  };
  return all;
}

}  // namespace

Multiset sum_of_flats(const std::shared_ptr<const Geometry>& g, std::span<const FlatRef> flats) {
  std::vector<Mult> m(g->num_points(), 0);
  for (auto f : flats)
    for (int p : g->flat(f).points) ++m[p];
  return Multiset(g, std::move(m));
}

std::vector<int> conic_points(const Geometry& g) {
  if (g.r() != 2) throw std::invalid_argument("conic_points needs PG(2,q)");
  const auto& f = g.field();
  std::vector<int> out;
  for (int p = 0; p < g.num_points(); ++p) {
    auto c = g.coords(p);
    if (f.mul(c[0], c[1]) == f.mul(c[2], c[2])) out.push_back(p);
  }
  return out;
}

std::vector<int> elliptic_quadric_points(const Geometry& g) {
  if (g.r() != 3 || g.q() != 3) throw std::invalid_argument("elliptic_quadric_points needs PG(3,3)");
  const auto& f = g.field();
  std::vector<int> out;
  for (int p = 0; p < g.num_points(); ++p) {
    auto c = g.coords(p);
    if (f.add(f.mul(c[0], c[1]), f.add(f.mul(c[2], c[2]), f.mul(c[3], c[3]))) == 0) out.push_back(p);
  }
  return out;
}

bool is_cap(const Geometry& g, std::span<const int> points) {
  std::vector<int> s(points.begin(), points.end());
  std::sort(s.begin(), s.end());
  for (const auto& l : g.flats(1)) {
    int c = 0;
    for (int p : l.points) c += std::binary_search(s.begin(), s.end(), p);
    if (c > 2) return false;
  }
  return true;
}

std::vector<int> cyclotomic_55_points(const Geometry& g) {
  if (g.r() != 4 || g.q() != 3) throw std::invalid_argument("cyclotomic_55_points needs PG(4,3)");
  // omega^5 = omega^4 + 2; coefficients low to high.
  std::array<int, 5> cur{1, 0, 0, 0, 0};
  std::vector<int> out;
  constexpr std::array<bool, 11> chosen{false, true, false, true, true, true, false, false, false, true, false};
  for (int i = 0; i < 121; ++i) {
    if (chosen[i % 11]) out.push_back(g.point_index(cur));
    const int top = cur[4];
    for (int k = 4; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 2 * top % 3;
    cur[4] = (cur[4] + top) % 3;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> infos = [] {
    std::vector<FamilyInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

Multiset construct_family(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return e.build();
  std::string known;
  for (const auto& e : entries()) known += (known.empty() ? "" : ", ") + e.info.name;
  throw std::invalid_argument("unknown family '" + name + "' (known: " + known + ")");
}

Multiset embed_in_hyperplane(const Multiset& k, const std::shared_ptr<const Geometry>& ambient, int hyperplane) {
  if (k.geometry().r() != ambient->r() - 1 || k.geometry().q() != ambient->q())
    throw std::invalid_argument("embedding needs a multiset of one dimension less over the same field");
  const Flat& h = ambient->hyperplane(hyperplane);
  std::vector<Mult> m(ambient->num_points(), 0);
  for (std::size_t j = 0; j < h.chart.size(); ++j) m[h.chart[j]] = k[static_cast<int>(j)];
  return Multiset(ambient, std::move(m));
}

}  // namespace minihyper
