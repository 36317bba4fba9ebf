#include "minihyper/structural.hpp"

#include <algorithm>

#include "minihyper/families.hpp"
#include "minihyper/theorems.hpp"

namespace minihyper {

namespace {

bool covers(const std::vector<Mult>& m, const Flat& f) {
  return std::all_of(f.points.begin(), f.points.end(), [&](int p) { return m[p] >= 1; });
}

bool decompose(const Geometry& g, std::vector<Mult>& m, Mult remaining, const std::vector<int>& dims, std::size_t i,
               int start, std::vector<FlatRef>& out) {
  if (i == dims.size()) return remaining == 0;
  const int d = dims[i];
  const auto& flats = g.flats(d);
  const Mult sz = v(d + 1, g.q());
  for (int idx = start; idx < static_cast<int>(flats.size()); ++idx) {
    const Flat& f = flats[idx];
    if (!covers(m, f)) continue;
    for (int p : f.points) --m[p];
    out.push_back({d, idx});
    const int next_start = (i + 1 < dims.size() && dims[i + 1] == d) ? idx : 0;
    if (decompose(g, m, remaining - sz, dims, i + 1, next_start, out)) return true;
    out.pop_back();
    for (int p : f.points) ++m[p];
  }
  return false;
}

std::vector<int> support(const Multiset& k) {
  std::vector<int> s;
  for (int p = 0; p < static_cast<int>(k.size()); ++p)
    if (k[p] > 0) s.push_back(p);
  return s;
}

std::vector<int> zero_set(const Multiset& k) {
  std::vector<int> s;
  for (int p = 0; p < static_cast<int>(k.size()); ++p)
    if (k[p] == 0) s.push_back(p);
  return s;
}

void match_30_9(const Multiset& k, std::vector<std::string>& labels, const std::string& prefix) {
  const auto& g = k.geometry();
  if (decompose_into_flats(k, {2, 2, 1})) labels.push_back(prefix + "(a)");
  if (is_two_planes_two_lines(k)) labels.push_back(prefix + "(b)");
  if (k.is_projective()) {
    const auto z = zero_set(k);
    if (static_cast<int>(z.size()) == 10 && is_cap(g, z)) labels.push_back(prefix + "(c)");
  }
}

}  // namespace

std::optional<std::vector<FlatRef>> decompose_into_flats(const Multiset& k, std::vector<int> dims) {
  std::sort(dims.begin(), dims.end(), std::greater<>());
  const auto& g = k.geometry();
  Mult total = 0;
  for (int d : dims) total += v(d + 1, g.q());
  if (total != k.cardinality()) return std::nullopt;
  std::vector<Mult> m(k.values().begin(), k.values().end());
  std::vector<FlatRef> out;
  if (decompose(g, m, total, dims, 0, 0, out)) return out;
  return std::nullopt;
}

bool is_two_planes_two_lines(const Multiset& k) {
  const auto& g = k.geometry();
  if (g.r() != 3) return false;
  const int q = g.q();
  if (k.cardinality() != 2 * v(3, q) - v(2, q) + 2 * v(2, q)) return false;
  std::vector<Mult> m(k.values().begin(), k.values().end());
  const auto& planes = g.flats(2);
  for (int a = 0; a < static_cast<int>(planes.size()); ++a) {
    if (!covers(m, planes[a])) continue;
    for (int b = a + 1; b < static_cast<int>(planes.size()); ++b) {
      if (!covers(m, planes[b])) continue;
      std::vector<Mult> rest = m;
      std::vector<int> uni;
      std::set_union(planes[a].points.begin(), planes[a].points.end(), planes[b].points.begin(),
                     planes[b].points.end(), std::back_inserter(uni));
      std::vector<int> common;
      std::set_intersection(planes[a].points.begin(), planes[a].points.end(), planes[b].points.begin(),
                            planes[b].points.end(), std::back_inserter(common));
      for (int p : uni) --rest[p];
      Multiset r(k.geometry_ptr(), rest);
      auto lines = decompose_into_flats(r, {1, 1});
      if (!lines) continue;
      const Flat& m1 = g.flat((*lines)[0]);
      const Flat& m2 = g.flat((*lines)[1]);
      std::vector<int> meet;
      std::set_intersection(m1.points.begin(), m1.points.end(), m2.points.begin(), m2.points.end(),
                            std::back_inserter(meet));
      if (!meet.empty()) continue;
      auto ok = [&](const Flat& l) {
        std::vector<int> on;
        std::set_intersection(l.points.begin(), l.points.end(), uni.begin(), uni.end(), std::back_inserter(on));
        if (on.empty()) return false;
        return std::all_of(on.begin(), on.end(),
                           [&](int p) { return std::binary_search(common.begin(), common.end(), p); });
      };
      if (ok(m1) && ok(m2)) return true;
    }
  }
  return false;
}

std::vector<std::string> structural_match(const Multiset& k) {
  const auto& g = k.geometry();
  const int r = g.r(), q = g.q();
  std::vector<std::string> labels;
  if (k.cardinality() == 0) return labels;
  const bool projective = k.is_projective();
  if (projective) labels.push_back("projective");

  const auto z = zero_set(k);
  if (projective && !z.empty() && is_cap(g, z)) {
    if (r == 2 && static_cast<int>(z.size()) == q + 1)
      labels.push_back("oval-complement");
    else
      labels.push_back("cap-complement");
  }

  const auto p = parameters(k, Mode::minihyper);
  if (r == 3 && q == 3) {
    if (p.n == 21 && p.w == 6) {
      const auto sp = spectrum(k);
      if (decompose_into_flats(k, {2, 1, 1})) labels.push_back("(21,6)-type-(alpha)");
      if (k.max_point_multiplicity() == 2 && sp.lambda_at(2) == 1 && sp.a_at(12) == 2)
        labels.push_back("(21,6)-type-(beta)");
      if (projective && sp.a_at(12) == 1) labels.push_back("(21,6)-type-(gamma)");
    }
    if (p.n == 30 && p.w == 9) match_30_9(k, labels, "(30,9)-type-");
  }
  if (r == 4 && q == 3 && p.n == 70 && p.w == 22) {
    const std::vector<Mult> m(k.values().begin(), k.values().end());
    for (int s = 0; s < g.num_hyperplanes(); ++s) {
      const Flat& sf = g.hyperplane(s);
      if (!covers(m, sf)) continue;
      const Multiset rest = k - Multiset::indicator(k.geometry_ptr(), sf);
      if (parameters(rest, Mode::minihyper) != Parameters{30, 9, Mode::minihyper}) continue;
      labels.push_back("(70,22)-type-(A)");
      // Name the (30,9) part: directly, or inside a solid that contains it.
      std::vector<std::string> sub;
      if (decompose_into_flats(rest, {2, 2, 1})) sub.push_back("(70,22)-type-(A)/(a)");
      const auto sup = support(rest);
      for (int t = 0; t < g.num_hyperplanes() && sub.empty(); ++t) {
        const Flat& tf = g.hyperplane(t);
        if (!std::includes(tf.points.begin(), tf.points.end(), sup.begin(), sup.end())) continue;
        std::vector<std::string> inner;
        match_30_9(restrict_to(rest, tf), inner, "(70,22)-type-(A)/");
        sub = inner;
      }
      labels.insert(labels.end(), sub.begin(), sub.end());
      break;
    }
    const auto mr = main_reduction(k);
    if (mr.applicable && mr.conclusion_verified) labels.push_back("(70,22)-type-(B)");
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace minihyper
