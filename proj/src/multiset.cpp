#include "minihyper/multiset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace minihyper {

Multiset::Multiset(std::shared_ptr<const Geometry> g) : geom_(std::move(g)) {
  mult_.assign(geom_->num_points(), 0);
}

Multiset::Multiset(std::shared_ptr<const Geometry> g, std::vector<Mult> mult)
    : geom_(std::move(g)), mult_(std::move(mult)) {
  if (static_cast<int>(mult_.size()) != geom_->num_points())
    throw std::invalid_argument("multiplicity vector length does not match the number of points");
  for (Mult m : mult_)
    if (m < 0) throw std::invalid_argument("negative point multiplicity");
}

Multiset Multiset::indicator(std::shared_ptr<const Geometry> g, const Flat& f) {
  return indicator(std::move(g), f.points);
}

Multiset Multiset::indicator(std::shared_ptr<const Geometry> g, std::span<const int> points) {
  Multiset k(std::move(g));
  for (int p : points) k.mult_[p] = 1;
  return k;
}

Mult Multiset::cardinality() const { return std::accumulate(mult_.begin(), mult_.end(), Mult{0}); }

Mult Multiset::max_point_multiplicity() const {
  return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end());
}

Multiset Multiset::with_point(int p, Mult delta) const {
  Multiset out = *this;
  out.mult_.at(p) += delta;
  if (out.mult_[p] < 0) throw std::invalid_argument("point multiplicity would become negative");
  return out;
}

Multiset Multiset::scaled(Mult factor) const {
  if (factor < 0) throw std::invalid_argument("negative scale factor");
  Multiset out = *this;
  for (auto& m : out.mult_) m *= factor;
  return out;
}

Multiset& Multiset::operator+=(const Multiset& o) {
  if (o.geom_.get() != geom_.get() && (o.geom_->r() != geom_->r() || o.geom_->q() != geom_->q()))
    throw std::invalid_argument("multisets live in different geometries");
  for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] += o.mult_[i];
  return *this;
}

Multiset& Multiset::operator-=(const Multiset& o) {
  if (o.geom_.get() != geom_.get() && (o.geom_->r() != geom_->r() || o.geom_->q() != geom_->q()))
    throw std::invalid_argument("multisets live in different geometries");
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    mult_[i] -= o.mult_[i];
    if (mult_[i] < 0) throw std::invalid_argument("difference has a negative point multiplicity");
  }
  return *this;
}

bool operator==(const Multiset& a, const Multiset& b) {
  return a.geom_->r() == b.geom_->r() && a.geom_->q() == b.geom_->q() && a.mult_ == b.mult_;
}

std::string to_string(Mode m) { return m == Mode::arc ? "arc" : "minihyper"; }

Mode parse_mode(std::string_view s) {
  if (s == "arc") return Mode::arc;
  if (s == "minihyper") return Mode::minihyper;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected arc or minihyper)");
}

Mult multiplicity(const Multiset& k, const Flat& f) {
  Mult s = 0;
  for (int p : f.points) s += k[p];
  return s;
}

std::vector<Mult> hyperplane_multiplicities(const Multiset& k) {
  const auto& g = k.geometry();
  std::vector<Mult> out(g.num_hyperplanes(), 0);
  for (int p = 0; p < g.num_points(); ++p) {
    const Mult m = k[p];
    if (m == 0) continue;
    for (int h : g.hyperplanes_through(p)) out[h] += m;
  }
  return out;
}

SpectrumReport spectrum(const Multiset& k) {
  SpectrumReport rep;
  const auto hm = hyperplane_multiplicities(k);
  for (Mult m : hm) ++rep.a[m];
  for (Mult m : k.values()) ++rep.lambda[m];
  rep.n = k.cardinality();
  rep.w_min = *std::min_element(hm.begin(), hm.end());
  rep.w_max = *std::max_element(hm.begin(), hm.end());
  return rep;
}

Parameters parameters(const Multiset& k, Mode mode) {
  const auto hm = hyperplane_multiplicities(k);
  Parameters p;
  p.mode = mode;
  p.n = k.cardinality();
  p.w = mode == Mode::arc ? *std::max_element(hm.begin(), hm.end()) : *std::min_element(hm.begin(), hm.end());
  return p;
}

Mult gamma(const Multiset& k, int dim) {
  const auto& g = k.geometry();
  if (dim < 0 || dim > g.r()) throw std::out_of_range("flat dimension out of range");
  if (dim == g.r()) return k.cardinality();
  if (dim == 0) return k.max_point_multiplicity();
  if (dim == g.r() - 1) {
    const auto hm = hyperplane_multiplicities(k);
    return *std::max_element(hm.begin(), hm.end());
  }
  Mult best = 0;
  for (const auto& f : g.flats(dim)) best = std::max(best, multiplicity(k, f));
  return best;
}

Multiset complement(const Multiset& k, Mult s) {
  if (s < k.max_point_multiplicity())
    throw std::invalid_argument("complement level s=" + std::to_string(s) +
                                " is below the largest point multiplicity " +
                                std::to_string(k.max_point_multiplicity()));
  std::vector<Mult> out(k.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s - k[static_cast<int>(i)];
  return Multiset(k.geometry_ptr(), std::move(out));
}

Multiset restrict_to(const Multiset& k, const Flat& f) {
  const auto& g = k.geometry();
  if (f.dim < 1) throw std::invalid_argument("restriction needs a flat of dimension at least 1");
  auto sub = Geometry::shared(f.dim, g.q());
  std::vector<Mult> out(f.chart.size());
  for (std::size_t j = 0; j < f.chart.size(); ++j) out[j] = k[f.chart[j]];
  return Multiset(std::move(sub), std::move(out));
}

Multiset project_multiset(const Multiset& k, const Flat& delta, const Flat& pi) {
  const auto& g = k.geometry();
  Multiset out(k.geometry_ptr());
  std::vector<Mult> acc(g.num_points(), 0);
  // Validate the pair of flats even when K vanishes off delta.
  if (delta.dim + pi.dim != g.r() - 1)
    throw std::invalid_argument("projection needs flats of complementary dimension");
  for (int p = 0; p < g.num_points(); ++p) {
    if (k[p] == 0 || std::binary_search(delta.points.begin(), delta.points.end(), p)) continue;
    acc[project(g, delta, pi, p)] += k[p];
  }
  return Multiset(k.geometry_ptr(), std::move(acc));
}

std::vector<int> one_reducible_points(const Multiset& f, Mult w) {
  const auto& g = f.geometry();
  const auto hm = hyperplane_multiplicities(f);
  std::vector<int> out;
  for (int p = 0; p < g.num_points(); ++p) {
    if (f[p] < 1) continue;
    bool ok = true;
    for (int h : g.hyperplanes_through(p))
      if (hm[h] < w + 1) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  }
  return out;
}

namespace {

// Depth-first choice of t units on points (non-decreasing index), adjusting
// hyperplane multiplicities by `sign` and testing `ok` at the leaves.
template <class Admissible, class Check>
bool choose_units(const Geometry& g, int t, int start, std::vector<Mult>& hm, std::vector<Mult>& used,
                  Mult sign, Admissible admissible, Check ok) {
  if (t == 0) return ok(hm);
  for (int p = start; p < g.num_points(); ++p) {
    if (!admissible(p, used[p] + 1)) continue;
    ++used[p];
    for (int h : g.hyperplanes_through(p)) hm[h] += sign;
    if (choose_units(g, t - 1, p, hm, used, sign, admissible, ok)) return true;
    for (int h : g.hyperplanes_through(p)) hm[h] -= sign;
    --used[p];
  }
  return false;
}

}  // namespace

std::optional<Multiset> t_reducible(const Multiset& f, Mult w, int t, int max_t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (t > max_t) throw std::invalid_argument("t-reducibility search is limited to t <= " + std::to_string(max_t));
  const auto& g = f.geometry();
  auto hm = hyperplane_multiplicities(f);
  std::vector<Mult> used(g.num_points(), 0);
  const bool found = choose_units(
      g, t, 0, hm, used, -1, [&](int p, Mult u) { return u <= f[p]; },
      [&](const std::vector<Mult>& cur) { return std::all_of(cur.begin(), cur.end(), [&](Mult m) { return m >= w; }); });
  if (!found) return std::nullopt;
  return Multiset(f.geometry_ptr(), std::move(used));
}

std::optional<Multiset> t_extendable(const Multiset& k, Mult w, int t, int max_t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (t > max_t) throw std::invalid_argument("t-extendability search is limited to t <= " + std::to_string(max_t));
  const auto& g = k.geometry();
  auto hm = hyperplane_multiplicities(k);
  std::vector<Mult> used(g.num_points(), 0);
  const bool found = choose_units(
      g, t, 0, hm, used, +1, [](int, Mult) { return true; },
      [&](const std::vector<Mult>& cur) { return std::all_of(cur.begin(), cur.end(), [&](Mult m) { return m <= w; }); });
  if (!found) return std::nullopt;
  return Multiset(k.geometry_ptr(), std::move(used));
}

}  // namespace minihyper
