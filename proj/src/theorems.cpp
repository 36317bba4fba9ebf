#include "minihyper/theorems.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "minihyper/code_bridge.hpp"

namespace minihyper {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / b) throw std::overflow_error("power overflows 64 bits");
    out *= b;
  }
  return out;
}

std::string cat(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) s += p;
  return s;
}

std::string str(std::int64_t x) { return std::to_string(x); }

bool all_satisfied(const std::vector<Hypothesis>& hs) {
  return std::all_of(hs.begin(), hs.end(), [](const Hypothesis& h) { return h.satisfied; });
}

TheoremReport start(TheoremId id, const Multiset& k, Mode mode) {
  TheoremReport rep;
  rep.theorem = id;
  rep.mode = mode;
  rep.input = parameters(k, mode);
  return rep;
}

// Points P such that K + chi_P keeps every hyperplane at most w.
std::vector<int> one_extension_points(const Multiset& k, Mult w) {
  const auto& g = k.geometry();
  const auto hm = hyperplane_multiplicities(k);
  std::vector<int> out;
  for (int p = 0; p < g.num_points(); ++p) {
    bool ok = true;
    for (int h : g.hyperplanes_through(p))
      if (hm[h] + 1 > w) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  }
  return out;
}

}  // namespace

Mult eq1_bound(Mult n, Mult w, int r, int q, int s) {
  if (s < 0 || s > r - 1) throw std::invalid_argument("eq1_bound needs 0 <= s <= r-1");
  const std::int64_t num = v(r - s, q) * w - v(r - s - 1, q) * n;
  return ceil_div(num, ipow(q, r - s - 1));
}

Rational eq2_bound_exact(Mult n, Mult w, int q, Mult fh) {
  Rational x{w * q - (n - fh), q};
  const std::int64_t g = std::gcd(x.num, x.den);
  if (g > 1) {
    x.num /= g;
    x.den /= g;
  }
  return x;
}

Mult eq2_bound(Mult n, Mult w, int q, Mult fh) {
  const Rational x = eq2_bound_exact(n, w, q, fh);
  return ceil_div(x.num, x.den);
}

Mult gamma_bound(Mult t, int q, int k, Mult d, int j) {
  if (k < 1 || j < 0 || j > k - 1 || d < 1) throw std::invalid_argument("gamma_bound needs k >= 1, 0 <= j < k, d >= 1");
  Mult sum = t;
  for (int i = k - 1 - j; i <= k - 1; ++i) {
    // q^i > d makes the term 1; avoid forming huge powers.
    std::int64_t qi = 1;
    bool big = false;
    for (int e = 0; e < i && !big; ++e) {
      qi *= q;
      big = qi > d;
    }
    sum += big ? 1 : ceil_div(d, qi);
  }
  return sum;
}

BoundAudit audit_eq1(const Multiset& f) {
  const auto& g = f.geometry();
  const auto p = parameters(f, Mode::minihyper);
  BoundAudit out;
  for (int s = 0; s < g.r(); ++s) {
    const Mult bound = std::max<Mult>(0, eq1_bound(p.n, p.w, g.r(), g.q(), s));
    for (const auto& fl : g.flats(s)) {
      ++out.checked;
      if (multiplicity(f, fl) < bound) ++out.violations;
    }
  }
  return out;
}

BoundAudit audit_eq2(const Multiset& f) {
  const auto& g = f.geometry();
  BoundAudit out;
  if (g.r() < 2) return out;
  const auto p = parameters(f, Mode::minihyper);
  const auto hm = hyperplane_multiplicities(f);
  for (const auto& t : g.flats(g.r() - 2)) {
    const Mult ft = multiplicity(f, t);
    for (int h : g.hyperplanes_containing(t)) {
      ++out.checked;
      if (ft < eq2_bound(p.n, p.w, g.q(), hm[h])) ++out.violations;
    }
  }
  return out;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ward: return "ward";
    case TheoremId::hill_lizak: return "hill-lizak";
    case TheoremId::kanda: return "kanda";
    case TheoremId::main_reduction: return "main-reduction";
  }
  return "?";
}

TheoremId parse_theorem(const std::string& s) {
  for (auto id : {TheoremId::ward, TheoremId::hill_lizak, TheoremId::kanda, TheoremId::main_reduction})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown theorem '" + s + "' (expected ward, hill-lizak, kanda or main-reduction)");
}

// ---------------------------------------------------------------------------

TheoremReport ward_check(const Multiset& k, Mode mode, int e) {
  if (e < 1) throw std::invalid_argument("ward_check needs e >= 1");
  const int p = k.geometry().q();
  const std::int64_t pe = ipow(p, e);
  TheoremReport rep = start(TheoremId::ward, k, mode);
  const Mult n = rep.input.n, w = rep.input.w;
  rep.hypotheses.push_back({"w = n (mod p^e)", mod(w - n, pe) == 0,
                            cat({"w - n = ", str(w - n), ", p^e = ", str(pe), ", residue ", str(mod(w - n, pe))})});
  rep.applicable = all_satisfied(rep.hypotheses);
  if (!rep.applicable) return rep;

  const auto hm = hyperplane_multiplicities(k);
  std::int64_t bad = 0;
  for (int h = 0; h < static_cast<int>(hm.size()); ++h) {
    if (mod(hm[h] - n, pe) == 0) continue;
    if (++bad <= 5)
      rep.inconsistencies.push_back(cat({"hyperplane ", str(h), " has multiplicity ", str(hm[h]), ", residue ",
                                         str(mod(hm[h], pe)), " mod ", str(pe), " (expected ", str(mod(n, pe)), ")"}));
  }
  rep.residuals["violating_hyperplanes"] = bad;
  rep.conclusion = Divisibility{pe, mod(n, pe)};
  rep.conclusion_verified = bad == 0;
  return rep;
}

TheoremReport hill_lizak(const Multiset& k, Mode mode) {
  const auto& g = k.geometry();
  const int q = g.q();
  const int r = g.r();
  TheoremReport rep = start(TheoremId::hill_lizak, k, mode);
  const Mult n = rep.input.n, w = rep.input.w;

  const std::int64_t gc = std::gcd(n - w, static_cast<std::int64_t>(q));
  rep.hypotheses.push_back({"gcd(n - w, q) = 1", gc == 1, cat({"gcd(", str(n - w), ",", str(q), ") = ", str(gc)})});

  // Griesmer condition on the associated arc: K itself, or the complement of
  // the minihyper at s = largest point multiplicity.
  {
    Mult an = n, aw = w;
    std::string via = "arc";
    if (mode == Mode::minihyper) {
      const Mult s = k.max_point_multiplicity();
      an = s * v(r + 1, q) - n;
      aw = s * v(r, q) - w;
      via = "complement at s=" + str(s);
    }
    const Mult d = an - aw;
    bool ok = false;
    std::string ev;
    if (d < 1 || an < 1) {
      ev = cat({via, ": (", str(an), ",", str(aw), ") has no positive minimum distance"});
    } else {
      const auto gb = griesmer_bound(q, r + 1, d);
      ok = gb == an;
      ev = cat({via, ": [", str(an), ",", str(r + 1), ",", str(d), "]_", str(q), ", g = ", str(gb)});
    }
    rep.hypotheses.push_back({"associated code is Griesmer", ok, ev});
  }

  {
    const auto hm = hyperplane_multiplicities(k);
    int first_bad = -1;
    for (int h = 0; h < static_cast<int>(hm.size()) && first_bad < 0; ++h)
      if (mod(hm[h] - n, q) != 0 && mod(hm[h] - w, q) != 0) first_bad = h;
    rep.hypotheses.push_back(
        {"hyperplanes = n or w (mod q)", first_bad < 0,
         first_bad < 0 ? "all " + str(static_cast<std::int64_t>(hm.size())) + " hyperplanes conform"
                       : cat({"hyperplane ", str(first_bad), " has multiplicity ", str(hm[first_bad])})});
  }

  rep.applicable = all_satisfied(rep.hypotheses);
  if (!rep.applicable) return rep;

  if (mode == Mode::minihyper) {
    const auto pts = one_reducible_points(k, w);
    rep.residuals["candidate_points"] = static_cast<std::int64_t>(pts.size());
    ReductionPoints c{pts, {}};
    if (pts.size() == 1) c.result = parameters(k.with_point(pts[0], -1), Mode::minihyper);
    if (pts.size() != 1)
      rep.violations.push_back(str(static_cast<std::int64_t>(pts.size())) + " reduction points (expected exactly one)");
    else if (c.result != Parameters{n - 1, w, Mode::minihyper})
      rep.violations.push_back("reduced multiset has parameters (" + str(c.result.n) + "," + str(c.result.w) + ")");
    rep.conclusion = c;
  } else {
    const auto pts = one_extension_points(k, w);
    rep.residuals["candidate_points"] = static_cast<std::int64_t>(pts.size());
    ExtensionPoints c{pts, {}};
    if (pts.size() == 1) c.result = parameters(k.with_point(pts[0], +1), Mode::arc);
    if (pts.size() != 1)
      rep.violations.push_back(str(static_cast<std::int64_t>(pts.size())) + " extension points (expected exactly one)");
    else if (c.result != Parameters{n + 1, w, Mode::arc})
      rep.violations.push_back("extended multiset has parameters (" + str(c.result.n) + "," + str(c.result.w) + ")");
    rep.conclusion = c;
  }
  rep.conclusion_verified = rep.violations.empty();
  return rep;
}

TheoremReport kanda(const Multiset& k, Mode mode) {
  if (k.geometry().q() != 3) throw std::invalid_argument("kanda applies to q = 3 only");
  TheoremReport rep = start(TheoremId::kanda, k, mode);
  const Mult n = rep.input.n, w = rep.input.w;
  const auto hm = hyperplane_multiplicities(k);
  // Offsets from n allowed mod 9.
  const std::int64_t lo = mode == Mode::arc ? 0 : -2;
  int first_bad = -1;
  for (int h = 0; h < static_cast<int>(hm.size()) && first_bad < 0; ++h) {
    const std::int64_t off = mod(hm[h] - n - lo, 9);
    if (off > 2) first_bad = h;
  }
  const std::string window = mode == Mode::arc ? "{n, n+1, n+2}" : "{n-2, n-1, n}";
  rep.hypotheses.push_back(
      {"hyperplanes in " + window + " (mod 9)", first_bad < 0,
       first_bad < 0 ? cat({"n mod 9 = ", str(mod(n, 9)), "; every hyperplane conforms"})
                     : cat({"hyperplane ", str(first_bad), " has multiplicity ", str(hm[first_bad]), ", residue ",
                            str(mod(hm[first_bad], 9)), "; n mod 9 = ", str(mod(n, 9))})});
  rep.applicable = all_satisfied(rep.hypotheses);
  if (!rep.applicable) return rep;

  TwoStep c;
  c.reduction = mode == Mode::minihyper;
  std::optional<Multiset> d = c.reduction ? t_reducible(k, w, 2) : t_extendable(k, w, 2);
  if (!d) {
    rep.violations.push_back(c.reduction ? "no 2-reduction to an (n-2,w)-minihyper exists"
                                         : "no 2-extension to an (n+2,w)-arc exists");
  } else {
    c.delta.assign(d->values().begin(), d->values().end());
    c.result = c.reduction ? parameters(k - *d, Mode::minihyper) : parameters(k + *d, Mode::arc);
    const Parameters want{c.reduction ? n - 2 : n + 2, w, mode};
    if (c.result != want)
      rep.violations.push_back("changed multiset has parameters (" + str(c.result.n) + "," + str(c.result.w) + ")");
  }
  rep.conclusion = c;
  rep.conclusion_verified = rep.violations.empty();
  return rep;
}

bool is_divisible(const Multiset& k, int p) {
  const auto hm = hyperplane_multiplicities(k);
  return std::all_of(hm.begin(), hm.end(), [&](Mult m) { return mod(m - hm[0], p) == 0; });
}

DualArc make_dual_arc(const Multiset& f) {
  const int p = f.geometry().q();
  const Mult n = f.cardinality();
  const auto hm = hyperplane_multiplicities(f);
  DualArc a;
  a.value.resize(hm.size());
  for (std::size_t h = 0; h < hm.size(); ++h) a.value[h] = mod(hm[h] - n, Mult{p} * p) == 0 ? 1 : 0;
  return a;
}

std::int64_t dual_arc_open_lines(const Multiset& f, const DualArc& arc) {
  const auto& g = f.geometry();
  if (g.r() < 2) return 0;
  std::int64_t open = 0;
  for (const auto& t : g.flats(g.r() - 2)) {
    int ones = 0;
    const auto hs = g.hyperplanes_containing(t);
    for (int h : hs) ones += arc.value[h];
    if (ones > 1 && ones < static_cast<int>(hs.size())) ++open;
  }
  return open;
}

TheoremReport main_reduction(const Multiset& f) {
  const auto& g = f.geometry();
  const int p = g.q();
  const Mult p2 = Mult{p} * p;
  TheoremReport rep = start(TheoremId::main_reduction, f, Mode::minihyper);
  const Mult n = rep.input.n, w = rep.input.w;

  rep.hypotheses.push_back({"w = n - p (mod p^2)", mod(w - (n - p), p2) == 0,
                            cat({"w - n = ", str(w - n), ", residue ", str(mod(w - n, p2)), " mod ", str(p2)})});

  const auto hm = hyperplane_multiplicities(f);
  std::vector<int> low, high;
  int first_bad = -1;
  for (int h = 0; h < g.num_hyperplanes(); ++h) {
    if (mod(hm[h] - (n - p), p2) == 0)
      low.push_back(h);
    else if (mod(hm[h] - n, p2) == 0)
      high.push_back(h);
    else if (first_bad < 0)
      first_bad = h;
  }
  rep.residuals["hyperplanes_class_n_minus_p"] = static_cast<std::int64_t>(low.size());
  rep.residuals["hyperplanes_class_n"] = static_cast<std::int64_t>(high.size());
  rep.hypotheses.push_back(
      {"hyperplanes = n - p or n (mod p^2)", first_bad < 0,
       first_bad < 0 ? cat({str(static_cast<std::int64_t>(low.size())), " in class n-p, ",
                            str(static_cast<std::int64_t>(high.size())), " in class n"})
                     : cat({"hyperplane ", str(first_bad), " has multiplicity ", str(hm[first_bad]), ", residue ",
                            str(mod(hm[first_bad] - n, p2)), " relative to n mod ", str(p2)})});

  // (2): class n-p hyperplanes restrict to something 1-reducible to a
  // p-divisible minihyper. Every good reduction point is recorded.
  {
    bool ok = true;
    std::string ev;
    std::int64_t candidates = 0;
    for (int h : low) {
      const Flat& hf = g.hyperplane(h);
      const Multiset res = restrict_to(f, hf);
      const Mult wr = parameters(res, Mode::minihyper).w;
      int good = 0;
      for (int c : one_reducible_points(res, wr))
        if (is_divisible(res.with_point(c, -1), p)) ++good;
      candidates += good;
      if (good == 0 && ok) {
        ok = false;
        ev = cat({"hyperplane ", str(h), " (multiplicity ", str(hm[h]), ") has no reduction point to a ", str(p),
                  "-divisible minihyper"});
      }
    }
    if (ok) ev = cat({str(static_cast<std::int64_t>(low.size())), " hyperplanes checked, ", str(candidates),
                      " reduction points in total"});
    rep.residuals["reduction_candidates"] = candidates;
    rep.hypotheses.push_back({"class n-p restrictions 1-reducible to p-divisible", ok, ev});
  }

  // (3): class n hyperplanes restrict to p-divisible multisets.
  {
    int bad = -1;
    for (int h : high)
      if (!is_divisible(restrict_to(f, g.hyperplane(h)), p)) {
        bad = h;
        break;
      }
    rep.hypotheses.push_back({"class n restrictions p-divisible", bad < 0,
                              bad < 0 ? str(static_cast<std::int64_t>(high.size())) + " hyperplanes checked"
                                      : cat({"hyperplane ", str(bad), " restricts to a non-divisible multiset"})});
  }

  rep.applicable = all_satisfied(rep.hypotheses);
  if (!rep.applicable) return rep;

  const DualArc arc = make_dual_arc(f);
  const std::int64_t open = dual_arc_open_lines(f, arc);
  rep.residuals["dual_arc_open_lines"] = open;
  if (open != 0) rep.violations.push_back(str(open) + " dual lines meet the class-n hyperplanes in 2..p points");

  LineSplit c;
  if (high.empty()) {
    rep.violations.push_back("no hyperplane in class n, so no line L");
    rep.conclusion = c;
    return rep;
  }
  // L must be the intersection of all class-n hyperplanes.
  const std::size_t words = g.hyperplane_bits(0).size();
  std::vector<std::uint64_t> meet(words, ~std::uint64_t{0});
  for (int h : high) {
    const auto bits = g.hyperplane_bits(h);
    for (std::size_t i = 0; i < words; ++i) meet[i] &= bits[i];
  }
  std::vector<int> pts;
  for (int pt = 0; pt < g.num_points(); ++pt)
    if ((meet[pt >> 6] >> (pt & 63)) & 1U) pts.push_back(pt);

  if (pts.empty()) {
    rep.violations.push_back("class-n hyperplanes have no common point");
  } else {
    const FlatRef span = span_points(g, pts);
    const Flat& sf = g.flat(span);
    if (span.dim != 1) {
      rep.violations.push_back("class-n hyperplanes meet in a flat of dimension " + str(span.dim) + ", not a line");
    } else {
      auto through = g.hyperplanes_containing(sf);
      if (through != high) {
        rep.violations.push_back(cat({"the class-n hyperplanes are not exactly the ", str(static_cast<std::int64_t>(through.size())),
                                      " hyperplanes through the common line"}));
      }
      c.line = span.index;
      c.line_points = sf.points;
      Multiset line = Multiset::indicator(f.geometry_ptr(), sf);
      bool covered = true;
      for (int pt : sf.points)
        if (f[pt] < 1) {
          covered = false;
          rep.violations.push_back("point " + str(pt) + " of L has multiplicity 0");
        }
      if (covered) {
        const Multiset rest = f - line;
        c.residual = parameters(rest, Mode::minihyper);
        c.residual_multiset.assign(rest.values().begin(), rest.values().end());
        const Parameters want{n - v(2, p), w - v(1, p), Mode::minihyper};
        if (c.residual != want)
          rep.violations.push_back(cat({"F - chi_L has parameters (", str(c.residual.n), ",", str(c.residual.w),
                                        "), expected (", str(want.n), ",", str(want.w), ")"}));
      }
    }
  }
  rep.conclusion = c;
  rep.conclusion_verified = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------

StandardEquations standard_equations(const Multiset& f) {
  const auto& g = f.geometry();
  if (g.r() != 4 || g.q() != 3) throw std::invalid_argument("standard equations are stated for PG(4,3)");
  if (f.cardinality() != 70) throw std::invalid_argument("standard equations need a multiset of cardinality 70");
  const auto sp = spectrum(f);
  auto c2 = [](std::int64_t i) { return i * (i - 1) / 2; };
  StandardEquations s;
  for (const auto& [i, a] : sp.a) {
    s.hyperplane_count += a;
    s.incidence_sum += i * a;
    s.pair_sum += c2(i) * a;
  }
  std::int64_t lambda_pairs = 0;
  for (int j = 2; j <= 4; ++j) lambda_pairs += c2(j) * sp.lambda_at(j);
  s.pair_rhs = 35 * 69 * 13 + 27 * lambda_pairs;
  s.residual_count = s.hyperplane_count - 121;
  s.residual_incidence = s.incidence_sum - 2800;
  s.residual_pairs = s.pair_sum - s.pair_rhs;

  // 27 * (a31 + 2a34 + 5a40 + 7a43) generalizes to sum (C(i,2) - 23i + 275) a_i.
  std::int64_t lhs27 = 0;
  for (const auto& [i, a] : sp.a) lhs27 += (c2(i) - 23 * i + 275) * a;
  auto rhs27 = [&](int x) { return 27 * (10 + sp.lambda_at(2) + 3 * sp.lambda_at(x) + 6 * sp.lambda_at(4)); };
  s.residual_reduced_lambda3_x27 = lhs27 - rhs27(3);
  s.residual_reduced_lambda6_x27 = lhs27 - rhs27(6);

  s.support_in_six_values = std::all_of(sp.a.begin(), sp.a.end(), [](const auto& kv) {
    switch (kv.first) {
      case 22: case 25: case 31: case 34: case 40: case 43: return true;
      default: return false;
    }
  });
  for (const auto& [j, cnt] : sp.lambda)
    if (j > 4) s.points_above_4 += cnt;

  const bool b3 = s.residual_reduced_lambda3_x27 == 0, b6 = s.residual_reduced_lambda6_x27 == 0;
  s.balanced_reading = b3 && b6 ? "both" : b3 ? "lambda3" : b6 ? "lambda6" : "neither";
  return s;
}

}  // namespace minihyper
