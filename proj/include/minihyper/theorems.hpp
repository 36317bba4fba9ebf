#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minihyper/multiset.hpp"

namespace minihyper {

// ---------------------------------------------------------------------------
// Counting bounds

/// Lower bound on F(S) for an s-flat S of an (n,w)-minihyper in PG(r,q):
/// ceil((v(r-s)w - v(r-s-1)n) / q^(r-s-1)). May be negative; callers clamp.
Mult eq1_bound(Mult n, Mult w, int r, int q, int s);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// w - (n - F(H))/q as an exact rational.
Rational eq2_bound_exact(Mult n, Mult w, int q, Mult fh);
/// Smallest integer a codimension-2 subspace T of H can carry: ceil(w - (n - F(H))/q).
Mult eq2_bound(Mult n, Mult w, int q, Mult fh);

/// Bound on gamma_j of an (n, n-d)-arc in PG(k-1,q) with n = t + g_q(k,d).
Mult gamma_bound(Mult t, int q, int k, Mult d, int j);

struct BoundAudit {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
};
/// Checks F(S) >= max(0, eq1_bound) over every flat of every dimension < r.
BoundAudit audit_eq1(const Multiset& f);
/// Checks F(T) >= eq2_bound(F(H)) for every hyperplane H and codim-2 T in H.
BoundAudit audit_eq2(const Multiset& f);

// ---------------------------------------------------------------------------
// Theorem reports

enum class TheoremId { ward, hill_lizak, kanda, main_reduction };
std::string to_string(TheoremId id);
TheoremId parse_theorem(const std::string& s);

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  std::string evidence;
};

struct ReductionPoints {
  std::vector<int> points;
  Parameters result;
};
struct ExtensionPoints {
  std::vector<int> points;
  Parameters result;
};
/// F = F' + chi_L.
struct LineSplit {
  int line = -1;  ///< index among the lines of the geometry
  std::vector<int> line_points;
  Parameters residual;
  std::vector<Mult> residual_multiset;
};
struct Divisibility {
  std::int64_t modulus = 0;
  Mult residue = 0;
};
/// A total-t change D (reduction or extension) with the resulting parameters.
struct TwoStep {
  bool reduction = true;
  std::vector<Mult> delta;
  Parameters result;
};

using Conclusion = std::variant<ReductionPoints, ExtensionPoints, LineSplit, Divisibility, TwoStep>;

struct TheoremReport {
  TheoremId theorem = TheoremId::ward;
  Mode mode = Mode::minihyper;
  Parameters input;
  std::vector<Hypothesis> hypotheses;
  bool applicable = false;
  std::optional<Conclusion> conclusion;
  /// True when applicable and the conclusion was verified on this instance.
  bool conclusion_verified = false;
  /// Conclusion fails although every hypothesis holds.
  std::vector<std::string> violations;
  /// Data contradicting the declared parameters (not a theorem failure).
  std::vector<std::string> inconsistencies;
  std::map<std::string, std::int64_t> residuals;

  bool falsified() const { return applicable && !violations.empty(); }
};

/// Hyperplane multiplicities all congruent to n mod p^e whenever w = n mod p^e.
/// e < 1 is rejected with std::invalid_argument.
TheoremReport ward_check(const Multiset& k, Mode mode, int e);

TheoremReport hill_lizak(const Multiset& k, Mode mode);

/// Ternary 2-extension / 2-reduction. q != 3 is rejected.
TheoremReport kanda(const Multiset& k, Mode mode);

/// The line-splitting reducibility theorem for minihypers with
/// w = n - p (mod p^2). Verifies every hypothesis literally, then locates the
/// line L and recomputes the parameters of F - chi_L.
TheoremReport main_reduction(const Multiset& f);

/// All hyperline multiplicities of a multiset congruent mod p.
bool is_divisible(const Multiset& k, int p);

/// 0/1 values on hyperplanes: 1 iff F(H) = n (mod p^2).
struct DualArc {
  std::vector<std::uint8_t> value;
};
DualArc make_dual_arc(const Multiset& f);
/// Codimension-2 flats T whose pencil holds more than one but not all
/// 1-hyperplanes (lines of the dual space that are not closed).
std::int64_t dual_arc_open_lines(const Multiset& f, const DualArc& arc);

// ---------------------------------------------------------------------------
// Counting identities for a (70,22)-minihyper in PG(4,3)

struct StandardEquations {
  std::int64_t hyperplane_count = 0;     ///< sum a_i
  std::int64_t incidence_sum = 0;        ///< sum i a_i
  std::int64_t pair_sum = 0;             ///< sum C(i,2) a_i
  std::int64_t pair_rhs = 0;             ///< 35*69*13 + 27 sum_{i=2}^{4} C(i,2) Lambda_i
  std::int64_t residual_count = 0;       ///< sum a_i - 121
  std::int64_t residual_incidence = 0;   ///< sum i a_i - 2800
  std::int64_t residual_pairs = 0;
  /// 27 x (lhs - rhs) of a31 + 2a34 + 5a40 + 7a43 = 10 + L2 + 3 Lx + 6 L4, with
  /// the left side extended to every multiplicity by (C(i,2) - 23i + 275)/27.
  std::int64_t residual_reduced_lambda3_x27 = 0;
  std::int64_t residual_reduced_lambda6_x27 = 0;
  bool support_in_six_values = false;  ///< spectrum within {22,25,31,34,40,43}
  std::int64_t points_above_4 = 0;
  std::string balanced_reading;        ///< "lambda3", "lambda6", "both" or "neither"
};

StandardEquations standard_equations(const Multiset& f);

}  // namespace minihyper
