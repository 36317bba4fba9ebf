#pragma once

#include <cstdint>
#include <vector>

namespace minihyper {

/// An element of GF(q) for prime q, stored as its residue in [0, q).
struct FieldElement {
  int value = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

/// Arithmetic in the prime field GF(q). Construction rejects non-prime q.
class PrimeField {
 public:
  explicit PrimeField(int q);

  int order() const { return q_; }

  int add(int a, int b) const {
    int s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  int sub(int a, int b) const {
    int s = a - b;
    return s < 0 ? s + q_ : s;
  }
  int neg(int a) const { return a == 0 ? 0 : q_ - a; }
  int mul(int a, int b) const { return (a * b) % q_; }
  /// Multiplicative inverse; `a` must be nonzero.
  int inv(int a) const { return inverse_[a]; }
  int reduce(std::int64_t a) const {
    std::int64_t m = a % q_;
    return static_cast<int>(m < 0 ? m + q_ : m);
  }

  FieldElement element(std::int64_t a) const { return {reduce(a)}; }

 private:
  int q_;
  std::vector<int> inverse_;
};

bool is_prime(std::int64_t n);

}  // namespace minihyper
