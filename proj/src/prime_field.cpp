#include "minihyper/prime_field.hpp"

#include <stdexcept>
#include <string>

namespace minihyper {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int q) : q_(q) {
  if (!is_prime(q))
    throw std::invalid_argument("field order " + std::to_string(q) +
                                " is not prime; only prime fields are supported");
  // q*q must fit in int for mul().
  if (q > 46340) throw std::invalid_argument("field order too large");
  inverse_.assign(q, 0);
  for (int a = 1; a < q; ++a) {
    // a^(q-2) by square-and-multiply
    long long result = 1, base = a;
    for (int e = q - 2; e > 0; e >>= 1) {
      if (e & 1) result = result * base % q;
      base = base * base % q;
    }
    inverse_[a] = static_cast<int>(result);
  }
}

}  // namespace minihyper
