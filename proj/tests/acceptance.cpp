// Prints one PASS/FAIL/UNRESOLVED line per acceptance criterion.
// Exit status: 0 all pass, 1 any failure, 3 unresolved (budget) without failures.
#include <cstdio>
#include <cstdlib>

#include "minihyper/claims.hpp"

int main() {
  minihyper::ClaimOptions o;
  if (const char* t = std::getenv("MINIHYPER_THREADS")) o.threads = std::max(1, std::atoi(t));
  const auto results = minihyper::run_claims(o);
  bool failed = false, unresolved = false;
  for (const auto& r : results) {
    std::printf("%-10s criterion %2d  %-26s %7.2fs  %s\n", minihyper::to_string(r.status).c_str(), r.id, r.key.c_str(),
                r.seconds, r.detail.c_str());
    failed |= r.status == minihyper::ClaimStatus::fail;
    unresolved |= r.status == minihyper::ClaimStatus::unresolved;
  }
  return failed ? 1 : unresolved ? 3 : 0;
}
