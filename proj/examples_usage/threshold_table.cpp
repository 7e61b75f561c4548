// Threshold constants and partial constants for c = (1,...,1), rho = 1.
#include "entrywise/threshold.hpp"

#include <cstdio>

int main() {
  using namespace entrywise;
  for (int N = 1; N <= 4; ++N) {
    const CoefficientTuple c{std::vector<double>(static_cast<std::size_t>(N), 1.0), {}};
    for (int M = N; M <= N + 3; ++M) {
      std::printf("N=%d M=%d  C=%-10g partials:", N, M, threshold_constant(c, M, N, 1.0));
      for (double p : partial_constants(c, M, N, 1.0)) std::printf(" %g", p);
      std::printf("\n");
    }
  }
}
