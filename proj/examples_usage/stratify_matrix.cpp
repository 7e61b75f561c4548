// Build a matrix in a chosen stratum, then recover the stratum and its kernel.
#include "entrywise/strata.hpp"

#include <iostream>

int main() {
  using namespace entrywise;
  const IndexPartition pi = parse_index_partition("1,3|2,4", 4);
  const MatrixC a = generate_in_stratum(pi, GroupTag::unit_circle, 7);
  const IndexPartition back = stratify(a, GroupTag::unit_circle);
  std::cout << "requested " << to_string(pi) << ", recovered " << to_string(back) << "\n";
  // the kernel only depends on the finer stratum for the trivial group
  const IndexPartition fine = stratify(a, GroupTag::trivial);
  std::cout << "trivial-group stratum " << to_string(fine) << ", kernel dimension " << simultaneous_kernel(a).dim()
            << " (expected " << kernel_for_partition(fine).dim() << ")\n";
  std::cout << "rank bound holds: " << std::boolalpha << rank_bound_check(a) << "\n";
}
