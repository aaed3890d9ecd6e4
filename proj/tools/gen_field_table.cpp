// Regenerates core/data/defining_polys.txt from the Conway-style search.
#include "dtl/field_tower.hpp"

#include <iostream>

int main() {
  std::cout << "# p m d : c0 c1 ... c_{md}  (ascending, monic; Conway-compatible)\n";
  const std::pair<int, int> ranges[] = {{2, 21}, {3, 13}, {5, 9}, {7, 7}, {11, 6}, {13, 5}};
  for (auto [p, nmax] : ranges) {
    for (int n = 1; n <= nmax; ++n) {
      auto poly = dtl::conway_search(p, n);
      std::cout << p << " 1 " << n << " :";
      for (int c : poly) std::cout << ' ' << c;
      std::cout << '\n';
    }
  }
}
