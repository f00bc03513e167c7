// Demo: locate primes whose K-Fibonacci value set is unusually small, then
// measure how the set grows under addition and multiplication.

#include <iostream>

#include "recset/recset.hpp"

int main() {
  using namespace recset;

  // Primes p <= 10^5 with |value set| < p^{3/4}/6 for the classic K = 1 case.
  auto primes = find_hypothesis_primes(100000, 1);
  std::cout << "small-value-set primes up to 1e5:";
  for (uint64_t p : primes) std::cout << ' ' << p;
  std::cout << "\n\n";

  for (uint64_t p : primes) {
    DoublingVerdict v = doubling_verdict(p, 1);
    std::cout << "p=" << p << "  period=" << v.row.period
              << "  |F|=" << v.row.set_card << "  |F+F|=" << v.row.sum_card
              << "  |F*F|=" << v.row.prod_card
              << "  c_sum=" << format_fixed6(v.row.c_sum)
              << "  c_prod=" << format_fixed6(v.row.c_prod)
              << "  containments=" << (v.containment_sum && v.containment_prod)
              << '\n';
  }

  // A small dense cell for contrast: the full field doubles to itself.
  auto full = sweep_cell(7, 1, 100000);
  std::cout << "\ncontrast p=7: |F|=" << full->set_card
            << " |F+F|=" << full->sum_card << " |F*F|=" << full->prod_card
            << " hypothesis_ok=" << full->hypothesis_ok << '\n';
  return 0;
}
