// Demo: Newton polygons as a factorization obstruction. Builds the two
// four-parameter families behind the value-set analysis, lists the Minkowski
// splits of their polygons, and runs the exhaustive factor search.

#include <iostream>

#include "recset/recset.hpp"

int main() {
  using namespace recset;
  Modulus m(7);
  auto e = [&](uint64_t v) { return Fp(v, m); };

  PolyFp sum = sum_family_poly(e(1), e(1), e(1), e(1), e(2));
  PolyFp prod = prod_family_poly(e(1), e(1), e(1), e(1), e(2));

  for (auto* P : {&sum, &prod}) {
    LatticePolygon g = newton_polygon(*P);
    std::cout << "polygon:";
    for (auto& v : g.vertices) std::cout << " (" << v.i << ',' << v.j << ')';
    auto splits = minkowski_splits(g);
    std::cout << "\n  " << splits.size() << " split classes\n";
    IrredVerdict v = irreducible_oracle(*P, 2);
    std::cout << "  verdict over degree-2 extension: "
              << (v.kind == IrredKind::irreducible   ? "irreducible"
                  : v.kind == IrredKind::reducible   ? "reducible"
                                                     : "inconclusive")
              << " (" << v.note << ")\n";
  }

  // A visibly reducible contrast case: (x + y)(x + 2y).
  PolyFp a = parse_poly("1 0 1\n0 1 1", m), b = parse_poly("1 0 1\n0 1 2", m);
  IrredVerdict v = irreducible_oracle(a * b, 1);
  std::cout << "contrast (x+y)(x+2y): "
            << (v.kind == IrredKind::reducible ? "reducible" : "?") << '\n';
  return 0;
}
