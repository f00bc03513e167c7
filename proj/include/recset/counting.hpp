#pragma once

// Exact solution counting of P(x, y) = 0 over subgroup grids G x G, the
// |G|^{2/3} style bounds with their named hypothesis checks, and fiber
// censuses of P over value sets.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recset/common.hpp"
#include "recset/doubling.hpp"
#include "recset/ffield.hpp"
#include "recset/irreducibility.hpp"
#include "recset/poly.hpp"

namespace recset {

/// Cyclic subgroup G of F_p* or F_{p^2}*, materialized as the powers of a
/// generator.
struct SubgroupGrid {
  Fp2 mu;
  uint64_t order = 1;
  std::vector<Fp2> elements;  // mu^0 .. mu^{order-1}
};

inline SubgroupGrid make_subgroup_grid(Fp2 mu) {
  detail::require(!mu.is_zero(), "generator must be a unit");
  SubgroupGrid g{mu, mult_order(mu), {}};
  g.elements.reserve(g.order);
  Fp2 x = mu.pow(0);
  for (uint64_t k = 0; k < g.order; ++k) {
    g.elements.push_back(x);
    x *= mu;
  }
  detail::ensure(x.is_one(), "generator order mismatch");
  return g;
}

/// Subgroup of the requested order inside F_p* (ext 1) or F_{p^2}* (ext 2).
/// The order must divide p - 1 resp. p^2 - 1.
inline SubgroupGrid subgroup_of_order(const QuadField& F, uint64_t n, int ext) {
  detail::require(n >= 1, "order must be positive");
  uint64_t p = F.base_modulus().value();
  detail::require(ext == 1 || ext == 2, "ext is 1 or 2");
  uint64_t full = ext == 1 ? p - 1 : (p - 1) * (p + 1);
  detail::require(full % n == 0, "order does not divide the unit group order");
  Fp2 gen = ext == 1 ? F.embed(primitive_root(F.base_modulus()))
                     : field_generator(F);
  SubgroupGrid g = make_subgroup_grid(gen.pow(full / n));
  detail::ensure(g.order == n, "constructed subgroup has wrong order");
  return g;
}

/// Exact |{ (x, y) in G x G : P(x, y) = 0 }| by full scan with power tables.
/// Coefficients are embedded into the grid's own field, so grids built over
/// any quadratic extension parameters work.
inline uint64_t solutions_in_grid(const PolyFp& P, const SubgroupGrid& G) {
  detail::require(!P.is_zero(), "counting needs a nonzero polynomial");
  const uint64_t p = G.mu.prime();
  detail::require(p == P.terms().begin()->second.prime(),
                  "polynomial/grid modulus mismatch");
  Modulus m(p);
  Fp dnr(G.mu.dvalue(), m);
  auto embed = [&](uint64_t v) { return Fp2(Fp(v, m), Fp(0, m), dnr); };
  const Fp2 one = embed(1), zero = embed(0);

  detail::GroupedPoly gp(P);
  const uint64_t n = G.order;
  // per-element power tables up to the bidegree
  std::vector<Fp2> xpow((size_t)n * (gp.d1 + 1), one);
  for (uint64_t t = 0; t < n; ++t)
    for (int64_t i = 1; i <= gp.d1; ++i)
      xpow[t * (gp.d1 + 1) + i] = xpow[t * (gp.d1 + 1) + i - 1] * G.elements[t];
  std::vector<Fp2> ypow((size_t)n * (gp.d2 + 1), one);
  for (uint64_t t = 0; t < n; ++t)
    for (int64_t j = 1; j <= gp.d2; ++j)
      ypow[t * (gp.d2 + 1) + j] = ypow[t * (gp.d2 + 1) + j - 1] * G.elements[t];

  uint64_t count = 0;
  std::vector<std::pair<int64_t, Fp2>> cj(gp.rows.size(), {0, zero});
  for (uint64_t tx = 0; tx < n; ++tx) {
    for (size_t r = 0; r < gp.rows.size(); ++r) {
      Fp2 s = zero;
      for (auto& [i, c] : gp.rows[r].second)
        s += embed(c) * xpow[tx * (gp.d1 + 1) + i];
      cj[r] = {gp.rows[r].first, s};
    }
    for (uint64_t ty = 0; ty < n; ++ty) {
      Fp2 v = zero;
      for (auto& [j, c] : cj) v += c * ypow[ty * (gp.d2 + 1) + j];
      if (v.is_zero()) ++count;
    }
  }
  return count;
}

/// 12 d1 d2 (d1 + d2)^2 |G|^{2/3}.
inline double subgroup_solution_bound(int64_t d1, int64_t d2, uint64_t g_order) {
  detail::require(d1 >= 0 && d2 >= 0, "degrees must be non-negative");
  double g13 = std::cbrt((double)g_order);
  return 12.0 * (double)d1 * (double)d2 * (double)((d1 + d2) * (d1 + d2)) *
         g13 * g13;
}

/// 12 (d1 k1 - l1)(d2 k1 - l2)(d1 k1 + d2 k1 - l1 - l2)^2 max(k1, k1-km)^{2/3}
/// |X|^{2/3} -- the solution bound pulled back from a subgroup grid to a
/// value set written on exponents k1 > ... > km with shift (l1, l2).
inline double valueset_solution_bound(int64_t d1, int64_t d2, int64_t k1,
                                      int64_t km, int64_t l1, int64_t l2,
                                      uint64_t x_card) {
  detail::require(k1 >= km, "k1 must be the largest exponent");
  double m1 = (double)(d1 * k1 - l1);
  double m2 = (double)(d2 * k1 - l2);
  double s = m1 + m2;
  int64_t kf = k1 > k1 - km ? k1 : k1 - km;
  double k13 = std::cbrt((double)kf);
  double x13 = std::cbrt((double)x_card);
  return 12.0 * m1 * m2 * s * s * k13 * k13 * x13 * x13;
}

/// One named hypothesis check.
struct HypothesisResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool all_passed(const std::vector<HypothesisResult>& hs) {
  for (auto& h : hs)
    if (!h.passed) return false;
  return true;
}

/// Hypotheses of the origin-anchored bound: P(0,0) != 0, deg_x P(x,0) >= 1,
/// d2 >= 1, and the window 10^3 < |G| < p^{3/4}/3.
inline std::vector<HypothesisResult> origin_bound_hypotheses(const PolyFp& P,
                                                             uint64_t g_order,
                                                             uint64_t p) {
  std::vector<HypothesisResult> out;
  const Fp* c00 = P.coeff({0, 0});
  out.push_back({"nonzero_at_origin", c00 != nullptr && !c00->is_zero(), ""});
  int64_t dx_on_axis = -1;
  for (auto& [e, c] : P.terms())
    if (e.j == 0) dx_on_axis = std::max(dx_on_axis, e.i);
  out.push_back({"x_degree_on_x_axis",
                 dx_on_axis >= 1,
                 "deg_x P(x,0) = " + std::to_string(dx_on_axis)});
  out.push_back({"y_degree_positive", P.y_degree() >= 1, ""});
  double hi = std::pow((double)p, 0.75) / 3.0;
  bool window = (double)g_order > 1000.0 && (double)g_order < hi;
  out.push_back({"group_order_window", window,
                 "need 1000 < " + std::to_string(g_order) + " < p^{3/4}/3"});
  return out;
}

/// Hypotheses of the sharp-part bound: the minimal-degree homogeneous part
/// has at least two monomials, and c0 <= |G| <= p^{3/4}/2.
inline std::vector<HypothesisResult> sharp_bound_hypotheses(const PolyFp& P,
                                                            uint64_t g_order,
                                                            uint64_t p,
                                                            uint64_t c0 = 1000) {
  std::vector<HypothesisResult> out;
  auto sp = sharp_part(P);
  out.push_back({"sharp_part_two_monomials", sp.monomial_count >= 2,
                 "monomials = " + std::to_string(sp.monomial_count)});
  double hi = std::pow((double)p, 0.75) / 2.0;
  bool window = (double)g_order >= (double)c0 && (double)g_order <= hi;
  out.push_back({"group_order_window", window,
                 "need c0 <= " + std::to_string(g_order) + " <= p^{3/4}/2"});
  return out;
}

enum class IrredStatus { assumed, checked, failed };

/// Solution count plus bound applicability: the bound applies when either
/// hypothesis family passes in full and irreducibility was actually checked.
/// When applicable, solutions <= ceil(bound_value) is enforced.
struct CountReport {
  uint64_t solutions = 0;
  double bound_value = 0.0;
  bool bound_applicable = false;
  std::vector<std::string> hypothesis_failures;
  IrredStatus irreducibility = IrredStatus::assumed;
};

inline CountReport make_count_report(const PolyFp& P, const SubgroupGrid& G,
                                     IrredStatus irred, uint64_t c0 = 1000) {
  CountReport r;
  r.irreducibility = irred;
  r.solutions = solutions_in_grid(P, G);
  r.bound_value = subgroup_solution_bound(P.x_degree(), P.y_degree(), G.order);
  uint64_t p = G.mu.prime();
  auto h1 = origin_bound_hypotheses(P, G.order, p);
  auto h2 = sharp_bound_hypotheses(P, G.order, p, c0);
  for (auto& h : h1)
    if (!h.passed) r.hypothesis_failures.push_back("origin_bound." + h.name);
  for (auto& h : h2)
    if (!h.passed) r.hypothesis_failures.push_back("sharp_bound." + h.name);
  bool hyp = all_passed(h1) || all_passed(h2);
  r.bound_applicable = hyp && irred == IrredStatus::checked;
  if (r.bound_applicable)
    detail::ensure((double)r.solutions <= std::ceil(r.bound_value),
                   "solution count exceeds the applicable bound");
  return r;
}

/// Fiber sizes of P over X x X: for each attained value r, the number of
/// pairs with P(x, y) = r. exceptional lists values singled out by the
/// analysis (for annotation only; they need not be attained).
struct FiberCensus {
  std::map<uint64_t, uint64_t> counts;
  uint64_t image_size = 0;
  uint64_t total_pairs = 0;
  std::vector<std::pair<uint64_t, uint64_t>> exceptional_present;  // (r, count)
};

inline FiberCensus fiber_census(const PolyFp& P, const ValueSet& X,
                                const std::vector<Fp>& exceptional = {}) {
  detail::require(!P.is_zero(), "census needs a nonzero polynomial");
  const uint64_t p = X.mod.value();
  detail::GroupedPoly gp(P);
  auto xs = X.values();
  std::vector<uint64_t> counts(p, 0);
  std::vector<std::vector<uint64_t>> ypow(xs.size());
  for (size_t t = 0; t < xs.size(); ++t) {
    ypow[t].resize(gp.d2 + 1);
    ypow[t][0] = 1 % p;
    for (int64_t j = 1; j <= gp.d2; ++j)
      ypow[t][j] = detail::mulmod(ypow[t][j - 1], xs[t], p);
  }
  std::vector<uint64_t> xpow(gp.d1 + 1);
  for (uint64_t a : xs) {
    xpow[0] = 1 % p;
    for (int64_t i = 1; i <= gp.d1; ++i)
      xpow[i] = detail::mulmod(xpow[i - 1], a, p);
    std::vector<std::pair<int64_t, uint64_t>> cj;
    cj.reserve(gp.rows.size());
    for (auto& [j, terms] : gp.rows) {
      uint64_t s = 0;
      for (auto& [i, c] : terms) s = (s + c * xpow[i]) % p;
      cj.push_back({j, s});
    }
    for (size_t t = 0; t < xs.size(); ++t) {
      uint64_t v = 0;
      for (auto& [j, c] : cj) v = (v + c * ypow[t][j]) % p;
      ++counts[v];
    }
  }
  FiberCensus out;
  for (uint64_t r = 0; r < p; ++r) {
    if (!counts[r]) continue;
    out.counts.emplace(r, counts[r]);
    ++out.image_size;
    out.total_pairs += counts[r];
  }
  for (Fp e : exceptional) {
    uint64_t v = e.value();
    if (counts[v]) out.exceptional_present.push_back({v, counts[v]});
  }
  return out;
}

/// Exceptional fiber values of the sum family: just r = 0.
inline std::vector<Fp> sum_family_exceptional(Modulus m) {
  return {Fp(0, m)};
}

/// Exceptional fiber values of the product family: 0 and, when abgd is a
/// square mod p, +-2 sqrt(abgd).
inline std::vector<Fp> prod_family_exceptional(Fp a, Fp b, Fp g, Fp d) {
  Modulus m(a.prime());
  std::vector<Fp> out{Fp(0, m)};
  auto s = sqrt_mod(a * b * g * d);
  if (s && !s->is_zero()) {
    Fp two(2, m);
    out.push_back(two * *s);
    out.push_back(-(two * *s));
  }
  return out;
}

}  // namespace recset
