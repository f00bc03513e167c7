#pragma once

// Value sets of periodic orbits, sumsets, product sets, general polynomial
// images P(A, B), and growth reports (doubling exponents and measured
// constants against the |A|^{4/3} benchmark).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "recset/bitset.hpp"
#include "recset/common.hpp"
#include "recset/ffield.hpp"
#include "recset/poly.hpp"
#include "recset/recurrence.hpp"

namespace recset {

/// Immutable subset of F_p with O(1) membership and cached cardinality.
struct ValueSet {
  Modulus mod;
  Bitset members;
  uint64_t cardinality = 0;

  static ValueSet from_members(Modulus m, const std::vector<uint64_t>& vals) {
    ValueSet s{m, Bitset(m.value()), 0};
    for (uint64_t v : vals) s.members.set(v % m.value());
    s.cardinality = s.members.count();
    return s;
  }
  static ValueSet from_bitset(Modulus m, Bitset b) {
    detail::require(b.universe() == m.value(), "bitset/modulus size mismatch");
    ValueSet s{m, std::move(b), 0};
    s.cardinality = s.members.count();
    return s;
  }
  static ValueSet from_orbit(const Orbit& o) {
    return from_bitset(o.mod, o.value_set);
  }
  static ValueSet full_field(Modulus m) {
    ValueSet s{m, Bitset(m.value()), m.value()};
    for (uint64_t v = 0; v < m.value(); ++v) s.members.set(v);
    return s;
  }

  std::vector<uint64_t> values() const { return members.members(); }
  bool contains(uint64_t v) const { return members.test(v % mod.value()); }
  bool operator==(const ValueSet&) const = default;
};

namespace detail {

inline void match_mod(const ValueSet& a, const ValueSet& b) {
  require(a.mod == b.mod, "value set modulus mismatch");
}

}  // namespace detail

/// A + B = { a + b mod p }. O(|A||B|) bit-array writes.
inline ValueSet sumset(const ValueSet& A, const ValueSet& B) {
  detail::match_mod(A, B);
  const uint64_t p = A.mod.value();
  Bitset out(p);
  auto as = A.values(), bs = B.values();
  for (uint64_t a : as)
    for (uint64_t b : bs) out.set(detail::addmod(a, b, p));
  return ValueSet::from_bitset(A.mod, std::move(out));
}

/// A * B = { a * b mod p }.
inline ValueSet productset(const ValueSet& A, const ValueSet& B) {
  detail::match_mod(A, B);
  const uint64_t p = A.mod.value();
  Bitset out(p);
  auto as = A.values(), bs = B.values();
  for (uint64_t a : as)
    for (uint64_t b : bs) out.set(detail::mulmod(a, b, p));
  return ValueSet::from_bitset(A.mod, std::move(out));
}

namespace detail {

// Row view of P grouped by y-exponent, with x evaluated via a power table.
struct GroupedPoly {
  // (j, coefficients as (i, c) pairs), ascending j
  std::vector<std::pair<int64_t, std::vector<std::pair<int64_t, uint64_t>>>> rows;
  int64_t d1 = 0, d2 = 0;

  explicit GroupedPoly(const PolyFp& P) {
    std::map<int64_t, std::vector<std::pair<int64_t, uint64_t>>> byj;
    for (auto& [e, c] : P.terms()) {
      d1 = std::max(d1, e.i);
      d2 = std::max(d2, e.j);
      byj[e.j].push_back({e.i, c.value()});
    }
    rows.assign(byj.begin(), byj.end());
  }
};

}  // namespace detail

/// Image set { P(a, b) : a in A, b in B }. sumset/productset are the special
/// cases P = x + y and P = x y.
inline ValueSet poly_image(const PolyFp& P, const ValueSet& A,
                           const ValueSet& B) {
  detail::match_mod(A, B);
  detail::require(!P.is_zero(), "poly_image needs a nonzero polynomial");
  for (auto& [e, c] : P.terms())
    detail::require(c.prime() == A.mod.value(), "polynomial modulus mismatch");
  const uint64_t p = A.mod.value();
  detail::GroupedPoly G(P);
  auto as = A.values(), bs = B.values();
  // y powers per member of B, reused across the outer loop
  std::vector<std::vector<uint64_t>> ypow(bs.size());
  for (size_t t = 0; t < bs.size(); ++t) {
    ypow[t].resize(G.d2 + 1);
    ypow[t][0] = 1 % p;
    for (int64_t j = 1; j <= G.d2; ++j)
      ypow[t][j] = detail::mulmod(ypow[t][j - 1], bs[t], p);
  }
  Bitset out(p);
  std::vector<uint64_t> xpow(G.d1 + 1);
  for (uint64_t a : as) {
    xpow[0] = 1 % p;
    for (int64_t i = 1; i <= G.d1; ++i)
      xpow[i] = detail::mulmod(xpow[i - 1], a, p);
    // collapse each row to c_j(a)
    std::vector<std::pair<int64_t, uint64_t>> cj;
    cj.reserve(G.rows.size());
    for (auto& [j, terms] : G.rows) {
      uint64_t s = 0;
      for (auto& [i, c] : terms) s = (s + c * xpow[i]) % p;
      cj.push_back({j, s});
    }
    for (size_t t = 0; t < bs.size(); ++t) {
      uint64_t v = 0;
      for (auto& [j, c] : cj) v = (v + c * ypow[t][j]) % p;
      out.set(v);
    }
  }
  return ValueSet::from_bitset(A.mod, std::move(out));
}

/// log|A+A| / log|A|; undefined (nullopt) when |A| <= 1.
inline std::optional<double> doubling_exponent(uint64_t card,
                                               uint64_t doubled_card) {
  if (card <= 1) return std::nullopt;
  return std::log((double)doubled_card) / std::log((double)card);
}

/// Measured constant |A+A| / |A|^{4/3}.
inline double growth_constant(uint64_t card, uint64_t doubled_card) {
  detail::require(card >= 1, "growth constant needs a nonempty set");
  double c13 = std::cbrt((double)card);
  return (double)doubled_card / ((double)card * c13);
}

/// The small-value-set threshold p^{3/4} / 6. p is prime, so p^{3/4} is
/// irrational and the strict comparison below is never a tie.
inline double smallset_threshold(uint64_t p) {
  return std::pow((double)p, 0.75) / 6.0;
}

inline bool smallset_hypothesis(uint64_t set_card, uint64_t p) {
  return (double)set_card < smallset_threshold(p);
}

/// Growth measurements for one orbit value set.
struct DoublingReport {
  uint64_t p = 0;
  uint64_t input_card = 0;
  uint64_t sum_card = 0;
  uint64_t prod_card = 0;
  std::optional<uint64_t> poly_card;  // only when an extra P was supplied
  std::optional<double> exponent_sum;
  std::optional<double> exponent_prod;
  double c_sum = 0.0;
  double c_prod = 0.0;
  bool hypothesis_ok = false;  // |A| < p^{3/4}/6
};

inline DoublingReport doubling_report_for_set(const ValueSet& A) {
  DoublingReport r;
  r.p = A.mod.value();
  r.input_card = A.cardinality;
  r.sum_card = sumset(A, A).cardinality;
  r.prod_card = productset(A, A).cardinality;
  r.exponent_sum = doubling_exponent(r.input_card, r.sum_card);
  r.exponent_prod = doubling_exponent(r.input_card, r.prod_card);
  r.c_sum = growth_constant(r.input_card, r.sum_card);
  r.c_prod = growth_constant(r.input_card, r.prod_card);
  r.hypothesis_ok = smallset_hypothesis(r.input_card, r.p);
  return r;
}

/// Orbit the recurrence, then measure the growth of its value set.
inline DoublingReport doubling_report(const RecurrenceSpec& s) {
  return doubling_report_for_set(ValueSet::from_orbit(orbit(s)));
}

inline DoublingReport doubling_report(const RecurrenceSpec& s,
                                      const PolyFp& P) {
  Orbit o = orbit(s);
  ValueSet A = ValueSet::from_orbit(o);
  DoublingReport r = doubling_report_for_set(A);
  r.poly_card = poly_image(P, A, A).cardinality;
  return r;
}

}  // namespace recset
