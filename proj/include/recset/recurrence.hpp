#pragma once

// Linear recurrences over F_p, their purely periodic orbits, decimation,
// characteristic roots and the multiplicative-subgroup form of the terms.

#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "recset/bitset.hpp"
#include "recset/common.hpp"
#include "recset/ffield.hpp"

namespace recset {

/// Order-m recurrence X_{n+m} = a1 X_{n+m-1} + ... + am X_n over F_p,
/// together with initial values X_0 .. X_{m-1}. Coefficients and initials
/// are stored as reduced residues.
struct RecurrenceSpec {
  Modulus mod;
  std::vector<uint64_t> coeffs;    // a1 .. am
  std::vector<uint64_t> initials;  // X_0 .. X_{m-1}

  RecurrenceSpec(Modulus m, std::vector<uint64_t> a, std::vector<uint64_t> x0)
      : mod(m), coeffs(std::move(a)), initials(std::move(x0)) {
    detail::require(!coeffs.empty(), "recurrence order must be >= 1");
    detail::require(coeffs.size() == initials.size(),
                    "need exactly m initial values");
    for (auto& c : coeffs) c %= mod.value();
    for (auto& x : initials) x %= mod.value();
  }

  size_t order() const { return coeffs.size(); }

  /// True when the state shift map is invertible, i.e. am != 0. Only then is
  /// the orbit purely periodic.
  bool shift_invertible() const { return coeffs.back() != 0; }
};

/// X_{n+2} = X_{n+1} + K X_n with X_0 = 0, X_1 = 1 (K = 1 is Fibonacci).
inline RecurrenceSpec kfib_spec(uint64_t K, Modulus m) {
  detail::require(K % m.value() != 0, "K must be nonzero mod p");
  return RecurrenceSpec(m, {1, K}, {0, 1});
}

/// First n terms X_0 .. X_{n-1}.
inline std::vector<uint64_t> iterate(const RecurrenceSpec& s, uint64_t n) {
  const uint64_t p = s.mod.value();
  const size_t m = s.order();
  std::vector<uint64_t> out;
  out.reserve(n);
  std::vector<uint64_t> w(s.initials);  // sliding window X_t .. X_{t+m-1}
  for (uint64_t t = 0; t < n; ++t) {
    out.push_back(w[0]);
    uint64_t nxt = 0;
    for (size_t i = 0; i < m; ++i)
      nxt = (nxt + s.coeffs[i] * w[m - 1 - i]) % p;
    for (size_t i = 0; i + 1 < m; ++i) w[i] = w[i + 1];
    w[m - 1] = nxt;
  }
  return out;
}

/// One full period of a purely periodic orbit plus its value set.
struct Orbit {
  Modulus mod;
  uint64_t period = 0;
  std::vector<uint64_t> values;  // X_0 .. X_{period-1}
  Bitset value_set;              // membership over [0, p)
  uint64_t set_cardinality = 0;
};

namespace detail {

inline std::optional<Orbit> orbit_impl(const RecurrenceSpec& s,
                                       std::optional<uint64_t> cap) {
  require(s.shift_invertible(), "orbit needs am != 0");
  const uint64_t p = s.mod.value();
  const size_t m = s.order();

  // Hard guard: the state space has at most p^m states, so the period can
  // never exceed p^m. Saturate to avoid overflow for large m.
  uint64_t state_bound = 1;
  for (size_t i = 0; i < m; ++i) {
    if (state_bound > (uint64_t(1) << 62) / p) { state_bound = uint64_t(1) << 62; break; }
    state_bound *= p;
  }

  Orbit orb{s.mod, 0, {}, Bitset(p), 0};
  std::vector<uint64_t> w(s.initials);
  uint64_t steps = 0;
  while (true) {
    if (cap && steps >= *cap) return std::nullopt;
    ensure(steps <= state_bound, "period exceeded state space bound");
    orb.values.push_back(w[0]);
    orb.value_set.set(w[0]);
    uint64_t nxt = 0;
    for (size_t i = 0; i < m; ++i)
      nxt = (nxt + s.coeffs[i] * w[m - 1 - i]) % p;
    for (size_t i = 0; i + 1 < m; ++i) w[i] = w[i + 1];
    w[m - 1] = nxt;
    ++steps;
    if (w == s.initials) break;
  }
  orb.period = steps;
  orb.set_cardinality = orb.value_set.count();
  return orb;
}

}  // namespace detail

/// Full orbit of a purely periodic recurrence.
inline Orbit orbit(const RecurrenceSpec& s) {
  return *detail::orbit_impl(s, std::nullopt);
}

/// Like orbit(), but gives up (returns nullopt) once `cap` terms have been
/// generated without closing the cycle.
inline std::optional<Orbit> orbit_capped(const RecurrenceSpec& s, uint64_t cap) {
  return detail::orbit_impl(s, cap);
}

/// Recurrence satisfied by the subsequence Y_n = X_{t n + offset} of an
/// order-2 recurrence: Y_{n+2} = tr(M^t) Y_{n+1} - det(M^t) Y_n where M is
/// the companion matrix. Requires order 2 and t >= 1.
inline RecurrenceSpec decimate(const RecurrenceSpec& s, uint64_t t,
                               uint64_t offset = 0) {
  detail::require(s.order() == 2, "decimation needs an order-2 recurrence");
  detail::require(t >= 1, "decimation stride must be >= 1");
  const uint64_t p = s.mod.value();

  // M = [[a1, a2], [1, 0]]; square-and-multiply on 2x2 matrices mod p.
  struct M2 { uint64_t a, b, c, d; };
  auto mul = [p](const M2& x, const M2& y) {
    return M2{(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p,
              (x.c * y.a + x.d * y.c) % p, (x.c * y.b + x.d * y.d) % p};
  };
  M2 acc{1, 0, 0, 1}, base{s.coeffs[0], s.coeffs[1], 1, 0};
  uint64_t e = t;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  uint64_t tr = (acc.a + acc.d) % p;
  uint64_t det = detail::submod(detail::mulmod(acc.a, acc.d, p),
                                detail::mulmod(acc.b, acc.c, p), p);
  auto pre = iterate(s, t + offset + 1);
  return RecurrenceSpec(s.mod, {tr, detail::submod(0, det, p)},
                        {pre[offset], pre[t + offset]});
}

/// Roots of the characteristic polynomial x^2 - a1 x - a2 of an order-2
/// recurrence, living in F_{p^2}. Requires odd p (quadratic formula).
struct CharRoots {
  Fp2 r1, r2;
  bool repeated = false;
  bool split_in_base = false;  // both roots already in F_p
};

inline CharRoots char_roots(const RecurrenceSpec& s, const QuadField& F) {
  detail::require(s.order() == 2, "characteristic roots need order 2");
  const Modulus m = s.mod;
  detail::require(m.value() != 2, "roots need an odd modulus");
  detail::require(m == F.base_modulus(), "field/recurrence modulus mismatch");
  Fp a1(s.coeffs[0], m), a2(s.coeffs[1], m);
  Fp disc = a1 * a1 + Fp(4, m) * a2;
  Fp half = Fp(2, m).inv();
  if (disc.is_zero()) {
    Fp2 r = F.embed(a1 * half);
    return CharRoots{r, r, true, true};
  }
  if (legendre(disc) == 1) {
    Fp s0 = *sqrt_mod(disc);
    return CharRoots{F.embed((a1 + s0) * half), F.embed((a1 - s0) * half),
                     false, true};
  }
  // disc = d * (disc/d) with disc/d a residue, so sqrt(disc) = sqrt(disc/d) w.
  Fp t = *sqrt_mod(disc * F.nonresidue().inv());
  Fp2 s1 = F.make(Fp(0, m), t);
  Fp2 a1e = F.embed(a1), halfe = F.embed(half);
  return CharRoots{(a1e + s1) * halfe, (a1e - s1) * halfe, false, false};
}

/// Terms written on a cyclic group: X_n = alpha1 mu^(n k1) + alpha2 mu^(n k2)
/// where G = <mu> is the smallest subgroup containing both roots.
struct SubgroupDesc {
  Fp2 mu;
  uint64_t group_order = 1;
  int64_t k1 = 1, k2 = 0;  // k1 >= 1, k1 > k2
  Fp2 alpha1, alpha2;
  int ext_degree = 1;  // 1: everything lives in F_p; 2: needs F_{p^2}
};

namespace detail {

// Baby-step/giant-step discrete log in <g> of known order n. O(sqrt n) space.
inline uint64_t dlog_bsgs(Fp2 g, Fp2 x, uint64_t n) {
  uint64_t m = 1;
  while (m * m < n) ++m;
  std::unordered_map<uint64_t, uint64_t> baby;
  baby.reserve(m * 2);
  Fp2 cur = g.pow(0);
  uint64_t p = g.prime();
  auto key = [p](const Fp2& v) { return v.re() * p + v.im(); };
  for (uint64_t j = 0; j < m; ++j) {
    baby.emplace(key(cur), j);
    cur *= g;
  }
  Fp2 giant = g.pow(m).inv();
  Fp2 y = x;
  for (uint64_t i = 0; i * m < n + m; ++i) {
    auto it = baby.find(key(y));
    if (it != baby.end()) return (i * m + it->second) % n;
    y *= giant;
  }
  throw InternalError("dlog: element not in subgroup");
}

}  // namespace detail

/// Evaluate the subgroup form at index n.
inline Fp2 subgroup_eval(const SubgroupDesc& d, uint64_t n) {
  return d.alpha1 * d.mu.pow_signed(d.k1 * (int64_t)n) +
         d.alpha2 * d.mu.pow_signed(d.k2 * (int64_t)n);
}

/// Subgroup form of an order-2 recurrence with distinct characteristic
/// roots. Repeated roots are rejected; a nullopt (no common generator) is
/// kept for interface completeness but cannot occur for two roots, since
/// every finite subgroup of a field's unit group is cyclic.
inline std::optional<SubgroupDesc> subgroup_repr(const RecurrenceSpec& s,
                                                 const QuadField& F) {
  CharRoots cr = char_roots(s, F);
  detail::require(!cr.repeated, "repeated characteristic root");
  const Modulus m = s.mod;
  const uint64_t p = m.value();

  Fp2 l1 = cr.r1, l2 = cr.r2;
  Fp2 x0 = F.embed(Fp(s.initials[0], m)), x1 = F.embed(Fp(s.initials[1], m));
  // Vandermonde: c1 + c2 = X0, c1 l1 + c2 l2 = X1.
  Fp2 c1 = (x1 - x0 * l2) * (l1 - l2).inv();
  Fp2 c2 = x0 - c1;

  SubgroupDesc out{F.one(), 1, 1, 0, c1, c2, 1};
  auto finish = [&](SubgroupDesc d) {
    bool base = d.mu.in_base_field() && d.alpha1.in_base_field() &&
                d.alpha2.in_base_field();
    d.ext_degree = base ? 1 : 2;
    return d;
  };

  if (c1.is_zero() && c2.is_zero()) return finish(out);  // zero sequence
  if (c2.is_zero() || c1.is_zero()) {
    Fp2 lam = c2.is_zero() ? l1 : l2;
    Fp2 c = c2.is_zero() ? c1 : c2;
    if (lam.is_one()) return finish({F.one(), 1, 1, 0, c, F.zero(), 1});
    return finish({lam, mult_order(lam), 1, 0, c, F.zero(), 1});
  }

  if (l1.is_one() && l2.is_one())
    throw InternalError("distinct roots cannot both be 1");

  uint64_t n1 = mult_order(l1), n2 = mult_order(l2);
  uint64_t N = std::lcm(n1, n2);

  Fp2 mu = F.one();
  int64_t k1 = 0, k2 = 0;
  if ((l1 * l2).is_one()) {
    mu = l1;  // norm-one pair: l2 = l1^-1
    k1 = 1;
    k2 = -1;
  } else {
    // mu0 generates the unique subgroup of order N; both roots lie in it.
    bool base = l1.in_base_field() && l2.in_base_field();
    Fp2 gen = base ? F.embed(primitive_root(m)) : field_generator(F);
    uint64_t full = base ? p - 1 : (p - 1) * (p + 1);
    detail::ensure(full % N == 0, "subgroup order must divide group order");
    mu = gen.pow(full / N);
    uint64_t r1 = detail::dlog_bsgs(mu, l1, N);
    uint64_t r2 = detail::dlog_bsgs(mu, l2, N);
    auto sym = [N](uint64_t r) {  // representative in (-N/2, N/2]
      return r > N / 2 ? (int64_t)r - (int64_t)N : (int64_t)r;
    };
    k1 = sym(r1);
    k2 = sym(r2);
    if (k1 < k2) { std::swap(k1, k2); std::swap(c1, c2); }
    if (k1 <= 0) {  // flip mu -> mu^-1 so the leading exponent is positive
      mu = mu.inv();
      int64_t t1 = -k2, t2 = -k1;
      std::swap(c1, c2);
      k1 = t1;
      k2 = t2;
    }
    // gcd(k1, k2, N) = 1 by N = lcm of the root orders, so any common factor
    // g of (k1, k2) is coprime to N; folding it into mu keeps <mu> intact
    // and makes the exponents coprime.
    int64_t g = std::gcd(k1, k2);
    if (g > 1) {
      mu = mu.pow_signed(g);
      k1 /= g;
      k2 /= g;
    }
  }
  detail::ensure(k1 >= 1 && k1 > k2, "exponent normalization failed");
  detail::ensure(mu.pow_signed(k1) == l1 || mu.pow_signed(k1) == l2,
                 "generator does not reach the roots");
  uint64_t N0 = (l1 * l2).is_one() ? n1 : N;
  return finish({mu, N0, k1, k2, c1, c2, 1});
}

/// Two-sided cardinality comparison between the orbit's value set and the
/// subgroup G that carries the terms:  |X| <= |G| <= max(k1, k1-k2) |X|.
struct SandwichReport {
  uint64_t set_cardinality = 0;
  uint64_t group_order = 0;
  uint64_t bound_factor = 1;
  bool lower_ok = false;
  bool upper_ok = false;
  bool ok() const { return lower_ok && upper_ok; }
};

inline SandwichReport order_sandwich(const Orbit& orb, const SubgroupDesc& d) {
  SandwichReport r;
  r.set_cardinality = orb.set_cardinality;
  r.group_order = d.group_order;
  int64_t f = d.k1 > d.k1 - d.k2 ? d.k1 : d.k1 - d.k2;
  detail::ensure(f >= 1, "bound factor must be positive");
  r.bound_factor = (uint64_t)f;
  r.lower_ok = r.set_cardinality <= r.group_order;
  r.upper_ok = r.group_order <= r.bound_factor * r.set_cardinality;
  return r;
}

}  // namespace recset
