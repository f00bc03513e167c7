#pragma once

// Exact arithmetic over F_p and the quadratic extension F_{p^2} for word
// sized primes p < 2^31. All products fit in uint64_t without overflow.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "recset/common.hpp"

namespace recset {

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return a * b % p;  // a,b < p < 2^31
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint64_t powmod(uint64_t base, uint64_t e, uint64_t p) {
  uint64_t acc = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin, valid for all n < 3.2e18; we only need n < 2^31.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
    uint64_t x = 1, b = a % n, e = d;
    while (e) {  // widened powmod: n can exceed 2^31 here only in tests
      if (e & 1) x = (unsigned __int128)x * b % n;
      b = (unsigned __int128)b * b % n;
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = (unsigned __int128)x * x % n;
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Checked prime modulus, 2 <= p < 2^31.
class Modulus {
 public:
  explicit Modulus(uint64_t p) : p_(p) {
    detail::require(p >= 2 && p < (1ull << 31), "modulus out of range");
    detail::require(detail::is_prime_u64(p), "modulus must be prime");
  }
  uint64_t value() const { return p_; }
  bool operator==(const Modulus&) const = default;

 private:
  uint64_t p_;
};

/// Residue in F_p. Operations between elements of distinct moduli throw.
class Fp {
 public:
  Fp(uint64_t v, Modulus m) : v_(v % m.value()), p_(m.value()) {}
  static Fp from_signed(int64_t v, Modulus m) {
    int64_t p = (int64_t)m.value();
    int64_t r = v % p;
    if (r < 0) r += p;
    return Fp((uint64_t)r, m);
  }

  uint64_t value() const { return v_; }
  uint64_t prime() const { return p_; }
  Modulus modulus() const { return Modulus(p_); }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) { a.match(b); return a.raw(detail::addmod(a.v_, b.v_, a.p_)); }
  friend Fp operator-(Fp a, Fp b) { a.match(b); return a.raw(detail::submod(a.v_, b.v_, a.p_)); }
  friend Fp operator*(Fp a, Fp b) { a.match(b); return a.raw(detail::mulmod(a.v_, b.v_, a.p_)); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  bool operator==(const Fp& b) const { match(b); return v_ == b.v_; }
  bool operator!=(const Fp& b) const { return !(*this == b); }

  Fp pow(uint64_t e) const { return raw(detail::powmod(v_, e, p_)); }
  Fp pow_signed(int64_t e) const {
    if (e >= 0) return pow((uint64_t)e);
    return inv().pow((uint64_t)(-e));
  }
  Fp inv() const {
    detail::require(v_ != 0, "inverse of zero");
    return pow(p_ - 2);
  }

 private:
  Fp raw(uint64_t v) const { Fp r = *this; r.v_ = v; return r; }
  void match(const Fp& b) const {
    detail::require(p_ == b.p_, "modulus mismatch");
  }
  uint64_t v_;
  uint64_t p_;
};

/// Legendre symbol (a|p) in {-1, 0, 1} via Euler's criterion. Requires odd p.
inline int legendre(Fp a) {
  detail::require(a.prime() != 2, "legendre needs odd modulus");
  if (a.is_zero()) return 0;
  uint64_t e = a.pow((a.prime() - 1) / 2).value();
  return e == 1 ? 1 : -1;
}

/// Smallest quadratic non-residue mod p. Requires odd p.
inline Fp quad_nonresidue(Modulus m) {
  detail::require(m.value() != 2, "no non-residue exists mod 2");
  for (uint64_t d = 2;; ++d) {
    Fp c(d, m);
    if (legendre(c) == -1) return c;
  }
}

/// Square root in F_p (Tonelli-Shanks), canonical representative min(r, p-r).
/// Returns nullopt when the argument is a non-residue.
inline std::optional<Fp> sqrt_mod(Fp a) {
  uint64_t p = a.prime();
  Modulus m = a.modulus();
  if (a.is_zero()) return a;
  if (p == 2) return a;
  if (legendre(a) != 1) return std::nullopt;
  Fp r(0, m);
  if (p % 4 == 3) {
    r = a.pow((p + 1) / 4);
  } else {
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    Fp z = quad_nonresidue(m);
    Fp c = z.pow(q);
    Fp t = a.pow(q);
    r = a.pow((q + 1) / 2);
    int md = s;
    while (t.value() != 1) {
      Fp t2 = t;
      int i = 0;
      while (t2.value() != 1) { t2 = t2 * t2; ++i; }
      Fp b = c;
      for (int j = 0; j < md - i - 1; ++j) b = b * b;
      md = i;
      c = b * b;
      t = t * c;
      r = r * b;
    }
  }
  uint64_t v = r.value();
  if (p - v < v) v = p - v;
  return Fp(v, m);
}

/// Trial-division factorization; n <= ~2^62, intended for n around p +- 1.
inline std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
  detail::require(n >= 1, "factorize needs n >= 1");
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) { n /= q; ++e; }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace detail {

// Minimal e dividing group_order with x^e = 1, given the factored order.
template <class Elt>
uint64_t order_from_factored(const Elt& x, uint64_t group_order,
                             const std::vector<std::pair<uint64_t, unsigned>>& fac) {
  uint64_t ord = group_order;
  for (auto [q, e] : fac) {
    (void)e;
    while (ord % q == 0 && x.pow(ord / q).is_one()) ord /= q;
  }
  return ord;
}

struct FpOrderAdapter {
  Fp v;
  FpOrderAdapter pow(uint64_t e) const { return {v.pow(e)}; }
  bool is_one() const { return v.value() == 1; }
};

}  // namespace detail

/// Multiplicative order of a nonzero element of F_p*.
inline uint64_t mult_order(Fp x) {
  detail::require(!x.is_zero(), "order of zero");
  return detail::order_from_factored(detail::FpOrderAdapter{x}, x.prime() - 1,
                                     factorize(x.prime() - 1));
}

/// Smallest primitive root mod p.
inline Fp primitive_root(Modulus m) {
  uint64_t p = m.value();
  if (p == 2) return Fp(1, m);
  auto fac = factorize(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    Fp x(g, m);
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (x.pow((p - 1) / q).value() == 1) { ok = false; break; }
    }
    if (ok) return x;
  }
  throw InternalError("no primitive root found");
}

/// Element a + b*w of F_{p^2} = F_p(w), w^2 = d with d the field's chosen
/// non-residue. Elements of distinct fields (p or d differ) do not mix.
class Fp2 {
 public:
  Fp2(Fp a, Fp b, Fp d) : a_(a.value()), b_(b.value()), p_(a.prime()), d_(d.value()) {
    detail::require(a.prime() == b.prime() && a.prime() == d.prime(),
                    "modulus mismatch");
  }

  uint64_t re() const { return a_; }
  uint64_t im() const { return b_; }
  uint64_t prime() const { return p_; }
  uint64_t dvalue() const { return d_; }
  bool in_base_field() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }
  Fp re_fp() const { return Fp(a_, Modulus(p_)); }
  Fp im_fp() const { return Fp(b_, Modulus(p_)); }

  friend Fp2 operator+(Fp2 x, Fp2 y) {
    x.match(y);
    return x.raw(detail::addmod(x.a_, y.a_, x.p_), detail::addmod(x.b_, y.b_, x.p_));
  }
  friend Fp2 operator-(Fp2 x, Fp2 y) {
    x.match(y);
    return x.raw(detail::submod(x.a_, y.a_, x.p_), detail::submod(x.b_, y.b_, x.p_));
  }
  friend Fp2 operator*(Fp2 x, Fp2 y) {
    x.match(y);
    uint64_t p = x.p_;
    uint64_t aa = detail::mulmod(x.a_, y.a_, p);
    uint64_t bb = detail::mulmod(x.b_, y.b_, p);
    uint64_t re = detail::addmod(aa, detail::mulmod(x.d_, bb, p), p);
    uint64_t im = detail::addmod(detail::mulmod(x.a_, y.b_, p),
                                 detail::mulmod(x.b_, y.a_, p), p);
    return x.raw(re, im);
  }
  Fp2 operator-() const {
    return raw(a_ ? p_ - a_ : 0, b_ ? p_ - b_ : 0);
  }
  Fp2& operator+=(Fp2 y) { return *this = *this + y; }
  Fp2& operator-=(Fp2 y) { return *this = *this - y; }
  Fp2& operator*=(Fp2 y) { return *this = *this * y; }
  bool operator==(const Fp2& y) const { match(y); return a_ == y.a_ && b_ == y.b_; }
  bool operator!=(const Fp2& y) const { return !(*this == y); }

  Fp2 conj() const { return raw(a_, b_ ? p_ - b_ : 0); }

  /// Norm a^2 - d b^2 as a raw residue (avoids re-checking the modulus).
  uint64_t norm_value() const {
    return detail::submod(detail::mulmod(a_, a_, p_),
                          detail::mulmod(d_, detail::mulmod(b_, b_, p_), p_), p_);
  }
  Fp norm() const { return Fp(norm_value(), Modulus(p_)); }

  Fp2 pow(uint64_t e) const {
    Fp2 acc = raw(1, 0), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  Fp2 pow_signed(int64_t e) const {
    if (e >= 0) return pow((uint64_t)e);
    return inv().pow((uint64_t)(-e));
  }
  Fp2 inv() const {
    detail::require(!is_zero(), "inverse of zero");
    // (a + bw)^-1 = (a - bw) / (a^2 - d b^2)
    uint64_t n = detail::powmod(norm_value(), p_ - 2, p_);
    return raw(detail::mulmod(a_, n, p_),
               b_ ? detail::mulmod(p_ - b_, n, p_) : 0);
  }

 private:
  Fp2 raw(uint64_t a, uint64_t b) const { Fp2 r = *this; r.a_ = a; r.b_ = b; return r; }
  void match(const Fp2& y) const {
    detail::require(p_ == y.p_ && d_ == y.d_, "field mismatch");
  }
  uint64_t a_, b_, p_, d_;
};

/// Handle for F_{p^2} with the canonical non-residue baked in. Requires odd p:
/// for p = 2 the polynomial x^2 - d is never separable, so no quadratic
/// extension of this shape exists.
class QuadField {
 public:
  explicit QuadField(Modulus m) : m_(m), d_(quad_nonresidue(m)) {}

  Modulus base_modulus() const { return m_; }
  Fp nonresidue() const { return d_; }
  uint64_t size() const { return m_.value() * m_.value(); }

  Fp2 make(Fp a, Fp b) const { return Fp2(a, b, d_); }
  Fp2 make(uint64_t a, uint64_t b) const { return Fp2(Fp(a, m_), Fp(b, m_), d_); }
  Fp2 embed(Fp a) const { return Fp2(a, Fp(0, m_), d_); }
  Fp2 embed(uint64_t a) const { return make(a, 0); }
  Fp2 zero() const { return make(0, 0); }
  Fp2 one() const { return make(1, 0); }

  /// Element of index k in the row-major (a, b) enumeration, k < p^2.
  Fp2 element(uint64_t k) const {
    uint64_t p = m_.value();
    detail::require(k < p * p, "element index out of range");
    return make(k / p, k % p);
  }

 private:
  Modulus m_;
  Fp d_;
};

namespace detail {
struct Fp2OrderAdapter {
  Fp2 v;
  Fp2OrderAdapter pow(uint64_t e) const { return {v.pow(e)}; }
  bool is_one() const { return v.is_one(); }
};
}  // namespace detail

/// Multiplicative order of a nonzero element of F_{p^2}*. The group order
/// p^2 - 1 is factored as (p-1)(p+1), each via trial division.
inline uint64_t mult_order(Fp2 x) {
  detail::require(!x.is_zero(), "order of zero");
  uint64_t p = x.prime();
  auto fac = factorize(p - 1);
  for (auto [q, e] : factorize(p + 1)) {
    bool merged = false;
    for (auto& [q0, e0] : fac) {
      if (q0 == q) { e0 += e; merged = true; break; }
    }
    if (!merged) fac.emplace_back(q, e);
  }
  return detail::order_from_factored(detail::Fp2OrderAdapter{x},
                                     (p - 1) * (p + 1), fac);
}

/// Deterministic generator of F_{p^2}*: smallest (a, b) in row-major order
/// with multiplicative order p^2 - 1.
inline Fp2 field_generator(const QuadField& F) {
  uint64_t p = F.base_modulus().value();
  uint64_t n = (p - 1) * (p + 1);
  auto fac = factorize(p - 1);
  for (auto [q, e] : factorize(p + 1)) {
    bool merged = false;
    for (auto& [q0, e0] : fac) {
      if (q0 == q) { e0 += e; merged = true; break; }
    }
    if (!merged) fac.emplace_back(q, e);
  }
  for (uint64_t k = 1; k < p * p; ++k) {
    Fp2 x = F.element(k);
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (x.pow(n / q).is_one()) { ok = false; break; }
    }
    if (ok) return x;
  }
  throw InternalError("no generator found");
}

}  // namespace recset
