#pragma once

// Sparse bivariate polynomials over a finite field, with the plain text
// exchange format "i j coeff" (one term per line, sorted, exponents >= 0).

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "recset/common.hpp"
#include "recset/ffield.hpp"

namespace recset {

/// Exponent pair of a term x^i y^j. Ordered lexicographically (i, then j).
struct Exp2 {
  int64_t i = 0;
  int64_t j = 0;
  auto operator<=>(const Exp2&) const = default;
  Exp2 operator+(Exp2 o) const { return {i + o.i, j + o.j}; }
  Exp2 operator-(Exp2 o) const { return {i - o.i, j - o.j}; }
};

/// Sparse bivariate polynomial with nonzero coefficients only. Exponents may
/// go negative in intermediate Laurent computations; serialization rejects
/// that. F is Fp or Fp2.
template <class F>
class BivarPoly {
 public:
  using Field = F;

  BivarPoly() = default;

  const std::map<Exp2, F>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  void add_term(Exp2 e, F c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  /// Coefficient of x^i y^j, or nullptr when the term is absent.
  const F* coeff(Exp2 e) const {
    auto it = t_.find(e);
    return it == t_.end() ? nullptr : &it->second;
  }

  int64_t x_degree() const {  // max i in the support; 0 for the zero poly
    int64_t d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e.i);
    return d;
  }
  int64_t y_degree() const {
    int64_t d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e.j);
    return d;
  }
  int64_t total_degree() const {
    int64_t d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e.i + e.j);
    return d;
  }

  std::vector<Exp2> support() const {
    std::vector<Exp2> s;
    s.reserve(t_.size());
    for (auto& [e, c] : t_) s.push_back(e);
    return s;
  }

  BivarPoly operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
  }
  BivarPoly operator-(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (auto& [e, c] : o.t_) r.add_term(e, -c);
    return r;
  }
  BivarPoly operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (auto& [e1, c1] : t_)
      for (auto& [e2, c2] : o.t_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  BivarPoly scaled(F s) const {
    BivarPoly r;
    for (auto& [e, c] : t_) r.add_term(e, c * s);
    return r;
  }
  BivarPoly shifted(Exp2 by) const {
    BivarPoly r;
    for (auto& [e, c] : t_) r.add_term(e + by, c);
    return r;
  }

  /// Evaluate at (x, y). Negative exponents demand invertible arguments.
  F evaluate(F x, F y) const {
    detail::require(!t_.empty(), "evaluate needs a nonzero polynomial");
    F acc = t_.begin()->second - t_.begin()->second;  // zero of the field
    for (auto& [e, c] : t_) acc += c * x.pow_signed(e.i) * y.pow_signed(e.j);
    return acc;
  }

  bool operator==(const BivarPoly&) const = default;

 private:
  std::map<Exp2, F> t_;
};

using PolyFp = BivarPoly<Fp>;
using PolyFp2 = BivarPoly<Fp2>;

/// Parse "i j coeff" triples (whitespace separated, duplicates accumulate).
inline PolyFp parse_poly(std::istream& in, Modulus m) {
  std::vector<int64_t> vals;
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    detail::require(used == tok.size() && used > 0,
                    "malformed polynomial term");
    vals.push_back(v);
  }
  detail::require(vals.size() % 3 == 0, "incomplete polynomial term");
  PolyFp p;
  for (size_t t = 0; t < vals.size(); t += 3) {
    detail::require(vals[t] >= 0 && vals[t + 1] >= 0,
                    "exponents must be non-negative");
    p.add_term({vals[t], vals[t + 1]}, Fp::from_signed(vals[t + 2], m));
  }
  return p;
}

inline PolyFp parse_poly(const std::string& text, Modulus m) {
  std::istringstream in(text);
  return parse_poly(in, m);
}

/// Serialize as sorted "i j coeff" lines.
inline std::string to_text(const PolyFp& p) {
  std::ostringstream out;
  for (auto& [e, c] : p.terms()) {
    detail::require(e.i >= 0 && e.j >= 0,
                    "cannot serialize negative exponents");
    out << e.i << ' ' << e.j << ' ' << c.value() << '\n';
  }
  return out.str();
}

/// Lift an F_p polynomial into F_{p^2}.
inline PolyFp2 lift_poly(const PolyFp& p, const QuadField& F) {
  PolyFp2 out;
  for (auto& [e, c] : p.terms()) out.add_term(e, F.embed(c));
  return out;
}

}  // namespace recset
