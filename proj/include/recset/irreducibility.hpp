#pragma once

// Sharp parts, the shifted substitution construction Q / Q_r, the two
// quadratic-form families it produces for sums and products, and a complete
// brute-force irreducibility oracle driven by Minkowski splits of the
// Newton polygon.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recset/common.hpp"
#include "recset/ffield.hpp"
#include "recset/poly.hpp"
#include "recset/polygon.hpp"

namespace recset {

/// Homogeneous component of minimal total degree.
template <class F>
struct SharpPart {
  BivarPoly<F> poly;
  int64_t degree = 0;
  size_t monomial_count = 0;
};

template <class F>
SharpPart<F> sharp_part(const BivarPoly<F>& P) {
  detail::require(!P.is_zero(), "sharp part of the zero polynomial");
  int64_t dmin = INT64_MAX;
  for (auto& [e, c] : P.terms()) dmin = std::min(dmin, e.i + e.j);
  SharpPart<F> out;
  out.degree = dmin;
  for (auto& [e, c] : P.terms())
    if (e.i + e.j == dmin) out.poly.add_term(e, c);
  out.monomial_count = out.poly.term_count();
  return out;
}

/// Result of substituting power sums into a bivariate polynomial and
/// clearing denominators: Q(x,y) = x^{-l1} y^{-l2} P(sum_t a_t x^{k_t},
/// sum_t b_t y^{k_t}).
template <class F>
struct QConstruction {
  BivarPoly<F> q;
  int64_t l1 = 0, l2 = 0;
};

template <class F>
QConstruction<F> q_construct(const BivarPoly<F>& P, const std::vector<F>& alphas,
                             const std::vector<F>& betas,
                             const std::vector<int64_t>& ks) {
  detail::require(!P.is_zero(), "construction needs a nonzero polynomial");
  detail::require(!ks.empty() && alphas.size() == ks.size() &&
                      betas.size() == ks.size(),
                  "alphas, betas, ks must have equal nonzero length");
  for (size_t t = 0; t + 1 < ks.size(); ++t)
    detail::require(ks[t] > ks[t + 1], "ks must be strictly descending");
  for (auto& a : alphas) detail::require(!a.is_zero(), "zero alpha");
  for (auto& b : betas) detail::require(!b.is_zero(), "zero beta");
  for (auto& [e, c] : P.terms())
    detail::require(e.i >= 0 && e.j >= 0, "construction input must be a polynomial");

  const int64_t km = ks.back();
  int64_t l1 = 0, l2 = 0;
  for (auto& [e, c] : P.terms()) {
    l1 = std::min(l1, e.i * km);
    l2 = std::min(l2, e.j * km);
  }

  // Laurent power sums in one variable: exponent -> coefficient.
  using Uni = std::map<int64_t, F>;
  auto make_sum = [&](const std::vector<F>& cs) {
    Uni u;
    for (size_t t = 0; t < ks.size(); ++t) {
      auto it = u.find(ks[t]);
      if (it == u.end()) {
        u.emplace(ks[t], cs[t]);
      } else {
        it->second += cs[t];
        if (it->second.is_zero()) u.erase(it);
      }
    }
    return u;
  };
  auto mul_uni = [](const Uni& x, const Uni& y) {
    Uni r;
    for (auto& [e1, c1] : x)
      for (auto& [e2, c2] : y) {
        F v = c1 * c2;
        if (v.is_zero()) continue;
        auto it = r.find(e1 + e2);
        if (it == r.end()) {
          r.emplace(e1 + e2, v);
        } else {
          it->second += v;
          if (it->second.is_zero()) r.erase(it);
        }
      }
    return r;
  };
  Uni sx = make_sum(alphas), sy = make_sum(betas);

  // Power tables up to the bidegree of P.
  const F one = alphas[0].pow(0);
  auto powers = [&](const Uni& base, int64_t dmax) {
    std::vector<Uni> pw(dmax + 1);
    pw[0] = Uni{{0, one}};
    for (int64_t e = 1; e <= dmax; ++e) pw[e] = mul_uni(pw[e - 1], base);
    return pw;
  };
  auto px = powers(sx, P.x_degree());
  auto py = powers(sy, P.y_degree());

  QConstruction<F> out;
  out.l1 = l1;
  out.l2 = l2;
  for (auto& [e, c] : P.terms())
    for (auto& [eu, cu] : px[e.i])
      for (auto& [ev, cv] : py[e.j])
        out.q.add_term({eu - l1, ev - l2}, c * cu * cv);
  for (auto& [e, c] : out.q.terms())
    detail::ensure(e.i >= 0 && e.j >= 0, "negative exponent after shift");
  return out;
}

/// Q_r = Q - r x^{-l1} y^{-l2}.
template <class F>
BivarPoly<F> qr_family(const QConstruction<F>& qc, F r) {
  detail::require(qc.l1 <= 0 && qc.l2 <= 0, "shift monomial has negative exponents");
  BivarPoly<F> out = qc.q;
  out.add_term({-qc.l1, -qc.l2}, -r);
  return out;
}

// ---------------------------------------------------------------------------
// The two concrete families produced by P = x + y and P = x * y with
// exponents (1, -1): the sum family a x^2 y + g x y^2 - r x y + d x + b y and
// the product family (a x^2 + b)(g y^2 + d) - r x y.

inline PolyFp sum_family_poly(Fp a, Fp b, Fp g, Fp d, Fp r) {
  PolyFp p;
  p.add_term({2, 1}, a);
  p.add_term({0, 1}, b);
  p.add_term({1, 2}, g);
  p.add_term({1, 0}, d);
  p.add_term({1, 1}, -r);
  return p;
}

inline PolyFp prod_family_poly(Fp a, Fp b, Fp g, Fp d, Fp r) {
  PolyFp p;
  p.add_term({2, 2}, a * g);
  p.add_term({2, 0}, a * d);
  p.add_term({0, 2}, b * g);
  p.add_term({0, 0}, b * d);
  p.add_term({1, 1}, -r);
  return p;
}

/// Stated irreducibility hypothesis for the sum family: all five parameters
/// nonzero.
inline bool sum_family_hypothesis(Fp a, Fp b, Fp g, Fp d, Fp r) {
  return !(a * b * g * d * r).is_zero();
}

/// Stated irreducibility hypothesis for the product family: all parameters
/// nonzero and r^2 != 4 a b g d.
inline bool prod_family_hypothesis(Fp a, Fp b, Fp g, Fp d, Fp r) {
  if ((a * b * g * d * r).is_zero()) return false;
  Fp four = Fp(4, Modulus(a.prime()));
  return r * r != four * a * b * g * d;
}

/// Square root inside F_{p^2} of a base field element (always exists).
inline Fp2 sqrt_in_quad(const QuadField& F, Fp c) {
  if (c.is_zero()) return F.zero();
  if (legendre(c) == 1) return F.embed(*sqrt_mod(c));
  Fp t = *sqrt_mod(c * F.nonresidue().inv());
  return F.make(Fp(0, F.base_modulus()), t);
}

/// Attempt the symmetric factorization (A + Bx + Dy + Exy)(A - Bx - Dy + Exy)
/// of the product family on the boundary locus r^2 = 4abgd. Expanding the
/// symmetric form forces A^2 = bd, E^2 = ag, B^2 = -ad, D^2 = -bg and
/// 2(AE - BD) = -r, so a factorization of this shape exists only when
/// (AE + r/2)^2 = abgd has a solution with consistent signs; when it does
/// not, nullopt is returned.
inline std::optional<std::pair<PolyFp2, PolyFp2>>
prod_family_boundary_factorization(const QuadField& F, Fp a, Fp b, Fp g, Fp d,
                                   Fp r) {
  Modulus m = F.base_modulus();
  Fp four(4, m);
  detail::require(!(a * b * g * d).is_zero(), "needs nonzero parameters");
  detail::require(r * r == four * a * b * g * d, "needs r^2 = 4abgd");

  Fp2 A = sqrt_in_quad(F, b * d);
  Fp2 E0 = sqrt_in_quad(F, a * g);
  Fp2 B = sqrt_in_quad(F, -(a * d));
  Fp2 half = F.embed(Fp(2, m).inv());
  Fp2 abgd = F.embed(a * b * g * d);
  PolyFp target = prod_family_poly(a, b, g, d, r);

  for (Fp2 E : {E0, -E0}) {
    Fp2 bd = A * E + F.embed(r) * half;
    if (bd * bd != abgd) continue;
    Fp2 D = bd * B.inv();
    detail::ensure(D * D == F.embed(-(b * g)), "inconsistent cross term");
    PolyFp2 f1, f2;
    f1.add_term({0, 0}, A);
    f1.add_term({1, 0}, B);
    f1.add_term({0, 1}, D);
    f1.add_term({1, 1}, E);
    f2.add_term({0, 0}, A);
    f2.add_term({1, 0}, -B);
    f2.add_term({0, 1}, -D);
    f2.add_term({1, 1}, E);
    detail::ensure(f1 * f2 == lift_poly(target, F), "factor product mismatch");
    return std::make_pair(f1, f2);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Irreducibility oracle: for every nontrivial Minkowski split of the Newton
// polygon, search for a factorization whose factor supports are the lattice
// points of the two summands. The smaller summand's coefficients are
// enumerated (corner normalized to 1, polygon vertices nonzero so the factor
// polygon is exactly the summand); the larger factor's coefficients are
// derived from product equations as soon as they are determined, and every
// determined equation prunes the search. This is exhaustive: any genuine
// factorization survives all checks and is found.

enum class IrredKind { irreducible, reducible, inconclusive };

struct IrredVerdict {
  IrredKind kind = IrredKind::inconclusive;
  int ext_degree = 1;  // 1: searched F_p; 2: searched F_{p^2}
  std::optional<std::pair<PolyFp2, PolyFp2>> factors;
  std::string note;
};

namespace detail {

struct FactorEq {
  Fp2 rhs;
  // terms f1[slot] * f2[idx]
  std::vector<std::pair<size_t, size_t>> terms;
};

struct PlanStep {
  bool derive = false;
  size_t eq = 0;
  size_t f2_idx = 0;    // derive target
  size_t pivot = 0;     // f1 slot to divide by (corner or vertex slot)
};

// One Minkowski split turned into an executable search plan.
struct SplitSearch {
  std::vector<Exp2> e1, e2;          // factor supports (lattice points)
  std::vector<bool> slot_is_vertex;  // nonzero domain for these slots
  std::vector<FactorEq> eqs;
  std::vector<std::vector<PlanStep>> plan;  // steps to run after each slot
  bool support_covered = true;

  SplitSearch(const PolyFp& P, const QuadField& F, const LatticePolygon& s1,
              const LatticePolygon& s2) {
    auto l1 = lattice_points(s1), l2 = lattice_points(s2);
    e1.assign(l1.begin(), l1.end());
    e2.assign(l2.begin(), l2.end());
    slot_is_vertex.assign(e1.size(), false);
    for (size_t k = 0; k < e1.size(); ++k)
      slot_is_vertex[k] = std::find(s1.vertices.begin(), s1.vertices.end(),
                                    e1[k]) != s1.vertices.end();
    ensure(slot_is_vertex[0], "lex-min lattice point must be a vertex");

    std::map<Exp2, size_t> eq_of;
    for (size_t u = 0; u < e1.size(); ++u)
      for (size_t v = 0; v < e2.size(); ++v) {
        Exp2 w = e1[u] + e2[v];
        auto it = eq_of.find(w);
        if (it == eq_of.end()) {
          eq_of.emplace(w, eqs.size());
          eqs.push_back({F.zero(), {}});
          it = eq_of.find(w);
        }
        eqs[it->second].terms.push_back({u, v});
      }
    for (auto& [e, c] : P.terms()) {
      auto it = eq_of.find(e);
      if (it == eq_of.end()) {
        support_covered = false;  // no factorization can produce this term
        return;
      }
      eqs[it->second].rhs = F.embed(c);
    }
    build_plan();
  }

  void build_plan() {
    plan.assign(e1.size(), {});
    std::vector<bool> f2_known(e2.size(), false), used(eqs.size(), false);
    size_t known = 0, used_n = 0;
    for (size_t depth = 0; depth < e1.size(); ++depth) {
      bool progress = true;
      while (progress) {
        progress = false;
        for (size_t q = 0; q < eqs.size(); ++q) {
          if (used[q]) continue;
          bool ready = true;
          size_t unknowns = 0, uidx = 0, upivot = 0;
          for (auto& [slot, idx] : eqs[q].terms) {
            if (slot > depth) { ready = false; break; }
            if (!f2_known[idx]) {
              ++unknowns;
              uidx = idx;
              upivot = slot;
            }
          }
          if (!ready) continue;
          if (unknowns == 0) {
            plan[depth].push_back({false, q, 0, 0});
            used[q] = true;
            ++used_n;
            progress = true;
          } else if (unknowns == 1 && slot_is_vertex[upivot]) {
            plan[depth].push_back({true, q, uidx, upivot});
            used[q] = true;
            ++used_n;
            f2_known[uidx] = true;
            ++known;
            progress = true;
          }
        }
      }
    }
    ensure(known == e2.size() && used_n == eqs.size(),
           "factor equations do not determine the cofactor");
  }
};

// Depth-first enumeration over the slot values. Returns true and fills
// f1v/f2v on success.
struct SplitDFS {
  const SplitSearch& S;
  const QuadField& F;
  uint64_t nq;  // field size actually enumerated (p or p^2)
  std::vector<Fp2> f1v, f2v;

  SplitDFS(const SplitSearch& s, const QuadField& f, int ext)
      : S(s), F(f),
        nq(ext == 1 ? f.base_modulus().value()
                    : f.base_modulus().value() * f.base_modulus().value()),
        f1v(s.e1.size(), f.zero()), f2v(s.e2.size(), f.zero()) {}

  Fp2 element(uint64_t k) const {
    uint64_t p = F.base_modulus().value();
    return nq == p ? F.make(k, 0) : F.make(k / p, k % p);
  }

  bool run_steps(size_t depth) {
    for (const auto& st : S.plan[depth]) {
      const auto& eq = S.eqs[st.eq];
      if (st.derive) {
        Fp2 acc = eq.rhs;
        for (auto& [slot, idx] : eq.terms) {
          if (idx == st.f2_idx) continue;
          acc -= f1v[slot] * f2v[idx];
        }
        f2v[st.f2_idx] = acc * f1v[st.pivot].inv();
      } else {
        Fp2 acc = F.zero();
        for (auto& [slot, idx] : eq.terms) acc += f1v[slot] * f2v[idx];
        if (acc != eq.rhs) return false;
      }
    }
    return true;
  }

  bool search(size_t depth) {
    if (depth == S.e1.size()) return true;
    if (depth == 0) {
      f1v[0] = F.one();  // corner normalization
      return run_steps(0) && search(1);
    }
    uint64_t k0 = S.slot_is_vertex[depth] ? 1 : 0;
    for (uint64_t k = k0; k < nq; ++k) {
      f1v[depth] = element(k);
      if (run_steps(depth) && search(depth + 1)) return true;
    }
    return false;
  }
};

inline PolyFp2 poly_from_values(const std::vector<Exp2>& sup,
                                const std::vector<Fp2>& vals) {
  PolyFp2 out;
  for (size_t k = 0; k < sup.size(); ++k) out.add_term(sup[k], vals[k]);
  return out;
}

}  // namespace detail

/// Exhaustive factor search for P over F_p (ext_degree 1) or F_{p^2}
/// (ext_degree 2). slot_cap bounds the enumerated factor's support size and
/// work_cap bounds the number of candidate assignments; exceeding either
/// turns the verdict inconclusive instead of failing. Requires odd p.
inline IrredVerdict irreducible_oracle(const PolyFp& P, const QuadField& F,
                                       int ext_degree, size_t slot_cap = 6,
                                       uint64_t work_cap = 100000000) {
  detail::require(!P.is_zero(), "oracle needs a nonzero polynomial");
  detail::require(ext_degree == 1 || ext_degree == 2, "ext_degree is 1 or 2");
  IrredVerdict v;
  v.ext_degree = ext_degree;

  // Monomial content first: x^a y^b divides P.
  int64_t a0 = INT64_MAX, b0 = INT64_MAX;
  for (auto& [e, c] : P.terms()) {
    a0 = std::min(a0, e.i);
    b0 = std::min(b0, e.j);
  }
  if (P.term_count() == 1) {
    if (a0 + b0 <= 1) {
      v.kind = IrredKind::irreducible;
      v.note = a0 + b0 == 0 ? "constant (unit)" : "degree-1 monomial";
      return v;
    }
    PolyFp2 f1, f2;
    Exp2 var = a0 > 0 ? Exp2{1, 0} : Exp2{0, 1};
    f1.add_term(var, F.one());
    f2.add_term(Exp2{a0, b0} - var, F.embed(P.terms().begin()->second));
    v.kind = IrredKind::reducible;
    v.factors = {f1, f2};
    v.note = "monomial of degree >= 2";
    return v;
  }
  if (a0 > 0 || b0 > 0) {
    PolyFp2 f1, f2;
    f1.add_term({a0, b0}, F.one());
    for (auto& [e, c] : P.terms()) f2.add_term({e.i - a0, e.j - b0}, F.embed(c));
    v.kind = IrredKind::reducible;
    v.factors = {f1, f2};
    v.note = "monomial content";
    return v;
  }

  LatticePolygon poly = newton_polygon(P);
  auto splits = minkowski_splits(poly);
  bool inconclusive = false;
  std::string why;

  for (const auto& sp : splits) {
    if (sp.kind == SplitKind::trivial) continue;
    // enumerate over the summand with fewer lattice points
    auto la = lattice_points(sp.a), lb = lattice_points(sp.b);
    const LatticePolygon& s1 = la.size() <= lb.size() ? sp.a : sp.b;
    const LatticePolygon& s2 = la.size() <= lb.size() ? sp.b : sp.a;
    size_t slots = std::min(la.size(), lb.size());
    if (slots > slot_cap) {
      inconclusive = true;
      why = "slot cap exceeded";
      continue;
    }
    double nq = ext_degree == 1 ? (double)F.base_modulus().value()
                                : (double)F.size();
    double cand = std::pow(nq, (double)(slots - 1));
    if (cand > (double)work_cap) {
      inconclusive = true;
      why = "work cap exceeded";
      continue;
    }

    detail::SplitSearch search(P, F, s1, s2);
    if (!search.support_covered) continue;  // split refuted outright
    detail::SplitDFS dfs(search, F, ext_degree);
    if (dfs.search(0)) {
      PolyFp2 f1 = detail::poly_from_values(search.e1, dfs.f1v);
      PolyFp2 f2 = detail::poly_from_values(search.e2, dfs.f2v);
      detail::ensure(f1 * f2 == lift_poly(P, F), "factor verification failed");
      v.kind = IrredKind::reducible;
      v.factors = {f1, f2};
      return v;
    }
  }

  if (inconclusive) {
    v.kind = IrredKind::inconclusive;
    v.note = why;
    return v;
  }
  v.kind = IrredKind::irreducible;
  if (splits.size() <= 1) {
    v.note = "newton polygon is indecomposable; irreducible over every extension";
  } else if (ext_degree == 2) {
    v.note = P.total_degree() <= 3
                 ? "absolutely irreducible (degree <= 3 searched over F_{p^2})"
                 : "irreducible over F_{p^2}";
  } else {
    v.note = "irreducible over F_p";
  }
  return v;
}

/// Convenience overload that builds the quadratic extension itself.
inline IrredVerdict irreducible_oracle(const PolyFp& P, int ext_degree,
                                       size_t slot_cap = 6,
                                       uint64_t work_cap = 100000000) {
  detail::require(!P.is_zero(), "oracle needs a nonzero polynomial");
  Modulus m(P.terms().begin()->second.prime());
  QuadField F(m);
  return irreducible_oracle(P, F, ext_degree, slot_cap, work_cap);
}

}  // namespace recset
