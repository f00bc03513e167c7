#pragma once

// Newton polygons of bivariate polynomials: convex hulls of supports, edge
// multisets, lattice points, Minkowski sums and Minkowski decompositions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "recset/common.hpp"
#include "recset/poly.hpp"

namespace recset {

using LatticePoint = Exp2;  // reuse the ordered (i, j) pair

/// Convex lattice polygon, possibly degenerate (a point or a segment).
/// Vertices are stored counter-clockwise starting from the lexicographic
/// minimum, with no collinear interior vertices; this form is canonical, so
/// operator== decides geometric equality (translated copies compare equal
/// only after translate_to_axes()).
struct LatticePolygon {
  std::vector<LatticePoint> vertices;

  bool is_point() const { return vertices.size() == 1; }
  bool is_segment() const { return vertices.size() == 2; }
  bool is_proper() const { return vertices.size() >= 3; }

  bool operator==(const LatticePolygon&) const = default;
  auto operator<=>(const LatticePolygon&) const = default;
};

namespace detail {

inline int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

}  // namespace detail

/// Convex hull (Andrew monotone chain), canonical CCW order, collinear
/// points dropped. Accepts any nonempty point set.
inline LatticePolygon convex_hull(std::vector<LatticePoint> pts) {
  detail::require(!pts.empty(), "hull of an empty set");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return {pts};
  size_t n = pts.size();
  std::vector<LatticePoint> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && detail::cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && detail::cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point equals the first
  if (h.size() == 2 && h[0] == h[1]) h.resize(1);
  return {h};
}

/// Newton polygon = convex hull of the support.
template <class F>
LatticePolygon newton_polygon(const BivarPoly<F>& p) {
  detail::require(!p.is_zero(), "newton polygon of the zero polynomial");
  return convex_hull(p.support());
}

/// Translate so that min x = 0 and min y = 0 (the polygon touches both axes).
inline LatticePolygon translate_to_axes(LatticePolygon g) {
  int64_t mx = g.vertices[0].i, my = g.vertices[0].j;
  for (auto& v : g.vertices) {
    mx = std::min(mx, v.i);
    my = std::min(my, v.j);
  }
  for (auto& v : g.vertices) {
    v.i -= mx;
    v.j -= my;
  }
  return g;
}

/// Edge multiset: primitive direction -> total lattice length in that
/// direction, walking the boundary CCW. A segment contributes both
/// directions (degenerate 2-gon); a point has no edges.
inline std::map<LatticePoint, uint64_t> edge_multiset(const LatticePolygon& g) {
  std::map<LatticePoint, uint64_t> out;
  size_t n = g.vertices.size();
  if (n < 2) return out;
  for (size_t a = 0; a < n; ++a) {
    LatticePoint u = g.vertices[a];
    LatticePoint v = g.vertices[(a + 1) % n];
    int64_t dx = v.i - u.i, dy = v.j - u.j;
    int64_t len = std::gcd(std::abs(dx), std::abs(dy));
    detail::ensure(len > 0, "zero-length polygon edge");
    out[{dx / len, dy / len}] += (uint64_t)len;
  }
  return out;
}

/// All lattice points inside or on the polygon, sorted.
inline std::vector<LatticePoint> lattice_points(const LatticePolygon& g) {
  int64_t x0 = g.vertices[0].i, x1 = x0, y0 = g.vertices[0].j, y1 = y0;
  for (auto& v : g.vertices) {
    x0 = std::min(x0, v.i); x1 = std::max(x1, v.i);
    y0 = std::min(y0, v.j); y1 = std::max(y1, v.j);
  }
  auto inside = [&](LatticePoint q) {
    size_t n = g.vertices.size();
    if (n == 1) return q == g.vertices[0];
    if (n == 2) {
      LatticePoint a = g.vertices[0], b = g.vertices[1];
      if (detail::cross(a, b, q) != 0) return false;
      return std::min(a.i, b.i) <= q.i && q.i <= std::max(a.i, b.i) &&
             std::min(a.j, b.j) <= q.j && q.j <= std::max(a.j, b.j);
    }
    for (size_t k = 0; k < n; ++k)
      if (detail::cross(g.vertices[k], g.vertices[(k + 1) % n], q) < 0)
        return false;
    return true;
  };
  std::vector<LatticePoint> pts;
  for (int64_t x = x0; x <= x1; ++x)
    for (int64_t y = y0; y <= y1; ++y)
      if (inside({x, y})) pts.push_back({x, y});
  return pts;
}

/// Minkowski sum. For convex polygons this is the hull of pairwise vertex
/// sums (quadratic, fine at these sizes).
inline LatticePolygon minkowski_sum(const LatticePolygon& a,
                                    const LatticePolygon& b) {
  std::vector<LatticePoint> sums;
  sums.reserve(a.vertices.size() * b.vertices.size());
  for (auto& u : a.vertices)
    for (auto& v : b.vertices) sums.push_back(u + v);
  return convex_hull(sums);
}

enum class SplitKind { trivial, segment_segment, polygon_segment, polygon_polygon };

/// Unordered pair of Minkowski summands, both translated to the axes.
struct MinkowskiSplit {
  LatticePolygon a, b;  // a <= b in canonical order
  SplitKind kind = SplitKind::trivial;
  bool operator==(const MinkowskiSplit&) const = default;
  auto operator<=>(const MinkowskiSplit&) const = default;
};

inline SplitKind classify_split(const LatticePolygon& a,
                                const LatticePolygon& b) {
  if (a.is_point() || b.is_point()) return SplitKind::trivial;
  if (a.is_segment() && b.is_segment()) return SplitKind::segment_segment;
  if (a.is_segment() || b.is_segment()) return SplitKind::polygon_segment;
  return SplitKind::polygon_polygon;
}

namespace detail {

// CCW angular order of primitive directions starting just above (1, 0).
inline bool angle_less(LatticePoint a, LatticePoint b) {
  auto half = [](LatticePoint v) { return v.j < 0 || (v.j == 0 && v.i < 0); };
  if (half(a) != half(b)) return !half(a);
  int64_t cr = a.i * b.j - a.j * b.i;
  return cr > 0;
}

// Rebuild the polygon whose CCW edge multiset is given; returns it
// axis-normalized with canonical vertex order.
inline LatticePolygon polygon_from_edges(
    const std::vector<std::pair<LatticePoint, uint64_t>>& edges) {
  std::vector<std::pair<LatticePoint, uint64_t>> es(edges);
  std::sort(es.begin(), es.end(),
            [](auto& l, auto& r) { return angle_less(l.first, r.first); });
  std::vector<LatticePoint> verts;
  LatticePoint cur{0, 0};
  for (auto& [dir, mult] : es) {
    verts.push_back(cur);
    cur.i += dir.i * (int64_t)mult;
    cur.j += dir.j * (int64_t)mult;
  }
  ensure(cur == LatticePoint{0, 0}, "edge multiset does not close");
  return translate_to_axes(convex_hull(verts));
}

}  // namespace detail

/// All ways to write the polygon as a Minkowski sum of two summands, up to
/// order and translation. The point + whole split is reported first and
/// flagged trivial; the rest follow in deterministic sorted order. Works by
/// picking a sub-multiplicity of every primitive edge direction whose vector
/// sum is zero; those edges bound one summand, the leftover edges the other.
inline std::vector<MinkowskiSplit> minkowski_splits(const LatticePolygon& g) {
  std::vector<std::pair<LatticePoint, uint64_t>> dirs;
  for (auto& [d, m] : edge_multiset(g)) dirs.push_back({d, m});
  std::vector<MinkowskiSplit> out;
  LatticePolygon pt{{LatticePoint{0, 0}}};
  LatticePolygon whole = translate_to_axes(g);
  out.push_back({pt, whole, SplitKind::trivial});
  if (dirs.empty()) return out;

  std::set<MinkowskiSplit> seen;
  std::vector<uint64_t> pick(dirs.size(), 0);
  while (true) {
    // advance the mixed-radix counter
    size_t c = 0;
    while (c < pick.size() && pick[c] == dirs[c].second) {
      pick[c] = 0;
      ++c;
    }
    if (c == pick.size()) break;
    ++pick[c];

    int64_t sx = 0, sy = 0;
    bool empty = true, full = true;
    for (size_t k = 0; k < dirs.size(); ++k) {
      sx += dirs[k].first.i * (int64_t)pick[k];
      sy += dirs[k].first.j * (int64_t)pick[k];
      if (pick[k] != 0) empty = false;
      if (pick[k] != dirs[k].second) full = false;
    }
    if (sx != 0 || sy != 0 || empty || full) continue;

    std::vector<std::pair<LatticePoint, uint64_t>> ea, eb;
    for (size_t k = 0; k < dirs.size(); ++k) {
      if (pick[k]) ea.push_back({dirs[k].first, pick[k]});
      if (pick[k] < dirs[k].second)
        eb.push_back({dirs[k].first, dirs[k].second - pick[k]});
    }
    LatticePolygon pa = detail::polygon_from_edges(ea);
    LatticePolygon pb = detail::polygon_from_edges(eb);
    SplitKind kind = classify_split(pa, pb);
    MinkowskiSplit s = pa <= pb ? MinkowskiSplit{pa, pb, kind}
                                : MinkowskiSplit{pb, pa, kind};
    seen.insert(s);
  }
  out.insert(out.end(), seen.begin(), seen.end());
  return out;
}

}  // namespace recset
