// Planar geometric primitives used by the mesh, quadrature and tail modules.
#include "fraclap/geom.hpp"

#include <algorithm>
#include <limits>

#include "fraclap/util.hpp"

namespace fraclap {

NearestPoint point_segment_nearest(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 e = b - a;
  double L2 = norm2(e);
  double t = (L2 > 0) ? dot(p - a, e) / L2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  Vec2 q = a + t * e;
  return {dist(p, q), q};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  return point_segment_nearest(p, a, b).distance;
}

namespace {

// Orientation of c relative to the line a->b.
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  double d1 = orient(b0, b1, a0);
  double d2 = orient(b0, b1, a1);
  double d3 = orient(a0, a1, b0);
  double d4 = orient(a0, a1, b1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on = [](Vec2 p, Vec2 q, Vec2 r) {
    // r collinear with p->q; is it within the box?
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (d1 == 0 && on(b0, b1, a0)) return true;
  if (d2 == 0 && on(b0, b1, a1)) return true;
  if (d3 == 0 && on(a0, a1, b0)) return true;
  if (d4 == 0 && on(a0, a1, b1)) return true;
  return false;
}

}  // namespace

double seg_seg_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  double d = point_segment_distance(a0, b0, b1);
  d = std::min(d, point_segment_distance(a1, b0, b1));
  d = std::min(d, point_segment_distance(b0, a0, a1));
  d = std::min(d, point_segment_distance(b1, a0, a1));
  return d;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0;
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
  int n = int(poly.size());
  // Boundary points count as inside.
  for (int i = 0; i < n; ++i)
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) < 1e-14)
      return true;
  // Crossing parity with a horizontal ray.
  bool in = false;
  for (int i = 0; i < n; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (xi > p.x) in = !in;
    }
  }
  return in;
}

double polygon_signed_distance(Vec2 p, const std::vector<Vec2>& poly,
                               Vec2* nearest) {
  int n = int(poly.size());
  double best = std::numeric_limits<double>::max();
  Vec2 bestq;
  for (int i = 0; i < n; ++i) {
    NearestPoint np = point_segment_nearest(p, poly[i], poly[(i + 1) % n]);
    if (np.distance < best) {
      best = np.distance;
      bestq = np.point;
    }
  }
  if (nearest) *nearest = bestq;
  return point_in_polygon(p, poly) ? best : -best;
}

void ray_polygon_crossings(Vec2 x, Vec2 dir, const std::vector<Vec2>& poly,
                           std::vector<double>& ts) {
  ts.clear();
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) {
    Vec2 a = poly[i];
    Vec2 e = poly[(i + 1) % n] - a;
    double den = cross(dir, e);
    if (std::abs(den) < 1e-300) continue;  // parallel (or degenerate) edge
    // x + t*dir = a + tau*e, i.e. t*dir - tau*e = a - x. Crossing with e
    // gives t, crossing with dir gives tau.
    double t = cross(a - x, e) / den;
    double tau = cross(dir, x - a) / den;
    if (tau >= 0.0 && tau < 1.0 && t > 1e-14) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
  int n = int(poly.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    Vec2 a0 = poly[i], a1 = poly[(i + 1) % n];
    if (norm2(a1 - a0) == 0) return false;
    for (int j = i + 1; j < n; ++j) {
      // Skip edges adjacent to edge i (they legally share a vertex).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(a0, a1, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

std::vector<std::array<int, 3>> triangulate_simple_polygon(
    const std::vector<Vec2>& poly) {
  FL_REQUIRE(polygon_area(poly) > 0,
             "triangulate: polygon must be ccw with positive area");
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = int(i);
  std::vector<std::array<int, 3>> tris;
  int guard = 0;
  while (idx.size() > 3) {
    FL_REQUIRE(++guard < 100000, "triangulate: no ear found (bad polygon?)");
    bool clipped = false;
    int m = int(idx.size());
    for (int i = 0; i < m; ++i) {
      int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      Vec2 a = poly[ia], b = poly[ib], c = poly[ic];
      if (tri_area(a, b, c) <= 1e-15) continue;  // reflex or degenerate
      bool ear = true;
      for (int j = 0; j < m && ear; ++j) {
        int ip = idx[j];
        if (ip == ia || ip == ib || ip == ic) continue;
        Vec2 p = poly[ip];
        // Strict interior test via barycentric signs.
        if (orient(a, b, p) > 1e-15 && orient(b, c, p) > 1e-15 &&
            orient(c, a, p) > 1e-15)
          ear = false;
      }
      if (ear) {
        tris.push_back({ia, ib, ic});
        idx.erase(idx.begin() + i);
        clipped = true;
        break;
      }
    }
    FL_REQUIRE(clipped, "triangulate: stuck (polygon not simple?)");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

std::vector<Vec2> clip_polygon_convex(const std::vector<Vec2>& subject,
                                      const std::vector<Vec2>& clip) {
  std::vector<Vec2> out = subject;
  int nc = int(clip.size());
  for (int i = 0; i < nc && !out.empty(); ++i) {
    Vec2 a = clip[i], b = clip[(i + 1) % nc];
    std::vector<Vec2> in;
    in.swap(out);
    int m = int(in.size());
    for (int j = 0; j < m; ++j) {
      Vec2 p = in[j], q = in[(j + 1) % m];
      double sp = orient(a, b, p), sq = orient(a, b, q);
      bool pin = sp >= 0, qin = sq >= 0;
      if (pin) out.push_back(p);
      if (pin != qin) {
        double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  return out;
}

double tri_min_angle(Vec2 a, Vec2 b, Vec2 c) {
  auto ang = [](Vec2 u, Vec2 v) {
    double cs = dot(u, v) / (norm(u) * norm(v));
    return std::acos(std::clamp(cs, -1.0, 1.0));
  };
  double a0 = ang(b - a, c - a);
  double a1 = ang(a - b, c - b);
  double a2 = ang(a - c, b - c);
  return std::min({a0, a1, a2});
}

bool tri_overlap_positive(const std::array<Vec2, 3>& t1,
                          const std::array<Vec2, 3>& t2) {
  // Separating axis test over the 6 edge normals; touching (zero-area
  // intersection) does not count as overlap.
  auto axes_separate = [](const std::array<Vec2, 3>& p,
                          const std::array<Vec2, 3>& q) {
    for (int i = 0; i < 3; ++i) {
      Vec2 e = p[(i + 1) % 3] - p[i];
      Vec2 nrm{-e.y, e.x};
      double pmin = 1e300, pmax = -1e300, qmin = 1e300, qmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        pmin = std::min(pmin, dot(nrm, p[k]));
        pmax = std::max(pmax, dot(nrm, p[k]));
        qmin = std::min(qmin, dot(nrm, q[k]));
        qmax = std::max(qmax, dot(nrm, q[k]));
      }
      double scale = std::sqrt(norm2(nrm));
      double eps = 1e-12 * scale * std::max(1.0, std::max(pmax - pmin, qmax - qmin) / std::max(scale, 1e-300));
      if (pmax <= qmin + eps || qmax <= pmin + eps) return true;
    }
    return false;
  };
  return !axes_separate(t1, t2) && !axes_separate(t2, t1);
}

double tri_tri_distance(const std::array<Vec2, 3>& t1,
                        const std::array<Vec2, 3>& t2) {
  if (tri_overlap_positive(t1, t2)) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      best = std::min(best, seg_seg_distance(t1[i], t1[(i + 1) % 3], t2[j],
                                             t2[(j + 1) % 3]));
  return best;
}

}  // namespace fraclap
