// Planar geometric primitives: vectors, segments, simple polygons, triangles.
#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace fraclap {

struct Vec2 {
  double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

struct NearestPoint {
  double distance = 0;
  Vec2 point;  // closest point on the segment
};

NearestPoint point_segment_nearest(Vec2 p, Vec2 a, Vec2 b);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double seg_seg_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Signed area of a closed loop (positive for counterclockwise orientation).
double polygon_area(const std::vector<Vec2>& poly);

// Points on the boundary count as inside.
bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly);

// Distance from p to the polygon boundary; negative when p lies outside.
// The nearest boundary point is reported through *nearest when non-null.
double polygon_signed_distance(Vec2 p, const std::vector<Vec2>& poly,
                               Vec2* nearest = nullptr);

// Parameters t > 0 with x + t*dir on the polygon boundary, ascending.
// Intended for directions away from vertex directions; each edge is taken
// half-open at its second endpoint so generic rays count crossings once.
void ray_polygon_crossings(Vec2 x, Vec2 dir, const std::vector<Vec2>& poly,
                           std::vector<double>& ts);

bool polygon_is_simple(const std::vector<Vec2>& poly);

// Ear clipping for a simple (not necessarily convex) ccw polygon.
std::vector<std::array<int, 3>> triangulate_simple_polygon(
    const std::vector<Vec2>& poly);

// Sutherland-Hodgman clip of a polygon against a convex ccw clip polygon.
std::vector<Vec2> clip_polygon_convex(const std::vector<Vec2>& subject,
                                      const std::vector<Vec2>& clip);

inline double tri_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}
inline Vec2 tri_centroid(Vec2 a, Vec2 b, Vec2 c) {
  return (1.0 / 3.0) * (a + b + c);
}
double tri_min_angle(Vec2 a, Vec2 b, Vec2 c);
bool tri_overlap_positive(const std::array<Vec2, 3>& t1,
                          const std::array<Vec2, 3>& t2);
double tri_tri_distance(const std::array<Vec2, 3>& t1,
                        const std::array<Vec2, 3>& t2);

}  // namespace fraclap
