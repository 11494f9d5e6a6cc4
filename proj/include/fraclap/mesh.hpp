// Conforming simplicial meshes in one and two dimensions with newest-vertex
// bisection, recursive completion, star queries and boundary geometry.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraclap/geom.hpp"

namespace fraclap {

struct Domain {
  int dim = 2;
  std::vector<Vec2> polygon;  // ccw closed loop (2d only)
  double a = 0, b = 0;        // interval endpoints (1d only)
};

Domain domain_interval(double a, double b);
Domain domain_square();       // (-1,1)^2
Domain domain_unit_square();  // (0,1)^2, used by small examples
Domain domain_lshape();       // (-1,1)^2 minus the closed fourth quadrant part
Domain domain_disk_polygon(int k = 64, double radius = 1.0);  // regular k-gon
Domain domain_from_polygon(std::vector<Vec2> loop);

struct Element {
  // d+1 vertex ids, counterclockwise in 2d; the refinement edge is always
  // the edge between v[0] and v[1] (the whole interval in 1d).
  std::array<int, 3> v{-1, -1, -1};
  int generation = 0;
};

struct Star {
  int center = -1;
  std::vector<int> ring1, ring2;  // element ids, ascending; both contain center
  bool has_ball = false;          // set when the closure of T meets the boundary
  Vec2 ball_center;
  double ball_radius = 0;
};

struct Mesh {
  int dim = 2;
  Domain domain;
  std::vector<Vec2> vertices;  // 1d uses the x component only
  std::vector<Element> elements;
  std::vector<char> vertex_on_boundary;
  std::vector<std::array<int, 2>> boundary_edges;  // sorted pairs, 2d only
  std::vector<std::uint64_t> lineage;  // ancestor fingerprints, oldest first

  // Midpoint registry keyed by packed sorted vertex pair; shared by raw
  // bisections and refinement passes so a split edge reuses its midpoint.
  std::unordered_map<std::uint64_t, int> edge_midpoint;

  int n_vertices() const { return int(vertices.size()); }
  int n_elements() const { return int(elements.size()); }
  double element_volume(int e) const;  // area in 2d, length in 1d
  double element_h(int e) const;       // |T|^(1/d)
  double element_diameter(int e) const;
  Vec2 element_barycenter(int e) const;
  std::uint64_t fingerprint() const;
};

Mesh make_initial_mesh(const Domain& dom, double target_h);

// One raw bisection without completion; returns the two child ids (the first
// child reuses the parent slot). Conformity is restored by refine().
std::pair<int, int> bisect(Mesh& m, int elem);

// Bisect at least every marked element, recursively bisecting incompatible
// neighbors first so the result conforms. Validates the result.
Mesh refine(const Mesh& m, const std::vector<int>& marked);
Mesh uniform_refine(const Mesh& m);

// Star of one element: first and second rings plus, for elements whose
// closure meets the boundary, a ball around the barycenter that must contain
// the first ring (otherwise an error reports the minimal sufficient C).
Star stars(const Mesh& m, int elem, double C = 4.0);
std::vector<Star> stars_all(const Mesh& m, double C = 4.0);

// Distance from p to the domain boundary; negative outside. *inside reports
// membership when non-null.
double boundary_distance(const Mesh& m, Vec2 p, bool* inside = nullptr);

// Throws with the offending edge on a conformity violation.
void check_conformity(const Mesh& m);
// Relative deviation of the summed element volumes from the domain volume.
double area_conservation_error(const Mesh& m);
double mesh_min_angle(const Mesh& m);

void save_mesh(const Mesh& m, const std::string& path);
Mesh load_mesh(const std::string& path);

// Counters of validated refinement passes (used by the invariant audits).
std::uint64_t refine_validation_count();

}  // namespace fraclap
