// Mesh construction, newest-vertex bisection with recursive completion,
// star queries, boundary geometry, validation and plain-text IO.
#include "fraclap/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "fraclap/util.hpp"

namespace fraclap {

namespace {

std::atomic<std::uint64_t> g_refine_validations{0};

inline std::uint64_t ekey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

}  // namespace

std::uint64_t refine_validation_count() { return g_refine_validations.load(); }

// ---------------------------------------------------------------------------
// Domains

Domain domain_interval(double a, double b) {
  FL_REQUIRE(a < b, "interval domain needs a < b");
  Domain d;
  d.dim = 1;
  d.a = a;
  d.b = b;
  return d;
}

Domain domain_from_polygon(std::vector<Vec2> loop) {
  Domain d;
  d.dim = 2;
  FL_REQUIRE(loop.size() >= 3, "polygon needs at least 3 vertices");
  FL_REQUIRE(polygon_is_simple(loop), "polygon must be simple");
  if (polygon_area(loop) < 0) std::reverse(loop.begin(), loop.end());
  FL_REQUIRE(polygon_area(loop) > 0, "polygon must have positive area");
  d.polygon = std::move(loop);
  return d;
}

Domain domain_square() {
  return domain_from_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
}

Domain domain_unit_square() {
  return domain_from_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

Domain domain_lshape() {
  return domain_from_polygon(
      {{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}});
}

Domain domain_disk_polygon(int k, double radius) {
  FL_REQUIRE(k >= 3, "disk polygon needs k >= 3");
  std::vector<Vec2> loop(k);
  for (int i = 0; i < k; ++i) {
    double th = 2.0 * M_PI * double(i) / double(k);
    loop[i] = {radius * std::cos(th), radius * std::sin(th)};
  }
  return domain_from_polygon(std::move(loop));
}

// ---------------------------------------------------------------------------
// Mesh basics

double Mesh::element_volume(int e) const {
  const Element& el = elements[e];
  if (dim == 1) return std::abs(vertices[el.v[1]].x - vertices[el.v[0]].x);
  return tri_area(vertices[el.v[0]], vertices[el.v[1]], vertices[el.v[2]]);
}

double Mesh::element_h(int e) const {
  double v = element_volume(e);
  return dim == 1 ? v : std::sqrt(v);
}

double Mesh::element_diameter(int e) const {
  const Element& el = elements[e];
  if (dim == 1) return element_volume(e);
  double d01 = dist(vertices[el.v[0]], vertices[el.v[1]]);
  double d12 = dist(vertices[el.v[1]], vertices[el.v[2]]);
  double d20 = dist(vertices[el.v[2]], vertices[el.v[0]]);
  return std::max({d01, d12, d20});
}

Vec2 Mesh::element_barycenter(int e) const {
  const Element& el = elements[e];
  if (dim == 1)
    return {0.5 * (vertices[el.v[0]].x + vertices[el.v[1]].x), 0.0};
  return tri_centroid(vertices[el.v[0]], vertices[el.v[1]], vertices[el.v[2]]);
}

std::uint64_t Mesh::fingerprint() const {
  std::uint64_t h = fnv1a_add(std::uint64_t(1469598103934665603ull),
                              std::int64_t(dim));
  h = fnv1a_add(h, std::int64_t(vertices.size()));
  h = fnv1a_add(h, std::int64_t(elements.size()));
  for (const Vec2& p : vertices) {
    h = fnv1a_add(h, p.x);
    if (dim == 2) h = fnv1a_add(h, p.y);
  }
  for (const Element& el : elements) {
    for (int k = 0; k <= dim; ++k) h = fnv1a_add(h, std::int64_t(el.v[k]));
    h = fnv1a_add(h, std::int64_t(el.generation));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Initial meshes

namespace {

// Rotate the vertex tuple (orientation preserving) so that the longest edge,
// ties broken by the smallest sorted vertex-index pair, comes first.
void label_longest_edge(const std::vector<Vec2>& verts, Element& el) {
  int best = 0;
  double best_len = -1;
  std::pair<int, int> best_pair{0, 0};
  for (int k = 0; k < 3; ++k) {
    int a = el.v[k], b = el.v[(k + 1) % 3];
    double len = norm2(verts[b] - verts[a]);
    std::pair<int, int> pr{std::min(a, b), std::max(a, b)};
    if (len > best_len || (len == best_len && pr < best_pair)) {
      best = k;
      best_len = len;
      best_pair = pr;
    }
  }
  Element r = el;
  for (int k = 0; k < 3; ++k) r.v[k] = el.v[(best + k) % 3];
  el = r;
}

bool polygon_matches(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dist(a[i], b[i]) > 1e-14) return false;
  return true;
}

void rebuild_boundary(Mesh& m) {
  m.vertex_on_boundary.assign(m.vertices.size(), 0);
  m.boundary_edges.clear();
  if (m.dim == 1) {
    std::vector<int> count(m.vertices.size(), 0);
    for (const Element& el : m.elements) {
      ++count[el.v[0]];
      ++count[el.v[1]];
    }
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
      if (count[v] == 1) m.vertex_on_boundary[v] = 1;
    return;
  }
  std::unordered_map<std::uint64_t, int> count;
  for (const Element& el : m.elements)
    for (int k = 0; k < 3; ++k)
      ++count[ekey(el.v[k], el.v[(k + 1) % 3])];
  for (const auto& [key, c] : count) {
    if (c == 1) {
      int a = int(key >> 32), b = int(key & 0xffffffffu);
      m.boundary_edges.push_back({a, b});
      m.vertex_on_boundary[a] = 1;
      m.vertex_on_boundary[b] = 1;
    }
  }
  std::sort(m.boundary_edges.begin(), m.boundary_edges.end());
}

}  // namespace

Mesh make_initial_mesh(const Domain& dom, double target_h) {
  FL_REQUIRE(target_h > 0, "target_h must be positive");
  Mesh m;
  m.dim = dom.dim;
  m.domain = dom;
  if (dom.dim == 1) {
    double len = dom.b - dom.a;
    int n = std::max(1, int(std::ceil(len / target_h - 1e-12)));
    for (int i = 0; i <= n; ++i)
      m.vertices.push_back({dom.a + len * double(i) / double(n), 0.0});
    for (int i = 0; i < n; ++i) m.elements.push_back({{i, i + 1, -1}, 0});
    rebuild_boundary(m);
    return m;
  }

  const std::vector<Vec2>& poly = dom.polygon;
  FL_REQUIRE(polygon_is_simple(poly), "initial mesh: polygon must be simple");
  bool convex = true;
  int np = int(poly.size());
  for (int i = 0; i < np; ++i) {
    Vec2 e0 = poly[(i + 1) % np] - poly[i];
    Vec2 e1 = poly[(i + 2) % np] - poly[(i + 1) % np];
    if (cross(e0, e1) < -1e-14) convex = false;
  }

  if (polygon_matches(poly, domain_lshape().polygon)) {
    // Three unit squares, each split along the diagonal through the
    // reentrant corner: six congruent right triangles.
    m.vertices = {{-1, -1}, {0, -1}, {0, 0}, {1, 0},
                  {1, 1},   {-1, 1}, {-1, 0}, {0, 1}};
    auto add = [&m](int a, int b, int c) {
      m.elements.push_back({{a, b, c}, 0});
    };
    add(0, 1, 2);  // lower-left square
    add(0, 2, 6);
    add(2, 7, 5);  // upper-left square
    add(2, 5, 6);
    add(2, 3, 4);  // upper-right square
    add(2, 4, 7);
  } else if (np == 4) {
    m.vertices = poly;
    m.elements.push_back({{0, 1, 2}, 0});
    m.elements.push_back({{0, 2, 3}, 0});
  } else if (convex) {
    // Fan from the centroid; robust for the disk-like presets.
    m.vertices = poly;
    Vec2 c{0, 0};
    for (const Vec2& p : poly) c = c + (1.0 / np) * p;
    m.vertices.push_back(c);
    for (int i = 0; i < np; ++i)
      m.elements.push_back({{i, (i + 1) % np, np}, 0});
  } else {
    m.vertices = poly;
    for (const auto& t : triangulate_simple_polygon(poly))
      m.elements.push_back({{t[0], t[1], t[2]}, 0});
  }

  for (Element& el : m.elements) {
    FL_REQUIRE(tri_area(m.vertices[el.v[0]], m.vertices[el.v[1]],
                        m.vertices[el.v[2]]) > 0,
               "initial mesh: element not counterclockwise");
    label_longest_edge(m.vertices, el);
  }
  rebuild_boundary(m);

  // Uniform sweeps until every element size |T|^{1/d} is at most target_h.
  int guard = 0;
  while (true) {
    double hmax = 0;
    for (int e = 0; e < m.n_elements(); ++e)
      hmax = std::max(hmax, m.element_h(e));
    if (hmax <= target_h) break;
    FL_REQUIRE(++guard < 64, "initial mesh: target_h too small");
    m = uniform_refine(m);
  }
  m.lineage.clear();
  return m;
}

// ---------------------------------------------------------------------------
// Bisection

namespace {

// Find or create the midpoint vertex of the edge (a, b); updates the
// boundary bookkeeping when the split edge lies on the boundary.
int acquire_midpoint(Mesh& m, int a, int b) {
  std::uint64_t key = ekey(a, b);
  auto it = m.edge_midpoint.find(key);
  if (it != m.edge_midpoint.end()) return it->second;
  int mid = m.n_vertices();
  m.vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
  bool on_bnd = false;
  if (m.dim == 2) {
    std::array<int, 2> se{std::min(a, b), std::max(a, b)};
    auto pos =
        std::find(m.boundary_edges.begin(), m.boundary_edges.end(), se);
    if (pos != m.boundary_edges.end()) {
      on_bnd = true;
      m.boundary_edges.erase(pos);
      std::array<int, 2> h1{std::min(a, mid), std::max(a, mid)};
      std::array<int, 2> h2{std::min(b, mid), std::max(b, mid)};
      m.boundary_edges.insert(
          std::upper_bound(m.boundary_edges.begin(), m.boundary_edges.end(), h1),
          h1);
      m.boundary_edges.insert(
          std::upper_bound(m.boundary_edges.begin(), m.boundary_edges.end(), h2),
          h2);
    }
  }
  m.vertex_on_boundary.push_back(on_bnd ? 1 : 0);
  m.edge_midpoint.emplace(key, mid);
  return mid;
}

}  // namespace

std::pair<int, int> bisect(Mesh& m, int elem) {
  FL_REQUIRE(elem >= 0 && elem < m.n_elements(), "bisect: invalid element id");
  Element parent = m.elements[elem];
  int mid = acquire_midpoint(m, parent.v[0], parent.v[1]);
  int gen = parent.generation + 1;
  if (m.dim == 1) {
    m.elements[elem] = {{parent.v[0], mid, -1}, gen};
    m.elements.push_back({{mid, parent.v[1], -1}, gen});
  } else {
    // Children keep ccw orientation; the new vertex is listed last so the
    // next refinement edge is the edge opposite the newest vertex.
    m.elements[elem] = {{parent.v[2], parent.v[0], mid}, gen};
    m.elements.push_back({{parent.v[1], parent.v[2], mid}, gen});
  }
  return {elem, m.n_elements() - 1};
}

// ---------------------------------------------------------------------------
// Refinement with recursive completion

namespace {

struct RefineSession {
  Mesh& m;
  std::vector<char> replaced;
  // Edge -> up to two alive incident elements (2d only).
  std::unordered_map<std::uint64_t, std::array<int, 2>> incidence;

  explicit RefineSession(Mesh& mesh) : m(mesh) {
    replaced.assign(m.elements.size(), 0);
    if (m.dim == 2) {
      incidence.reserve(m.elements.size() * 2);
      for (int e = 0; e < m.n_elements(); ++e) add_incidence(e);
    }
  }

  void add_incidence(int e) {
    const Element& el = m.elements[e];
    for (int k = 0; k < 3; ++k) {
      auto& slot = incidence[ekey(el.v[k], el.v[(k + 1) % 3])];
      if (slot[0] == 0 && slot[1] == 0 && incidence.bucket_count()) {
        // fresh entry: mark empty with -1 sentinels
      }
      if (slot[0] == e || slot[1] == e) continue;
      if (slot[0] == 0 && slot[1] == 0) slot = {-1, -1};
      if (slot[0] == -1)
        slot[0] = e;
      else if (slot[1] == -1)
        slot[1] = e;
      else
        FL_REQUIRE(false, "refine: edge incident to more than two elements");
    }
  }

  void remove_incidence(int e) {
    const Element& el = m.elements[e];
    for (int k = 0; k < 3; ++k) {
      auto it = incidence.find(ekey(el.v[k], el.v[(k + 1) % 3]));
      FL_REQUIRE(it != incidence.end(), "refine: missing incidence entry");
      if (it->second[0] == e) it->second[0] = -1;
      else if (it->second[1] == e) it->second[1] = -1;
    }
  }

  int neighbor_across(int e, std::uint64_t key) const {
    auto it = incidence.find(key);
    if (it == incidence.end()) return -1;
    if (it->second[0] == e) return it->second[1];
    if (it->second[1] == e) return it->second[0];
    return -1;
  }

  // Tombstone the parent and append both children (ids stay stable).
  void do_bisect(int e) {
    Element parent = m.elements[e];
    int mid = acquire_midpoint(m, parent.v[0], parent.v[1]);
    int gen = parent.generation + 1;
    if (m.dim == 2) remove_incidence(e);
    replaced[e] = 1;
    Element c0, c1;
    if (m.dim == 1) {
      c0 = {{parent.v[0], mid, -1}, gen};
      c1 = {{mid, parent.v[1], -1}, gen};
    } else {
      c0 = {{parent.v[2], parent.v[0], mid}, gen};
      c1 = {{parent.v[1], parent.v[2], mid}, gen};
    }
    int i0 = m.n_elements();
    m.elements.push_back(c0);
    m.elements.push_back(c1);
    replaced.push_back(0);
    replaced.push_back(0);
    if (m.dim == 2) {
      add_incidence(i0);
      add_incidence(i0 + 1);
    }
  }

  void ensure_refined(int e, int depth) {
    FL_REQUIRE(depth < 4096, "refine: completion recursion too deep");
    if (replaced[e]) return;
    if (m.dim == 1) {
      do_bisect(e);
      return;
    }
    while (true) {
      const Element& el = m.elements[e];
      std::uint64_t key = ekey(el.v[0], el.v[1]);
      int nb = neighbor_across(e, key);
      if (nb >= 0) {
        const Element& nel = m.elements[nb];
        if (ekey(nel.v[0], nel.v[1]) != key) {
          ensure_refined(nb, depth + 1);
          continue;  // re-query the neighbor across the same edge
        }
      }
      do_bisect(e);
      if (nb >= 0) do_bisect(nb);
      return;
    }
  }
};

}  // namespace

Mesh refine(const Mesh& in, const std::vector<int>& marked) {
  Mesh m = in;
  for (int id : marked)
    FL_REQUIRE(id >= 0 && id < in.n_elements(), "refine: invalid element id");
  if (marked.empty()) return m;
  m.lineage.push_back(in.fingerprint());

  std::vector<int> order = marked;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  RefineSession session(m);
  for (int id : order)
    if (!session.replaced[id]) session.ensure_refined(id, 0);

  // Compact tombstones, preserving creation order.
  std::vector<Element> alive;
  alive.reserve(m.elements.size());
  for (int e = 0; e < m.n_elements(); ++e)
    if (!session.replaced[e]) alive.push_back(m.elements[e]);
  m.elements = std::move(alive);

  check_conformity(m);
  double dev = area_conservation_error(m);
  FL_REQUIRE(dev < 1e-12, "refine: volume not conserved, deviation " << dev);
  ++g_refine_validations;
  return m;
}

Mesh uniform_refine(const Mesh& m) {
  std::vector<int> all(m.n_elements());
  for (int e = 0; e < m.n_elements(); ++e) all[e] = e;
  return refine(m, all);
}

// ---------------------------------------------------------------------------
// Stars

namespace {

std::vector<std::vector<int>> vertex_incidence(const Mesh& m) {
  std::vector<std::vector<int>> inc(m.vertices.size());
  for (int e = 0; e < m.n_elements(); ++e)
    for (int k = 0; k <= m.dim; ++k) inc[m.elements[e].v[k]].push_back(e);
  return inc;
}

Star build_star(const Mesh& m, const std::vector<std::vector<int>>& inc,
                int elem, double C, double* min_C_needed) {
  Star s;
  s.center = elem;
  auto ring_of = [&](const std::vector<int>& seed) {
    std::vector<int> out;
    for (int e : seed)
      for (int k = 0; k <= m.dim; ++k)
        for (int t : inc[m.elements[e].v[k]]) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  s.ring1 = ring_of({elem});
  s.ring2 = ring_of(s.ring1);
  bool touches = false;
  for (int k = 0; k <= m.dim; ++k)
    if (m.vertex_on_boundary[m.elements[elem].v[k]]) touches = true;
  if (touches) {
    s.has_ball = true;
    s.ball_center = m.element_barycenter(elem);
    double hT = m.element_h(elem);
    s.ball_radius = C * hT;
    double reach = 0;
    for (int e : s.ring1)
      for (int k = 0; k <= m.dim; ++k)
        reach = std::max(reach,
                         dist(m.vertices[m.elements[e].v[k]], s.ball_center));
    double needed = reach / hT;
    if (min_C_needed) *min_C_needed = std::max(*min_C_needed, needed);
    FL_REQUIRE(needed <= C,
               "stars: ball constant too small, minimal sufficient C = "
                   << needed);
  }
  return s;
}

}  // namespace

Star stars(const Mesh& m, int elem, double C) {
  FL_REQUIRE(elem >= 0 && elem < m.n_elements(), "stars: invalid element id");
  auto inc = vertex_incidence(m);
  double needed = 0;
  return build_star(m, inc, elem, C, &needed);
}

std::vector<Star> stars_all(const Mesh& m, double C) {
  auto inc = vertex_incidence(m);
  std::vector<Star> out;
  out.reserve(m.n_elements());
  double needed = 0;
  for (int e = 0; e < m.n_elements(); ++e)
    out.push_back(build_star(m, inc, e, C, &needed));
  return out;
}

// ---------------------------------------------------------------------------
// Boundary distance and validation

double boundary_distance(const Mesh& m, Vec2 p, bool* inside) {
  if (m.dim == 1) {
    double d = std::min(p.x - m.domain.a, m.domain.b - p.x);
    if (inside) *inside = d >= 0;
    return d;
  }
  FL_REQUIRE(!m.domain.polygon.empty(), "boundary_distance: no domain polygon");
  double d = polygon_signed_distance(p, m.domain.polygon);
  if (inside) *inside = d >= 0;
  return d;
}

void check_conformity(const Mesh& m) {
  if (m.dim == 1) {
    std::vector<std::pair<double, int>> lefts;
    for (int e = 0; e < m.n_elements(); ++e) {
      const Element& el = m.elements[e];
      FL_REQUIRE(m.vertices[el.v[0]].x < m.vertices[el.v[1]].x,
                 "conformity: interval " << e << " not ascending");
      lefts.push_back({m.vertices[el.v[0]].x, e});
    }
    std::sort(lefts.begin(), lefts.end());
    for (std::size_t i = 0; i + 1 < lefts.size(); ++i) {
      const Element& a = m.elements[lefts[i].second];
      const Element& b = m.elements[lefts[i + 1].second];
      FL_REQUIRE(a.v[1] == b.v[0],
                 "conformity violation between intervals "
                     << lefts[i].second << " and " << lefts[i + 1].second);
    }
    return;
  }
  std::unordered_map<std::uint64_t, int> count;
  for (int e = 0; e < m.n_elements(); ++e) {
    const Element& el = m.elements[e];
    FL_REQUIRE(el.v[0] != el.v[1] && el.v[1] != el.v[2] && el.v[0] != el.v[2],
               "conformity: element " << e << " has repeated vertices");
    FL_REQUIRE(tri_area(m.vertices[el.v[0]], m.vertices[el.v[1]],
                        m.vertices[el.v[2]]) > 0,
               "conformity: element " << e << " not counterclockwise");
    for (int k = 0; k < 3; ++k) ++count[ekey(el.v[k], el.v[(k + 1) % 3])];
  }
  double scale = 0;
  for (const Vec2& p : m.vertices)
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  for (const auto& [key, c] : count) {
    int a = int(key >> 32), b = int(key & 0xffffffffu);
    FL_REQUIRE(c <= 2, "conformity violation at edge (" << a << "," << b
                                                        << "): shared by " << c
                                                        << " elements");
    if (c == 1) {
      // A once-counted edge must lie on the domain boundary, otherwise a
      // hanging node splits the neighboring element's edge.
      Vec2 mid = 0.5 * (m.vertices[a] + m.vertices[b]);
      double d = std::abs(polygon_signed_distance(mid, m.domain.polygon));
      FL_REQUIRE(d <= 1e-12 * std::max(1.0, scale),
                 "conformity violation at edge (" << a << "," << b
                                                  << "): hanging node");
    }
  }
}

double area_conservation_error(const Mesh& m) {
  double vol = 0;
  for (int e = 0; e < m.n_elements(); ++e) vol += m.element_volume(e);
  double ref = m.dim == 1 ? (m.domain.b - m.domain.a)
                          : polygon_area(m.domain.polygon);
  return std::abs(vol - ref) / ref;
}

double mesh_min_angle(const Mesh& m) {
  FL_REQUIRE(m.dim == 2, "mesh_min_angle is a 2d quantity");
  double a = 1e300;
  for (const Element& el : m.elements)
    a = std::min(a, tri_min_angle(m.vertices[el.v[0]], m.vertices[el.v[1]],
                                  m.vertices[el.v[2]]));
  return a;
}

// ---------------------------------------------------------------------------
// Plain-text IO: header "d nv ne", then nv coordinate lines, then ne element
// lines of d+1 vertex ids, the local refinement-edge index, the generation.

void save_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  FL_REQUIRE(out.good(), "save_mesh: cannot open " << path);
  char buf[64];
  out << m.dim << ' ' << m.n_vertices() << ' ' << m.n_elements() << '\n';
  for (const Vec2& p : m.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g", p.x);
    out << buf;
    if (m.dim == 2) {
      std::snprintf(buf, sizeof buf, "%.17g", p.y);
      out << ' ' << buf;
    }
    out << '\n';
  }
  for (const Element& el : m.elements) {
    for (int k = 0; k <= m.dim; ++k) out << el.v[k] << ' ';
    out << 0 << ' ' << el.generation << '\n';  // refinement edge is (v0,v1)
  }
  FL_REQUIRE(out.good(), "save_mesh: write failed for " << path);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  FL_REQUIRE(in.good(), "load_mesh: cannot open " << path);
  Mesh m;
  int nv = 0, ne = 0;
  FL_REQUIRE(bool(in >> m.dim >> nv >> ne), "load_mesh: bad header");
  FL_REQUIRE(m.dim == 1 || m.dim == 2, "load_mesh: dimension must be 1 or 2");
  FL_REQUIRE(nv > 0 && ne > 0, "load_mesh: empty mesh");
  m.vertices.resize(nv);
  for (int i = 0; i < nv; ++i) {
    FL_REQUIRE(bool(in >> m.vertices[i].x), "load_mesh: bad coordinate");
    if (m.dim == 2)
      FL_REQUIRE(bool(in >> m.vertices[i].y), "load_mesh: bad coordinate");
  }
  m.elements.resize(ne);
  for (int e = 0; e < ne; ++e) {
    std::array<int, 3> v{-1, -1, -1};
    int redge = 0, gen = 0;
    for (int k = 0; k <= m.dim; ++k)
      FL_REQUIRE(bool(in >> v[k]), "load_mesh: bad element line");
    FL_REQUIRE(bool(in >> redge >> gen), "load_mesh: bad element line");
    for (int k = 0; k <= m.dim; ++k)
      FL_REQUIRE(v[k] >= 0 && v[k] < nv,
                 "load_mesh: vertex id out of range in element " << e);
    if (m.dim == 2) {
      FL_REQUIRE(redge >= 0 && redge < 3, "load_mesh: bad refinement edge");
      std::array<int, 3> r;
      for (int k = 0; k < 3; ++k) r[k] = v[(redge + k) % 3];
      v = r;
      FL_REQUIRE(tri_area(m.vertices[v[0]], m.vertices[v[1]],
                          m.vertices[v[2]]) > 0,
                 "load_mesh: element " << e << " degenerate or clockwise");
    } else {
      FL_REQUIRE(redge == 0, "load_mesh: bad refinement edge");
      FL_REQUIRE(m.vertices[v[0]].x < m.vertices[v[1]].x,
                 "load_mesh: interval " << e << " not ascending");
    }
    m.elements[e] = {v, gen};
  }
  rebuild_boundary(m);

  // Reconstruct the domain from the boundary: chained loop in 2d, the
  // extreme coordinates in 1d.
  if (m.dim == 1) {
    double a = 1e300, b = -1e300;
    for (const Vec2& p : m.vertices) {
      a = std::min(a, p.x);
      b = std::max(b, p.x);
    }
    m.domain = domain_interval(a, b);
    return m;
  }
  std::unordered_map<int, std::array<int, 2>> nbr;
  bool chain_ok = true;
  for (const auto& e : m.boundary_edges) {
    for (int side = 0; side < 2; ++side) {
      auto it = nbr.find(e[side]);
      if (it == nbr.end()) {
        nbr[e[side]] = {e[1 - side], -1};
      } else if (it->second[1] == -1) {
        it->second[1] = e[1 - side];
      } else {
        chain_ok = false;
      }
    }
  }
  std::vector<Vec2> loop;
  if (chain_ok && !nbr.empty()) {
    int start = nbr.begin()->first;
    for (const auto& [v, n] : nbr) start = std::min(start, v);
    int prev = -1, cur = start;
    for (std::size_t step = 0; step < nbr.size(); ++step) {
      loop.push_back(m.vertices[cur]);
      auto& n = nbr[cur];
      int next = (n[0] == prev) ? n[1] : n[0];
      if (next < 0) {
        chain_ok = false;
        break;
      }
      prev = cur;
      cur = next;
      if (cur == start) break;
    }
    if (cur != start || loop.size() != nbr.size()) chain_ok = false;
  }
  if (chain_ok && loop.size() >= 3) {
    if (polygon_area(loop) < 0) std::reverse(loop.begin(), loop.end());
    m.domain.dim = 2;
    m.domain.polygon = std::move(loop);
  }
  // When chaining fails (corrupt file) the polygon stays empty; the
  // conformity audit will report the defect in detail.
  return m;
}

}  // namespace fraclap
