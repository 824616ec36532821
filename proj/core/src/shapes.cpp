#include "minkprobe/shapes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "minkprobe/balls.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/halfspace.hpp"

namespace minkprobe {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Vec Rng::in_ball(int dim, double radius) {
  Vec v;
  do {
    v = Vec(uniform(-1.0, 1.0), uniform(-1.0, 1.0), dim == 3 ? uniform(-1.0, 1.0) : 0.0);
  } while (v.squaredNorm() > 1.0);
  return radius * v;
}

Vec Rng::on_sphere(int dim) {
  for (;;) {
    const Vec v = in_ball(dim, 1.0);
    const double n = v.norm();
    if (n > 1e-3) return v / n;
  }
}

Polytope unit_square() { return axis_box(Vec(0, 0, 0), Vec(1, 1, 0), 2); }

Polytope centered_square(double a) { return axis_box(Vec(-a, -a, 0), Vec(a, a, 0), 2); }

Polytope axis_box(const Vec& lo, const Vec& hi, int dim) {
  if (dim == 2) {
    return Polytope::polygon({vec2(lo.x(), lo.y()), vec2(hi.x(), lo.y()), vec2(hi.x(), hi.y()), vec2(lo.x(), hi.y())});
  }
  std::vector<Vec> v;
  for (int k = 0; k < 8; ++k)
    v.emplace_back((k & 1) ? hi.x() : lo.x(), (k & 2) ? hi.y() : lo.y(), (k & 4) ? hi.z() : lo.z());
  std::vector<std::vector<int>> f = {
      {0, 4, 6, 2},  // -x
      {1, 3, 7, 5},  // +x
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 2, 3, 1},  // -z
      {4, 5, 7, 6},  // +z
  };
  return Polytope::polyhedron(std::move(v), std::move(f));
}

Polytope regular_polygon(int n, double radius) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  std::vector<Vec> v;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    v.push_back(vec2(radius * std::cos(a), radius * std::sin(a)));
  }
  return Polytope::polygon(std::move(v));
}

Polytope unit_cube() { return axis_box(Vec(0, 0, 0), Vec(1, 1, 1), 3); }

Polytope regular_tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  std::vector<Vec> v = {Vec(1, 1, 1) * s, Vec(1, -1, -1) * s, Vec(-1, 1, -1) * s, Vec(-1, -1, 1) * s};
  std::vector<std::vector<int>> f = {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
  return Polytope::polyhedron(std::move(v), std::move(f));
}

Polytope icosphere_polytope(int level) {
  const Icosphere mesh = icosphere(level);
  std::vector<std::vector<int>> f;
  f.reserve(mesh.faces.size());
  for (const auto& t : mesh.faces) f.push_back({t[0], t[1], t[2]});
  return Polytope::polyhedron(mesh.vertices, std::move(f));
}

namespace {

bool parse_suffix(std::string_view name, std::string_view prefix, int& value) {
  if (name.substr(0, prefix.size()) != prefix) return false;
  const auto rest = name.substr(prefix.size());
  const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  return res.ec == std::errc() && res.ptr == rest.data() + rest.size();
}

}  // namespace

bool is_named_body(std::string_view name) {
  int v = 0;
  if (parse_suffix(name, "ngon:", v)) return v >= 3 && v <= 1 << 20;
  if (parse_suffix(name, "icosphere:", v)) return v >= 0 && v <= 6;
  return name == "square" || name == "cube" || name == "tetrahedron";
}

Polytope named_body(std::string_view name) {
  if (!is_named_body(name)) throw Error(ErrorCode::InvalidArgument, "unknown body name '" + std::string(name) + "'");
  int v = 0;
  if (name == "square") return unit_square();
  if (name == "cube") return unit_cube();
  if (name == "tetrahedron") return regular_tetrahedron();
  if (parse_suffix(name, "ngon:", v)) return regular_polygon(v);
  if (parse_suffix(name, "icosphere:", v)) return icosphere_polytope(v);
  throw Error(ErrorCode::InvalidArgument, "unknown body name '" + std::string(name) + "'");
}

Polytope random_polygon(Rng& rng, int min_vertices, int max_vertices, double min_radius, double max_radius) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int k = min_vertices + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices - min_vertices + 1)));
    const double radius = min_radius * std::pow(max_radius / min_radius, rng.uniform());
    const double stretch = rng.uniform(0.5, 1.0);
    const double tilt = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<double> angles(k);
    for (auto& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec> pts;
    for (double a : angles) {
      const Vec p = vec2(std::cos(a), stretch * std::sin(a));
      pts.push_back(vec2(std::cos(tilt) * p.x() - std::sin(tilt) * p.y(), std::sin(tilt) * p.x() + std::cos(tilt) * p.y()));
    }
    try {
      Polytope poly = Polytope::polygon(pts);
      const double r = circumradius(poly);
      poly = poly.scaled(radius / r);
      if (static_cast<int>(poly.vertices().size()) == k) return poly;
    } catch (const Error&) {
      // near-duplicate angles; draw again
    }
  }
  throw Error(ErrorCode::InvalidArgument, "could not draw a random polygon");
}

Polytope random_polytope_3d(Rng& rng, int min_facets, int max_facets) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int k = min_facets + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_facets - min_facets + 1)));
    HalfspaceRep rep;
    rep.dim = 3;
    for (int i = 0; i < k; ++i) {
      rep.normals.push_back(rng.on_sphere(3));
      rep.offsets.push_back(rng.uniform(0.6, 1.4));
    }
    try {
      const auto hs = intersect_halfspaces(rep);
      const int active = static_cast<int>(hs.body.facets().size());
      if (active < min_facets || active > max_facets) continue;
      bool tiny = false;
      for (const auto& f : hs.body.facet_info()) tiny = tiny || f.area < 1e-4;
      if (tiny) continue;
      return hs.body;
    } catch (const Error&) {
      // unbounded draw; try again
    }
  }
  throw Error(ErrorCode::InvalidArgument, "could not draw a random polytope");
}

}  // namespace minkprobe
