#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace minkprobe {

// Points and directions live in R^3; planar data keeps z == 0 and the owning
// object (Polytope, measure) carries the dimension.
using Vec = Eigen::Vector3d;

inline Vec vec2(double x, double y) { return Vec(x, y, 0.0); }

inline bool is_unit(const Vec& v, double tol = 1e-12) { return std::abs(v.norm() - 1.0) <= tol; }

// Counter-clockwise rotation by 90 degrees in the xy-plane.
inline Vec rot90(const Vec& v) { return Vec(-v.y(), v.x(), 0.0); }

inline double cross2(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }

// Angle in [0, 2pi) of a planar vector.
double planar_angle(const Vec& v);

// n equally spaced unit vectors on the circle, starting at e1.
std::vector<Vec> circle_directions(std::size_t n);

struct Icosphere {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> faces;  // outward counter-clockwise
};

// Midpoint-subdivided icosahedron projected onto the sphere.
// level 0 has 12 vertices, level k has 10 * 4^k + 2.
Icosphere icosphere(int level);
const std::vector<Vec>& icosphere_directions(int level);

// Largest angular distance from any point of the sphere to the nearest net
// point of an icosphere of the given level (computed once per level).
double icosphere_covering_angle(int level);

// Default uniform net of unit directions: circle of n_2d points in 2D,
// icosphere of the given level in 3D.
std::vector<Vec> direction_net(int dim, std::size_t n_2d, int level_3d);

}  // namespace minkprobe
