#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "minkprobe/errors.hpp"
#include "minkprobe/vector.hpp"

namespace minkprobe {

double planar_angle(const Vec& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi) a = 0.0;
  return a;
}

std::vector<Vec> circle_directions(std::size_t n) {
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back(vec2(std::cos(a), std::sin(a)));
  }
  return out;
}

Icosphere icosphere(int level) {
  if (level < 0 || level > 9) throw Error(ErrorCode::InvalidArgument, "icosphere level out of range");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Icosphere mesh;
  mesh.vertices = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto& v : mesh.vertices) v.normalize();
  mesh.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const int a = mid(f[0], f[1]);
      const int b = mid(f[1], f[2]);
      const int c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    mesh.faces = std::move(next);
  }
  return mesh;
}

const std::vector<Vec>& icosphere_directions(int level) {
  static std::mutex mutex;
  static std::map<int, std::vector<Vec>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, icosphere(level).vertices).first;
  return it->second;
}

double icosphere_covering_angle(int level) {
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(level);
  if (it != cache.end()) return it->second;
  // The farthest point from the net inside a spherical triangle is its
  // circumcenter; the circumradius bounds the covering angle.
  const Icosphere mesh = icosphere(level);
  double worst = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec& a = mesh.vertices[f[0]];
    const Vec& b = mesh.vertices[f[1]];
    const Vec& c = mesh.vertices[f[2]];
    const Vec center = (b - a).cross(c - a).normalized();
    worst = std::max(worst, std::acos(std::clamp(center.dot(a), -1.0, 1.0)));
  }
  cache.emplace(level, worst);
  return worst;
}

std::vector<Vec> direction_net(int dim, std::size_t n_2d, int level_3d) {
  if (dim == 2) return circle_directions(n_2d);
  if (dim == 3) return icosphere_directions(level_3d);
  throw Error(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
}

}  // namespace minkprobe
