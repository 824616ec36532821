#include "minkprobe/balls.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "minkprobe/errors.hpp"

namespace minkprobe {

namespace {

// Smallest ball with all of `support` on its boundary (circumball in their
// affine hull); falls back to the widest pair when the points are degenerate.
Ball ball_through(const std::vector<Vec>& support) {
  Ball b;
  if (support.empty()) {
    b.radius = -1.0;
    return b;
  }
  if (support.size() == 1) {
    b.center = support[0];
    return b;
  }
  const Vec& p0 = support[0];
  const int k = static_cast<int>(support.size()) - 1;
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (int i = 0; i < k; ++i) {
    const Vec qi = support[i + 1] - p0;
    rhs(i) = 0.5 * qi.squaredNorm();
    for (int j = 0; j < k; ++j) gram(i, j) = qi.dot(support[j + 1] - p0);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-14);
  if (lu.rank() == k) {
    const Eigen::VectorXd lambda = lu.solve(rhs);
    Vec c = p0;
    for (int i = 0; i < k; ++i) c += lambda(i) * (support[i + 1] - p0);
    b.center = c;
    for (const auto& p : support) b.radius = std::max(b.radius, (p - c).norm());
    return b;
  }
  double best = -1.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const double d = (support[i] - support[j]).norm();
      if (d > best) {
        best = d;
        b.center = 0.5 * (support[i] + support[j]);
        b.radius = 0.5 * d;
      }
    }
  }
  return b;
}

bool contains(const Ball& b, const Vec& p) {
  return b.radius >= 0.0 && (p - b.center).norm() <= b.radius * (1.0 + 1e-12) + 1e-15;
}

Ball welzl(const std::vector<Vec>& pts, std::size_t n, std::vector<Vec>& support, std::size_t max_support) {
  Ball b = ball_through(support);
  if (support.size() == max_support) return b;
  for (std::size_t i = 0; i < n; ++i) {
    if (contains(b, pts[i])) continue;
    support.push_back(pts[i]);
    b = welzl(pts, i, support, max_support);
    support.pop_back();
  }
  return b;
}

}  // namespace

Ball min_enclosing_ball(std::span<const Vec> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "enclosing ball of no points");
  std::vector<Vec> pts(points.begin(), points.end());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(pts.begin(), pts.end(), rng);
  const bool planar = std::all_of(pts.begin(), pts.end(), [](const Vec& p) { return p.z() == 0.0; });
  std::vector<Vec> support;
  return welzl(pts, pts.size(), support, planar ? 3 : 4);
}

Ball circumball(const Polytope& body) { return min_enclosing_ball(body.vertices()); }

double circumradius(const Polytope& body) { return circumball(body).radius; }

ChebyshevBall inball(const Polytope& body) { return chebyshev_center(body.halfspaces()); }

double inradius(const Polytope& body) { return inball(body).radius; }

}  // namespace minkprobe
