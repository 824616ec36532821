#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minkprobe/balls.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/halfspace.hpp"
#include "minkprobe/hausdorff.hpp"
#include "minkprobe/lp.hpp"
#include "minkprobe/polytope.hpp"
#include "minkprobe/shapes.hpp"
#include "minkprobe/transport.hpp"
#include "test_support.hpp"

using namespace minkprobe;
using minkprobe::testing::angle_dir;

namespace {

Polytope triangle() { return Polytope::polygon({vec2(0, 0), vec2(1, 0), vec2(0, 1)}); }

double brute_support(const Polytope& P, const Vec& u) {
  double h = -1e300;
  for (const auto& v : P.vertices()) h = std::max(h, v.dot(u));
  return h;
}

constexpr int kSamples = 20000;

std::vector<Vec> sample_dirs(int dim) {
  std::vector<Vec> dirs;
  if (dim == 2) {
    for (int i = 0; i < kSamples; ++i) dirs.push_back(angle_dir(360.0 * i / kSamples));
  } else {
    Rng rng(99);
    for (int i = 0; i < 4 * kSamples; ++i) dirs.push_back(rng.on_sphere(3));
  }
  return dirs;
}

// Dense direction sampling; a lower bound for the true Hausdorff distance.
double sampled_hausdorff(const Polytope& K, const Polytope& L, const Vec& shift = Vec::Zero()) {
  double best = 0.0;
  for (const auto& u : sample_dirs(K.dim()))
    best = std::max(best, std::abs(brute_support(K, u) + shift.dot(u) - brute_support(L, u)));
  return best;
}

double max_norm(const Polytope& P) {
  double r = 0.0;
  for (const auto& v : P.vertices()) r = std::max(r, v.norm());
  return r;
}

// min over x of the sampled distance; convex in x, so nested ternary search.
double sampled_min_translate(const Polytope& K, const Polytope& L) {
  const auto dirs = sample_dirs(2);
  std::vector<double> gap;
  for (const auto& u : dirs) gap.push_back(brute_support(K, u) - brute_support(L, u));
  auto f = [&](double x, double y) {
    double m = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) m = std::max(m, std::abs(gap[i] + x * dirs[i].x() + y * dirs[i].y()));
    return m;
  };
  const double span = 2.0 * (max_norm(K) + max_norm(L));
  auto inner = [&](double x) {
    double lo = -span, hi = span;
    for (int it = 0; it < 80; ++it) {
      const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
      (f(x, a) < f(x, b) ? hi : lo) = f(x, a) < f(x, b) ? b : a;
    }
    return f(x, 0.5 * (lo + hi));
  };
  double lo = -span, hi = span;
  for (int it = 0; it < 80; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    (inner(a) < inner(b) ? hi : lo) = inner(a) < inner(b) ? b : a;
  }
  return inner(0.5 * (lo + hi));
}

double fan_area(const Polytope& P) {
  const auto& v = P.vertices();
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) a += 0.5 * cross2(v[i] - v[0], v[i + 1] - v[0]);
  return a;
}

Polytope random_body(Rng& rng, int dim) {
  return dim == 2 ? random_polygon(rng, 3, 30, 0.2, 5.0) : random_polytope_3d(rng, 5, 25);
}

}  // namespace

TEST(SupportValue, AxisAndCornerOfSquare) {
  const Polytope sq = centered_square(1.0);
  EXPECT_DOUBLE_EQ(support_value(sq, vec2(1, 0)), 1.0);
  EXPECT_NEAR(support_value(sq, vec2(1, 1).normalized()), std::sqrt(2.0), 1e-15);
}

TEST(SupportValue, TriangleMatchesVertexMaximum) {
  const Polytope t = triangle();
  EXPECT_DOUBLE_EQ(support_value(t, vec2(1, 0)), brute_support(t, vec2(1, 0)));
  EXPECT_DOUBLE_EQ(support_value(t, vec2(1, 0)), 1.0);
}

TEST(Volume, ClosedForms) {
  EXPECT_DOUBLE_EQ(volume(centered_square(1.0)), 4.0);
  EXPECT_NEAR(volume_from_facets(centered_square(1.0)), 4.0, 1e-14);
  EXPECT_NEAR(volume(unit_cube()), 1.0, 1e-14);
  const double expected = 32.0 * std::sin(2.0 * std::numbers::pi / 64.0);
  EXPECT_NEAR(volume(regular_polygon(64)), expected, 1e-12);
  EXPECT_NEAR(volume(regular_polygon(64)), std::numbers::pi, 0.01);
}

TEST(Volume, RandomPolygonsMatchTriangleFan) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Polytope P = random_polygon(rng, 3, 40, 0.1, 10.0);
    EXPECT_NEAR(volume(P), fan_area(P), 1e-12 * volume(P));
  }
}

TEST(MixedVolume, IdentityAndBallCase) {
  const Polytope sq = centered_square(1.0);
  EXPECT_NEAR(mixed_volume_v1(sq, sq), 4.0, 1e-14);
  const Polytope disk = regular_polygon(256);
  EXPECT_NEAR(mixed_volume_v1(sq, disk), 4.0, 0.01);
  const double v1 = mixed_volume_v1(sq, regular_polygon(64));
  EXPECT_GE(v1 * v1, volume(sq) * volume(regular_polygon(64)));
}

TEST(HalfspaceIntersection, Square) {
  HalfspaceRep rep{2, {vec2(1, 0), vec2(0, 1), vec2(-1, 0), vec2(0, -1)}, {1, 1, 1, 1}};
  const Polytope P = halfspace_intersection(rep);
  EXPECT_NEAR(volume(P), 4.0, 1e-12);
  EXPECT_NEAR(hausdorff(P, centered_square(1.0)), 0.0, 1e-12);
}

TEST(HalfspaceIntersection, Cube) {
  HalfspaceRep rep{3, {Vec::UnitX(), Vec::UnitY(), Vec::UnitZ(), -Vec::UnitX(), -Vec::UnitY(), -Vec::UnitZ()},
                   {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}};
  const Polytope P = halfspace_intersection(rep);
  EXPECT_EQ(P.vertices().size(), 8u);
  EXPECT_NEAR(volume(P), 1.0, 1e-12);
  EXPECT_NEAR(hausdorff(P, unit_cube().translated(Vec::Constant(-0.5))), 0.0, 1e-12);
}

TEST(HalfspaceIntersection, RedundantConstraintIsInactive) {
  HalfspaceRep rep{2, {vec2(1, 0), vec2(0, 1), vec2(-1, 0), vec2(0, -1), vec2(1, 1).normalized()}, {1, 1, 1, 1, 2}};
  const auto res = intersect_halfspaces(rep);
  EXPECT_FALSE(res.active[4]);
  EXPECT_EQ(res.body.facets().size(), 4u);
  EXPECT_NEAR(hausdorff(res.body, centered_square(1.0)), 0.0, 1e-12);
}

TEST(HalfspaceIntersection, UnboundedAndEmpty) {
  HalfspaceRep open{2, {vec2(1, 0), vec2(0, 1)}, {1, 1}};
  EXPECT_THROW(
      {
        try {
          halfspace_intersection(open);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::Unbounded);
          throw;
        }
      },
      Error);
  HalfspaceRep empty{2, {vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)}, {-1, -1, 1, 1}};
  EXPECT_THROW(halfspace_intersection(empty), Error);
}

TEST(FacetData, SquareCubeTriangle) {
  for (const auto& f : facet_data(centered_square(1.0))) EXPECT_NEAR(f.area, 2.0, 1e-15);
  const auto cube = facet_data(unit_cube());
  ASSERT_EQ(cube.size(), 6u);
  for (const auto& f : cube) {
    EXPECT_NEAR(f.area, 1.0, 1e-15);
    EXPECT_NEAR(f.normal.cwiseAbs().maxCoeff(), 1.0, 1e-15);
  }
  const auto tri = facet_data(triangle());
  ASSERT_EQ(tri.size(), 3u);
  EXPECT_NEAR(tri[0].area, 1.0, 1e-15);
  EXPECT_NEAR((tri[0].normal - vec2(0, -1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(tri[1].area, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR((tri[1].normal - vec2(1, 1).normalized()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(tri[2].area, 1.0, 1e-15);
  EXPECT_NEAR((tri[2].normal - vec2(-1, 0)).norm(), 0.0, 1e-15);
}

TEST(Polytope, RejectsRedundantVertices) {
  EXPECT_THROW(Polytope::polygon({vec2(0, 0), vec2(0.5, 0), vec2(1, 0), vec2(0, 1)}), Error);
  EXPECT_THROW(Polytope::polygon({vec2(0, 0), vec2(0, 1), vec2(1, 0)}), Error);  // clockwise
  EXPECT_THROW(Polytope::polygon({vec2(0, 0), vec2(1, 0), vec2(2, 0)}), Error);
}

TEST(Hausdorff, Examples) {
  const Polytope sq = centered_square(1.0);
  EXPECT_DOUBLE_EQ(hausdorff(sq, sq), 0.0);
  EXPECT_NEAR(hausdorff(sq, centered_square(1.1)), 0.1 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(hausdorff(sq, sq.translated(vec2(0.3, 0))), 0.3, 1e-12);
}

TEST(Hausdorff, DominatesDenseSampling) {
  Rng rng(5);
  for (int dim : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      const Polytope K = random_body(rng, dim);
      const Polytope L = random_body(rng, dim);
      const double exact = hausdorff(K, L);
      const double sampled = sampled_hausdorff(K, L);
      EXPECT_GE(exact, sampled - 1e-12);
      // |h_K - h_L| is (R_K + R_L)-Lipschitz; 2D spacing is exact, 3D uses a loose random cover
      const double spacing = dim == 2 ? std::numbers::pi / kSamples : 0.05;
      EXPECT_LE(exact, sampled + (max_norm(K) + max_norm(L)) * spacing);
    }
  }
}

TEST(MinTranslateHausdorff, Examples) {
  const Polytope sq = centered_square(1.0);
  auto fit = min_translate_hausdorff(sq, sq.translated(vec2(5, 0)));
  EXPECT_NEAR(fit.value, 0.0, 1e-9);
  EXPECT_NEAR((fit.translation - vec2(5, 0)).norm(), 0.0, 1e-9);

  fit = min_translate_hausdorff(sq, centered_square(1.1).translated(vec2(0.05, 0)));
  EXPECT_NEAR(fit.value, 0.1 * std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(hausdorff(sq.translated(fit.translation), centered_square(1.1).translated(vec2(0.05, 0))), fit.value,
              1e-12);

  const Polytope cube = unit_cube();
  fit = min_translate_hausdorff(cube, cube.translated(Vec(1, 2, 3)));
  EXPECT_NEAR(fit.value, 0.0, 1e-9);
  EXPECT_NEAR((fit.translation - Vec(1, 2, 3)).norm(), 0.0, 1e-9);
}

TEST(MinTranslateHausdorff, MatchesConvexSearch) {
  Rng rng(21);
  for (int i = 0; i < 5; ++i) {
    const Polytope K = random_polygon(rng, 3, 12, 0.5, 2.0);
    const Polytope L = random_polygon(rng, 3, 12, 0.5, 2.0);
    const auto fit = min_translate_hausdorff(K, L);
    const double oracle = sampled_min_translate(K, L);
    const double slack = (max_norm(K) + max_norm(L) + fit.translation.norm()) * std::numbers::pi / kSamples;
    EXPECT_GE(fit.value, oracle - 1e-9);
    EXPECT_LE(fit.value, oracle + slack);
    EXPECT_NEAR(sampled_hausdorff(K, L, fit.translation), fit.value, slack);
  }
}

class RandomBodies : public ::testing::TestWithParam<int> {};

TEST_P(RandomBodies, ClosureAndVolumeConsistency) {
  const int dim = GetParam();
  Rng rng(100 + dim);
  for (int i = 0; i < 200; ++i) {
    const Polytope P = random_body(rng, dim);
    Vec closure = Vec::Zero();
    double scale = 0.0;
    for (const auto& f : facet_data(P)) {
      closure += f.area * f.normal;
      scale += f.area;
    }
    EXPECT_LE(closure.norm(), 1e-9 * std::max(1.0, scale));
    EXPECT_LE(std::abs(volume(P) - volume_from_facets(P)), 1e-9 * volume(P));
  }
}

TEST_P(RandomBodies, MinkowskiInequalityAndEqualityCase) {
  const int dim = GetParam();
  Rng rng(200 + dim);
  for (int i = 0; i < 200; ++i) {
    const Polytope K = random_body(rng, dim);
    const Polytope L = random_body(rng, dim);
    const double lhs = std::pow(mixed_volume_v1(K, L), dim);
    const double rhs = std::pow(volume(K), dim - 1) * volume(L);
    EXPECT_GE((lhs - rhs) / rhs, -1e-9);
    const Polytope T = K.translated(rng.in_ball(dim, 3.0));
    const double eq = std::pow(mixed_volume_v1(K, T), dim);
    const double vk = std::pow(volume(K), dim);
    EXPECT_NEAR(eq / vk, 1.0, 1e-9);
  }
}

TEST_P(RandomBodies, SupportFunctionIsCircumradiusLipschitz) {
  const int dim = GetParam();
  Rng rng(300 + dim);
  for (int i = 0; i < 50; ++i) {
    const Polytope P = random_body(rng, dim);
    const Ball ball = circumball(P);
    const Polytope C = P.translated(-ball.center);
    for (int j = 0; j < 50; ++j) {
      const Vec u = rng.on_sphere(dim), v = rng.on_sphere(dim);
      EXPECT_LE(std::abs(support_value(C, u) - support_value(C, v)), ball.radius * (u - v).norm() + 1e-12);
    }
  }
}

TEST_P(RandomBodies, HalfspaceRoundTrip) {
  const int dim = GetParam();
  Rng rng(400 + dim);
  for (int i = 0; i < 50; ++i) {
    const Polytope P = random_body(rng, dim);
    const Polytope Q = halfspace_intersection(P.halfspaces());
    ASSERT_EQ(Q.vertices().size(), P.vertices().size());
    for (const auto& v : P.vertices()) {
      double nearest = 1e300;
      for (const auto& w : Q.vertices()) nearest = std::min(nearest, (v - w).norm());
      EXPECT_LE(nearest, 1e-9 * std::max(1.0, P.diameter()));
    }
  }
}

TEST_P(RandomBodies, HausdorffSymmetryAndTriangle) {
  const int dim = GetParam();
  Rng rng(500 + dim);
  for (int i = 0; i < 20; ++i) {
    const Polytope A = random_body(rng, dim), B = random_body(rng, dim), C = random_body(rng, dim);
    EXPECT_NEAR(hausdorff(A, B), hausdorff(B, A), 1e-12);
    EXPECT_LE(hausdorff(A, C), hausdorff(A, B) + hausdorff(B, C) + 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RandomBodies, ::testing::Values(2, 3));

TEST(Balls, SquareAndTriangle) {
  const Polytope sq = unit_square();
  EXPECT_NEAR(inradius(sq), 0.5, 1e-12);
  EXPECT_NEAR(circumradius(sq), std::sqrt(2.0) / 2.0, 1e-12);
  const auto cheb = inball(triangle());
  EXPECT_NEAR(cheb.radius, 1.0 - std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_NEAR(circumradius(unit_cube()), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(Balls, WelzlMatchesBruteForce) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec> pts;
    const int n = 3 + static_cast<int>(rng.below(10));
    for (int i = 0; i < n; ++i) pts.push_back(rng.in_ball(2, 1.0));
    // brute force: smallest circle through 2 or 3 points that covers all
    double best = 1e300;
    auto covers = [&](const Vec& c, double r) {
      for (const auto& p : pts)
        if ((p - c).norm() > r + 1e-12) return false;
      return true;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Vec c = 0.5 * (pts[i] + pts[j]);
        const double r = 0.5 * (pts[i] - pts[j]).norm();
        if (covers(c, r)) best = std::min(best, r);
        for (int k = j + 1; k < n; ++k) {
          const Vec a = pts[i], b = pts[j], d = pts[k];
          const double D = 2 * (a.x() * (b.y() - d.y()) + b.x() * (d.y() - a.y()) + d.x() * (a.y() - b.y()));
          if (std::abs(D) < 1e-14) continue;
          const double ux = (a.squaredNorm() * (b.y() - d.y()) + b.squaredNorm() * (d.y() - a.y()) +
                             d.squaredNorm() * (a.y() - b.y())) / D;
          const double uy = (a.squaredNorm() * (d.x() - b.x()) + b.squaredNorm() * (a.x() - d.x()) +
                             d.squaredNorm() * (b.x() - a.x())) / D;
          const Vec c3 = vec2(ux, uy);
          const double r3 = (a - c3).norm();
          if (covers(c3, r3)) best = std::min(best, r3);
        }
      }
    EXPECT_NEAR(min_enclosing_ball(pts).radius, best, 1e-10);
  }
}

TEST(LinearProgram, MatchesVertexEnumeration) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    // max c.x subject to a_i . x <= b_i, x >= 0 in two variables
    const int m = 2 + static_cast<int>(rng.below(5));
    std::vector<Eigen::Vector2d> a;
    std::vector<double> b;
    for (int i = 0; i < m; ++i) {
      a.emplace_back(rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0));
      b.push_back(rng.uniform(0.5, 3.0));
    }
    a.emplace_back(-1.0, 0.0);
    b.push_back(0.0);
    a.emplace_back(0.0, -1.0);
    b.push_back(0.0);
    const Eigen::Vector2d c(rng.uniform(-1, 2), rng.uniform(-1, 2));
    double best = -1e300;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        Eigen::Matrix2d M;
        M << a[i].transpose(), a[j].transpose();
        if (std::abs(M.determinant()) < 1e-12) continue;
        const Eigen::Vector2d x = M.inverse() * Eigen::Vector2d(b[i], b[j]);
        bool ok = true;
        for (std::size_t k = 0; k < a.size(); ++k) ok = ok && a[k].dot(x) <= b[k] + 1e-9;
        if (ok) best = std::max(best, c.dot(x));
      }
    LinearProgram lp(2);
    lp.maximize(Eigen::VectorXd(c));
    for (int i = 0; i < m; ++i) lp.add_constraint(Eigen::VectorXd(a[i]), Relation::LessEqual, b[i]);
    const auto sol = lp.solve();
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_NEAR(sol.objective, best, 1e-9);
    // strong duality through the reported multipliers
    double dual = 0.0;
    for (int i = 0; i < m; ++i) dual += sol.duals(i) * b[i];
    EXPECT_NEAR(dual, sol.objective, 1e-9);
  }
}

TEST(LinearProgram, InfeasibleAndUnbounded) {
  LinearProgram lp(1);
  lp.maximize(Eigen::VectorXd::Ones(1));
  lp.add_constraint(Eigen::VectorXd::Ones(1), Relation::GreaterEqual, 2.0);
  EXPECT_EQ(lp.solve().status, LpStatus::Unbounded);
  lp.add_constraint(Eigen::VectorXd::Ones(1), Relation::LessEqual, 1.0);
  EXPECT_EQ(lp.solve().status, LpStatus::Infeasible);
}

TEST(Transport, MatchesPermutationEnumeration) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cost(i, j) = rng.uniform(0.0, 5.0);
    // unit supplies and demands: optimum is an assignment (Birkhoff)
    std::vector<double> ones(n, 1.0);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best = 1e300;
    do {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += cost(i, perm[i]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(solve_transport(ones, ones, cost).cost, best, 1e-12);
  }
}

TEST(Shapes, NamedBodies) {
  EXPECT_TRUE(is_named_body("ngon:64"));
  EXPECT_FALSE(is_named_body("ngon:2"));
  EXPECT_FALSE(is_named_body("sphere"));
  EXPECT_EQ(named_body("icosphere:1").facets().size(), 80u);
  EXPECT_NEAR(circumradius(named_body("tetrahedron")), 1.0, 1e-12);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Polytope P = random_polygon(rng, 5, 50, 0.1, 10.0);
    EXPECT_GE(P.vertices().size(), 5u);
    EXPECT_LE(P.vertices().size(), 50u);
    EXPECT_GE(circumradius(P), 0.1 * (1 - 1e-12));
    EXPECT_LE(circumradius(P), 10.0 * (1 + 1e-12));
  }
  for (int i = 0; i < 20; ++i) {
    const Polytope P = random_polytope_3d(rng, 6, 30);
    EXPECT_GE(P.facets().size(), 6u);
    EXPECT_LE(P.facets().size(), 30u);
  }
}
