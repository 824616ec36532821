#include <gtest/gtest.h>

#include <cmath>

#include "minkprobe/distances.hpp"
#include "minkprobe/lp.hpp"
#include "minkprobe/measure.hpp"
#include "minkprobe/shapes.hpp"
#include "test_support.hpp"

using namespace minkprobe;
using namespace minkprobe::testing;

namespace {

struct Signed {
  std::vector<Vec> dirs;
  std::vector<double> c;
};

Signed merge(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  Signed s;
  auto add = [&](const Vec& n, double w) {
    for (std::size_t i = 0; i < s.dirs.size(); ++i)
      if (s.dirs[i] == n) {
        s.c[i] += w;
        return;
      }
    s.dirs.push_back(n);
    s.c.push_back(w);
  };
  for (const auto& a : mu.atoms()) add(a.n, a.w);
  for (const auto& a : nu.atoms()) add(a.n, -a.w);
  return s;
}

// sup over subsets B of the atom union of |mu(B) - nu(B)|
double brute_tv(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  const Signed s = merge(mu, nu);
  const std::size_t m = s.c.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) v += s.c[i];
    best = std::max(best, std::abs(v));
  }
  return best;
}

// max sum c_j f_j s.t. |f_j| <= 1, |f_j - f_k| <= |v_j - v_k|
double lp_bl(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  const Signed s = merge(mu, nu);
  const int m = static_cast<int>(s.c.size());
  LinearProgram lp(m);
  for (int j = 0; j < m; ++j) lp.set_free(j);
  lp.maximize(Eigen::Map<const Eigen::VectorXd>(s.c.data(), m));
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(j) = 1.0;
    lp.add_constraint(e, Relation::LessEqual, 1.0);
    lp.add_constraint(-e, Relation::LessEqual, 1.0);
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
      r(j) = 1.0;
      r(k) = -1.0;
      lp.add_constraint(r, Relation::LessEqual, (s.dirs[j] - s.dirs[k]).norm());
    }
  }
  const auto sol = lp.solve();
  EXPECT_EQ(sol.status, LpStatus::Optimal);
  return sol.objective;
}

DiscreteSphericalMeasure dirac(const Vec& n, double w = 1.0, int dim = 2) {
  return DiscreteSphericalMeasure(dim, {{n, w}});
}

std::vector<ProbeBody> fixed_probes(Rng& rng, int dim) {
  std::vector<ProbeBody> probes{ProbeBody::unit_ball()};
  for (int i = 0; i < 20; ++i) probes.push_back(ProbeBody::segment(rng.in_ball(dim, 1.0), dim));
  for (int i = 0; i < 10; ++i) {
    std::vector<Vec> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(rng.in_ball(dim, 1.0));
    probes.push_back(ProbeBody::hull(pts));
  }
  return probes;
}

}  // namespace

TEST(TotalVariation, Examples) {
  const auto sq = surface_area_measure(unit_square());
  EXPECT_DOUBLE_EQ(d_tv(sq, sq), 0.0);
  EXPECT_DOUBLE_EQ(d_tv(dirac(vec2(1, 0)), dirac(vec2(0, 1))), 1.0);
  const DiscreteSphericalMeasure heavy(2, {{vec2(1, 0), 1.2}, {vec2(0, 1), 1}, {vec2(-1, 0), 1}, {vec2(0, -1), 1}});
  EXPECT_NEAR(d_tv(heavy, sq), 0.2, 1e-15);
}

TEST(TotalVariation, MatchesSubsetEnumeration) {
  Rng rng(31);
  for (int dim : {2, 3})
    for (int i = 0; i < 100; ++i) {
      const auto mu = random_measure(rng, dim, 6);
      const auto nu = random_measure(rng, dim, 6, directions_of(mu));
      EXPECT_NEAR(d_tv(mu, nu), brute_tv(mu, nu), 1e-12);
    }
}

TEST(BoundedLipschitz, Examples) {
  const auto sq = surface_area_measure(unit_square());
  EXPECT_NEAR(d_bl(sq, sq), 0.0, 1e-15);
  EXPECT_NEAR(d_bl(dirac(vec2(1, 0)), dirac(vec2(0, 1))), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d_bl(dirac(vec2(1, 0), 2.0), dirac(vec2(1, 0))), 1.0, 1e-12);
}

TEST(BoundedLipschitz, MatchesPairwiseLp) {
  Rng rng(32);
  for (int dim : {2, 3})
    for (int i = 0; i < 60; ++i) {
      const auto mu = random_measure(rng, dim, 7);
      const auto nu = random_measure(rng, dim, 7, directions_of(mu));
      EXPECT_NEAR(d_bl(mu, nu), lp_bl(mu, nu), 1e-9);
    }
}

TEST(BoundedLipschitz, CoarsensLargeMeasures) {
  Rng rng(33);
  std::vector<Atom> a, b;
  for (int i = 0; i < 2500; ++i) {
    a.push_back({rng.on_sphere(2), 1.0 / 2500});
    b.push_back({rng.on_sphere(2), 1.0 / 2500});
  }
  const DiscreteSphericalMeasure mu(2, a), nu(2, b);
  const auto bl = d_bl_detail(mu, nu);
  EXPECT_GT(bl.tolerance, 0.0);
  EXPECT_LE(bl.tolerance, 1e-3 * 2.0);
  EXPECT_LE(bl.value, 2.0 * d_tv(mu, nu) + bl.tolerance);
}

TEST(ConvexDualLower, Examples) {
  Rng rng(34);
  const auto sq = surface_area_measure(unit_square());
  EXPECT_DOUBLE_EQ(d_c_lower(sq, sq, fixed_probes(rng, 2)).value, 0.0);
  const auto seg = ProbeBody::segment(vec2(1, 0), 2);
  EXPECT_DOUBLE_EQ(d_c_lower(dirac(vec2(1, 0)), dirac(vec2(-1, 0)), {seg}).value, 1.0);
  EXPECT_DOUBLE_EQ(d_c_lower(dirac(vec2(1, 0), 2.0), dirac(vec2(1, 0)), {ProbeBody::unit_ball()}).value, 1.0);
}

TEST(ConvexDualLower, AdaptiveFindsSegmentWitness) {
  const auto r = d_c_lower(dirac(vec2(1, 0)), dirac(vec2(-1, 0)));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_EQ(r.witness.kind(), ProbeBody::Kind::Segment);
}

TEST(ConvexDualUpper, Examples) {
  const auto sq = surface_area_measure(unit_square());
  EXPECT_NEAR(d_c_upper(sq, sq), 0.0, 1e-12);
  EXPECT_LE(d_c_upper(dirac(vec2(1, 0)), dirac(vec2(0, 1))), std::sqrt(2.0) + 1e-12);
}

TEST(ConvexDualUpper, SandwichConsistency) {
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const int dim = i % 2 ? 2 : 3;
    const auto mu = random_measure(rng, dim, 6);
    const auto nu = random_measure(rng, dim, 6, directions_of(mu));
    const auto s = d_c_sandwich(mu, nu);
    EXPECT_LE(s.lower, s.upper + 1e-12);
    EXPECT_LE(d_c_lower(mu, nu).value, d_bl(mu, nu) + 1e-9);
  }
}

TEST(BronshteinNet, CoarseNetIsSingleBody) { EXPECT_EQ(bronshtein_net(2, 1.0).size(), 1u); }

TEST(BronshteinNet, GrowthExponentAndContainment) {
  std::vector<double> x, y;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto& net = bronshtein_net(2, eps);
    for (const auto& body : net) EXPECT_LE(body.circumradius(), 1.0 + 1e-12);
    x.push_back(std::log(1.0 / eps));
    y.push_back(std::log(std::log2(static_cast<double>(net.size()))));
  }
  const double mx = (x[0] + x[1] + x[2]) / 3, my = (y[0] + y[1] + y[2]) / 3;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  EXPECT_GE(slope, 0.3);
  EXPECT_LE(slope, 0.8);
}

TEST(DistanceOrdering, RandomPairs) {
  Rng rng(36);
  for (int i = 0; i < 200; ++i) {
    const int dim = 2 + static_cast<int>(rng.below(2));
    const auto mu = random_measure(rng, dim, 8);
    const auto nu = random_measure(rng, dim, 8, directions_of(mu));
    const double lower = d_c_lower(mu, nu).value;
    const double bl = d_bl(mu, nu);
    EXPECT_LE(lower, bl + 1e-9);
    EXPECT_LE(bl, 2.0 * d_tv(mu, nu) + 1e-9);
  }
}

TEST(Pseudometric, SymmetryAndTriangle) {
  Rng rng(37);
  for (int dim : {2, 3}) {
    const auto probes = fixed_probes(rng, dim);
    for (int i = 0; i < 40; ++i) {
      const auto a = random_measure(rng, dim, 6);
      const auto b = random_measure(rng, dim, 6, directions_of(a));
      const auto c = random_measure(rng, dim, 6, directions_of(b));
      EXPECT_EQ(d_tv(a, b), d_tv(b, a));
      EXPECT_NEAR(d_bl(a, b), d_bl(b, a), 1e-12);
      EXPECT_EQ(d_c_lower(a, b, probes).value, d_c_lower(b, a, probes).value);
      EXPECT_LE(d_tv(a, c), d_tv(a, b) + d_tv(b, c) + 1e-9);
      EXPECT_LE(d_bl(a, c), d_bl(a, b) + d_bl(b, c) + 1e-9);
      EXPECT_LE(d_c_lower(a, c, probes).value, d_c_lower(a, b, probes).value + d_c_lower(b, c, probes).value + 1e-9);
    }
  }
}

TEST(MetricOnSurfaceAreaMeasures, TranslatesAreIdentical) {
  Rng rng(38);
  for (int i = 0; i < 20; ++i) {
    const auto K = i % 2 ? random_polygon(rng, 3, 20, 0.5, 2.0) : random_polytope_3d(rng, 6, 20);
    const auto mu = surface_area_measure(K);
    const auto nu = surface_area_measure(K.translated(rng.in_ball(K.dim(), 2.0)));
    EXPECT_EQ(d_c_lower(mu, nu).value, 0.0);
    EXPECT_EQ(d_bl(mu, nu), 0.0);
  }
}

TEST(MetricOnSurfaceAreaMeasures, NonTranslatesAreSeparated) {
  Rng rng(39);
  for (int i = 0; i < 100; ++i) {
    const int dim = i % 2 ? 2 : 3;
    const auto K = dim == 2 ? random_polygon(rng, 3, 12, 0.5, 2.0) : random_polytope_3d(rng, 6, 14);
    const auto L = dim == 2 ? random_polygon(rng, 3, 12, 0.5, 2.0) : random_polytope_3d(rng, 6, 14);
    const auto mu = surface_area_measure(K);
    const auto raw = surface_area_measure(L);
    const auto nu = raw.scaled(mu.total_mass() / raw.total_mass());
    EXPECT_GT(d_c_lower(mu, nu).value, 0.0);
  }
}

TEST(ScaleCovariance, AllDistances) {
  Rng rng(40);
  for (double s : {0.5, 2.0}) {
    for (int i = 0; i < 20; ++i) {
      const int dim = i % 2 ? 2 : 3;
      const auto mu = random_measure(rng, dim, 6);
      const auto nu = random_measure(rng, dim, 6, directions_of(mu));
      const auto ms = mu.scaled(s), ns = nu.scaled(s);
      EXPECT_NEAR(d_tv(ms, ns), s * d_tv(mu, nu), 1e-12);
      EXPECT_NEAR(d_bl(ms, ns), s * d_bl(mu, nu), 1e-9);
      EXPECT_NEAR(d_c_lower(ms, ns).value, s * d_c_lower(mu, nu).value, 1e-9);
    }
  }
}
