#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minkprobe/measure.hpp"

namespace minkprobe {

// Merged atom set of mu - nu: directions v_j with signed weights c_j.
struct SignedAtoms {
  int dim = 2;
  std::vector<Vec> directions;
  std::vector<double> weights;
  double mass_mu = 0.0;
  double mass_nu = 0.0;
};

// Atoms whose directions are within `tol` are merged.
SignedAtoms signed_difference(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                              double tol = 1e-12);

double d_tv(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);

struct BoundedLipschitz {
  double value = 0.0;
  double tolerance = 0.0;  // > 0 only when atoms were coarsened
  int coarsened_atoms_mu = 0;
  int coarsened_atoms_nu = 0;
};

// Atom cap per measure for the exact program; larger measures are binned.
inline constexpr std::size_t kBoundedLipschitzAtomCap = 2000;

// sup of sum c_j f_j over f with |f| <= 1 and |f_j - f_k| <= |v_j - v_k|,
// solved through its dual, a transportation problem with a ground node.
BoundedLipschitz d_bl_detail(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);
double d_bl(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);

// Convex body inside B(0,1) used as a test function.
class ProbeBody {
 public:
  enum class Kind { Ball, Segment, Hull };

  static ProbeBody unit_ball();
  // Segment [0, y], |y| <= 1: h(v) = max(<v, y>, 0).
  static ProbeBody segment(const Vec& y, int dim);
  // Convex hull of points inside B(0,1).
  static ProbeBody hull(std::vector<Vec> points);
  // Polytope moved to its circumcenter and shrunk into B(0,1) if needed.
  static ProbeBody from_polytope(const Polytope& body);

  Kind kind() const { return kind_; }
  const std::vector<Vec>& points() const { return points_; }
  double support(const Vec& v) const;
  double circumradius() const;  // max |p| over generating points (1 for the ball)
  std::string describe() const;

 private:
  Kind kind_ = Kind::Ball;
  int dim_ = 3;
  std::vector<Vec> points_;
};

// |sum_j c_j h_P(v_j)|
double probe_value(const SignedAtoms& diff, const ProbeBody& probe);

struct ProbeBound {
  double value = 0.0;
  ProbeBody witness = ProbeBody::unit_ball();
  int net_directions = 0;  // segment directions used by the adaptive default
};

// Maximum over the given probes.
ProbeBound d_c_lower(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                     const std::vector<ProbeBody>& probes);

// Default family: unit ball plus segments over a direction net that is refined
// (1024 -> 16384 circle points in 2D, icosphere level 4 -> 6 in 3D) until the
// bound moves by less than 1e-4 * (mass_mu + mass_nu).
ProbeBound d_c_lower(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);
// Default family plus user bodies (already inside B(0,1)).
ProbeBound d_c_lower_with(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                          const std::vector<ProbeBody>& extra);

// Heuristic epsilon-net of convex bodies in B(0,1): hulls of random points on
// a grid of pitch epsilon, thinned by greedy farthest-point selection in the
// support-function sup distance. For epsilon >= 1 the single body {0} is
// returned. Cached per (dim, epsilon, seed).
const std::vector<ProbeBody>& bronshtein_net(int dim, double epsilon, std::uint64_t seed = 0);

struct DistanceSandwich {
  double lower = 0.0;
  double upper = 0.0;
  ProbeBody lower_witness = ProbeBody::unit_ball();
  std::string upper_certificate;  // "d_bl" or "net"
  bool heuristic = false;         // upper comes from the uncertified net term
};

// lower: default probes plus the net bodies. upper: min(d_bl, net term), the net
// term being max_net |sum c h_P| + epsilon (mass_mu + mass_nu); it is ignored
// when it falls below the lower bound.
DistanceSandwich d_c_sandwich(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                              double net_epsilon = 0.1);
double d_c_upper(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu, double net_epsilon = 0.1);

}  // namespace minkprobe
