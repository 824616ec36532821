#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "minkprobe/polytope.hpp"
#include "minkprobe/vector.hpp"

namespace minkprobe {

struct Atom {
  Vec n;
  double w = 0.0;
};

// Finite positive measure on S^{dim-1}: weighted Dirac atoms at unit directions.
// Zero-weight atoms are dropped on construction; negative weights and
// non-unit directions are rejected (directions within 1e-6 of unit length
// are renormalized).
class DiscreteSphericalMeasure {
 public:
  DiscreteSphericalMeasure() = default;
  DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  double total_mass() const;
  Vec mean() const;

  DiscreteSphericalMeasure scaled(double s) const;
  // Merges atoms whose directions are within `tol` (Euclidean) of an earlier
  // atom; first-appearance order is kept.
  DiscreteSphericalMeasure canonicalized(double tol = 1e-12) const;

 private:
  int dim_ = 2;
  std::vector<Atom> atoms_;
};

struct Rotundity {
  double value = 0.0;
  Vec direction = Vec::UnitX();  // minimizing y
  double tolerance = 0.0;        // true minimum lies in [value - tolerance, value]
};

struct MeasureSummary {
  double total_mass = 0.0;
  Vec mean = Vec::Zero();
  double rotundity = 0.0;
  double rotundity_tolerance = 0.0;
};

// f(y) = sum_i w_i max(<y, n_i>, 0)
double rotundity_objective(const DiscreteSphericalMeasure& mu, const Vec& y);

// min over unit y of f(y). Exact in 2D (critical-angle sweep); icosphere net
// plus local descent in 3D.
Rotundity rotundity(const DiscreteSphericalMeasure& mu);

MeasureSummary summarize(const DiscreteSphericalMeasure& mu);

// True when the atoms lie in a hyperplane through the origin (smallest
// eigenvalue of sum w n n^T at most rel_tol * mass).
bool support_in_hyperplane(const DiscreteSphericalMeasure& mu, double rel_tol = 1e-12);

DiscreteSphericalMeasure surface_area_measure(const Polytope& body);

// N i.i.d. normals: facet chosen with probability proportional to area, then
// (if noise_radius > 0) a uniform vector from B(0, noise_radius) is added and
// the result renormalized.
std::vector<Vec> sample_normals(const Polytope& body, std::size_t n, std::uint64_t seed, double noise_radius = 0.0);

// (1/N) sum of Dirac masses; exact duplicates are merged.
DiscreteSphericalMeasure empirical_measure(int dim, std::span<const Vec> normals);

// Radial zero-mean projection of a probability measure:
// atoms move to (x_i - m)/|x_i - m| with weights lambda |x_i - m| w_i.
DiscreteSphericalMeasure zero_mean_project_radial(const DiscreteSphericalMeasure& nu);

// Uniform probability measure discretized by 4096 (2D) / 10242 (3D) atoms.
DiscreteSphericalMeasure uniform_measure(int dim);

struct TvProjection {
  DiscreteSphericalMeasure measure;  // zero-weight atoms dropped
  std::vector<double> weights;       // per input atom, same order
  double objective = 0.0;            // sum |w_i - b_i|
};

// Closest zero-mean measure on the same atoms in total variation (LP).
TvProjection zero_mean_project_tv(const DiscreteSphericalMeasure& nu);

}  // namespace minkprobe
