#pragma once

#include <vector>

#include "minkprobe/measure.hpp"
#include "minkprobe/polytope.hpp"

namespace minkprobe {

struct ReconstructionReport {
  Polytope body;
  double residual = 0.0;  // max_i |area_i - w_i| / w_i
  int iterations = 0;
  bool converged = false;
  std::vector<double> volume_trace;  // 3D only, when requested
};

// Edge chaining in angular order; exact up to rounding.
ReconstructionReport reconstruct_2d(const DiscreteSphericalMeasure& mu);

struct SolverOptions {
  double tol = 1e-6;
  int max_iterations = 10000;
  int max_halvings = 60;
  bool record_volumes = false;
};

// Maximizes Vol(P(h)) subject to sum w_i h_i = 3 by line-search ascent (the
// gradient of the volume is the vector of facet areas; steps follow the
// quadratic model of the volume when it gives an ascent direction), then
// rescales so that areas equal the weights. Returns the best iterate with
// converged == false if the iteration budget runs out.
ReconstructionReport reconstruct_3d(const DiscreteSphericalMeasure& mu, const SolverOptions& options = {});

ReconstructionReport reconstruct(const DiscreteSphericalMeasure& mu, const SolverOptions& options = {});

// Facets are matched to the nearest atom within 1e-6 rad; unmatched facets
// and atoms count as a relative error of 1.
double verify_reconstruction(const DiscreteSphericalMeasure& mu, const Polytope& body);

}  // namespace minkprobe
