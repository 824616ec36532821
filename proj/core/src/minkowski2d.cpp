#include <algorithm>
#include <cmath>

#include "minkprobe/errors.hpp"
#include "minkprobe/halfspace.hpp"
#include "minkprobe/minkowski.hpp"

namespace minkprobe {

ReconstructionReport reconstruct_2d(const DiscreteSphericalMeasure& mu) {
  if (mu.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "reconstruct_2d needs a measure on S^1");
  if (mu.empty()) throw Error(ErrorCode::EmptyMeasure, "nothing to reconstruct");
  const double mass = mu.total_mass();
  const Vec mean = mu.mean();
  if (mean.norm() > 1e-9 * mass) throw Error(ErrorCode::NotZeroMean, "measure mean is not zero");
  if (support_in_hyperplane(mu)) throw Error(ErrorCode::DegenerateSupport, "atoms lie on a line");

  std::vector<Atom> atoms = mu.canonicalized().atoms();
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return planar_angle(a.n) < planar_angle(b.n); });
  Vec gap = Vec::Zero();
  for (const auto& a : atoms) gap += a.w * rot90(a.n);
  const double m = static_cast<double>(atoms.size());

  std::vector<Vec> vertices;
  Vec p = Vec::Zero();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    vertices.push_back(p);
    p += atoms[i].w * rot90(atoms[i].n) - gap / m;
  }
  ReconstructionReport report;
  report.body = Polytope::assemble(2, std::move(vertices), {});
  report.residual = verify_reconstruction(mu, report.body);
  report.converged = true;
  return report;
}

double verify_reconstruction(const DiscreteSphericalMeasure& mu, const Polytope& body) {
  if (mu.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "measure and body dimensions differ");
  const auto& atoms = mu.atoms();
  std::vector<double> matched(atoms.size(), 0.0);
  const double cos_tol = std::cos(1e-6);
  double residual = 0.0;
  for (const auto& f : facet_data(body)) {
    if (f.area <= kInactiveFacetArea) continue;
    int best = -1;
    double best_dot = -2.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double d = atoms[i].n.dot(f.normal);
      if (d > best_dot) {
        best_dot = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && best_dot >= cos_tol)
      matched[best] += f.area;
    else
      residual = std::max(residual, 1.0);
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    residual = std::max(residual, std::abs(matched[i] - atoms[i].w) / std::max(atoms[i].w, 1e-300));
  return residual;
}

ReconstructionReport reconstruct(const DiscreteSphericalMeasure& mu, const SolverOptions& options) {
  return mu.dim() == 2 ? reconstruct_2d(mu) : reconstruct_3d(mu, options);
}

}  // namespace minkprobe
