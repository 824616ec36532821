#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "minkprobe/errors.hpp"
#include "minkprobe/halfspace.hpp"
#include "minkprobe/minkowski.hpp"

namespace minkprobe {

namespace {

struct Evaluation {
  FacetPolygons facets;
  bool ok = false;
};

Evaluation evaluate(std::span<const Vec> normals, const Eigen::VectorXd& h) {
  Evaluation e;
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (!(h(i) > 0.0)) return e;
  e.facets = clip_facets(3, normals, std::span<const double>(h.data(), static_cast<std::size_t>(h.size())));
  e.ok = true;
  return e;
}

Eigen::VectorXd areas_of(const FacetPolygons& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.areas.data(), static_cast<Eigen::Index>(f.areas.size()));
}

// Relative L-infinity gap between the areas and the best multiple of w.
double kkt_residual(const Eigen::VectorXd& areas, const Eigen::VectorXd& w, double& t) {
  t = areas.dot(w) / w.dot(w);
  if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
  return ((areas - t * w).array().abs() / (t * w.array())).maxCoeff();
}

Vec interior_point(const FacetPolygons& f) {
  Vec sum = Vec::Zero();
  int count = 0;
  for (const auto& poly : f.polygons) {
    for (const auto& p : poly) {
      sum += p;
      ++count;
    }
  }
  return count ? Vec(sum / count) : Vec(Vec::Zero());
}

// Jacobian of the facet areas with respect to the offsets:
// dA_i/dh_j = l_ij / sin(theta_ij), dA_i/dh_i = -sum_j l_ij cot(theta_ij).
Eigen::MatrixXd area_jacobian(std::span<const Vec> normals, const FacetPolygons& f) {
  const int m = static_cast<int>(normals.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& poly = f.polygons[i];
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const int j = f.edge_planes[i][k];
      if (j < 0 || j == i) continue;
      const double len = (poly[(k + 1) % poly.size()] - poly[k]).norm();
      const double c = normals[i].dot(normals[j]);
      const double sn = normals[i].cross(normals[j]).norm();
      if (sn < 1e-14) continue;
      H(i, j) += len / sn;
      H(i, i) -= len * c / sn;
    }
  }
  return 0.5 * (H + H.transpose());
}

// Maximizer of the quadratic model of the volume on {w.d = gap} with the
// translation modes removed. Inactive facets get a unit curvature so that
// their offsets follow the gradient.
Eigen::VectorXd newton_direction(std::span<const Vec> normals, const FacetPolygons& f, const Eigen::VectorXd& areas,
                                 const Eigen::VectorXd& w, double gap) {
  const int m = static_cast<int>(normals.size());
  Eigen::MatrixXd H = area_jacobian(normals, f);
  const double scale = std::max(1e-300, H.diagonal().cwiseAbs().maxCoeff());
  for (int i = 0; i < m; ++i)
    if (areas(i) <= kInactiveFacetArea) H(i, i) = -scale;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 4, m + 4);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 4);
  M.topLeftCorner(m, m) = H;
  for (int i = 0; i < m; ++i) {
    M(i, m) = M(m, i) = w(i);
    for (int k = 0; k < 3; ++k) M(i, m + 1 + k) = M(m + 1 + k, i) = normals[i](k);
  }
  rhs.head(m) = -areas;
  rhs(m) = gap;
  const Eigen::VectorXd sol = M.fullPivLu().solve(rhs);
  return sol.head(m);
}

// Facets present before a step must survive it: the target measure has all
// atoms active, and the volume is smooth only while the facet set is fixed.
bool keeps_active(const FacetPolygons& before, const FacetPolygons& after) {
  for (std::size_t i = 0; i < before.areas.size(); ++i)
    if (before.areas[i] > kInactiveFacetArea && !(after.areas[i] > kInactiveFacetArea)) return false;
  return true;
}

}  // namespace

ReconstructionReport reconstruct_3d(const DiscreteSphericalMeasure& input, const SolverOptions& options) {
  if (input.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "reconstruct_3d needs a measure on S^2");
  if (input.empty()) throw Error(ErrorCode::EmptyMeasure, "nothing to reconstruct");
  const DiscreteSphericalMeasure mu = input.canonicalized(1e-9);
  const double mass = mu.total_mass();
  if (mu.mean().norm() > 1e-7 * mass) throw Error(ErrorCode::NotZeroMean, "measure mean is not zero");
  if (support_in_hyperplane(mu)) throw Error(ErrorCode::DegenerateSupport, "atoms lie in a plane");

  const int m = static_cast<int>(mu.size());
  std::vector<Vec> normals;
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) {
    normals.push_back(mu.atoms()[i].n);
    w(i) = mu.atoms()[i].w / mass;
  }
  const double ww = w.dot(w);
  auto project = [&](Eigen::VectorXd& h) { h += ((3.0 - w.dot(h)) / ww) * w; };

  Eigen::VectorXd h = Eigen::VectorXd::Ones(m) * (3.0 / w.sum());
  Evaluation cur = evaluate(normals, h);

  ReconstructionReport report;
  double t = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_h = h;
  int iter = 0;
  for (;; ++iter) {
    const Eigen::VectorXd areas = areas_of(cur.facets);
    const double residual = kkt_residual(areas, w, t);
    if (residual < best_residual) {
      best_residual = residual;
      best_h = h;
    }
    if (options.record_volumes) report.volume_trace.push_back(cur.facets.volume);
    if (residual <= options.tol || iter >= options.max_iterations) break;

    const Eigen::VectorXd gradient = areas - (areas.dot(w) / ww) * w;
    Eigen::VectorXd dir = newton_direction(normals, cur.facets, areas, w, 3.0 - w.dot(h));
    double slope = areas.dot(dir);
    if (!dir.allFinite() || !(slope > 0.0)) {
      dir = gradient;
      slope = gradient.squaredNorm();
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    Evaluation next;
    for (int halving = 0; halving <= options.max_halvings; ++halving, step *= 0.5) {
      trial = h + step * dir;
      next = evaluate(normals, trial);
      if (next.ok && next.facets.volume >= cur.facets.volume + 1e-4 * step * slope &&
          keeps_active(cur.facets, next.facets)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    // Recenter on an interior point so that all offsets stay positive.
    const Vec c = interior_point(next.facets);
    for (int i = 0; i < m; ++i) trial(i) -= normals[i].dot(c);
    project(trial);
    h = trial;
    cur = evaluate(normals, h);
    if (!cur.ok) throw Error(ErrorCode::InvalidPolytope, "solver lost the interior point");
  }

  // Rescale so the areas match the (normalized) weights, then restore mass.
  Evaluation final_eval = evaluate(normals, best_h);
  kkt_residual(areas_of(final_eval.facets), w, t);
  const double s = std::sqrt(mass / t);
  const Eigen::VectorXd scaled_h = best_h * s;
  const FacetPolygons facets =
      clip_facets(3, normals, std::span<const double>(scaled_h.data(), static_cast<std::size_t>(m)));
  report.body = assemble_polytope(3, normals, facets);
  double residual = 0.0;
  for (int i = 0; i < m; ++i)
    residual = std::max(residual, std::abs(facets.areas[i] - mu.atoms()[i].w) / std::max(mu.atoms()[i].w, 1e-300));
  report.residual = residual;
  report.iterations = iter;
  report.converged = residual <= options.tol;
  return report;
}

}  // namespace minkprobe
