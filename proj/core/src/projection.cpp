#include <cmath>

#include "minkprobe/errors.hpp"
#include "minkprobe/lp.hpp"
#include "minkprobe/measure.hpp"
#include "minkprobe/numeric.hpp"

namespace minkprobe {

DiscreteSphericalMeasure uniform_measure(int dim) {
  const auto dirs = dim == 2 ? circle_directions(4096) : icosphere_directions(5);
  const double w = 1.0 / static_cast<double>(dirs.size());
  std::vector<Atom> atoms;
  for (const auto& d : dirs) atoms.push_back({d, w});
  return DiscreteSphericalMeasure(dim, std::move(atoms));
}

DiscreteSphericalMeasure zero_mean_project_radial(const DiscreteSphericalMeasure& nu) {
  const double mass = nu.total_mass();
  if (std::abs(mass - 1.0) > 1e-12)
    throw Error(ErrorCode::NotProbability, "total mass " + std::to_string(mass) + " is not 1");
  const Vec m = nu.mean();
  if (m.norm() >= 1.0 - 1e-12) return uniform_measure(nu.dim());

  std::vector<Atom> atoms;
  CompensatedSum norm;
  for (const auto& a : nu.atoms()) {
    const Vec x = a.n - m;
    const double len = x.norm();
    atoms.push_back({x / len, a.w * len});
    norm.add(a.w * len);
  }
  const double lambda = 1.0 / norm.value();
  for (auto& a : atoms) a.w *= lambda;
  return DiscreteSphericalMeasure(nu.dim(), std::move(atoms));
}

TvProjection zero_mean_project_tv(const DiscreteSphericalMeasure& nu) {
  if (nu.empty()) throw Error(ErrorCode::EmptyMeasure, "cannot project an empty measure");
  const auto& atoms = nu.atoms();
  const int m = static_cast<int>(atoms.size());
  const int d = nu.dim();
  const Vec mean = nu.mean();

  // Variables: p_i (added weight), q_i (removed weight), q_i <= w_i.
  LinearProgram lp(2 * m);
  lp.minimize(Eigen::VectorXd::Ones(2 * m));
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(2 * m);
    for (int i = 0; i < m; ++i) {
      row(i) = atoms[i].n(k);
      row(m + i) = -atoms[i].n(k);
    }
    lp.add_constraint(std::move(row), Relation::Equal, -mean(k));
  }
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(2 * m);
    row(m + i) = 1.0;
    lp.add_constraint(std::move(row), Relation::LessEqual, atoms[i].w);
  }
  const LpSolution sol = lp.solve();
  const double mass = nu.total_mass();
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::DegenerateSupport, "no zero-mean measure on these atoms");

  TvProjection out;
  std::vector<Atom> kept;
  CompensatedSum objective;
  bool all_zero = true;
  for (int i = 0; i < m; ++i) {
    double b = atoms[i].w + sol.x(i) - sol.x(m + i);
    if (b < 1e-15 * mass) b = 0.0;
    out.weights.push_back(b);
    objective.add(std::abs(atoms[i].w - b));
    if (b > 1e-12 * mass) all_zero = false;
    if (b > 0.0) kept.push_back({atoms[i].n, b});
  }
  if (all_zero) throw Error(ErrorCode::DegenerateSupport, "atoms lie in an open half-space; only the zero measure has zero mean");
  out.objective = objective.value();
  out.measure = DiscreteSphericalMeasure(d, std::move(kept));
  return out;
}

}  // namespace minkprobe
