#include "minkprobe/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "minkprobe/errors.hpp"
#include "minkprobe/numeric.hpp"

namespace minkprobe {

DiscreteSphericalMeasure::DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::InvalidArgument, "measure dimension must be 2 or 3");
  atoms_.reserve(atoms.size());
  for (auto& a : atoms) {
    if (!std::isfinite(a.w) || a.w < 0.0) throw Error(ErrorCode::InvalidArgument, "atom weights must be finite and non-negative");
    if (dim == 2 && a.n.z() != 0.0) throw Error(ErrorCode::InvalidArgument, "planar atom with non-zero z component");
    const double len = a.n.norm();
    if (!std::isfinite(len) || std::abs(len - 1.0) > 1e-6)
      throw Error(ErrorCode::InvalidArgument, "atom direction is not a unit vector");
    if (a.w == 0.0) continue;
    if (len != 1.0) a.n /= len;
    atoms_.push_back(a);
  }
}

double DiscreteSphericalMeasure::total_mass() const {
  CompensatedSum s;
  for (const auto& a : atoms_) s.add(a.w);
  return s.value();
}

Vec DiscreteSphericalMeasure::mean() const {
  CompensatedVecSum s;
  for (const auto& a : atoms_) s.add(a.w * a.n);
  return s.value();
}

DiscreteSphericalMeasure DiscreteSphericalMeasure::scaled(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  DiscreteSphericalMeasure out = *this;
  for (auto& a : out.atoms_) a.w *= s;
  return out;
}

DiscreteSphericalMeasure DiscreteSphericalMeasure::canonicalized(double tol) const {
  // Sort by x so that only a window needs scanning.
  std::vector<int> order(atoms_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return atoms_[a].n.x() < atoms_[b].n.x(); });
  std::vector<int> target(atoms_.size(), -1);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const int i = order[p];
    int best = i;
    for (std::size_t q = p; q-- > 0;) {
      const int j = order[q];
      if (atoms_[i].n.x() - atoms_[j].n.x() > tol) break;
      if ((atoms_[i].n - atoms_[j].n).norm() <= tol) best = std::min(best, target[j]);
    }
    target[i] = best;
  }
  std::vector<Atom> merged;
  std::vector<int> slot(atoms_.size(), -1);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const int t = target[i];
    if (slot[t] < 0) {
      slot[t] = static_cast<int>(merged.size());
      merged.push_back(atoms_[t]);
      merged.back().w = 0.0;
    }
    merged[slot[t]].w += atoms_[i].w;
  }
  return DiscreteSphericalMeasure(dim_, std::move(merged));
}

double rotundity_objective(const DiscreteSphericalMeasure& mu, const Vec& y) {
  CompensatedSum s;
  for (const auto& a : mu.atoms()) {
    const double d = y.dot(a.n);
    if (d > 0.0) s.add(a.w * d);
  }
  return s.value();
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Inside the circular half-open arc [start, end).
bool in_arc(double theta, double start, double end) {
  return start < end ? (theta >= start && theta < end) : (theta >= start || theta < end);
}

Rotundity rotundity_2d(const DiscreteSphericalMeasure& mu) {
  const auto& atoms = mu.atoms();
  const std::size_t m = atoms.size();
  struct Event {
    double angle;
    int atom;
    bool start;
  };
  std::vector<Event> events;
  std::vector<double> start(m), end(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double phi = planar_angle(atoms[i].n);
    start[i] = wrap_angle(phi - std::numbers::pi / 2);
    end[i] = wrap_angle(phi + std::numbers::pi / 2);
    events.push_back({start[i], static_cast<int>(i), true});
    events.push_back({end[i], static_cast<int>(i), false});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.angle < b.angle; });

  // State on the first non-empty interval after the smallest event angle.
  const double e0 = events.front().angle;
  std::size_t k = 0;
  while (k < events.size() && events[k].angle == e0) ++k;
  const double e1 = k < events.size() ? events[k].angle : e0 + kTwoPi;
  const double probe = 0.5 * (e0 + e1);
  Vec S = Vec::Zero();
  for (std::size_t i = 0; i < m; ++i)
    if (in_arc(probe, start[i], end[i])) S += atoms[i].w * atoms[i].n;

  struct Candidate {
    double value;
    double angle;
  };
  std::vector<Candidate> cands;
  auto dir = [](double a) { return vec2(std::cos(a), std::sin(a)); };
  cands.push_back({dir(e0).dot(S), e0});
  double lo = e0;
  while (true) {
    const bool wrapped = k >= events.size();
    const double hi = wrapped ? e0 + kTwoPi : events[k].angle;
    if (S.squaredNorm() > 0.0) {
      double a = planar_angle(-S);
      if (a < lo) a += kTwoPi;
      if (a > lo && a < hi) cands.push_back({-S.norm(), wrap_angle(a)});
    }
    if (wrapped) break;
    cands.push_back({dir(hi).dot(S), hi});
    while (k < events.size() && events[k].angle == hi) {
      const auto& ev = events[k];
      const Vec c = atoms[ev.atom].w * atoms[ev.atom].n;
      if (ev.start)
        S += c;
      else
        S -= c;
      ++k;
    }
    lo = hi;
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  Rotundity best;
  best.value = std::numeric_limits<double>::infinity();
  const std::size_t check = std::min<std::size_t>(cands.size(), 16);
  for (std::size_t c = 0; c < check; ++c) {
    const Vec y = dir(cands[c].angle);
    const double f = rotundity_objective(mu, y);
    if (f < best.value) {
      best.value = f;
      best.direction = y;
    }
  }
  best.tolerance = 0.0;
  return best;
}

Vec tangent_basis(const Vec& y, Vec& t2) {
  Vec a = std::abs(y.x()) < 0.9 ? Vec::UnitX() : Vec::UnitY();
  Vec t1 = (a - a.dot(y) * y).normalized();
  t2 = y.cross(t1);
  return t1;
}

Rotundity rotundity_3d(const DiscreteSphericalMeasure& mu) {
  constexpr int kLevel = 5;
  const auto& net = icosphere_directions(kLevel);
  std::vector<std::pair<double, int>> values(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) values[i] = {rotundity_objective(mu, net[i]), static_cast<int>(i)};
  std::partial_sort(values.begin(), values.begin() + 4, values.end());

  Rotundity best;
  best.value = values.front().first;
  best.direction = net[values.front().second];
  for (int s = 0; s < 4; ++s) {
    Vec y = net[values[s].second];
    double f = values[s].first;
    double step = icosphere_covering_angle(kLevel);
    while (step > 1e-12) {
      // Local linear model: on the current active set f(y) = <y, S>.
      Vec S = Vec::Zero();
      for (const auto& a : mu.atoms())
        if (y.dot(a.n) > 0.0) S += a.w * a.n;
      bool moved = false;
      if (S.norm() > 0.0) {
        const Vec z = -S.normalized();
        const double fz = rotundity_objective(mu, z);
        if (fz < f) {
          y = z;
          f = fz;
          moved = true;
        }
      }
      Vec t2;
      const Vec t1 = tangent_basis(y, t2);
      const double c = std::sqrt(0.5);
      const Vec moves[8] = {t1, -t1, t2, -t2, c * (t1 + t2), c * (t1 - t2), c * (-t1 + t2), c * (-t1 - t2)};
      for (const auto& d : moves) {
        const Vec z = (std::cos(step) * y + std::sin(step) * d).normalized();
        const double fz = rotundity_objective(mu, z);
        if (fz < f) {
          y = z;
          f = fz;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (f < best.value) {
      best.value = f;
      best.direction = y;
    }
  }
  best.tolerance = 2.0 * icosphere_covering_angle(kLevel) * mu.total_mass();
  return best;
}

}  // namespace

Rotundity rotundity(const DiscreteSphericalMeasure& mu) {
  if (mu.empty()) return {};
  return mu.dim() == 2 ? rotundity_2d(mu) : rotundity_3d(mu);
}

MeasureSummary summarize(const DiscreteSphericalMeasure& mu) {
  MeasureSummary s;
  s.total_mass = mu.total_mass();
  s.mean = mu.mean();
  const Rotundity r = rotundity(mu);
  s.rotundity = r.value;
  s.rotundity_tolerance = r.tolerance;
  return s;
}

bool support_in_hyperplane(const DiscreteSphericalMeasure& mu, double rel_tol) {
  if (mu.empty()) return true;
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (const auto& a : mu.atoms()) M += a.w * a.n * a.n.transpose();
  const int d = mu.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.topLeftCorner(d, d));
  return es.eigenvalues()(0) <= rel_tol * mu.total_mass();
}

DiscreteSphericalMeasure surface_area_measure(const Polytope& body) {
  std::vector<Atom> atoms;
  for (const auto& f : facet_data(body)) atoms.push_back({f.normal, f.area});
  return DiscreteSphericalMeasure(body.dim(), std::move(atoms));
}

}  // namespace minkprobe
