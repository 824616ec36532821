#include "minkprobe/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "minkprobe/balls.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/numeric.hpp"
#include "minkprobe/transport.hpp"

namespace minkprobe {

namespace {

void require_same_dim(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  if (mu.dim() != nu.dim()) throw Error(ErrorCode::DimensionMismatch, "measures live on spheres of different dimension");
}

}  // namespace

SignedAtoms signed_difference(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu, double tol) {
  require_same_dim(mu, nu);
  SignedAtoms out;
  out.dim = mu.dim();
  out.mass_mu = mu.total_mass();
  out.mass_nu = nu.total_mass();

  struct Entry {
    Vec n;
    double w;
  };
  std::vector<Entry> all;
  for (const auto& a : mu.atoms()) all.push_back({a.n, a.w});
  for (const auto& a : nu.atoms()) all.push_back({a.n, -a.w});
  std::vector<int> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return all[a].n.x() < all[b].n.x(); });

  std::vector<int> group(all.size(), -1);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const int i = order[p];
    int g = i;
    for (std::size_t q = p; q-- > 0;) {
      const int j = order[q];
      if (all[i].n.x() - all[j].n.x() > tol) break;
      if ((all[i].n - all[j].n).norm() <= tol) g = std::min(g, group[j]);
    }
    group[i] = g;
  }
  std::vector<int> slot(all.size(), -1);
  std::vector<CompensatedSum> sums;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int g = group[i];
    if (slot[g] < 0) {
      slot[g] = static_cast<int>(out.directions.size());
      out.directions.push_back(all[g].n);
      sums.emplace_back();
    }
    sums[slot[g]].add(all[i].w);
  }
  std::vector<Vec> dirs;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    const double c = sums[j].value();
    if (c == 0.0) continue;
    dirs.push_back(out.directions[j]);
    out.weights.push_back(c);
  }
  out.directions = std::move(dirs);
  return out;
}

double d_tv(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  const SignedAtoms diff = signed_difference(mu, nu);
  CompensatedSum pos, neg;
  for (double c : diff.weights) {
    if (c > 0)
      pos.add(c);
    else
      neg.add(-c);
  }
  return std::max(pos.value(), neg.value());
}

namespace {

struct Coarsened {
  DiscreteSphericalMeasure measure;
  double radius = 0.0;  // max chordal displacement of any atom
};

Coarsened coarsen(const DiscreteSphericalMeasure& mu) {
  if (mu.size() <= kBoundedLipschitzAtomCap) return {mu, 0.0};
  if (mu.dim() == 2) {
    for (int bins = 1 << 16; bins >= 8; bins /= 2) {
      const double width = 2.0 * std::numbers::pi / bins;
      std::map<int, double> mass;
      for (const auto& a : mu.atoms()) {
        const int b = std::min(bins - 1, static_cast<int>(planar_angle(a.n) / width));
        mass[b] += a.w;
      }
      if (mass.size() > kBoundedLipschitzAtomCap) continue;
      std::vector<Atom> atoms;
      for (const auto& [b, w] : mass) {
        const double c = (b + 0.5) * width;
        atoms.push_back({vec2(std::cos(c), std::sin(c)), w});
      }
      return {DiscreteSphericalMeasure(2, std::move(atoms)), 2.0 * std::sin(width / 4.0)};
    }
  }
  for (int level = 5; level >= 0; --level) {
    const auto& net = icosphere_directions(level);
    std::map<int, double> mass;
    for (const auto& a : mu.atoms()) {
      int best = 0;
      double best_dot = -2.0;
      for (std::size_t k = 0; k < net.size(); ++k) {
        const double d = net[k].dot(a.n);
        if (d > best_dot) {
          best_dot = d;
          best = static_cast<int>(k);
        }
      }
      mass[best] += a.w;
    }
    if (mass.size() > kBoundedLipschitzAtomCap && level > 0) continue;
    std::vector<Atom> atoms;
    for (const auto& [k, w] : mass) atoms.push_back({net[k], w});
    const double angle = icosphere_covering_angle(level);
    return {DiscreteSphericalMeasure(3, std::move(atoms)), 2.0 * std::sin(angle / 2.0)};
  }
  return {mu, 0.0};
}

}  // namespace

BoundedLipschitz d_bl_detail(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  require_same_dim(mu, nu);
  const Coarsened cm = coarsen(mu);
  const Coarsened cn = coarsen(nu);
  const SignedAtoms diff = signed_difference(cm.measure, cn.measure);

  BoundedLipschitz out;
  out.coarsened_atoms_mu = cm.radius > 0 ? static_cast<int>(cm.measure.size()) : 0;
  out.coarsened_atoms_nu = cn.radius > 0 ? static_cast<int>(cn.measure.size()) : 0;
  out.tolerance = cm.radius * diff.mass_mu + cn.radius * diff.mass_nu;

  std::vector<int> pos, neg;
  CompensatedSum pos_mass, neg_mass;
  for (std::size_t j = 0; j < diff.weights.size(); ++j) {
    if (diff.weights[j] > 0) {
      pos.push_back(static_cast<int>(j));
      pos_mass.add(diff.weights[j]);
    } else {
      neg.push_back(static_cast<int>(j));
      neg_mass.add(-diff.weights[j]);
    }
  }
  if (pos.empty() && neg.empty()) return out;

  // Sources: positive atoms and a ground node; sinks: negative atoms and the
  // ground node. Moving mass costs the chordal distance, creating or
  // destroying it costs 1.
  const std::size_t ns = pos.size() + 1, nd = neg.size() + 1;
  std::vector<double> supply(ns), demand(nd);
  for (std::size_t i = 0; i < pos.size(); ++i) supply[i] = diff.weights[pos[i]];
  supply[pos.size()] = neg_mass.value();
  for (std::size_t k = 0; k < neg.size(); ++k) demand[k] = -diff.weights[neg[k]];
  demand[neg.size()] = pos_mass.value();

  Eigen::MatrixXd cost(ns, nd);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t k = 0; k < neg.size(); ++k)
      cost(i, k) = (diff.directions[pos[i]] - diff.directions[neg[k]]).norm();
    cost(i, neg.size()) = 1.0;
  }
  for (std::size_t k = 0; k < neg.size(); ++k) cost(pos.size(), k) = 1.0;
  cost(pos.size(), neg.size()) = 0.0;

  out.value = solve_transport(supply, demand, cost).cost;
  return out;
}

double d_bl(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  return d_bl_detail(mu, nu).value;
}

ProbeBody ProbeBody::unit_ball() { return ProbeBody(); }

ProbeBody ProbeBody::segment(const Vec& y, int dim) {
  if (y.norm() > 1.0 + 1e-12) throw Error(ErrorCode::InvalidArgument, "segment probe leaves the unit ball");
  ProbeBody p;
  p.kind_ = Kind::Segment;
  p.dim_ = dim;
  p.points_ = {y};
  return p;
}

ProbeBody ProbeBody::hull(std::vector<Vec> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "hull probe needs at least one point");
  for (const auto& p : points)
    if (p.norm() > 1.0 + 1e-12) throw Error(ErrorCode::InvalidArgument, "hull probe leaves the unit ball");
  ProbeBody p;
  p.kind_ = Kind::Hull;
  p.points_ = std::move(points);
  p.dim_ = std::all_of(p.points_.begin(), p.points_.end(), [](const Vec& v) { return v.z() == 0.0; }) ? 2 : 3;
  return p;
}

ProbeBody ProbeBody::from_polytope(const Polytope& body) {
  std::vector<Vec> pts = body.vertices();
  const Ball ball = circumball(body);
  const Vec c = ball.center;
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, (p - c).norm());
  const double s = r > 1.0 ? 1.0 / r : 1.0;
  for (auto& p : pts) p = s * (p - c);
  ProbeBody out = hull(std::move(pts));
  out.dim_ = body.dim();
  return out;
}

double ProbeBody::support(const Vec& v) const {
  switch (kind_) {
    case Kind::Ball:
      return v.norm();
    case Kind::Segment:
      return std::max(v.dot(points_.front()), 0.0);
    case Kind::Hull: {
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& p : points_) h = std::max(h, v.dot(p));
      return h;
    }
  }
  return 0.0;
}

double ProbeBody::circumradius() const {
  if (kind_ == Kind::Ball) return 1.0;
  double r = kind_ == Kind::Segment ? 0.0 : -1.0;
  for (const auto& p : points_) r = std::max(r, p.norm());
  return r;
}

std::string ProbeBody::describe() const {
  auto vec_text = [this](const Vec& v) {
    std::string s = "[";
    for (int k = 0; k < dim_; ++k) {
      if (k) s += ",";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v(k));
      s += buf;
    }
    return s + "]";
  };
  switch (kind_) {
    case Kind::Ball:
      return "ball";
    case Kind::Segment:
      return "segment y=" + vec_text(points_.front());
    case Kind::Hull:
      return "hull of " + std::to_string(points_.size()) + " points";
  }
  return {};
}

double probe_value(const SignedAtoms& diff, const ProbeBody& probe) {
  CompensatedSum s;
  for (std::size_t j = 0; j < diff.weights.size(); ++j) s.add(diff.weights[j] * probe.support(diff.directions[j]));
  return std::abs(s.value());
}

namespace {

void consider(const SignedAtoms& diff, const ProbeBody& probe, ProbeBound& best) {
  const double v = probe_value(diff, probe);
  if (v > best.value) {
    best.value = v;
    best.witness = probe;
  }
}

void consider_segments(const SignedAtoms& diff, const std::vector<Vec>& dirs, ProbeBound& best) {
  for (const auto& y : dirs) {
    CompensatedSum s;
    for (std::size_t j = 0; j < diff.weights.size(); ++j) {
      const double d = y.dot(diff.directions[j]);
      if (d > 0.0) s.add(diff.weights[j] * d);
    }
    const double v = std::abs(s.value());
    if (v > best.value) {
      best.value = v;
      best.witness = ProbeBody::segment(y, diff.dim);
    }
  }
}

}  // namespace

ProbeBound d_c_lower(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                     const std::vector<ProbeBody>& probes) {
  const SignedAtoms diff = signed_difference(mu, nu);
  ProbeBound best;
  best.value = -1.0;
  for (const auto& p : probes) consider(diff, p, best);
  if (best.value < 0.0) best = ProbeBound{};
  return best;
}

ProbeBound d_c_lower_with(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                          const std::vector<ProbeBody>& extra) {
  const SignedAtoms diff = signed_difference(mu, nu);
  ProbeBound best;
  consider(diff, ProbeBody::unit_ball(), best);
  for (const auto& p : extra) consider(diff, p, best);
  const double threshold = 1e-4 * (diff.mass_mu + diff.mass_nu);
  if (diff.dim == 2) {
    std::size_t n = 1024;
    consider_segments(diff, circle_directions(n), best);
    for (int doubling = 0; doubling < 4; ++doubling) {
      const double before = best.value;
      n *= 2;
      // Odd indices of the finer circle are the new points.
      const auto dirs = circle_directions(n);
      std::vector<Vec> fresh;
      for (std::size_t k = 1; k < dirs.size(); k += 2) fresh.push_back(dirs[k]);
      consider_segments(diff, fresh, best);
      if (best.value - before < threshold) break;
    }
    best.net_directions = static_cast<int>(n);
  } else {
    int level = 4;
    consider_segments(diff, icosphere_directions(level), best);
    for (; level < 6;) {
      const double before = best.value;
      ++level;
      consider_segments(diff, icosphere_directions(level), best);
      if (best.value - before < threshold) break;
    }
    best.net_directions = static_cast<int>(icosphere_directions(level).size());
  }
  return best;
}

ProbeBound d_c_lower(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  return d_c_lower_with(mu, nu, {});
}

DistanceSandwich d_c_sandwich(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu,
                              double net_epsilon) {
  if (!(net_epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "net epsilon must be positive");
  const ProbeBound lower = d_c_lower(mu, nu);
  const SignedAtoms diff = signed_difference(mu, nu);
  const auto& net = bronshtein_net(mu.dim(), net_epsilon);
  ProbeBound net_best;
  net_best.value = 0.0;
  for (const auto& p : net) consider(diff, p, net_best);

  DistanceSandwich out;
  out.lower = lower.value;
  out.lower_witness = lower.witness;
  if (net_best.value > out.lower) {
    out.lower = net_best.value;
    out.lower_witness = net_best.witness;
  }
  const BoundedLipschitz bl = d_bl_detail(mu, nu);
  // Allow for rounding in the LP value so the certified interval stays closed.
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * (diff.mass_mu + diff.mass_nu);
  out.upper = bl.value + bl.tolerance + roundoff;
  out.upper_certificate = "d_bl";
  const double net_term = net_best.value + net_epsilon * (diff.mass_mu + diff.mass_nu);
  if (net_term < out.upper && net_term >= out.lower) {
    out.upper = net_term;
    out.upper_certificate = "net";
    out.heuristic = true;
  }
  return out;
}

double d_c_upper(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu, double net_epsilon) {
  return d_c_sandwich(mu, nu, net_epsilon).upper;
}

}  // namespace minkprobe
