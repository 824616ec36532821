#include <algorithm>
#include <map>
#include <tuple>

#include "minkprobe/errors.hpp"
#include "minkprobe/measure.hpp"
#include "minkprobe/random.hpp"

namespace minkprobe {

std::vector<Vec> sample_normals(const Polytope& body, std::size_t n, std::uint64_t seed, double noise_radius) {
  if (noise_radius < 0.0) throw Error(ErrorCode::InvalidArgument, "noise radius must be non-negative");
  const auto facets = facet_data(body);
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& f : facets) {
    total += f.area;
    cumulative.push_back(total);
  }
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    Vec v = facets[it - cumulative.begin()].normal;
    if (noise_radius > 0.0) v = (v + rng.in_ball(body.dim(), noise_radius)).normalized();
    out.push_back(v);
  }
  return out;
}

DiscreteSphericalMeasure empirical_measure(int dim, std::span<const Vec> normals) {
  if (normals.empty()) throw Error(ErrorCode::EmptyInput, "no normals");
  std::map<std::tuple<double, double, double>, std::size_t> index;
  std::vector<Atom> atoms;
  std::vector<std::size_t> counts;
  for (const auto& v : normals) {
    const auto key = std::make_tuple(v.x(), v.y(), v.z());
    auto [it, inserted] = index.emplace(key, atoms.size());
    if (inserted) {
      atoms.push_back({v, 0.0});
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  const double n = static_cast<double>(normals.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].w = static_cast<double>(counts[i]) / n;
  return DiscreteSphericalMeasure(dim, std::move(atoms));
}

}  // namespace minkprobe
