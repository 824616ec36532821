#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "minkprobe/distances.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/random.hpp"

namespace minkprobe {

namespace {

std::vector<Vec> grid_points(int dim, double pitch) {
  std::vector<Vec> pts;
  const int k = static_cast<int>(std::floor(1.0 / pitch));
  for (int i = -k; i <= k; ++i)
    for (int j = -k; j <= k; ++j)
      for (int l = (dim == 3 ? -k : 0); l <= (dim == 3 ? k : 0); ++l) {
        const Vec p(i * pitch, j * pitch, l * pitch);
        if (p.norm() <= 1.0) pts.push_back(p);
      }
  return pts;
}

std::vector<ProbeBody> build_net(int dim, double epsilon, std::uint64_t seed) {
  if (epsilon >= 1.0) return {ProbeBody::hull({Vec::Zero()})};

  const std::vector<Vec> grid = grid_points(dim, epsilon);
  const std::vector<Vec> dirs = dim == 2 ? circle_directions(256) : icosphere_directions(2);
  // Bodies near the boundary of the class need about epsilon^{-(d-1)/2} vertices;
  // the candidate pool follows the matching entropy 2^{2 epsilon^{-(d-1)/2}}.
  const double rate = std::pow(epsilon, -(dim - 1) / 2.0);
  const int max_vertices = std::max(2, static_cast<int>(std::ceil(2.0 * rate)));
  const double cap = dim == 2 ? 4000.0 : 1500.0;
  const auto pool_size = static_cast<std::size_t>(std::min(cap, std::ceil(4.0 * std::exp2(2.0 * rate))));

  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(std::llround(epsilon * 1e9))));
  std::vector<std::vector<Vec>> pool;
  std::vector<Eigen::VectorXd> sig;
  pool.reserve(pool_size);
  for (std::size_t b = 0; b < pool_size; ++b) {
    const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
    std::vector<Vec> pts;
    for (int i = 0; i < count; ++i) pts.push_back(grid[rng.below(grid.size())]);
    Eigen::VectorXd s(dirs.size());
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      double h = -2.0;
      for (const auto& p : pts) h = std::max(h, dirs[d].dot(p));
      s(d) = h;
    }
    pool.push_back(std::move(pts));
    sig.push_back(std::move(s));
  }

  // Greedy farthest-point selection in the sup distance of support vectors.
  std::vector<double> dist(pool.size(), std::numeric_limits<double>::infinity());
  std::vector<ProbeBody> net;
  std::size_t next = 0;
  while (true) {
    net.push_back(ProbeBody::hull(pool[next]));
    double far = -1.0;
    std::size_t far_idx = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      dist[i] = std::min(dist[i], (sig[i] - sig[next]).cwiseAbs().maxCoeff());
      if (dist[i] > far) {
        far = dist[i];
        far_idx = i;
      }
    }
    if (far <= epsilon) break;
    next = far_idx;
  }
  return net;
}

}  // namespace

const std::vector<ProbeBody>& bronshtein_net(int dim, double epsilon, std::uint64_t seed) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::InvalidArgument, "net dimension must be 2 or 3");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "net epsilon must be positive");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, std::uint64_t>, std::vector<ProbeBody>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(dim, epsilon, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_net(dim, epsilon, seed)).first;
  return it->second;
}

}  // namespace minkprobe
