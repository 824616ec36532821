#pragma once

#include <cstdint>
#include <random>

#include "minkprobe/vector.hpp"

namespace minkprobe {

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for (master, a, b), e.g. (seed, N, trial index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

// mt19937_64 with distribution code kept in-library so draws do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n);  // [0, n)
  Vec in_ball(int dim, double radius);
  Vec on_sphere(int dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace minkprobe
