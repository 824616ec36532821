#pragma once

#include <span>

#include "minkprobe/halfspace.hpp"
#include "minkprobe/polytope.hpp"

namespace minkprobe {

struct Ball {
  Vec center = Vec::Zero();
  double radius = 0.0;
};

// Smallest enclosing ball (Welzl, fixed-seed move order).
Ball min_enclosing_ball(std::span<const Vec> points);

Ball circumball(const Polytope& body);
double circumradius(const Polytope& body);

// Largest inscribed ball: max t s.t. <c, n_i> + t <= h_i.
ChebyshevBall inball(const Polytope& body);
double inradius(const Polytope& body);

}  // namespace minkprobe
