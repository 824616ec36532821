#pragma once

#include <string>
#include <string_view>

#include "minkprobe/polytope.hpp"
#include "minkprobe/random.hpp"

namespace minkprobe {

Polytope unit_square();                          // [0,1]^2
Polytope centered_square(double half_side);      // [-a,a]^2
Polytope axis_box(const Vec& lo, const Vec& hi, int dim);
Polytope regular_polygon(int n, double radius = 1.0);
Polytope unit_cube();                            // [0,1]^3
Polytope regular_tetrahedron();                  // inscribed in the unit sphere
Polytope icosphere_polytope(int level);          // inscribed in the unit sphere

// square | cube | tetrahedron | ngon:<n> | icosphere:<level>
bool is_named_body(std::string_view name);
Polytope named_body(std::string_view name);

// Convex polygon with vertex count in [min_vertices, max_vertices] and
// circumradius in [min_radius, max_radius].
Polytope random_polygon(Rng& rng, int min_vertices, int max_vertices, double min_radius, double max_radius);

// Intersection of random halfspaces around the origin with an active facet
// count in [min_facets, max_facets].
Polytope random_polytope_3d(Rng& rng, int min_facets, int max_facets);

}  // namespace minkprobe
