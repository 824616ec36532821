#pragma once

#include <span>
#include <vector>

#include "minkprobe/polytope.hpp"
#include "minkprobe/vector.hpp"

namespace minkprobe {

// {x : <x, normals[i]> <= offsets[i] for all i}
struct HalfspaceRep {
  int dim = 2;
  std::vector<Vec> normals;
  std::vector<double> offsets;
};

struct ChebyshevBall {
  Vec center = Vec::Zero();
  double radius = 0.0;
};

// Largest inscribed ball (LP). Throws Empty for infeasible offsets or an empty
// interior, Unbounded when the program is unbounded.
ChebyshevBall chebyshev_center(const HalfspaceRep& rep);

// True when the normals positively span R^dim, i.e. every intersection of
// halfspaces with these normals is bounded.
bool positively_spanning(int dim, std::span<const Vec> normals);

// Facets with area below this are inactive.
inline constexpr double kInactiveFacetArea = 1e-12;

struct FacetPolygons {
  std::vector<std::vector<Vec>> polygons;  // per halfspace, empty when inactive
  std::vector<double> areas;               // per halfspace, 0 when inactive
  // edge_planes[i][k]: halfspace whose plane carries the edge from vertex k
  // to vertex k + 1 of polygon i (2D: the planes at the two endpoints).
  std::vector<std::vector<int>> edge_planes;
  double volume = 0.0;
};

// Facet polygons of a bounded intersection that contains the origin in its
// interior (all offsets > 0). Each supporting plane is clipped by all others.
FacetPolygons clip_facets(int dim, std::span<const Vec> normals, std::span<const double> offsets);

// Glues facet polygons into a Polytope, merging coincident vertices.
Polytope assemble_polytope(int dim, std::span<const Vec> normals, const FacetPolygons& facets);

struct HalfspaceIntersection {
  Polytope body;
  std::vector<bool> active;    // per input halfspace
  std::vector<double> areas;   // per input halfspace
};

HalfspaceIntersection intersect_halfspaces(const HalfspaceRep& rep);
Polytope halfspace_intersection(const HalfspaceRep& rep);

}  // namespace minkprobe
