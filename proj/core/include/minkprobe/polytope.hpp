#pragma once

#include <span>
#include <vector>

#include "minkprobe/vector.hpp"

namespace minkprobe {

// One facet (2D: edge) of a polytope: outward unit normal, (d-1)-area and
// the support value in the normal direction.
struct FacetInfo {
  Vec normal;
  double area = 0.0;
  double offset = 0.0;
};

struct HalfspaceRep;

// Bounded convex body with non-empty interior in dimension 2 or 3.
//   2D: vertices in counter-clockwise order, facet i is the edge (i, i+1).
//   3D: vertices plus outward-oriented planar vertex cycles.
// Immutable; all derived data (facet normals, adjacency) is computed once.
class Polytope {
 public:
  struct Edge {
    int a = -1;
    int b = -1;
    int left = -1;   // facet containing the directed edge a -> b
    int right = -1;  // facet containing b -> a
  };

  // Empty placeholder; every factory below yields a valid body.
  Polytope() = default;

  // Strictly validated constructors (extreme vertices, planarity, orientation).
  static Polytope polygon(std::vector<Vec> ccw_vertices);
  static Polytope polyhedron(std::vector<Vec> vertices, std::vector<std::vector<int>> facets);

  static Polytope convex_hull_2d(std::span<const Vec> points);

  // Builds from data that is valid up to rounding, e.g. the output of a
  // halfspace intersection. Only orientation and positive volume are checked.
  static Polytope assemble(int dim, std::vector<Vec> vertices, std::vector<std::vector<int>> facets);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  // Vertex cycles; in 2D these are the edges {i, i+1}.
  const std::vector<std::vector<int>>& facets() const { return facets_; }
  const std::vector<FacetInfo>& facet_info() const { return info_; }
  const std::vector<std::vector<int>>& vertex_neighbors() const { return neighbors_; }
  // 3D edges with their adjacent facets (empty in 2D).
  const std::vector<Edge>& edges() const { return edges_; }

  Polytope translated(const Vec& t) const;
  Polytope scaled(double s) const;

  HalfspaceRep halfspaces() const;
  double diameter() const;
  Vec vertex_centroid() const;
  double max_vertex_norm() const;

 private:
  Polytope(int dim, std::vector<Vec> vertices, std::vector<std::vector<int>> facets);
  void derive();
  void validate_strict() const;

  int dim_ = 2;
  std::vector<Vec> vertices_;
  std::vector<std::vector<int>> facets_;
  std::vector<FacetInfo> info_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<Edge> edges_;
};

double support_value(const Polytope& body, const Vec& u);
int support_vertex(const Polytope& body, const Vec& u);

// Vertex-based volume (shoelace in 2D, tetrahedral fan in 3D).
double volume(const Polytope& body);
// (1/d) * sum_i h(n_i) * area_i.
double volume_from_facets(const Polytope& body);
double surface_area(const Polytope& body);

// First mixed volume V1(K, L) = (1/d) * sum over facets of K of h_L(n_i) * area_i.
double mixed_volume_v1(const Polytope& K, const Polytope& L);

std::vector<FacetInfo> facet_data(const Polytope& body);

}  // namespace minkprobe
