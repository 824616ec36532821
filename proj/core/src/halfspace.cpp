#include "minkprobe/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minkprobe/errors.hpp"
#include "minkprobe/lp.hpp"

namespace minkprobe {

namespace {

void check_rep(const HalfspaceRep& rep) {
  if (rep.dim != 2 && rep.dim != 3) throw Error(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
  if (rep.normals.size() != rep.offsets.size())
    throw Error(ErrorCode::MalformedInput, "normals and offsets differ in length");
  for (std::size_t i = 0; i < rep.normals.size(); ++i) {
    const Vec& n = rep.normals[i];
    if (!n.allFinite() || !std::isfinite(rep.offsets[i])) throw Error(ErrorCode::MalformedInput, "non-finite halfspace");
    if (!is_unit(n, 1e-9)) throw Error(ErrorCode::MalformedInput, "halfspace normal is not a unit vector");
    if (rep.dim == 2 && n.z() != 0.0) throw Error(ErrorCode::MalformedInput, "2D normal with z != 0");
  }
}

// Orthonormal t1, t2 with t1 x t2 = n.
void tangent_frame(const Vec& n, Vec& t1, Vec& t2) {
  const Vec helper = std::abs(n.x()) < 0.6 ? Vec::UnitX() : (std::abs(n.y()) < 0.6 ? Vec::UnitY() : Vec::UnitZ());
  t1 = helper.cross(n).normalized();
  t2 = n.cross(t1);
}

double polygon_area(const std::vector<Vec>& poly, const Vec& n) {
  Vec acc = Vec::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) acc += poly[i].cross(poly[(i + 1) % poly.size()]);
  return 0.5 * acc.dot(n);
}

// Sutherland-Hodgman step against plane `plane`: <x, n> <= h. label[i] names
// the plane that cut the edge starting at poly[i] (-1: initial bounding square).
void clip_polygon(std::vector<Vec>& poly, std::vector<int>& label, const Vec& n, double h, int plane,
                  std::vector<Vec>& scratch, std::vector<int>& scratch_label) {
  const std::size_t k = poly.size();
  bool all_inside = true;
  for (const auto& p : poly) {
    if (p.dot(n) > h) {
      all_inside = false;
      break;
    }
  }
  if (all_inside) return;
  scratch.clear();
  scratch_label.clear();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % k];
    const double da = a.dot(n) - h;
    const double db = b.dot(n) - h;
    if (da <= 0.0) {
      scratch.push_back(a);
      if (db <= 0.0) {
        scratch_label.push_back(label[i]);
      } else if (da < 0.0) {
        scratch_label.push_back(label[i]);
        const double t = da / (da - db);
        scratch.push_back(a + t * (b - a));
        scratch_label.push_back(plane);
      } else {
        scratch_label.push_back(plane);
      }
    } else if (db < 0.0) {
      const double t = da / (da - db);
      scratch.push_back(a + t * (b - a));
      scratch_label.push_back(label[i]);
    }
  }
  poly.swap(scratch);
  label.swap(scratch_label);
}

}  // namespace

ChebyshevBall chebyshev_center(const HalfspaceRep& rep) {
  check_rep(rep);
  const int d = rep.dim;
  if (rep.normals.empty()) throw Error(ErrorCode::Unbounded, "no halfspaces");
  LinearProgram lp(d + 1);
  for (int k = 0; k < d; ++k) lp.set_free(k);
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(d + 1);
  obj(d) = 1.0;
  lp.maximize(obj);
  double scale = 1.0;
  for (std::size_t i = 0; i < rep.normals.size(); ++i) {
    Eigen::VectorXd row(d + 1);
    for (int k = 0; k < d; ++k) row(k) = rep.normals[i](k);
    row(d) = 1.0;
    lp.add_constraint(row, Relation::LessEqual, rep.offsets[i]);
    scale = std::max(scale, std::abs(rep.offsets[i]));
  }
  const LpSolution sol = lp.solve();
  if (sol.status == LpStatus::Infeasible) throw Error(ErrorCode::Empty, "halfspaces have empty intersection");
  if (sol.status == LpStatus::Unbounded) throw Error(ErrorCode::Unbounded, "inscribed ball is unbounded");
  if (sol.status != LpStatus::Optimal) throw Error(ErrorCode::Empty, "Chebyshev center program did not converge");
  ChebyshevBall ball;
  for (int k = 0; k < d; ++k) ball.center(k) = sol.x(k);
  ball.radius = sol.x(d);
  if (!(ball.radius > 1e-12 * scale)) throw Error(ErrorCode::Empty, "intersection has empty interior");
  return ball;
}

bool positively_spanning(int dim, std::span<const Vec> normals) {
  if (normals.size() < static_cast<std::size_t>(dim + 1)) return false;
  for (int k = 0; k < dim; ++k) {
    for (double sign : {1.0, -1.0}) {
      LinearProgram lp(dim);
      for (int j = 0; j < dim; ++j) lp.set_free(j);
      Eigen::VectorXd obj = Eigen::VectorXd::Zero(dim);
      obj(k) = sign;
      lp.maximize(obj);
      for (const auto& n : normals) lp.add_constraint(n.head(dim), Relation::LessEqual, 0.0);
      for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e(j) = 1.0;
        lp.add_constraint(e, Relation::LessEqual, 1.0);
        lp.add_constraint(e, Relation::GreaterEqual, -1.0);
      }
      const LpSolution sol = lp.solve();
      if (sol.status != LpStatus::Optimal || sol.objective > 1e-12) return false;
    }
  }
  return true;
}

FacetPolygons clip_facets(int dim, std::span<const Vec> normals, std::span<const double> offsets) {
  const std::size_t m = normals.size();
  FacetPolygons out;
  out.polygons.assign(m, {});
  out.areas.assign(m, 0.0);
  out.edge_planes.assign(m, {});
  double hmax = 0.0;
  for (double h : offsets) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "clip_facets needs the origin in the interior");
    hmax = std::max(hmax, h);
  }
  if (m == 0) throw Error(ErrorCode::Unbounded, "no halfspaces");

  double box = 4.0 * hmax;
  std::vector<Vec> poly, scratch;
  std::vector<int> label, scratch_label;
  for (int attempt = 0; attempt < 12; ++attempt, box *= 16.0) {
    bool touched_box = false;
    for (std::size_t i = 0; i < m && !touched_box; ++i) {
      const Vec& n = normals[i];
      const Vec p0 = offsets[i] * n;
      poly.clear();
      if (dim == 2) {
        const Vec t = rot90(n);
        double lo = -box, hi = box;
        bool lo_box = true, hi_box = true;
        int lo_plane = -1, hi_plane = -1;
        for (std::size_t j = 0; j < m && lo <= hi; ++j) {
          if (j == i) continue;
          const double a = t.dot(normals[j]);
          const double b = offsets[j] - p0.dot(normals[j]);
          if (a > 0.0) {
            if (b / a < hi) {
              hi = b / a;
              hi_box = false;
              hi_plane = static_cast<int>(j);
            }
          } else if (a < 0.0) {
            if (b / a > lo) {
              lo = b / a;
              lo_box = false;
              lo_plane = static_cast<int>(j);
            }
          } else if (b < 0.0) {
            hi = lo - 1.0;
          }
        }
        if (hi - lo > kInactiveFacetArea) {
          if (lo_box || hi_box) {
            touched_box = true;
            break;
          }
          out.polygons[i] = {p0 + lo * t, p0 + hi * t};
          out.areas[i] = hi - lo;
          out.edge_planes[i] = {lo_plane, hi_plane};
        } else {
          out.polygons[i].clear();
          out.areas[i] = 0.0;
          out.edge_planes[i].clear();
        }
        continue;
      }
      Vec t1, t2;
      tangent_frame(n, t1, t2);
      poly = {p0 - box * t1 - box * t2, p0 + box * t1 - box * t2, p0 + box * t1 + box * t2,
              p0 - box * t1 + box * t2};
      label.assign(4, -1);
      for (std::size_t j = 0; j < m && !poly.empty(); ++j) {
        if (j == i) continue;
        clip_polygon(poly, label, normals[j], offsets[j], static_cast<int>(j), scratch, scratch_label);
      }
      const double area = poly.size() >= 3 ? polygon_area(poly, n) : 0.0;
      if (area > kInactiveFacetArea) {
        if (std::any_of(label.begin(), label.end(), [](int c) { return c < 0; })) {
          touched_box = true;
          break;
        }
        out.polygons[i] = poly;
        out.areas[i] = area;
        out.edge_planes[i] = label;
      } else {
        out.polygons[i].clear();
        out.areas[i] = 0.0;
        out.edge_planes[i].clear();
      }
    }
    if (!touched_box) {
      double vol = 0.0;
      for (std::size_t i = 0; i < m; ++i) vol += offsets[i] * out.areas[i];
      out.volume = vol / dim;
      return out;
    }
  }
  throw Error(ErrorCode::Unbounded, "facet polygons do not close up");
}

Polytope assemble_polytope(int dim, std::span<const Vec> normals, const FacetPolygons& facets) {
  const std::size_t m = normals.size();
  if (dim == 2) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i)
      if (!facets.polygons[i].empty()) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return planar_angle(normals[a]) < planar_angle(normals[b]); });
    std::vector<Vec> verts;
    for (std::size_t i : order) verts.push_back(facets.polygons[i].front());
    return Polytope::assemble(2, std::move(verts), {});
  }

  std::vector<Vec> points;
  std::vector<std::vector<int>> raw_cycles;
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (facets.polygons[i].empty()) continue;
    std::vector<int> cyc;
    for (const auto& p : facets.polygons[i]) {
      cyc.push_back(static_cast<int>(points.size()));
      points.push_back(p);
      scale = std::max(scale, p.norm());
    }
    raw_cycles.push_back(std::move(cyc));
  }
  const double tol = 1e-9 * std::max(1.0, scale);

  // Cluster coincident points: sweep in x order, union-find within tol.
  const int np = static_cast<int>(points.size());
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> by_x(np);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](int a, int b) { return points[a].x() < points[b].x(); });
  for (int a = 0; a < np; ++a) {
    for (int b = a + 1; b < np && points[by_x[b]].x() - points[by_x[a]].x() <= tol; ++b) {
      if ((points[by_x[a]] - points[by_x[b]]).norm() <= tol) {
        const int ra = find(by_x[a]);
        const int rb = find(by_x[b]);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<int> cluster_id(np, -1);
  std::vector<Vec> sums;
  std::vector<int> counts;
  for (int p = 0; p < np; ++p) {
    const int r = find(p);
    if (cluster_id[r] < 0) {
      cluster_id[r] = static_cast<int>(sums.size());
      sums.push_back(Vec::Zero());
      counts.push_back(0);
    }
    cluster_id[p] = cluster_id[r];
    sums[cluster_id[p]] += points[p];
    ++counts[cluster_id[p]];
  }
  std::vector<Vec> verts(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) verts[c] = sums[c] / counts[c];

  std::vector<std::vector<int>> cycles;
  for (const auto& raw : raw_cycles) {
    std::vector<int> cyc;
    for (int p : raw) {
      const int c = cluster_id[p];
      if (cyc.empty() || cyc.back() != c) cyc.push_back(c);
    }
    while (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
    if (cyc.size() >= 3) cycles.push_back(std::move(cyc));
  }
  return Polytope::assemble(3, std::move(verts), std::move(cycles));
}

HalfspaceIntersection intersect_halfspaces(const HalfspaceRep& rep) {
  check_rep(rep);
  if (!positively_spanning(rep.dim, rep.normals))
    throw Error(ErrorCode::Unbounded, "normals do not positively span the space");
  const ChebyshevBall ball = chebyshev_center(rep);
  std::vector<double> shifted(rep.offsets.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = rep.offsets[i] - rep.normals[i].dot(ball.center);
  FacetPolygons fp = clip_facets(rep.dim, rep.normals, shifted);
  for (auto& poly : fp.polygons)
    for (auto& p : poly) p += ball.center;
  HalfspaceIntersection out{assemble_polytope(rep.dim, rep.normals, fp), {}, fp.areas};
  out.active.resize(rep.normals.size());
  for (std::size_t i = 0; i < rep.normals.size(); ++i) out.active[i] = fp.areas[i] > kInactiveFacetArea;
  return out;
}

Polytope halfspace_intersection(const HalfspaceRep& rep) { return intersect_halfspaces(rep).body; }

}  // namespace minkprobe
