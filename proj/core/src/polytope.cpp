#include "minkprobe/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "minkprobe/errors.hpp"
#include "minkprobe/halfspace.hpp"

namespace minkprobe {

namespace {

Vec newell(const std::vector<Vec>& verts, const std::vector<int>& cycle) {
  Vec n = Vec::Zero();
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec& a = verts[cycle[i]];
    const Vec& b = verts[cycle[(i + 1) % k]];
    n += a.cross(b);
  }
  return n;
}

double body_scale(const std::vector<Vec>& verts) {
  Vec c = Vec::Zero();
  for (const auto& v : verts) c += v;
  c /= static_cast<double>(verts.size());
  double r = 0.0;
  for (const auto& v : verts) r = std::max(r, (v - c).norm());
  return std::max(1.0, r);
}

}  // namespace

Polytope::Polytope(int dim, std::vector<Vec> vertices, std::vector<std::vector<int>> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw Error(ErrorCode::InvalidPolytope, "non-finite vertex");
    if (dim_ == 2 && v.z() != 0.0) throw Error(ErrorCode::InvalidPolytope, "2D vertex with z != 0");
  }
  if (static_cast<int>(vertices_.size()) < dim_ + 1)
    throw Error(ErrorCode::InvalidPolytope, "too few vertices");
  derive();
  if (!(volume(*this) > 0.0)) throw Error(ErrorCode::InvalidPolytope, "volume is not positive");
}

void Polytope::derive() {
  const int nv = static_cast<int>(vertices_.size());
  neighbors_.assign(nv, {});
  info_.clear();
  edges_.clear();
  if (dim_ == 2) {
    facets_.clear();
    for (int i = 0; i < nv; ++i) {
      const int j = (i + 1) % nv;
      facets_.push_back({i, j});
      const Vec e = vertices_[j] - vertices_[i];
      const double len = e.norm();
      if (!(len > 0.0)) throw Error(ErrorCode::InvalidPolytope, "repeated vertex");
      FacetInfo f;
      f.normal = Vec(e.y(), -e.x(), 0.0) / len;
      f.area = len;
      f.offset = f.normal.dot(vertices_[i]);
      info_.push_back(f);
      neighbors_[i].push_back((i + nv - 1) % nv);
      neighbors_[i].push_back(j);
    }
    return;
  }

  std::map<std::pair<int, int>, std::size_t> edge_index;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const auto& cyc = facets_[f];
    if (cyc.size() < 3) throw Error(ErrorCode::InvalidPolytope, "facet with fewer than 3 vertices");
    for (int idx : cyc)
      if (idx < 0 || idx >= nv) throw Error(ErrorCode::InvalidPolytope, "facet index out of range");
    const Vec n = newell(vertices_, cyc);
    const double len = n.norm();
    FacetInfo fi;
    fi.area = 0.5 * len;
    fi.normal = len > 0.0 ? Vec(n / len) : Vec::Zero();
    Vec c = Vec::Zero();
    for (int idx : cyc) c += vertices_[idx];
    c /= static_cast<double>(cyc.size());
    fi.offset = fi.normal.dot(c);
    info_.push_back(fi);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int a = cyc[i];
      const int b = cyc[(i + 1) % cyc.size()];
      const auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        Edge e;
        e.a = key.first;
        e.b = key.second;
        edge_index.emplace(key, edges_.size());
        edges_.push_back(e);
        it = edge_index.find(key);
      }
      Edge& e = edges_[it->second];
      if (a == e.a) e.left = static_cast<int>(f);
      else e.right = static_cast<int>(f);
    }
  }
  for (const auto& e : edges_) {
    neighbors_[e.a].push_back(e.b);
    neighbors_[e.b].push_back(e.a);
  }
}

void Polytope::validate_strict() const {
  const double tol = 1e-9 * body_scale(vertices_);
  const int nv = static_cast<int>(vertices_.size());
  if (dim_ == 2) {
    double turning = 0.0;
    for (int i = 0; i < nv; ++i) {
      const Vec e0 = vertices_[(i + 1) % nv] - vertices_[i];
      const Vec e1 = vertices_[(i + 2) % nv] - vertices_[(i + 1) % nv];
      const double c = cross2(e0, e1);
      if (!(c > tol * std::max(e0.norm(), e1.norm())))
        throw Error(ErrorCode::InvalidPolytope,
                    fmt::format("vertex {} is not a strict counter-clockwise convex corner", (i + 1) % nv));
      turning += std::atan2(c, e0.dot(e1));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
      throw Error(ErrorCode::InvalidPolytope, "polygon winds more than once");
    return;
  }

  std::vector<int> incidence(nv, 0);
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const auto& cyc = facets_[f];
    const FacetInfo& fi = info_[f];
    if (!(fi.area > 0.0)) throw Error(ErrorCode::InvalidPolytope, fmt::format("facet {} has zero area", f));
    for (int idx : cyc) {
      ++incidence[idx];
      if (std::abs(fi.normal.dot(vertices_[idx]) - fi.offset) > tol)
        throw Error(ErrorCode::InvalidPolytope, fmt::format("facet {} is not planar", f));
    }
    for (int v = 0; v < nv; ++v) {
      if (fi.normal.dot(vertices_[v]) - fi.offset > tol)
        throw Error(ErrorCode::InvalidPolytope,
                    fmt::format("facet {} is not outward-oriented or the body is not convex", f));
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Vec& p = vertices_[cyc[i]];
      const Vec& q = vertices_[cyc[(i + 1) % cyc.size()]];
      const Vec& r = vertices_[cyc[(i + 2) % cyc.size()]];
      if (!((q - p).cross(r - q).dot(fi.normal) > tol * (q - p).norm()))
        throw Error(ErrorCode::InvalidPolytope, fmt::format("facet {} has a non-convex or collinear corner", f));
    }
  }
  for (const auto& e : edges_)
    if (e.left < 0 || e.right < 0) throw Error(ErrorCode::InvalidPolytope, "facet cycles do not close up");
  for (int v = 0; v < nv; ++v)
    if (incidence[v] < 3) throw Error(ErrorCode::InvalidPolytope, fmt::format("vertex {} is not extreme", v));
}

Polytope Polytope::polygon(std::vector<Vec> ccw_vertices) {
  for (auto& v : ccw_vertices) v.z() = 0.0;
  Polytope p(2, std::move(ccw_vertices), {});
  p.validate_strict();
  return p;
}

Polytope Polytope::polyhedron(std::vector<Vec> vertices, std::vector<std::vector<int>> facets) {
  if (facets.size() < 4) throw Error(ErrorCode::InvalidPolytope, "polyhedron needs at least 4 facets");
  Polytope p(3, std::move(vertices), std::move(facets));
  p.validate_strict();
  return p;
}

Polytope Polytope::assemble(int dim, std::vector<Vec> vertices, std::vector<std::vector<int>> facets) {
  return Polytope(dim, std::move(vertices), std::move(facets));
}

Polytope Polytope::convex_hull_2d(std::span<const Vec> points) {
  std::vector<Vec> pts(points.begin(), points.end());
  for (auto& p : pts) p.z() = 0.0;
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw Error(ErrorCode::InvalidPolytope, "hull of fewer than 3 distinct points");
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  const double tol = 1e-12 * scale * scale;
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const Vec& p = pts[i];
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return Polytope::polygon(std::move(hull));
}

Polytope Polytope::translated(const Vec& t) const {
  Polytope out = *this;
  Vec shift = t;
  if (dim_ == 2) shift.z() = 0.0;
  for (auto& v : out.vertices_) v += shift;
  for (auto& f : out.info_) f.offset += f.normal.dot(shift);
  return out;
}

Polytope Polytope::scaled(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  Polytope out = *this;
  for (auto& v : out.vertices_) v *= s;
  const double area_factor = dim_ == 2 ? s : s * s;
  for (auto& f : out.info_) {
    f.offset *= s;
    f.area *= area_factor;
  }
  return out;
}

HalfspaceRep Polytope::halfspaces() const {
  HalfspaceRep rep;
  rep.dim = dim_;
  for (const auto& f : info_) {
    rep.normals.push_back(f.normal);
    rep.offsets.push_back(support_value(*this, f.normal));
  }
  return rep;
}

double Polytope::diameter() const {
  double d2 = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      d2 = std::max(d2, (vertices_[i] - vertices_[j]).squaredNorm());
  return std::sqrt(d2);
}

Vec Polytope::vertex_centroid() const {
  Vec c = Vec::Zero();
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

double Polytope::max_vertex_norm() const {
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, v.norm());
  return r;
}

double support_value(const Polytope& body, const Vec& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : body.vertices()) best = std::max(best, v.dot(u));
  return best;
}

int support_vertex(const Polytope& body, const Vec& u) {
  int best = 0;
  double val = -std::numeric_limits<double>::infinity();
  const auto& verts = body.vertices();
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    const double d = verts[i].dot(u);
    if (d > val) {
      val = d;
      best = i;
    }
  }
  return best;
}

double volume(const Polytope& body) {
  const auto& verts = body.vertices();
  const Vec o = body.vertex_centroid();
  if (body.dim() == 2) {
    double twice = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      twice += cross2(verts[i] - o, verts[(i + 1) % verts.size()] - o);
    return 0.5 * twice;
  }
  double six = 0.0;
  for (const auto& cyc : body.facets()) {
    const Vec a = verts[cyc[0]] - o;
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i)
      six += a.dot((verts[cyc[i]] - o).cross(verts[cyc[i + 1]] - o));
  }
  return six / 6.0;
}

double volume_from_facets(const Polytope& body) { return mixed_volume_v1(body, body); }

double surface_area(const Polytope& body) {
  double s = 0.0;
  for (const auto& f : body.facet_info()) s += f.area;
  return s;
}

double mixed_volume_v1(const Polytope& K, const Polytope& L) {
  if (K.dim() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "mixed volume of bodies of different dimension");
  double s = 0.0;
  for (const auto& f : K.facet_info()) s += support_value(L, f.normal) * f.area;
  return s / K.dim();
}

std::vector<FacetInfo> facet_data(const Polytope& body) { return body.facet_info(); }

}  // namespace minkprobe
