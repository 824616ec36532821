#include "minkprobe/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "minkprobe/errors.hpp"
#include "minkprobe/lp.hpp"

namespace minkprobe {

namespace {

constexpr std::size_t kNet2d = 4096;
constexpr int kNetLevel3d = 3;

bool locally_maximal(const Polytope& P, int v, const Vec& u, double slack) {
  const Vec& p = P.vertices()[v];
  for (int w : P.vertex_neighbors()[v])
    if ((P.vertices()[w] - p).dot(u) > slack) return false;
  return true;
}

struct Arc {
  Vec a;       // a vertex of the edge; h_P(u) = <a, u> along the arc
  Vec axis;    // unit edge direction, orthogonal to the arc plane
  Vec n0, n1;  // endpoint normals
  double c;    // <n0, n1>
};

std::vector<Arc> arcs_of(const Polytope& P) {
  std::vector<Arc> arcs;
  const auto& info = P.facet_info();
  for (const auto& e : P.edges()) {
    if (e.left < 0 || e.right < 0) continue;
    Arc arc;
    arc.a = P.vertices()[e.a];
    const Vec d = P.vertices()[e.b] - arc.a;
    if (!(d.norm() > 0.0)) continue;
    arc.axis = d.normalized();
    arc.n0 = info[e.left].normal;
    arc.n1 = info[e.right].normal;
    arc.c = arc.n0.dot(arc.n1);
    if (arc.c > 1.0 - 1e-15) continue;
    arcs.push_back(arc);
  }
  return arcs;
}

bool on_arc(const Arc& arc, const Vec& u) {
  const double uf = u.dot(arc.n0);
  const double ug = u.dot(arc.n1);
  const double det = 1.0 - arc.c * arc.c;
  const double alpha = (uf - arc.c * ug) / det;
  const double beta = (ug - arc.c * uf) / det;
  return alpha >= -1e-12 && beta >= -1e-12;
}

double scale_of(const Polytope& P) {
  return std::max(1.0, P.max_vertex_norm());
}

void add_pair_candidates(const Polytope& K, const Polytope& L, double slack, std::vector<Vec>& out) {
  const auto& vk = K.vertices();
  const auto& vl = L.vertices();
  for (int i = 0; i < static_cast<int>(vk.size()); ++i) {
    for (int j = 0; j < static_cast<int>(vl.size()); ++j) {
      const Vec p = vk[i] - vl[j];
      const double len = p.norm();
      if (!(len > 0.0)) continue;
      for (double s : {1.0, -1.0}) {
        const Vec u = s * p / len;
        if (locally_maximal(K, i, u, slack) && locally_maximal(L, j, u, slack)) out.push_back(u);
      }
    }
  }
}

// Critical points on the arcs of A against the vertices of B.
void add_arc_vertex_candidates(const std::vector<Arc>& arcs, const Polytope& B, double slack,
                               std::vector<Vec>& out) {
  const auto& vb = B.vertices();
  for (const auto& arc : arcs) {
    for (int j = 0; j < static_cast<int>(vb.size()); ++j) {
      Vec p = arc.a - vb[j];
      p -= p.dot(arc.axis) * arc.axis;
      const double len = p.norm();
      if (!(len > 0.0)) continue;
      for (double s : {1.0, -1.0}) {
        const Vec u = s * p / len;
        if (on_arc(arc, u) && locally_maximal(B, j, u, slack)) out.push_back(u);
      }
    }
  }
}

void add_arc_crossings(const std::vector<Arc>& ak, const std::vector<Arc>& al, std::vector<Vec>& out) {
  for (const auto& x : ak) {
    for (const auto& y : al) {
      const Vec c = x.axis.cross(y.axis);
      const double len = c.norm();
      if (!(len > 1e-14)) continue;
      for (double s : {1.0, -1.0}) {
        const Vec u = s * c / len;
        if (on_arc(x, u) && on_arc(y, u)) out.push_back(u);
      }
    }
  }
}

std::vector<Vec> candidate_directions(const Polytope& K, const Polytope& L) {
  const double slack = 1e-12 * std::max(scale_of(K), scale_of(L));
  std::vector<Vec> dirs;
  for (const auto& f : K.facet_info()) dirs.push_back(f.normal);
  for (const auto& f : L.facet_info()) dirs.push_back(f.normal);
  add_pair_candidates(K, L, slack, dirs);
  if (K.dim() == 3) {
    const auto ak = arcs_of(K);
    const auto al = arcs_of(L);
    add_arc_vertex_candidates(ak, L, slack, dirs);
    add_arc_vertex_candidates(al, K, slack, dirs);
    add_arc_crossings(ak, al, dirs);
  }
  const auto net = direction_net(K.dim(), kNet2d, kNetLevel3d);
  dirs.insert(dirs.end(), net.begin(), net.end());
  return dirs;
}

}  // namespace

std::vector<DirectionalGap> critical_gaps(const Polytope& K, const Polytope& L) {
  if (K.dim() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "Hausdorff distance across dimensions");
  std::vector<DirectionalGap> out;
  for (const auto& u : candidate_directions(K, L))
    out.push_back({u, support_value(K, u) - support_value(L, u)});
  return out;
}

HausdorffResult hausdorff_detail(const Polytope& K, const Polytope& L) {
  HausdorffResult best;
  best.value = -1.0;
  for (const auto& g : critical_gaps(K, L)) {
    if (std::abs(g.gap) > best.value) {
      best.value = std::abs(g.gap);
      best.direction = g.direction;
    }
  }
  return best;
}

double hausdorff(const Polytope& K, const Polytope& L) { return hausdorff_detail(K, L).value; }

TranslationFit min_translate_hausdorff(const Polytope& K, const Polytope& L) {
  if (K.dim() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "Hausdorff distance across dimensions");
  const int d = K.dim();
  const double tol = 1e-10 * (1.0 + std::max(K.diameter(), L.diameter()));

  std::vector<Vec> dirs;
  for (const auto& f : K.facet_info()) dirs.push_back(f.normal);
  for (const auto& f : L.facet_info()) dirs.push_back(f.normal);
  const auto net = direction_net(d, 32, 1);
  dirs.insert(dirs.end(), net.begin(), net.end());
  std::vector<double> gaps;  // h_K(u) - h_L(u)
  for (const auto& u : dirs) gaps.push_back(support_value(K, u) - support_value(L, u));

  TranslationFit fit;
  fit.value = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= 100; ++iter) {
    // min over x of max_i |gap_i + <x, u_i>|, solved through its dual
    //   max sum gap_i (a_i - b_i)  s.t.  sum (a_i - b_i) u_i = 0,  sum (a_i + b_i) = 1,
    // whose first d multipliers are -x and whose value is the optimal t.
    const int n = static_cast<int>(dirs.size());
    LinearProgram lp(2 * n);
    Eigen::VectorXd obj(2 * n);
    for (int i = 0; i < n; ++i) {
      obj(i) = gaps[i];
      obj(n + i) = -gaps[i];
    }
    lp.maximize(obj);
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd row(2 * n);
      for (int i = 0; i < n; ++i) {
        row(i) = dirs[i](k);
        row(n + i) = -dirs[i](k);
      }
      lp.add_constraint(std::move(row), Relation::Equal, 0.0);
    }
    lp.add_constraint(Eigen::VectorXd::Ones(2 * n), Relation::Equal, 1.0);
    const LpSolution sol = lp.solve();
    if (sol.status != LpStatus::Optimal) break;
    Vec x = Vec::Zero();
    for (int k = 0; k < d; ++k) x(k) = -sol.duals(k);
    const double t_lp = sol.objective;

    const Polytope moved = K.translated(x);
    auto cand = critical_gaps(moved, L);
    double verified = 0.0;
    for (const auto& g : cand) verified = std::max(verified, std::abs(g.gap));
    fit.iterations = iter;
    fit.lp_bound = t_lp;
    if (verified < fit.value) {
      fit.value = verified;
      fit.translation = x;
    }
    if (verified <= t_lp + tol) break;

    std::sort(cand.begin(), cand.end(),
              [](const DirectionalGap& a, const DirectionalGap& b) { return std::abs(a.gap) > std::abs(b.gap); });
    for (std::size_t i = 0; i < cand.size() && i < 32; ++i) {
      if (std::abs(cand[i].gap) <= t_lp + tol) break;
      dirs.push_back(cand[i].direction);
      gaps.push_back(cand[i].gap - x.dot(cand[i].direction));
    }
  }
  if (!std::isfinite(fit.value)) {
    fit.value = hausdorff(K, L);
    fit.translation = Vec::Zero();
  }
  return fit;
}

}  // namespace minkprobe
