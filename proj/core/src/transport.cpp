#include "minkprobe/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "minkprobe/errors.hpp"

namespace minkprobe {

namespace {

struct Cell {
  int i;
  int j;
  double flow;
};

}  // namespace

TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (cost.rows() != m || cost.cols() != n) throw Error(ErrorCode::DimensionMismatch, "transport cost shape");
  TransportPlan plan;
  if (m == 0 || n == 0) return plan;

  double total = 0.0;
  for (double s : supply) {
    if (s < 0.0) throw Error(ErrorCode::InvalidArgument, "negative supply");
    total += s;
  }
  const double mass_eps = 1e-15 * std::max(1.0, total);

  // Northwest corner start; degenerate steps keep a spanning tree of m+n-1 cells.
  std::vector<double> s(supply.begin(), supply.end());
  std::vector<double> d(demand.begin(), demand.end());
  std::vector<Cell> basis;
  basis.reserve(m + n - 1);
  {
    int i = 0, j = 0;
    while (i < m && j < n) {
      const double q = std::min(s[i], d[j]);
      basis.push_back({i, j, q});
      s[i] -= q;
      d[j] -= q;
      if (i == m - 1 && j == n - 1) break;
      const bool row_done = s[i] <= mass_eps || j == n - 1;
      const bool col_done = d[j] <= mass_eps || i == m - 1;
      if (row_done && col_done) {
        if (i + 1 < m) ++i;
        else ++j;
      } else if (row_done) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const double cost_scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double price_eps = 1e-12 * cost_scale;
  const long max_iter = 20L * (m + n) * (m + n) + 1000;

  std::vector<double> u(m), v(n);
  std::vector<std::vector<int>> adj(m + n);  // node -> basis cell indices
  std::vector<int> parent_cell(m + n);
  std::vector<char> seen(m + n);
  const int block = std::max(1, std::min(m, 65536 / std::max(n, 1)));
  int next_row = 0;

  for (long iter = 0; iter < max_iter; ++iter) {
    for (auto& a : adj) a.clear();
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      adj[basis[k].i].push_back(k);
      adj[m + basis[k].j].push_back(k);
    }

    // Potentials u_i + v_j = c_ij on basic cells.
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<int> bfs;
    for (int root = 0; root < m + n; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      if (root < m) u[root] = 0.0;
      else v[root - m] = 0.0;
      bfs.push(root);
      while (!bfs.empty()) {
        const int node = bfs.front();
        bfs.pop();
        for (int k : adj[node]) {
          const Cell& c = basis[k];
          const int other = node < m ? m + c.j : c.i;
          if (seen[other]) continue;
          seen[other] = 1;
          if (other < m) u[other] = cost(c.i, c.j) - v[c.j];
          else v[other - m] = cost(c.i, c.j) - u[c.i];
          bfs.push(other);
        }
      }
    }

    // Partial pricing: scan row blocks cyclically and enter the best cell of
    // the first block that has a negative reduced cost.
    int ei = -1, ej = -1;
    double best = -price_eps;
    for (int scanned = 0; scanned < m && ei < 0;) {
      for (int b = 0; b < block && scanned < m; ++b, ++scanned, next_row = (next_row + 1) % m) {
        const int i = next_row;
        for (int j = 0; j < n; ++j) {
          const double r = cost(i, j) - u[i] - v[j];
          if (r < best) {
            best = r;
            ei = i;
            ej = j;
          }
        }
      }
    }
    if (ei < 0) break;
    plan.iterations = iter + 1;

    // Tree path from row node ei to column node ej.
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(parent_cell.begin(), parent_cell.end(), -1);
    seen[ei] = 1;
    bfs.push(ei);
    while (!bfs.empty()) {
      const int node = bfs.front();
      bfs.pop();
      if (node == m + ej) break;
      for (int k : adj[node]) {
        const Cell& c = basis[k];
        const int other = node < m ? m + c.j : c.i;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_cell[other] = k;
        bfs.push(other);
      }
    }
    while (!bfs.empty()) bfs.pop();
    if (!seen[m + ej]) {
      // Disconnected basis (can only arise from a broken start); add the cell.
      basis.push_back({ei, ej, 0.0});
      continue;
    }

    // Walk back from column ej; the cell touching ej loses flow, then alternate.
    std::vector<int> path;
    for (int node = m + ej; node != ei;) {
      const int k = parent_cell[node];
      path.push_back(k);
      const Cell& c = basis[k];
      node = node < m ? m + c.j : c.i;
    }
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t p = 0; p < path.size(); p += 2) {
      const double f = basis[path[p]].flow;
      if (f < theta) {
        theta = f;
        leave = path[p];
      }
    }
    for (std::size_t p = 0; p < path.size(); ++p) basis[path[p]].flow += (p % 2 == 0 ? -theta : theta);
    basis[leave] = {ei, ej, theta};
  }

  plan.cost = 0.0;
  for (const Cell& c : basis) {
    plan.cost += std::max(c.flow, 0.0) * cost(c.i, c.j);
    plan.flows.push_back({c.i, c.j, std::max(c.flow, 0.0)});
  }
  return plan;
}

}  // namespace minkprobe
