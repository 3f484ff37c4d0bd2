// Copyright 2026 The faprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faprop/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "faprop/errors.hpp"

namespace faprop {

namespace {

struct Cell {
  int i;
  int j;
};

}  // namespace

TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw ValidationError("transport problem needs nonempty marginals");
  if (cost.rows() != m || cost.cols() != n) throw DimensionMismatch("cost matrix shape does not match marginals");
  if ((supply.array() < 0.0).any() || (demand.array() < 0.0).any())
    throw ValidationError("transport marginals must be nonnegative");
  const double sa = supply.sum(), sb = demand.sum();
  if (!(sa > 0.0) || std::abs(sa - sb) > 1e-9 * std::max(1.0, sa))
    throw ValidationError("transport marginals must have equal positive mass");

  Eigen::VectorXd ra = supply;
  Eigen::VectorXd rb = demand * (sa / sb);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m, n);
  std::vector<std::vector<char>> basic(m, std::vector<char>(n, 0));
  std::vector<Cell> basis;

  // Northwest corner: exactly m + n - 1 basic cells, zeros included.
  for (int i = 0, j = 0;;) {
    const double v = std::min(ra[i], rb[j]);
    x(i, j) = v;
    basic[i][j] = 1;
    basis.push_back({i, j});
    ra[i] -= v;
    rb[j] -= v;
    if (i == m - 1 && j == n - 1) break;
    if (j == n - 1 || (i < m - 1 && ra[i] <= rb[j]))
      ++i;
    else
      ++j;
  }

  TransportSolution sol;
  std::vector<double> u(m), v(n);
  std::vector<char> has_u(m), has_v(n);
  // Bipartite tree on rows 0..m-1 and columns m..m+n-1.
  std::vector<std::vector<int>> adj(m + n);
  std::vector<int> parent(m + n);

  bool optimal = false;
  bool degenerate = false;  // after a zero-step pivot, price by first improving cell
  for (int iter = 0; iter < 100000; ++iter) {
    for (auto& a : adj) a.clear();
    for (const Cell& c : basis) {
      adj[c.i].push_back(m + c.j);
      adj[m + c.j].push_back(c.i);
    }
    // Potentials u_i + v_j = c_ij on the basis tree, rooted at row 0.
    std::fill(has_u.begin(), has_u.end(), 0);
    std::fill(has_v.begin(), has_v.end(), 0);
    u[0] = 0.0;
    has_u[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int nb : adj[node]) {
        if (node < m) {
          const int j = nb - m;
          if (has_v[j]) continue;
          v[j] = cost(node, j) - u[node];
          has_v[j] = 1;
        } else {
          if (has_u[nb]) continue;
          u[nb] = cost(nb, node - m) - v[node - m];
          has_u[nb] = 1;
        }
        stack.push_back(nb);
      }
    }

    int ei = -1, ej = -1;
    double best = -1e-12 * std::max(1.0, cost.cwiseAbs().maxCoeff());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        if (basic[i][j]) continue;
        const double r = cost(i, j) - u[i] - v[j];
        if (r < best && !(degenerate && ei >= 0)) {
          best = r;
          ei = i;
          ej = j;
        }
      }
    if (ei < 0) {
      optimal = true;
      break;
    }

    // Tree path from column ej to row ei closes the cycle with the entering cell.
    std::fill(parent.begin(), parent.end(), -1);
    parent[m + ej] = m + ej;
    stack.assign(1, m + ej);
    while (!stack.empty() && parent[ei] < 0) {
      const int node = stack.back();
      stack.pop_back();
      for (int nb : adj[node])
        if (parent[nb] < 0) {
          parent[nb] = node;
          stack.push_back(nb);
        }
    }
    std::vector<Cell> path;  // edges from row ei back toward column ej
    for (int node = ei; node != m + ej; node = parent[node]) {
      const int p = parent[node];
      path.push_back(node < m ? Cell{node, p - m} : Cell{p, node - m});
    }
    // Walking from ej: the first edge is '-', then alternating.
    std::reverse(path.begin(), path.end());
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t t = 0; t < path.size(); t += 2) {
      const double val = x(path[t].i, path[t].j);
      if (val < theta) {
        theta = val;
        leave = static_cast<int>(t);
      }
    }
    degenerate = theta <= 0.0;
    x(ei, ej) += theta;
    for (std::size_t t = 0; t < path.size(); ++t) x(path[t].i, path[t].j) += (t % 2 == 0 ? -theta : theta);
    const Cell out = path[leave];
    x(out.i, out.j) = 0.0;
    basic[out.i][out.j] = 0;
    basic[ei][ej] = 1;
    for (Cell& c : basis)
      if (c.i == out.i && c.j == out.j) {
        c = {ei, ej};
        break;
      }
    ++sol.pivots;
  }

  if (!optimal) throw Error("transportation simplex did not terminate");
  x = x.cwiseMax(0.0);
  sol.plan = x;
  sol.cost = (x.array() * cost.array()).sum();
  return sol;
}

}  // namespace faprop
