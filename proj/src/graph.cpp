#include "dplqr/graph.hpp"

#include <queue>
#include <stdexcept>

namespace dplqr {

DirectedGraph::DirectedGraph(Eigen::MatrixXi adjacency) : adj_(std::move(adjacency)) {
  const auto rows = adj_.rows();
  if (rows < 2 || adj_.cols() != rows) {
    throw std::invalid_argument("adjacency must be square with N >= 2");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) {
      const int a = adj_(i, j);
      if (a != 0 && a != 1) {
        throw std::invalid_argument("adjacency entries must be 0 or 1");
      }
      if (i == j && a != 0) {
        throw std::invalid_argument("adjacency diagonal must be zero");
      }
    }
  }
}

std::vector<int> DirectedGraph::in_neighbors(int i) const {
  std::vector<int> nbrs;
  for (int j = 0; j < num_agents(); ++j) {
    if (adj_(i, j) == 1) nbrs.push_back(j);
  }
  return nbrs;
}

Eigen::MatrixXd laplacian(const DirectedGraph& g) {
  const int n = g.num_agents();
  Eigen::MatrixXd l = -g.adjacency().cast<double>();
  for (int i = 0; i < n; ++i) {
    l(i, i) = static_cast<double>(g.in_degree(i));
  }
  return l;
}

bool has_spanning_tree(const DirectedGraph& g) {
  const int n = g.num_agents();
  const auto& a = g.adjacency();
  for (int root = 0; root < n; ++root) {
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(root);
    seen[root] = 1;
    int count = 1;
    while (!frontier.empty()) {
      const int j = frontier.front();
      frontier.pop();
      // edge j -> i exists when a(i, j) == 1
      for (int i = 0; i < n; ++i) {
        if (a(i, j) == 1 && !seen[i]) {
          seen[i] = 1;
          ++count;
          frontier.push(i);
        }
      }
    }
    if (count == n) return true;
  }
  return false;
}

Eigen::MatrixXd disagreement_projector(int n_agents) {
  if (n_agents < 1) throw std::invalid_argument("projector needs N >= 1");
  const double inv = 1.0 / static_cast<double>(n_agents);
  return Eigen::MatrixXd::Identity(n_agents, n_agents) -
         Eigen::MatrixXd::Constant(n_agents, n_agents, inv);
}

SpectralConstants spectral_constants(const DirectedGraph& g) {
  const Eigen::MatrixXd l = laplacian(g);
  const Eigen::MatrixXd a = g.adjacency().cast<double>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_l(l);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_a(a);
  SpectralConstants sc;
  const double sl = svd_l.singularValues()(0);
  const double sa = svd_a.singularValues()(0);
  sc.rho_L = sl * sl;
  sc.rho_A = sa * sa;
  return sc;
}

}  // namespace dplqr
