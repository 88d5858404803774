#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dplqr {

/// Directed communication graph with unit edge weights.
/// a(i,j) == 1 means j is an in-neighbor of i (edge j -> i).
class DirectedGraph {
public:
  explicit DirectedGraph(Eigen::MatrixXi adjacency);

  int num_agents() const { return static_cast<int>(adj_.rows()); }
  const Eigen::MatrixXi& adjacency() const { return adj_; }
  int in_degree(int i) const { return adj_.row(i).sum(); }
  std::vector<int> in_neighbors(int i) const;

private:
  Eigen::MatrixXi adj_;
};

struct SpectralConstants {
  double rho_L = 0.0;  // squared largest singular value of the Laplacian
  double rho_A = 0.0;  // squared largest singular value of the adjacency
};

Eigen::MatrixXd laplacian(const DirectedGraph& g);

/// True iff some root reaches every node along directed edges.
bool has_spanning_tree(const DirectedGraph& g);

/// P = I - (1/N) 11^T, the projector onto the disagreement subspace.
Eigen::MatrixXd disagreement_projector(int n_agents);

SpectralConstants spectral_constants(const DirectedGraph& g);

}  // namespace dplqr
