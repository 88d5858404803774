#include <Eigen/Dense>
#include <stdexcept>

#include "dplqr/lqr.hpp"

namespace dplqr {

// Brute-force reference for the first-step gain. Builds the full quadratic
// program in the stacked control sequence U = [u_0; ...; u_{T-1}] for the
// reduced tracking problem e_{k+1} = e_k + u_k with stage cost
// u_k' R u_k (k = 0..T-1) plus e_k' (c d Q) e_k (k = 1..T-1), and solves the
// stationarity system by dense factorization. Kept free of any code shared
// with riccati_gain.
Eigen::MatrixXd qp_oracle_gain(const WeightPair& w, int horizon, int in_degree,
                               double c) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (in_degree < 0) throw std::invalid_argument("in-degree must be >= 0");
  if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
  const int n = w.dim();
  if (horizon * n > 64) {
    throw std::invalid_argument("qp_oracle_gain refused: T*n > 64 (oracle misuse)");
  }
  if (in_degree == 0 || horizon == 1) return Eigen::MatrixXd::Zero(n, n);

  const int T = horizon;
  const int nu = T * n;
  const Eigen::MatrixXd qtil = c * in_degree * w.Q;

  // e_k = e_0 + sum_{m<k} u_m; state cost rows k = 1..T-1
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(nu, nu);
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(nu, n);  // coefficient of e_0
  for (int k = 0; k < T; ++k) hess.block(k * n, k * n, n, n) += w.R;
  for (int k = 1; k < T; ++k) {
    for (int a = 0; a < k; ++a) {
      lin.block(a * n, 0, n, n) += qtil;
      for (int b = 0; b < k; ++b) {
        hess.block(a * n, b * n, n, n) += qtil;
      }
    }
  }
  // stationarity: 2 hess U + 2 lin e_0 = 0  ->  U = -hess^{-1} lin e_0
  const Eigen::MatrixXd sol = hess.ldlt().solve(lin);
  const Eigen::MatrixXd first = -sol.topRows(n);  // map e_0 -> u_0
  // u_0 = c K sum_j a_ij (xhat_j - x_i) = -c d K e_0
  return -first / (c * in_degree);
}

}  // namespace dplqr
