#include "bicens/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bicens {

SimplexQpResult solve_simplex_qp(const Eigen::MatrixXd& w, const Eigen::VectorXd& c,
                                 const Eigen::VectorXd& q0, double ridge) {
  const Eigen::Index s = c.size();
  SimplexQpResult res;
  res.q = q0;
  std::vector<bool> free(s, false);
  for (Eigen::Index j = 0; j < s; ++j) free[j] = q0[j] > 0.0;

  double scale = 1.0;
  for (Eigen::Index j = 0; j < s; ++j) scale = std::max(scale, std::abs(w(j, j)) + std::abs(c[j]));
  const double mult_tol = 1e-13 * scale;

  const int max_iter = 50 * static_cast<int>(s) + 100;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < s; ++j)
      if (free[j]) idx.push_back(j);
    const auto f = static_cast<Eigen::Index>(idx.size());
    if (f == 0) break;
    Eigen::MatrixXd wf(f, f);
    Eigen::VectorXd cf(f);
    for (Eigen::Index a = 0; a < f; ++a) {
      cf[a] = c[idx[a]];
      for (Eigen::Index b = 0; b < f; ++b) wf(a, b) = w(idx[a], idx[b]);
      wf(a, a) += ridge;
    }
    // Equality-constrained minimizer on the free set via the Schur complement
    // of the constraint sum q = 1.
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(wf);
    const Eigen::VectorXd a_vec = ldlt.solve(cf);
    const Eigen::VectorXd b_vec = ldlt.solve(Eigen::VectorXd::Ones(f));
    const double mu = (a_vec.sum() - 1.0) / b_vec.sum();
    const Eigen::VectorXd qhat = a_vec - mu * b_vec;

    if (qhat.minCoeff() >= 0.0) {
      res.q.setZero();
      for (Eigen::Index a = 0; a < f; ++a) res.q[idx[a]] = qhat[a];
      // Multipliers of the bound constraints q_j >= 0 for fixed indices.
      Eigen::VectorXd grad = w * res.q - c + ridge * res.q;
      Eigen::Index enter = -1;
      double most_negative = -mult_tol;
      for (Eigen::Index j = 0; j < s; ++j) {
        if (free[j]) continue;
        const double lambda = grad[j] + mu;
        if (lambda < most_negative) {
          most_negative = lambda;
          enter = j;
        }
      }
      if (enter < 0) {
        res.optimal = true;
        return res;
      }
      free[enter] = true;
      continue;
    }

    // Step toward qhat until the first free coordinate hits zero.
    double alpha = 1.0;
    Eigen::Index block = -1;
    for (Eigen::Index a = 0; a < f; ++a) {
      const double cur = res.q[idx[a]];
      if (qhat[a] < 0.0) {
        const double ratio = cur / (cur - qhat[a]);
        if (ratio < alpha) {
          alpha = ratio;
          block = idx[a];
        }
      }
    }
    for (Eigen::Index a = 0; a < f; ++a) res.q[idx[a]] += alpha * (qhat[a] - res.q[idx[a]]);
    if (block >= 0) {
      res.q[block] = 0.0;
      free[block] = false;
    }
    for (Eigen::Index j = 0; j < s; ++j) {
      if (free[j] && res.q[j] <= 0.0) {
        res.q[j] = 0.0;
        free[j] = false;
      }
    }
    const double total = res.q.sum();
    if (total > 0.0) res.q /= total;
  }
  return res;
}

}  // namespace bicens
