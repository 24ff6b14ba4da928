#pragma once

#include <Eigen/Dense>

namespace bicens {

struct SimplexQpResult {
  Eigen::VectorXd q;
  int iterations = 0;
  bool optimal = false;
};

// Minimizes 0.5 q'Wq - c'q over {q >= 0, sum q = 1} with a primal active-set
// method started at the feasible point q0. W must be symmetric positive
// semidefinite; `ridge` is added to its diagonal in every solve.
SimplexQpResult solve_simplex_qp(const Eigen::MatrixXd& w, const Eigen::VectorXd& c,
                                 const Eigen::VectorXd& q0, double ridge = 0.0);

}  // namespace bicens
