#pragma once

#include <Eigen/Dense>

namespace shapeapprox {

struct LpSolution {
  Eigen::VectorXd x;
  double objective = 0;
  int iterations = 0;
  Eigen::VectorXi basis;  // basic column indices of the standard-form problem
};

/// min c^T y  s.t.  A y = b, y >= 0, by a two-phase
/// revised simplex (Dantzig pricing, Bland's rule after degenerate stalls). Throws
/// SolverError on infeasibility, unboundedness or the iteration cap.
LpSolution simplex_standard(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                            int max_iterations = 20000);

/// max c^T z  s.t.  G z <= h with z free, solved through its dual
/// min h^T y, G^T y = c, y >= 0. The primal point solves the tight rows of
/// the optimal dual basis; basis holds those row indices.
LpSolution simplex_free_inequality(const Eigen::MatrixXd& G, const Eigen::VectorXd& h, const Eigen::VectorXd& c,
                                   int max_iterations = 20000);

}  // namespace shapeapprox
