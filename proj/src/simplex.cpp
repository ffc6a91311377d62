#include "shapeapprox/simplex.hpp"

#include <cmath>
#include <limits>
#include <algorithm>
#include <vector>

#include "shapeapprox/scalar.hpp"

namespace shapeapprox {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-12;

// Revised simplex over the columns of A (with m trailing artificial
// columns), refactorizing the m x m basis every iteration.
struct Revised {
  const Eigen::MatrixXd& A;  // m x (n + m), artificials appended
  const Eigen::VectorXd& b;
  std::vector<int> basis;
  int m, ncols;
  int used = 0;

  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i) {
      B.col(i) = A.col(basis[static_cast<std::size_t>(i)]);
    }
    return B;
  }

  // Minimizes cost over columns [0, allowed) starting from the current basis.
  int run(const Eigen::VectorXd& cost, int allowed, int max_iterations) {
    int it = 0;
    int stall = 0;
    double last_obj = std::numeric_limits<double>::infinity();
    const double cscale = 1 + cost.cwiseAbs().maxCoeff();
    while (true) {
      if (used >= max_iterations) {
        throw SolverError("simplex: iteration cap reached");
      }
      const auto lu = basis_matrix().partialPivLu();
      Eigen::VectorXd xb = lu.solve(b);
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) {
        cb(i) = cost(basis[static_cast<std::size_t>(i)]);
      }
      const Eigen::VectorXd y = lu.transpose().solve(cb);
      const double obj = cb.dot(xb);
      stall = obj >= last_obj - 1e-14 * (1 + std::abs(obj)) ? stall + 1 : 0;
      last_obj = obj;
      const bool bland = stall > 20;

      std::vector<char> in_basis(static_cast<std::size_t>(ncols), 0);
      for (int v : basis) in_basis[static_cast<std::size_t>(v)] = 1;
      int col = -1;
      double best = -kCostTol * cscale;
      for (int j = 0; j < allowed; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        const double d = cost(j) - A.col(j).dot(y);
        if (d < best) {
          col = j;
          if (bland) break;
          best = d;
        }
      }
      if (col < 0) {
        return it;
      }
      const Eigen::VectorXd dir = lu.solve(A.col(col));
      const double dscale = dir.cwiseAbs().maxCoeff();
      int row = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (dir(i) > kPivotTol * dscale) {
          const double r = std::max(0.0, xb(i)) / dir(i);
          if (r < ratio * (1 - 1e-12) ||
              (r <= ratio * (1 + 1e-12) && row >= 0 &&
               basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(row)])) {
            ratio = r;
            row = i;
          }
        }
      }
      if (row < 0) {
        throw SolverError("simplex: problem unbounded");
      }
      basis[static_cast<std::size_t>(row)] = col;
      ++it;
      ++used;
    }
  }
};

}  // namespace

LpSolution simplex_standard(const Eigen::MatrixXd& A0, const Eigen::VectorXd& b0, const Eigen::VectorXd& c,
                            int max_iterations) {
  const int m = static_cast<int>(A0.rows());
  const int n = static_cast<int>(A0.cols());
  if (b0.size() != m || c.size() != n) {
    throw SolverError("simplex: dimension mismatch");
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n + m);
  Eigen::VectorXd b = b0;
  for (int i = 0; i < m; ++i) {
    const double s = b0(i) < 0 ? -1.0 : 1.0;
    A.block(i, 0, 1, n) = s * A0.row(i);
    A(i, n + i) = 1.0;
    b(i) = s * b0(i);
  }
  Revised rs{A, b, {}, m, n + m};
  for (int i = 0; i < m; ++i) {
    rs.basis.push_back(n + i);
  }
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  int iters = rs.run(phase1, n + m, max_iterations);
  {
    const Eigen::VectorXd xb = rs.basis_matrix().partialPivLu().solve(b);
    double infeas = 0;
    for (int i = 0; i < m; ++i) {
      if (rs.basis[static_cast<std::size_t>(i)] >= n) infeas += std::abs(xb(i));
    }
    if (infeas > 1e-9 * (1 + b.cwiseAbs().maxCoeff())) {
      throw SolverError("simplex: problem infeasible");
    }
  }
  // Swap zero-level artificials for structural columns that keep B regular.
  for (int i = 0; i < m; ++i) {
    if (rs.basis[static_cast<std::size_t>(i)] < n) continue;
    const auto lu = rs.basis_matrix().partialPivLu();
    int col = -1;
    double best = 1e-9;
    for (int j = 0; j < n; ++j) {
      if (std::find(rs.basis.begin(), rs.basis.end(), j) != rs.basis.end()) continue;
      const double v = std::abs(lu.solve(A.col(j))(i));
      if (v > best) {
        best = v;
        col = j;
      }
    }
    if (col >= 0) rs.basis[static_cast<std::size_t>(i)] = col;
  }
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  iters += rs.run(phase2, n, max_iterations);

  LpSolution sol;
  sol.x = Eigen::VectorXd::Zero(n);
  sol.basis.resize(m);
  const Eigen::VectorXd xb = rs.basis_matrix().partialPivLu().solve(b);
  for (int i = 0; i < m; ++i) {
    const int bcol = rs.basis[static_cast<std::size_t>(i)];
    sol.basis(i) = bcol;
    if (bcol < n) {
      sol.x(bcol) = std::max(0.0, xb(i));
    }
  }
  sol.objective = c.dot(sol.x);
  sol.iterations = iters;
  return sol;
}

LpSolution simplex_free_inequality(const Eigen::MatrixXd& G, const Eigen::VectorXd& h, const Eigen::VectorXd& c,
                                   int max_iterations) {
  const int rows = static_cast<int>(G.rows());
  const int vars = static_cast<int>(G.cols());
  const LpSolution dual = simplex_standard(G.transpose(), c, h, max_iterations);
  std::vector<int> tight;
  for (int i = 0; i < dual.basis.size(); ++i) {
    if (dual.basis(i) < rows) {
      tight.push_back(dual.basis(i));
    }
  }
  if (static_cast<int>(tight.size()) < vars) {
    throw SolverError("simplex: degenerate dual basis, cannot recover primal point");
  }
  Eigen::MatrixXd GB(vars, vars);
  Eigen::VectorXd hB(vars);
  for (int i = 0; i < vars; ++i) {
    GB.row(i) = G.row(tight[static_cast<std::size_t>(i)]);
    hB(i) = h(tight[static_cast<std::size_t>(i)]);
  }
  LpSolution sol;
  sol.x = GB.fullPivLu().solve(hB);
  sol.objective = c.dot(sol.x);
  sol.iterations = dual.iterations;
  sol.basis = Eigen::Map<const Eigen::VectorXi>(tight.data(), vars);
  return sol;
}

}  // namespace shapeapprox
