#include "topomono/nnls.hpp"

#include <vector>

namespace topomono {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    if (passive[j]) idx.push_back(j);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(A.cols());
  if (idx.empty()) return s;
  Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
  const Eigen::VectorXd sp = Ap.completeOrthogonalDecomposition().solve(b);
  for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(k);
  return s;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations,
                double tolerance) {
  const Eigen::Index n = A.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);
  NnlsResult res;
  res.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff() * std::max(1.0, b.cwiseAbs().maxCoeff()));
  const double wtol = tolerance * scale;

  Eigen::VectorXd w = A.transpose() * (b - A * res.x);
  while (res.iterations < max_iterations) {
    Eigen::Index t = -1;
    double best = wtol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[j] && w(j) > best) {
        best = w(j);
        t = j;
      }
    if (t < 0) {
      res.converged = true;
      break;
    }
    passive[t] = true;
    ++res.iterations;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      const Eigen::VectorXd s = solve_passive(A, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && s(j) <= 0) feasible = false;
      if (feasible) {
        res.x = s;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && s(j) <= 0) {
          const double denom = res.x(j) - s(j);
          if (denom > 0) alpha = std::min(alpha, res.x(j) / denom);
        }
      res.x += alpha * (s - res.x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && res.x(j) <= tolerance) {
          passive[j] = false;
          res.x(j) = 0;
        }
    }
    w = A.transpose() * (b - A * res.x);
  }
  res.residual_norm = (A * res.x - b).norm();
  return res;
}

}  // namespace topomono
