#pragma once

#include <Eigen/Dense>

namespace topomono {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0;
  int iterations = 0;
  bool converged = false;
};

/// min |A x - b|_2 subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations = 0,
                double tolerance = 1e-12);

}  // namespace topomono
