#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topomono/fusion_ring.hpp"
#include "topomono/validation.hpp"

namespace topomono {

using cplx = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// Unnormalized S-matrix (S_00 = 1, S_0a = d_a), twists and dimensions over
/// a fusion ring. Degenerate (non-modular) data is allowed; modularity is an
/// opt-in strict check.
class ModularData {
 public:
  ModularData(RingPtr ring, Eigen::MatrixXcd S, Eigen::VectorXcd theta, Eigen::VectorXd dims,
              double tolerance = kDefaultTolerance, std::string name = {});

  const FusionRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t rank() const { return ring_->rank(); }
  const Eigen::MatrixXcd& S() const { return S_; }
  const Eigen::VectorXcd& theta() const { return theta_; }
  const Eigen::VectorXd& dims() const { return dims_; }
  double tolerance() const { return tolerance_; }
  const std::string& name() const { return name_; }

  /// Global dimension squared, sum_a d_a^2.
  double global_dim_sq() const { return dims_.squaredNorm(); }

  ModularData with_tolerance(double tol) const;
  ModularData with_name(std::string name) const;

 private:
  RingPtr ring_;
  Eigen::MatrixXcd S_;
  Eigen::VectorXcd theta_;
  Eigen::VectorXd dims_;
  double tolerance_;
  std::string name_;
};

/// Checks S_0a = S_a0 = d_a, symmetry of S, theta_0 = 1, |theta_a| = 1,
/// theta_dual(a) = theta_a, and the ring axioms. With strict, also S S^* = D^2 I
/// and integrality / agreement of the Verlinde formula with the ring fusion.
ValidationReport validate_modular_data(const ModularData& md, bool strict = false);

/// Dense rank^3 real tensor, entry (a, b, c) at (a * r + b) * r + c.
struct FusionTensor {
  std::size_t rank = 0;
  std::vector<double> values;
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return values[(a * rank + b) * rank + c];
  }
};

/// N'_{ab}^c = sum_x S_ax S_bx conj(S_cx) / (D^2 S_0x). Rejects data whose
/// S S^* differs from D^2 I, and zero vacuum-row entries.
FusionTensor verlinde_fusion(const ModularData& md);

/// Largest rank(S) consistent with the tolerance, via singular values.
std::size_t numerical_rank(const Eigen::MatrixXcd& S, double tol);

}  // namespace topomono
