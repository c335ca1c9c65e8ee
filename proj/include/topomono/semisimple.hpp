#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "topomono/fusion_ring.hpp"
#include "topomono/modular_data.hpp"

namespace topomono {

/// Direct sum of simples, rho = sum_a n_{rho,a} a.
class SemisimpleObject {
 public:
  SemisimpleObject(RingPtr ring, std::vector<int> mult);

  static SemisimpleObject zero(RingPtr ring);
  static SemisimpleObject simple(RingPtr ring, std::size_t a);

  const FusionRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<int>& mult() const { return mult_; }
  int mult(std::size_t a) const { return mult_.at(a); }
  std::size_t rank() const { return mult_.size(); }
  bool is_zero() const;
  int total_multiplicity() const;

  bool same_ring(const SemisimpleObject& other) const;
  bool operator==(const SemisimpleObject& other) const {
    return same_ring(other) && mult_ == other.mult_;
  }

 private:
  RingPtr ring_;
  std::vector<int> mult_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Morphism source -> target stored as one n_{target,a} x n_{source,a}
/// complex block per label (Schur's lemma in the simple-object basis).
class BlockMorphism {
 public:
  BlockMorphism(SemisimpleObject source, SemisimpleObject target,
                std::vector<Eigen::MatrixXcd> blocks);

  static BlockMorphism identity(const SemisimpleObject& obj);
  static BlockMorphism zero(const SemisimpleObject& source, const SemisimpleObject& target);
  /// Endomorphism with the given blocks; shapes must match obj.
  static BlockMorphism endo(const SemisimpleObject& obj, std::vector<Eigen::MatrixXcd> blocks);

  const SemisimpleObject& source() const { return source_; }
  const SemisimpleObject& target() const { return target_; }
  const Eigen::MatrixXcd& block(std::size_t a) const { return blocks_.at(a); }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  bool is_endo() const { return source_ == target_; }

  BlockMorphism adjoint() const;
  /// this o other, i.e. apply other first.
  BlockMorphism compose(const BlockMorphism& other) const;
  BlockMorphism operator+(const BlockMorphism& other) const;
  double max_abs_diff(const BlockMorphism& other) const;

 private:
  SemisimpleObject source_;
  SemisimpleObject target_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

inline constexpr double kMaxConditionNumber = 1e8;

/// A non-standard solution of the conjugate equations for rho, stored through
/// the invertible T in End(rho) relating it to the standard one:
/// R = (id (x) T^*) R_std,  Rbar = (T^{-1} (x) id) Rbar_std.
/// T = id is the standard solution.
class ConjugateDeformation {
 public:
  /// Throws NumericalError when a block's condition number exceeds kMaxConditionNumber.
  ConjugateDeformation(SemisimpleObject object, BlockMorphism T);
  explicit ConjugateDeformation(const SemisimpleObject& object);  // standard solution

  const SemisimpleObject& object() const { return T_.source(); }
  const BlockMorphism& T() const { return T_; }
  double condition_number() const { return cond_; }

  /// T^* T, and its inverse.
  BlockMorphism gram() const;
  BlockMorphism gram_inverse() const;

 private:
  BlockMorphism T_;
  double cond_ = 1.0;
};

enum class Side { left, right };

SemisimpleObject conjugate_object(const SemisimpleObject& rho);

/// sum_a d(a) tr(X_a). Throws ZeroObjectError on the zero object.
cplx categorical_trace(const BlockMorphism& X, const Eigen::VectorXd& dims);

BlockMorphism central_projection(const SemisimpleObject& rho, std::size_t a);

/// (|R|^2, |Rbar|^2) = (Tr(T^* T), Tr((T^* T)^{-1})).
std::pair<double, double> solution_norms(const ConjugateDeformation& def,
                                         const Eigen::VectorXd& dims);

/// left:  t_a = d(a)^{-1} Tr(p_a T^* T)
/// right: s_a = d(a)^{-1} Tr(p_a (T^* T)^{-1})
/// Zero off the support of the object.
Eigen::VectorXd trace_coefficients(const ConjugateDeformation& def, Side side,
                                     const Eigen::VectorXd& dims);

/// sum_{a,b} t_a^rho s_b^sigma S_{a,b}: the value of
/// (R_rho^* (x) Rbar_sigma^*)(id (x) eps(sigma,rho) eps(rho,sigma) (x) id)(R_rho (x) Rbar_sigma).
cplx double_braiding_trace(const ConjugateDeformation& rho, const ConjugateDeformation& sigma,
                           const ModularData& md);

/// sum_a n_{rho,a} theta_a, which the self-braiding sandwich equals for any deformation.
cplx twist_trace(const ConjugateDeformation& rho, const ModularData& md);

}  // namespace topomono
