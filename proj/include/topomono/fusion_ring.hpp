#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topomono/validation.hpp"

namespace topomono {

inline constexpr std::size_t kMaxRank = 64;

struct Label {
  std::size_t index = 0;
  std::string name;
};

/// Finite fusion ring with the vacuum at index 0.
///
/// Fusion multiplicities are stored densely as N(a, b, c) = N_{ab}^c.
/// Construction only checks shapes; the ring axioms are checked by
/// validate_ring so that broken input can be reported rather than thrown.
class FusionRing {
 public:
  FusionRing(std::vector<std::string> names, std::vector<std::size_t> dual,
             std::vector<int> fusion);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  Label label(std::size_t a) const;
  Label label(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  std::size_t dual(std::size_t a) const { return dual_.at(a); }
  const std::vector<std::size_t>& duals() const { return dual_; }

  int N(std::size_t a, std::size_t b, std::size_t c) const {
    return fusion_[(a * rank() + b) * rank() + c];
  }
  const std::vector<int>& fusion_tensor() const { return fusion_; }

  /// Left-multiplication matrix L_a with (L_a)_{b,c} = N_{ab}^c.
  Eigen::MatrixXd fusion_matrix(std::size_t a) const;

  bool operator==(const FusionRing& other) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> dual_;
  std::vector<int> fusion_;
};

using RingPtr = std::shared_ptr<const FusionRing>;

RingPtr make_ring(std::vector<std::string> names, std::vector<std::size_t> dual,
                  std::vector<int> fusion);

/// Ring of a finite abelian group presented by a multiplication table:
/// table[g * order + h] = g + h, identity at 0.
RingPtr group_ring(std::vector<std::string> names, const std::vector<std::size_t>& table);

/// Ring of Z_{n1} x ... x Z_{nk}, elements indexed with the first coordinate fastest.
RingPtr abelian_group_ring(const std::vector<int>& orders, std::vector<std::string> names = {});

/// Deligne product ring; label (a, b) sits at index a * B.rank() + b.
RingPtr product_ring(const FusionRing& A, const FusionRing& B);

ValidationReport validate_ring(const FusionRing& ring);

/// The labels c of a x b, each repeated N_{ab}^c times, in ascending index order.
std::vector<Label> fuse(const FusionRing& ring, std::size_t a, std::size_t b);

struct QuantumDimsOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100000;
};

/// Frobenius-Perron dimensions with d_0 = 1, by power iteration on
/// sum_a L_a. Throws NumericalError when the iteration cap is hit.
Eigen::VectorXd quantum_dims(const FusionRing& ring, const QuantumDimsOptions& opts = {});

}  // namespace topomono
