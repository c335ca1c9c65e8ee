#pragma once

#include <optional>
#include <vector>

#include "topomono/modular_data.hpp"
#include "topomono/semisimple.hpp"

namespace topomono {

inline constexpr int kMaxPointedExponent = 12;
inline constexpr std::size_t kMaxPointedOrder = 64;

/// Braided category of a finite abelian group Z_{n1} x ... x Z_{nk} with
/// quadratic form q (theta_g = q(g)). Elements are indexed with the first
/// coordinate fastest.
///
/// Explicit braiding uses the R-scalars
///   c(x, y) = prod_i q(e_i)^{x_i y_i} * prod_{i<j} B(e_i, e_j)^{x_i y_j}
/// on coordinate representatives 0 <= x_i < n_i. They satisfy c(g, g) = q(g)
/// and c(g, h) c(h, g) = B(g, h); any other choice differs by a gauge that
/// cancels in every quantity computed here.
class PointedCategory {
 public:
  PointedCategory(std::vector<int> orders, std::vector<cplx> q,
                  std::vector<std::string> names = {}, double tolerance = kDefaultTolerance);

  const std::vector<int>& orders() const { return orders_; }
  const std::vector<cplx>& q() const { return q_; }
  std::size_t order() const { return q_.size(); }
  const RingPtr& ring() const { return ring_; }
  double tolerance() const { return tol_; }
  /// validate_pointed(*this), computed once at construction.
  const ValidationReport& report() const { return report_; }

  std::vector<int> coords(std::size_t g) const;
  std::size_t element(const std::vector<int>& x) const;
  std::size_t add(std::size_t g, std::size_t h) const;
  std::size_t neg(std::size_t g) const;

  /// Monodromy B(g, h) = q(g + h) / (q(g) q(h)).
  cplx monodromy(std::size_t g, std::size_t h) const;
  /// R-scalar of the braiding on the (g, h) component.
  cplx r_scalar(std::size_t g, std::size_t h) const;

 private:
  std::vector<int> orders_;
  std::vector<cplx> q_;
  RingPtr ring_;
  double tol_;
  ValidationReport report_;
};

/// q(0) = 1, |q| = 1, q(-g) = q(g), B symmetric bicharacter, and the
/// R-scalar splitting reproduces q and B.
ValidationReport validate_pointed(const PointedCategory& pc);

/// ring = group ring, d = 1, theta = q, S = B. Throws InputError if invalid.
ModularData pointed_modular_data(const PointedCategory& pc);

/// Evaluates (R_rho^* (x) Rbar_sigma^*)(id (x) eps(sigma,rho) eps(rho,sigma) (x) id)(R_rho (x) Rbar_sigma)
/// by building R_rho = (id (x) T^*) R_std and Rbar_sigma = (W^{-1} (x) id) Rbar_std as
/// explicit vectors in rhobar (x) rho and sigma (x) sigmabar, the braidings as
/// explicit permutation-with-phase matrices, and contracting.
cplx contract_double_braiding(const PointedCategory& pc, const ConjugateDeformation& rho,
                              const ConjugateDeformation& sigma);

/// Same construction for (R^* (x) Rbar^*)(id (x) eps(rho,rho) (x) id)(R (x) Rbar).
cplx contract_twist(const PointedCategory& pc, const ConjugateDeformation& rho);

/// Pointed structure recovered from modular data whose simples are all
/// invertible: a cyclic decomposition of the fusion group and q = theta.
/// element_to_label[g] is the label of pc-element g. S is not consulted.
struct PointedView {
  PointedCategory category;
  std::vector<std::size_t> element_to_label;

  /// Re-expresses an object/deformation over the modular data's ring in pc's ring.
  SemisimpleObject pull_back(const SemisimpleObject& obj) const;
  ConjugateDeformation pull_back(const ConjugateDeformation& def) const;
};

std::optional<PointedView> pointed_view(const ModularData& md);

}  // namespace topomono
