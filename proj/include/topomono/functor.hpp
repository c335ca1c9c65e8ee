#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topomono/modular_data.hpp"
#include "topomono/semisimple.hpp"

namespace topomono {

using Blocks = std::vector<Eigen::MatrixXcd>;

/// Multiplicity shadow of a braided tensor functor F from `source` to `target`.
/// M(zeta, a) is the multiplicity of target simple a in F(zeta). The optional
/// per-source-label deformation is the T relating the transported solution
/// on F(zeta) to the standard one (absent means standard).
///
/// Argument order is fixed: source is the degraded state's category, target
/// the clean state's.
struct TensorFunctorData {
  TensorFunctorData(ModularData source, ModularData target, Eigen::MatrixXi M,
                    std::vector<std::optional<Blocks>> deformations = {});

  ModularData source;
  ModularData target;
  Eigen::MatrixXi M;
  std::vector<std::optional<Blocks>> deformations;

  SemisimpleObject image(std::size_t zeta) const;
  TensorFunctorData with_deformations(std::vector<std::optional<Blocks>> defs) const;
};

TensorFunctorData identity_functor(const ModularData& md);

struct FunctorCheckOptions {
  double tolerance = kDefaultTolerance;
  bool twist_as_warning = false;
};

/// Vacuum row, faithfulness (nonzero rows), fusion-ring homomorphism,
/// dual compatibility, dimension preservation and twist compatibility.
ValidationReport validate_functor(const TensorFunctorData& fd, const FunctorCheckOptions& opts = {});

/// The transported solution on F(zeta). Throws InputError on an invalid functor.
ConjugateDeformation transport_solution(const TensorFunctorData& fd, std::size_t zeta,
                                        const FunctorCheckOptions& opts = {});

struct TheoremResiduals {
  double s_relation = 0;  // max |S2 - X S1 Y|
  double x_dims = 0;      // max |X d1 - d2|
  double y_dims = 0;      // max |Y^T d1 - d2|
  double twist = 0;       // max |theta2 - N theta1|
  double max() const { return std::max({s_relation, x_dims, y_dims, twist}); }
};

struct TransportResult {
  Eigen::MatrixXd X;  // |source| x |target|
  Eigen::MatrixXd Y;  // |target| x |source|
  Eigen::MatrixXi N;  // |source| x |target|
  TheoremResiduals residuals;
};

TheoremResiduals theorem_residuals(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                   const Eigen::MatrixXi& N, const ModularData& source,
                                   const ModularData& target);

/// X rows are the left coefficients t^zeta of each transported solution,
/// Y columns the right coefficients s^xi, N = M.
TransportResult transport_matrices(const TensorFunctorData& fd,
                                   const FunctorCheckOptions& opts = {});

struct TheoremCheck {
  std::string name;
  bool pass = false;
  double value = 0;
};

struct TheoremReport {
  std::vector<TheoremCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
};

/// Re-derives the residuals from the matrices (ignoring tr.residuals) and
/// checks nonnegativity, integrality and that X rows, Y columns and N rows
/// share supports.
TheoremReport verify_theorem(const TransportResult& tr, const TensorFunctorData& fd,
                             double tolerance = kDefaultTolerance);

/// G o F for F: A -> B and G: B -> C; M = M_F M_G, standard solutions.
TensorFunctorData compose_functors(const TensorFunctorData& F, const TensorFunctorData& G);

}  // namespace topomono
