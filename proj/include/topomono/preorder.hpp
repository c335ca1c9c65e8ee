#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "topomono/functor.hpp"
#include "topomono/modular_data.hpp"
#include "topomono/random.hpp"

namespace topomono {

// All checks take (degraded, clean): the question is whether the data of the
// first argument can arise from the second under a finite-depth channel.

enum class Verdict { feasible, obstructed, unknown };

std::string to_string(Verdict v);

/// Witness for theta2 = N theta1 (twist), S2 = X S1 Y (s_matrix), or a
/// functor multiplicity matrix M together with its transported X, Y, N.
/// X and Y are in the S2 = X S1 Y orientation; the preorder's S2 = X S1 Y'^T
/// form uses Y' = Y^T.
struct MonotoneCertificate {
  std::string mode;
  std::optional<Eigen::MatrixXi> M;
  std::optional<Eigen::MatrixXi> N;
  std::optional<Eigen::MatrixXd> X;
  std::optional<Eigen::MatrixXd> Y;
  std::vector<std::pair<std::string, double>> residuals;
};

struct ObstructionReport {
  std::string mode;
  int entry_bound = 0;
  double row_dimension_cap = 0;
  bool exhaustive = false;
  std::string reason;
};

struct PreorderResult {
  Verdict verdict = Verdict::unknown;
  std::vector<MonotoneCertificate> certificates;
  std::size_t solutions_found = 0;  // may exceed certificates.size()
  std::size_t candidates_examined = 0;
  std::optional<ObstructionReport> obstruction;
  std::string note;
};

struct TwistOptions {
  bool dim_rows = true;    // impose N d1 = d2 row by row
  bool vacuum_row = true;  // impose N[0] = e_0
  int bound = 6;           // entry cap (dim_rows off) or weighted-size multiplier (on)
  std::size_t max_certificates = 16;
  std::size_t candidate_cap = 10'000'000;  // per row
  double tolerance = kDefaultTolerance;
};

/// Exhaustive row-by-row search for nonnegative integer N with theta2 = N theta1.
/// Throws ResourceError when a row would exceed the candidate cap.
PreorderResult check_twist_preorder(const Eigen::VectorXcd& theta2, const Eigen::VectorXd& d2,
                                    const Eigen::VectorXcd& theta1, const Eigen::VectorXd& d1,
                                    const TwistOptions& opts = {});

struct FunctorSearchOptions {
  int bound = 6;  // entry cap on M
  std::size_t max_certificates = 16;
  std::size_t node_cap = 1'000'000;
  double tolerance = kDefaultTolerance;
};

/// Enumerates functor multiplicity matrices (vacuum row, dimension and twist
/// compatibility per row, dual compatibility, fusion homomorphism) and
/// certifies each through transport_matrices + verify_theorem.
PreorderResult check_functor_search(const ModularData& md2, const ModularData& md1,
                                    const FunctorSearchOptions& opts = {});

struct SOptions {
  bool structured = false;
  int multistart = 8;
  int iterations = 400;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kDefaultTolerance;
  FunctorSearchOptions functor;
};

/// Exact screens (rank), then alternating nonnegative least squares from
/// several starts. Never reports obstructed from a failed heuristic.
PreorderResult check_s_preorder(const Eigen::MatrixXcd& S2, const Eigen::VectorXd& d2,
                                const Eigen::MatrixXcd& S1, const Eigen::VectorXd& d1,
                                const SOptions& opts = {});

/// As above; with opts.structured, functor certificates are tried first.
PreorderResult check_s_preorder(const ModularData& md2, const ModularData& md1,
                                const SOptions& opts = {});

enum class CombinedVerdict { no_obstruction, obstructed, unknown };

std::string to_string(CombinedVerdict v);

inline constexpr const char* kNoObstructionStatement =
    "NO-OBSTRUCTION: every monotone check admits a certificate. This is not a proof that a "
    "finite-depth channel exists.";

struct FullConfig {
  TwistOptions twist;
  FunctorSearchOptions functor;
  SOptions s = [] {
    SOptions o;
    o.structured = true;
    return o;
  }();
};

struct FullReport {
  CombinedVerdict verdict = CombinedVerdict::unknown;
  PreorderResult twist;
  PreorderResult functor;
  PreorderResult s;
  std::string statement;
};

FullReport check_preorder_full(const ModularData& md2, const ModularData& md1,
                               const FullConfig& config = {});

}  // namespace topomono
