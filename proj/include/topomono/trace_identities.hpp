#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topomono/modular_data.hpp"
#include "topomono/random.hpp"

namespace topomono {

/// One randomized identity: how many draws agreed within tolerance and the
/// worst relative error seen.
struct IdentityCheck {
  std::string name;
  std::size_t agreed = 0;
  std::size_t total = 0;
  double max_error = 0;
  bool pass() const { return agreed == total; }
};

struct TraceSuiteResult {
  std::vector<IdentityCheck> checks;
  bool pointed = false;  // two-path contractions were run
  bool all_pass() const;
};

/// Draws `samples` random (rho, sigma, T, W) over md and checks:
///   norm identities   sum_a d(a) t_a = |R|^2, sum_b d(b) s_b = |Rbar|^2
///   trace cyclicity   Tr(XY) = Tr(YX) for X: rho -> sigma, Y: sigma -> rho
///   positivity        Tr(X^* X) > 0
///   specialization    T = W = id gives sum n_rho,a n_sigma,b S_ab
///   twist invariance  twist trace of (rho, T) equals that of (rho, id)
/// and, when every simple is invertible, the explicit contractions against
/// double_braiding_trace / twist_trace and the pointed S/theta against md.
TraceSuiteResult run_trace_identity_suite(const ModularData& md, std::size_t samples,
                                          std::uint64_t seed = kDefaultSeed,
                                          double tolerance = 1e-8);

}  // namespace topomono
