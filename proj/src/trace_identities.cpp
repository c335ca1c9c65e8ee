#include "topomono/trace_identities.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "topomono/pointed.hpp"
#include "topomono/semisimple.hpp"

namespace topomono {

namespace {

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void record(IdentityCheck& c, double err, double tol) {
  ++c.total;
  if (err <= tol) ++c.agreed;
  c.max_error = std::max(c.max_error, err);
}

BlockMorphism random_morphism(const SemisimpleObject& src, const SemisimpleObject& dst, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t a = 0; a < src.rank(); ++a) {
    Eigen::MatrixXcd B(dst.mult(a), src.mult(a));
    for (Eigen::Index i = 0; i < B.rows(); ++i)
      for (Eigen::Index j = 0; j < B.cols(); ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        B(i, j) = cplx(re, im);
      }
    blocks.push_back(std::move(B));
  }
  return {src, dst, std::move(blocks)};
}

}  // namespace

bool TraceSuiteResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass(); });
}

TraceSuiteResult run_trace_identity_suite(const ModularData& md, std::size_t samples,
                                          std::uint64_t seed, double tol) {
  Rng rng(seed);
  const auto& ring = md.ring_ptr();
  const auto& d = md.dims();

  IdentityCheck norm_left{"norm_identity_left"}, norm_right{"norm_identity_right"};
  IdentityCheck cyclic{"trace_cyclicity"}, positive{"trace_positivity"};
  IdentityCheck special{"standard_specialization"}, twist_inv{"twist_deformation_invariance"};
  IdentityCheck two_s{"two_path_modular_data"}, two_db{"two_path_double_braiding"},
      two_tw{"two_path_twist"};

  const auto view = pointed_view(md);
  if (view) {
    const auto pmd = pointed_modular_data(view->category);
    const auto& lab = view->element_to_label;
    for (std::size_t g = 0; g < lab.size(); ++g) {
      record(two_s, std::abs(pmd.theta()(g) - md.theta()(lab[g])), tol);
      for (std::size_t h = 0; h < lab.size(); ++h)
        record(two_s, std::abs(pmd.S()(g, h) - md.S()(lab[g], lab[h])), tol);
    }
  }

  for (std::size_t k = 0; k < samples; ++k) {
    const auto rho = random_object(ring, rng);
    const auto sigma = random_object(ring, rng);
    const auto T = random_deformation(rho, rng);
    const auto W = random_deformation(sigma, rng);

    const auto [r2, rb2] = solution_norms(T, d);
    const Eigen::VectorXd t = trace_coefficients(T, Side::left, d);
    const Eigen::VectorXd s = trace_coefficients(T, Side::right, d);
    record(norm_left, rel_err(d.dot(t), r2), tol);
    record(norm_right, rel_err(d.dot(s), rb2), tol);

    const auto X = random_morphism(rho, sigma, rng);
    const auto Y = random_morphism(sigma, rho, rng);
    record(cyclic, rel_err(categorical_trace(X.compose(Y), d), categorical_trace(Y.compose(X), d)),
           tol);
    const auto E = random_morphism(rho, rho, rng);
    const cplx pos = categorical_trace(E.adjoint().compose(E), d);
    record(positive, (pos.real() > 0 && std::abs(pos.imag()) <= tol * std::abs(pos)) ? 0.0 : 1.0,
           tol);

    const ConjugateDeformation rho_std(rho), sigma_std(sigma);
    cplx expect = 0;
    for (std::size_t a = 0; a < md.rank(); ++a)
      for (std::size_t b = 0; b < md.rank(); ++b)
        expect += static_cast<double>(rho.mult(a) * sigma.mult(b)) * md.S()(a, b);
    record(special, rel_err(double_braiding_trace(rho_std, sigma_std, md), expect), tol);
    record(twist_inv, rel_err(twist_trace(T, md), twist_trace(rho_std, md)), tol);

    if (view) {
      const auto pT = view->pull_back(T);
      const auto pW = view->pull_back(W);
      record(two_db,
             rel_err(contract_double_braiding(view->category, pT, pW), double_braiding_trace(T, W, md)),
             tol);
      record(two_tw, rel_err(contract_twist(view->category, pT), twist_trace(T, md)), tol);
    }
  }

  TraceSuiteResult out;
  out.pointed = view.has_value();
  out.checks = {norm_left, norm_right, cyclic, positive, special, twist_inv};
  if (view) {
    out.checks.push_back(two_s);
    out.checks.push_back(two_db);
    out.checks.push_back(two_tw);
  }
  return out;
}

}  // namespace topomono
