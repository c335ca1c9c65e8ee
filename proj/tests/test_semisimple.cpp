#include <doctest.h>

#include "oracles.hpp"
#include "topomono/catalog.hpp"
#include "topomono/error.hpp"
#include "topomono/random.hpp"
#include "topomono/semisimple.hpp"

using namespace topomono;

namespace {

const ModularData& tc() {
  static const ModularData md = catalog_model("toric_code_zn", {2});
  return md;
}

SemisimpleObject obj(const ModularData& md, std::vector<int> m) { return {md.ring_ptr(), std::move(m)}; }

ConjugateDeformation diag_def(const SemisimpleObject& o, std::vector<double> scale) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t a = 0; a < o.rank(); ++a) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(o.mult(a), o.mult(a));
    if (o.mult(a) > 0) B *= scale[a];
    blocks.push_back(B);
  }
  return {o, BlockMorphism::endo(o, blocks)};
}

}  // namespace

TEST_CASE("conjugate objects") {
  CHECK(conjugate_object(obj(tc(), {1, 1, 0, 0})) == obj(tc(), {1, 1, 0, 0}));
  const auto z3 = catalog_model("toric_code_zn", {3});
  std::vector<int> m(9, 0);
  m[1] = 2;  // e
  const auto c = conjugate_object(SemisimpleObject(z3.ring_ptr(), m));
  CHECK(c.mult(2) == 2);  // e^2
  CHECK(c.mult(1) == 0);
  CHECK(conjugate_object(SemisimpleObject::zero(tc().ring_ptr())).is_zero());
}

TEST_CASE("categorical trace") {
  const auto o = obj(tc(), {1, 2, 0, 0});
  CHECK(categorical_trace(BlockMorphism::identity(o), tc().dims()) == oracle::cplx(3));
  const auto fib = catalog_model("fibonacci");
  const auto tau = SemisimpleObject::simple(fib.ring_ptr(), 1);
  CHECK(std::abs(categorical_trace(BlockMorphism::identity(tau), fib.dims()) - oracle::kPhi) < 1e-9);
  const auto r = obj(tc(), {1, 1, 0, 0});
  CHECK(categorical_trace(diag_def(r, {4, 1, 0, 0}).T(), tc().dims()) == oracle::cplx(5));
  CHECK_THROWS_AS(categorical_trace(BlockMorphism::identity(SemisimpleObject::zero(tc().ring_ptr())),
                                    tc().dims()),
                  ZeroObjectError);
}

TEST_CASE("central projections") {
  const auto r = obj(tc(), {1, 1, 0, 0});
  const auto p = central_projection(r, 1);
  CHECK(p.block(0).size() == 1);
  CHECK(p.block(0)(0, 0) == oracle::cplx(0));
  CHECK(p.block(1)(0, 0) == oracle::cplx(1));
  const auto q = obj(tc(), {0, 2, 1, 0});
  auto sum = BlockMorphism::zero(q, q);
  for (std::size_t a = 0; a < 4; ++a) sum = sum + central_projection(q, a);
  CHECK(sum.max_abs_diff(BlockMorphism::identity(q)) == 0);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const auto pp = central_projection(q, a).compose(central_projection(q, b));
      CHECK(pp.max_abs_diff(a == b ? central_projection(q, a) : BlockMorphism::zero(q, q)) == 0);
    }
}

TEST_CASE("solution norms and coefficients") {
  const auto r = obj(tc(), {1, 1, 0, 0});
  const auto [n0, nb0] = solution_norms(ConjugateDeformation(r), tc().dims());
  CHECK(n0 == doctest::Approx(2));
  CHECK(nb0 == doctest::Approx(2));

  const auto T = diag_def(r, {2, 1, 0, 0});
  const auto [n, nb] = solution_norms(T, tc().dims());
  CHECK(n == doctest::Approx(5));
  CHECK(nb == doctest::Approx(1.25));
  const Eigen::VectorXd t = trace_coefficients(T, Side::left, tc().dims());
  const Eigen::VectorXd s = trace_coefficients(T, Side::right, tc().dims());
  CHECK((t - Eigen::Vector4d(4, 1, 0, 0)).norm() < 1e-12);
  CHECK((s - Eigen::Vector4d(0.25, 1, 0, 0)).norm() < 1e-12);

  const auto fib = catalog_model("fibonacci");
  const auto [nf, nbf] =
      solution_norms(ConjugateDeformation(SemisimpleObject::simple(fib.ring_ptr(), 1)), fib.dims());
  CHECK(std::abs(nf - oracle::kPhi) < 1e-9);
  CHECK(std::abs(nbf - oracle::kPhi) < 1e-9);
}

TEST_CASE("standard solution coefficients are multiplicities") {
  Rng rng(11);
  for (const auto& name : {"ising", "fibonacci", "toric_code_z3"}) {
    const auto md = resolve_catalog(name);
    for (int k = 0; k < 20; ++k) {
      const auto o = random_object(md.ring_ptr(), rng);
      const Eigen::VectorXd t = trace_coefficients(ConjugateDeformation(o), Side::left, md.dims());
      for (std::size_t a = 0; a < md.rank(); ++a) CHECK(std::abs(t(a) - o.mult(a)) < 1e-12);
    }
  }
}

TEST_CASE("norm identities hold for random deformations, including non-pointed models") {
  Rng rng(5);
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto md = resolve_catalog(name);
    for (int k = 0; k < 100; ++k) {
      const auto def = random_deformation(random_object(md.ring_ptr(), rng), rng);
      const auto [n, nb] = solution_norms(def, md.dims());
      const Eigen::VectorXd t = trace_coefficients(def, Side::left, md.dims());
      const Eigen::VectorXd s = trace_coefficients(def, Side::right, md.dims());
      CHECK(std::abs(md.dims().dot(t) - n) <= 1e-8 * std::max(1.0, n));
      CHECK(std::abs(md.dims().dot(s) - nb) <= 1e-8 * std::max(1.0, nb));
      for (std::size_t a = 0; a < md.rank(); ++a) {
        CHECK((def.object().mult(a) > 0) == (t(a) > 0));
        CHECK((def.object().mult(a) > 0) == (s(a) > 0));
      }
    }
  }
}

TEST_CASE("double braiding trace") {
  const auto r = obj(tc(), {1, 1, 0, 0});
  const auto m = obj(tc(), {0, 0, 1, 0});
  CHECK(std::abs(double_braiding_trace(diag_def(r, {2, 1, 0, 0}), ConjugateDeformation(m), tc()) -
                 oracle::cplx(3)) < 1e-12);
  const auto vac = obj(tc(), {1, 0, 0, 0});
  CHECK(double_braiding_trace(ConjugateDeformation(vac), ConjugateDeformation(vac), tc()) ==
        oracle::cplx(1));
  CHECK(std::abs(double_braiding_trace(ConjugateDeformation(r), ConjugateDeformation(r), tc()) -
                 oracle::cplx(4)) < 1e-12);
}

TEST_CASE("twist trace ignores the deformation") {
  CHECK(std::abs(twist_trace(ConjugateDeformation(obj(tc(), {0, 1, 0, 1})), tc())) < 1e-15);
  Rng rng(3);
  const auto all = obj(tc(), {1, 1, 1, 1});
  const auto T = random_deformation(all, rng);
  CHECK(std::abs(twist_trace(T, tc()) - oracle::cplx(2)) < 1e-10);
  CHECK(twist_trace(T, tc()) == twist_trace(ConjugateDeformation(all), tc()));
  CHECK(twist_trace(random_deformation(obj(tc(), {1, 0, 0, 0}), rng), tc()) == oracle::cplx(1));
}

TEST_CASE("ill-conditioned and mismatched deformations are rejected") {
  const auto r = obj(tc(), {1, 1, 0, 0});
  CHECK_NOTHROW(diag_def(r, {1e9, 1, 0, 0}));  // the cap is per block
  CHECK_THROWS_AS(diag_def(r, {0, 1, 0, 0}), NumericalError);
  const auto two = obj(tc(), {0, 2, 0, 0});
  Eigen::MatrixXcd B(2, 2);
  B << 1, 0, 0, 1e-9;
  std::vector<Eigen::MatrixXcd> blocks{Eigen::MatrixXcd(0, 0), B, Eigen::MatrixXcd(0, 0),
                                       Eigen::MatrixXcd(0, 0)};
  CHECK_THROWS_AS(ConjugateDeformation(two, BlockMorphism::endo(two, blocks)), NumericalError);
  std::vector<Eigen::MatrixXcd> wrong{Eigen::MatrixXcd(0, 0), Eigen::MatrixXcd::Identity(1, 1),
                                      Eigen::MatrixXcd(0, 0), Eigen::MatrixXcd(0, 0)};
  CHECK_THROWS_AS(BlockMorphism::endo(two, wrong), InputError);
}
