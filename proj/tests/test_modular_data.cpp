#include <doctest.h>

#include <chrono>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "topomono/catalog.hpp"
#include "topomono/error.hpp"
#include "topomono/modular_data.hpp"

using namespace topomono;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& needle) {
  for (const auto& v : rep.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

ModularData with_theta(const ModularData& md, Eigen::VectorXcd theta) {
  return {md.ring_ptr(), md.S(), std::move(theta), md.dims(), md.tolerance(), md.name()};
}

}  // namespace

TEST_CASE("toric code data") {
  const auto md = catalog_model("toric_code_zn", {2});
  Eigen::VectorXcd theta(4);
  theta << 1, 1, 1, -1;
  CHECK(oracle::max_abs(md.theta(), theta) < 1e-15);
  Eigen::MatrixXcd S(4, 4);
  S << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
  CHECK(oracle::max_abs(md.S(), S) < 1e-15);
  CHECK(md.global_dim_sq() == doctest::Approx(4.0));
  CHECK(validate_modular_data(md, true).ok());
}

TEST_CASE("toric_code_zn matches the bicharacter formulas for N = 2..8") {
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const auto md = catalog_model("toric_code_zn", {n});
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int x = j + n * k;
        CHECK(std::abs(md.theta()(x) - oracle::root(double(j * k) / n)) < 1e-12);
        for (int j2 = 0; j2 < n; ++j2)
          for (int k2 = 0; k2 < n; ++k2)
            CHECK(std::abs(md.S()(x, j2 + n * k2) - oracle::root(double(j * k2 + k * j2) / n)) <
                  1e-12);
      }
    CHECK(validate_modular_data(md, true).ok());
  }
}

TEST_CASE("semion data") {
  const auto md = catalog_model("semion");
  CHECK(std::abs(md.theta()(1) - oracle::cplx(0, 1)) < 1e-15);
  CHECK(std::abs(md.S()(1, 1) - oracle::cplx(-1)) < 1e-15);
  const auto anti = catalog_model("semion", {1});
  CHECK(std::abs(anti.theta()(1) - oracle::cplx(0, -1)) < 1e-15);
}

TEST_CASE("Fibonacci twists found by brute force over roots of unity") {
  // Keep every theta_tau = exp(2 pi i k / 80) whose balancing S is modular
  // and reproduces the Fibonacci fusion rules.
  const auto md = catalog_model("fibonacci");
  const auto d = oracle::fp_dims(md.ring());
  std::vector<int> hits;
  for (int k = 0; k < 80; ++k) {
    Eigen::VectorXcd theta(2);
    theta << 1, oracle::root(k / 80.0);
    const auto S = oracle::balancing_S(md.ring(), theta, d);
    if (oracle::modular_and_verlinde(md.ring(), S, 1e-9) && oracle::modular_group_relation(S, theta, 1e-9))
      hits.push_back(k);
  }
  CHECK(hits == std::vector<int>{32, 48});  // exp(+-4 pi i / 5)
  CHECK(std::abs(md.theta()(1) - oracle::root(0.4)) < 1e-12);
  Eigen::MatrixXcd S(2, 2);
  S << 1, oracle::kPhi, oracle::kPhi, -1;
  CHECK(oracle::max_abs(md.S(), S) < 1e-12);
  const auto conj = catalog_model("fibonacci", {1});
  CHECK(std::abs(conj.theta()(1) - oracle::root(-0.4)) < 1e-12);
  CHECK(oracle::max_abs(conj.S(), S) < 1e-12);
}

TEST_CASE("Ising twists found by brute force, and every nu matches") {
  const auto md = catalog_model("ising");
  const auto d = oracle::fp_dims(md.ring());
  int hits = 0;
  for (int k = 0; k < 16; ++k)
    for (int p = 0; p < 4; ++p) {
      Eigen::VectorXcd theta(3);
      theta << 1, oracle::root(k / 16.0), oracle::root(p / 4.0);
      const auto S = oracle::balancing_S(md.ring(), theta, d);
      if (!oracle::modular_and_verlinde(md.ring(), S, 1e-9) ||
          !oracle::modular_group_relation(S, theta, 1e-9) ||
          !oracle::fs_indicators_valid(md.ring(), theta, d, 1e-9))
        continue;
      ++hits;
      CHECK(k % 2 == 1);
      CHECK(p == 2);
      const auto cat = catalog_model("ising", {k});
      CHECK(oracle::max_abs(cat.theta(), theta) < 1e-12);
      CHECK(oracle::max_abs(cat.S(), oracle::balancing_S(md.ring(), theta, d)) < 1e-12);
    }
  CHECK(hits == 8);
  Eigen::MatrixXcd S(3, 3);
  const double r2 = std::sqrt(2.0);
  S << 1, r2, 1, r2, 0, -r2, 1, -r2, 1;
  CHECK(oracle::max_abs(md.S(), S) < 1e-12);
  CHECK(std::abs(md.theta()(1) - oracle::root(1.0 / 16)) < 1e-12);
}

TEST_CASE("every catalog S agrees with the balancing relation") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto md = resolve_catalog(name);
    CHECK(oracle::max_abs(md.S(), oracle::balancing_S(md.ring(), md.theta(), md.dims())) < 1e-12);
  }
}

TEST_CASE("Gauss sums give the expected central charges") {
  // sum_a d_a^2 theta_a = D exp(2 pi i c / 8)
  auto gauss = [](const ModularData& md) {
    oracle::cplx p = 0;
    for (std::size_t a = 0; a < md.rank(); ++a) p += md.dims()(a) * md.dims()(a) * md.theta()(a);
    return p;
  };
  for (int nu = 1; nu < 16; nu += 2) {
    const auto md = catalog_model("ising", {nu});
    const double D = std::sqrt(md.global_dim_sq());
    CHECK(std::abs(gauss(md) - D * oracle::root(nu / 16.0)) < 1e-12);
  }
  const auto fib = catalog_model("fibonacci");
  CHECK(std::abs(gauss(fib) - std::sqrt(fib.global_dim_sq()) * oracle::root(14.0 / 40)) < 1e-12);
  const auto tc = catalog_model("toric_code_zn", {3});
  CHECK(std::abs(gauss(tc) - oracle::cplx(3)) < 1e-12);
}

TEST_CASE("vacuum twist violation") {
  const auto md = catalog_model("toric_code_zn", {2});
  Eigen::VectorXcd theta = md.theta();
  theta(0) = -1;
  const auto rep = validate_modular_data(with_theta(md, theta));
  CHECK(has_violation(rep, "vacuum twist"));
}

TEST_CASE("S vacuum row must hold dimensions") {
  const auto md = catalog_model("semion");
  Eigen::MatrixXcd S = md.S();
  S(0, 1) = 2;
  const ModularData bad(md.ring_ptr(), S, md.theta(), md.dims());
  CHECK(has_violation(validate_modular_data(bad), "S[1,s]"));
}

TEST_CASE("degenerate {1,e} data: non-strict passes, strict fails") {
  const auto md = catalog_model("decohered_toric_code");
  CHECK(validate_modular_data(md, false).ok());
  const auto strict = validate_modular_data(md, true);
  CHECK_FALSE(strict.ok());
  CHECK(has_violation(strict, "modularity"));
  CHECK(numerical_rank(md.S(), 1e-9) == 1);
  CHECK_THROWS_AS(verlinde_fusion(md), InputError);
}

TEST_CASE("catalog validity, strict where modular") {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto md = resolve_catalog(name);
    CHECK(validate_modular_data(md, false).ok());
    CHECK(validate_modular_data(md, true).ok() == catalog_is_modular(name));
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("Verlinde fusion") {
  const auto tc = catalog_model("toric_code_zn", {2});
  const auto N = verlinde_fusion(tc);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(N(a, b, c) - ((a ^ b) == c)) < 1e-9);
  CHECK(std::abs(verlinde_fusion(catalog_model("trivial"))(0, 0, 0) - 1) < 1e-12);
  CHECK(std::abs(verlinde_fusion(catalog_model("fibonacci"))(1, 1, 1) - 1) < 1e-9);
  for (const auto& name : catalog_names()) {
    if (!catalog_is_modular(name)) continue;
    const auto md = resolve_catalog(name);
    const auto V = verlinde_fusion(md);
    for (std::size_t a = 0; a < md.rank(); ++a)
      for (std::size_t b = 0; b < md.rank(); ++b)
        for (std::size_t c = 0; c < md.rank(); ++c)
          CHECK(std::abs(V(a, b, c) - md.ring().N(a, b, c)) < 1e-8);
  }
}

TEST_CASE("products are Kronecker products") {
  const auto A = catalog_model("semion");
  const auto B = catalog_model("fibonacci");
  const auto P = catalog_product(A, B);
  CHECK(oracle::max_abs(P.S(), Eigen::kroneckerProduct(A.S(), B.S()).eval()) < 1e-12);
  CHECK(oracle::max_abs(P.theta(), Eigen::kroneckerProduct(A.theta(), B.theta()).eval()) < 1e-12);
  CHECK(validate_modular_data(P, true).ok());
  CHECK(resolve_catalog("product:semion+fibonacci").rank() == 4);
}

TEST_CASE("catalog spec errors") {
  CHECK_THROWS_AS(resolve_catalog("nonesuch"), InputError);
  CHECK_THROWS_AS(resolve_catalog("ising:2"), InputError);
  CHECK_THROWS_AS(resolve_catalog("toric_code_z9"), InputError);
  CHECK_THROWS_AS(resolve_catalog("product:semion"), InputError);
  CHECK(resolve_catalog("toric_code_zn:3").rank() == 9);
}
