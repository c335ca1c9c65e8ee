#include <doctest.h>

#include "oracles.hpp"
#include "topomono/catalog.hpp"
#include "topomono/error.hpp"
#include "topomono/fusion_ring.hpp"

using namespace topomono;

namespace {

RingPtr fibonacci_ring() {
  // 1 x 1 = 1, 1 x t = t, t x t = 1 + t
  std::vector<int> f(8, 0);
  auto at = [&](int a, int b, int c) -> int& { return f[(a * 2 + b) * 2 + c]; };
  at(0, 0, 0) = at(0, 1, 1) = at(1, 0, 1) = at(1, 1, 0) = at(1, 1, 1) = 1;
  return make_ring({"1", "tau"}, {0, 1}, f);
}

RingPtr ising_ring() {
  std::vector<int> f(27, 0);
  auto at = [&](int a, int b, int c) -> int& { return f[(a * 3 + b) * 3 + c]; };
  for (int a = 0; a < 3; ++a) at(0, a, a) = at(a, 0, a) = 1;
  at(1, 1, 0) = at(1, 1, 2) = 1;
  at(1, 2, 1) = at(2, 1, 1) = 1;
  at(2, 2, 0) = 1;
  return make_ring({"1", "sigma", "psi"}, {0, 1, 2}, f);
}

std::vector<std::string> names(const std::vector<Label>& ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(l.name);
  return out;
}

}  // namespace

TEST_CASE("toric code ring is the group ring of Z2 x Z2") {
  const auto ring = abelian_group_ring({2, 2}, {"1", "e", "m", "f"});
  CHECK(validate_ring(*ring).ok());
  // N_ab^c = delta(a + b, c) with a = (a0, a1) and index a0 + 2 a1
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(ring->N(a, b, c) == ((a ^ b) == c ? 1 : 0));
  CHECK(names(fuse(*ring, 1, 2)) == std::vector<std::string>{"f"});
}

TEST_CASE("broken unit axiom is reported") {
  std::vector<int> f(8, 0);
  f[(0 * 2 + 1) * 2 + 1] = f[(1 * 2 + 0) * 2 + 1] = f[(1 * 2 + 1) * 2 + 0] = 1;  // N_00^0 = 0
  const auto ring = make_ring({"1", "x"}, {0, 1}, f);
  const auto rep = validate_ring(*ring);
  REQUIRE_FALSE(rep.ok());
  bool mentions_unit = false;
  for (const auto& v : rep.violations) mentions_unit |= v.find("unit") != std::string::npos;
  CHECK(mentions_unit);
}

TEST_CASE("dual axiom violation is reported") {
  std::vector<int> f(8, 0);
  auto at = [&](int a, int b, int c) -> int& { return f[(a * 2 + b) * 2 + c]; };
  at(0, 0, 0) = at(0, 1, 1) = at(1, 0, 1) = 1;
  at(1, 1, 0) = 2;  // N_xx^1 must be 1
  const auto rep = validate_ring(*make_ring({"1", "x"}, {0, 1}, f));
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().find("dual axiom") != std::string::npos);
}

TEST_CASE("associativity violation is reported") {
  // x x = 1, y y = 1, x y = y x = x: (x x) y = y but x (x y) = 1.
  std::vector<int> f(27, 0);
  auto at = [&](int a, int b, int c) -> int& { return f[(a * 3 + b) * 3 + c]; };
  for (int a = 0; a < 3; ++a) at(0, a, a) = at(a, 0, a) = 1;
  at(1, 1, 0) = at(2, 2, 0) = 1;
  at(1, 2, 1) = at(2, 1, 1) = 1;
  const auto rep = validate_ring(*make_ring({"1", "x", "y"}, {0, 1, 2}, f));
  bool assoc = false;
  for (const auto& v : rep.violations) assoc |= v.rfind("associativity", 0) == 0;
  CHECK(assoc);
}

TEST_CASE("Fibonacci ring") {
  const auto ring = fibonacci_ring();
  CHECK(validate_ring(*ring).ok());
  CHECK(names(fuse(*ring, 1, 1)) == std::vector<std::string>{"1", "tau"});
  const auto d = quantum_dims(*ring);
  CHECK(d(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(d(1) - oracle::kPhi) < 1e-9);
}

TEST_CASE("Ising dimensions") {
  const auto ring = ising_ring();
  CHECK(validate_ring(*ring).ok());
  const auto d = quantum_dims(*ring);
  CHECK(std::abs(d(0) - 1) < 1e-9);
  CHECK(std::abs(d(1) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(d(2) - 1) < 1e-9);
}

TEST_CASE("vacuum fuses trivially") {
  for (const auto& name : catalog_names()) {
    const auto md = resolve_catalog(name);
    for (std::size_t a = 0; a < md.rank(); ++a) {
      const auto f = fuse(md.ring(), 0, a);
      REQUIRE(f.size() == 1);
      CHECK(f[0].index == a);
    }
  }
}

TEST_CASE("catalog rings: axioms, dimension equations and the eigen-solver oracle") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto md = resolve_catalog(name);
    const auto& R = md.ring();
    CHECK(validate_ring(R).ok());
    const auto d = quantum_dims(R);
    const auto ref = oracle::fp_dims(R);
    CHECK((d - ref).cwiseAbs().maxCoeff() < 1e-9);
    for (std::size_t a = 0; a < R.rank(); ++a) {
      CHECK(std::abs(d(R.dual(a)) - d(a)) < 1e-9);
      for (std::size_t b = 0; b < R.rank(); ++b) {
        double rhs = 0;
        for (std::size_t c = 0; c < R.rank(); ++c) rhs += R.N(a, b, c) * d(c);
        CHECK(std::abs(d(a) * d(b) - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("product ring labels and fusion") {
  const auto A = fibonacci_ring();
  const auto B = abelian_group_ring({2}, {"1", "s"});
  const auto P = product_ring(*A, *B);
  CHECK(P->rank() == 4);
  CHECK(validate_ring(*P).ok());
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        CHECK(P->N(a, b, c) == A->N(a / 2, b / 2, c / 2) * B->N(a % 2, b % 2, c % 2));
}

TEST_CASE("rank above the cap is rejected") {
  std::vector<int> orders{65};
  CHECK_THROWS_AS(abelian_group_ring(orders), InputError);
}

TEST_CASE("shape mismatch is an input error") {
  CHECK_THROWS_AS(make_ring({"1", "x"}, {0, 1}, std::vector<int>(7, 0)), InputError);
  CHECK_THROWS_AS(make_ring({"1", "x"}, {0}, std::vector<int>(8, 0)), InputError);
}
