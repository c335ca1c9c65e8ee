#include "topomono/catalog.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "topomono/error.hpp"

namespace topomono {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(2 pi i turns), exact at multiples of a quarter turn.
cplx phase(double turns) {
  const double q = turns * 4;
  if (q == std::round(q)) {
    switch (((static_cast<long>(std::round(q)) % 4) + 4) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }
  return std::polar(1.0, 2 * kPi * turns);
}

ModularData finish(RingPtr ring, Eigen::MatrixXcd S, Eigen::VectorXcd theta, std::string name) {
  Eigen::VectorXd d = quantum_dims(*ring);
  ModularData md(std::move(ring), std::move(S), std::move(theta), std::move(d), kDefaultTolerance,
                 std::move(name));
  auto rep = validate_modular_data(md, false);
  if (!rep.ok())
    throw std::logic_error("catalog model " + md.name() + " failed validation: " +
                           rep.violations.front());
  return md;
}

std::string toric_label(int j, int k, int n) {
  if (n == 2) {
    static const char* names[2][2] = {{"1", "m"}, {"e", "f"}};
    return names[j][k];
  }
  if (j == 0 && k == 0) return "1";
  std::string s;
  if (j) s += j == 1 ? "e" : "e" + std::to_string(j);
  if (k) s += k == 1 ? "m" : "m" + std::to_string(k);
  return s;
}

ModularData toric_code(int n) {
  if (n < 2 || n > 8) throw InputError("toric_code_zn: N must be in [2, 8]");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) names.push_back(toric_label(j, k, n));
  auto ring = abelian_group_ring({n, n}, names);
  const auto r = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXcd S(r, r);
  Eigen::VectorXcd theta(r);
  for (Eigen::Index x = 0; x < r; ++x) {
    const int j = static_cast<int>(x % n), k = static_cast<int>(x / n);
    theta(x) = phase(static_cast<double>((j * k) % n) / n);
    for (Eigen::Index y = 0; y < r; ++y) {
      const int j2 = static_cast<int>(y % n), k2 = static_cast<int>(y / n);
      S(x, y) = phase(static_cast<double>((j * k2 + k * j2) % n) / n);
    }
  }
  return finish(std::move(ring), std::move(S), std::move(theta),
                "toric_code_z" + std::to_string(n));
}

ModularData semion(bool conjugate) {
  auto ring = abelian_group_ring({2}, {"1", conjugate ? "sb" : "s"});
  Eigen::MatrixXcd S(2, 2);
  S << 1, 1, 1, -1;
  Eigen::VectorXcd theta(2);
  theta << 1, cplx(0, conjugate ? -1 : 1);
  return finish(std::move(ring), std::move(S), std::move(theta),
                conjugate ? "semion:1" : "semion");
}

ModularData fibonacci(bool conjugate) {
  auto ring = make_ring({"1", "tau"}, {0, 1}, {1, 0, 0, 1, 0, 1, 1, 1});
  const double phi = std::numbers::phi;
  Eigen::MatrixXcd S(2, 2);
  S << 1, phi, phi, -1;
  Eigen::VectorXcd theta(2);
  theta << 1, phase(conjugate ? -0.4 : 0.4);
  return finish(std::move(ring), std::move(S), std::move(theta),
                conjugate ? "fibonacci:1" : "fibonacci");
}

ModularData ising(int nu) {
  if (nu < 1 || nu > 15 || nu % 2 == 0) throw InputError("ising: nu must be odd in [1, 15]");
  // labels 1, sigma, psi
  std::vector<int> N(27, 0);
  auto set = [&](int a, int b, int c) { N[(a * 3 + b) * 3 + c] = 1; };
  for (int a = 0; a < 3; ++a) {
    set(0, a, a);
    set(a, 0, a);
  }
  set(1, 1, 0);
  set(1, 1, 2);
  set(1, 2, 1);
  set(2, 1, 1);
  set(2, 2, 0);
  auto ring = make_ring({"1", "sigma", "psi"}, {0, 1, 2}, std::move(N));
  const double r2 = std::numbers::sqrt2;
  Eigen::MatrixXcd S(3, 3);
  S << 1, r2, 1, r2, 0, -r2, 1, -r2, 1;
  Eigen::VectorXcd theta(3);
  theta << 1, phase(nu / 16.0), -1;
  return finish(std::move(ring), std::move(S), std::move(theta),
                nu == 1 ? "ising" : "ising:" + std::to_string(nu));
}

ModularData decohered_toric_code() {
  auto ring = abelian_group_ring({2}, {"1", "e"});
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Ones(2, 2);
  Eigen::VectorXcd theta = Eigen::VectorXcd::Ones(2);
  return finish(std::move(ring), std::move(S), std::move(theta), "decohered_toric_code");
}

int single_param(const std::string& name, const std::vector<int>& params, int fallback) {
  if (params.empty()) return fallback;
  if (params.size() != 1) throw InputError(name + ": expected at most one parameter");
  return params[0];
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

ModularData catalog_model(const std::string& name, const std::vector<int>& params) {
  if (name == "trivial") {
    if (!params.empty()) throw InputError("trivial takes no parameters");
    auto ring = make_ring({"1"}, {0}, {1});
    return finish(std::move(ring), Eigen::MatrixXcd::Ones(1, 1), Eigen::VectorXcd::Ones(1),
                  "trivial");
  }
  if (name == "toric_code_zn") {
    if (params.size() != 1) throw InputError("toric_code_zn: expected parameter N");
    return toric_code(params[0]);
  }
  if (name == "semion") {
    const int c = single_param(name, params, 0);
    if (c != 0 && c != 1) throw InputError("semion: conjugate flag must be 0 or 1");
    return semion(c == 1);
  }
  if (name == "double_semion") {
    if (!params.empty()) throw InputError("double_semion takes no parameters");
    return catalog_product(semion(false), semion(true)).with_name("double_semion");
  }
  if (name == "fibonacci") {
    const int c = single_param(name, params, 0);
    if (c != 0 && c != 1) throw InputError("fibonacci: conjugate flag must be 0 or 1");
    return fibonacci(c == 1);
  }
  if (name == "ising") return ising(single_param(name, params, 1));
  if (name == "decohered_toric_code") {
    if (!params.empty()) throw InputError("decohered_toric_code takes no parameters");
    return decohered_toric_code();
  }
  if (name == "product") throw InputError("product: use product:A+B or catalog_product");
  throw InputError("unknown catalog model '" + name + "'");
}

ModularData catalog_product(const ModularData& A, const ModularData& B) {
  auto ring = product_ring(A.ring(), B.ring());
  Eigen::MatrixXcd S = Eigen::kroneckerProduct(A.S(), B.S());
  const auto ra = A.rank(), rb = B.rank();
  Eigen::VectorXcd theta(ra * rb);
  for (std::size_t a = 0; a < ra; ++a)
    for (std::size_t b = 0; b < rb; ++b) theta(a * rb + b) = A.theta()(a) * B.theta()(b);
  return finish(std::move(ring), std::move(S), std::move(theta),
                "product:" + A.name() + "+" + B.name());
}

std::vector<std::string> catalog_names() {
  return {"trivial",       "toric_code_z2", "toric_code_z3",       "toric_code_z4",
          "toric_code_z5", "semion",        "semion:1",            "double_semion",
          "fibonacci",     "ising",         "decohered_toric_code", "product:semion+fibonacci"};
}

bool catalog_is_modular(const std::string& spec) { return spec != "decohered_toric_code"; }

ModularData resolve_catalog(const std::string& spec) {
  if (spec.rfind("product:", 0) == 0) {
    const auto parts = split_top(spec.substr(8), '+');
    if (parts.size() != 2) throw InputError("product: expected product:A+B, got '" + spec + "'");
    return catalog_product(resolve_catalog(parts[0]), resolve_catalog(parts[1]));
  }
  std::string name = spec;
  std::vector<int> params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    for (const auto& p : split_top(spec.substr(colon + 1), ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stoi(p, &used));
        if (used != p.size()) throw std::invalid_argument(p);
      } catch (const std::exception&) {
        throw InputError("bad catalog parameter '" + p + "' in '" + spec + "'");
      }
    }
  }
  const std::string tc = "toric_code_z";
  if (name.rfind(tc, 0) == 0 && name.size() > tc.size() && name != "toric_code_zn") {
    if (!params.empty()) throw InputError(name + " takes no parameters");
    try {
      return toric_code(std::stoi(name.substr(tc.size())));
    } catch (const std::invalid_argument&) {
      throw InputError("unknown catalog model '" + spec + "'");
    }
  }
  return catalog_model(name, params);
}

}  // namespace topomono
