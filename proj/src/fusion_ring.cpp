#include "topomono/fusion_ring.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "topomono/error.hpp"

namespace topomono {

FusionRing::FusionRing(std::vector<std::string> names, std::vector<std::size_t> dual,
                       std::vector<int> fusion)
    : names_(std::move(names)), dual_(std::move(dual)), fusion_(std::move(fusion)) {
  const std::size_t r = names_.size();
  if (r == 0) throw InputError("fusion ring must have at least one label");
  if (r > kMaxRank)
    throw InputError("fusion ring rank " + std::to_string(r) + " exceeds limit " +
                     std::to_string(kMaxRank));
  if (dual_.size() != r)
    throw InputError("dual has " + std::to_string(dual_.size()) + " entries, rank is " +
                     std::to_string(r));
  if (fusion_.size() != r * r * r)
    throw InputError("fusion tensor has " + std::to_string(fusion_.size()) +
                     " entries, expected rank^3 = " + std::to_string(r * r * r));
  for (std::size_t a = 0; a < r; ++a)
    if (dual_[a] >= r) throw InputError("dual of label " + names_[a] + " out of range");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty label name");
    if (!seen.insert(n).second) throw InputError("duplicate label name '" + n + "'");
  }
}

Label FusionRing::label(std::size_t a) const {
  if (a >= rank()) throw InputError("label index " + std::to_string(a) + " out of range");
  return {a, names_[a]};
}

Label FusionRing::label(const std::string& name) const { return {index_of(name), name}; }

std::size_t FusionRing::index_of(const std::string& name) const {
  for (std::size_t a = 0; a < rank(); ++a)
    if (names_[a] == name) return a;
  throw InputError("unknown label '" + name + "'");
}

Eigen::MatrixXd FusionRing::fusion_matrix(std::size_t a) const {
  const std::size_t r = rank();
  Eigen::MatrixXd L(r, r);
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t c = 0; c < r; ++c) L(b, c) = N(a, b, c);
  return L;
}

RingPtr make_ring(std::vector<std::string> names, std::vector<std::size_t> dual,
                  std::vector<int> fusion) {
  return std::make_shared<const FusionRing>(std::move(names), std::move(dual), std::move(fusion));
}

RingPtr group_ring(std::vector<std::string> names, const std::vector<std::size_t>& table) {
  const std::size_t n = names.size();
  if (table.size() != n * n) throw InputError("group table shape mismatch");
  std::vector<int> fusion(n * n * n, 0);
  std::vector<std::size_t> dual(n, n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t gh = table[g * n + h];
      if (gh >= n) throw InputError("group table entry out of range");
      fusion[(g * n + h) * n + gh] = 1;
      if (gh == 0) dual[g] = h;
    }
  for (std::size_t g = 0; g < n; ++g)
    if (dual[g] == n) throw InputError("group element without inverse");
  return make_ring(std::move(names), std::move(dual), std::move(fusion));
}

RingPtr abelian_group_ring(const std::vector<int>& orders, std::vector<std::string> names) {
  std::size_t n = 1;
  for (int o : orders) {
    if (o < 1) throw InputError("cyclic factor order must be positive");
    n *= static_cast<std::size_t>(o);
    if (n > kMaxRank) throw InputError("group order exceeds rank limit");
  }
  auto coords = [&](std::size_t g) {
    std::vector<int> x(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      x[i] = static_cast<int>(g % orders[i]);
      g /= orders[i];
    }
    return x;
  };
  auto index = [&](const std::vector<int>& x) {
    std::size_t g = 0;
    for (std::size_t i = orders.size(); i-- > 0;) g = g * orders[i] + x[i];
    return g;
  };
  if (names.empty()) {
    for (std::size_t g = 0; g < n; ++g) {
      if (g == 0) {
        names.emplace_back("0");
        continue;
      }
      std::ostringstream os;
      os << "(";
      auto x = coords(g);
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
      os << ")";
      names.push_back(os.str());
    }
  }
  std::vector<std::size_t> table(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      auto x = coords(g), y = coords(h);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders[i];
      table[g * n + h] = index(x);
    }
  return group_ring(std::move(names), table);
}

RingPtr product_ring(const FusionRing& A, const FusionRing& B) {
  const std::size_t ra = A.rank(), rb = B.rank(), r = ra * rb;
  if (r > kMaxRank) throw InputError("product ring rank exceeds limit");
  std::vector<std::string> names(r);
  std::vector<std::size_t> dual(r);
  std::vector<int> fusion(r * r * r, 0);
  for (std::size_t a = 0; a < ra; ++a)
    for (std::size_t b = 0; b < rb; ++b) {
      const std::size_t i = a * rb + b;
      names[i] = (a == 0 && b == 0) ? std::string("1") : "(" + A.name(a) + "," + B.name(b) + ")";
      dual[i] = A.dual(a) * rb + B.dual(b);
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        fusion[(i * r + j) * r + k] =
            A.N(i / rb, j / rb, k / rb) * B.N(i % rb, j % rb, k % rb);
  return make_ring(std::move(names), std::move(dual), std::move(fusion));
}

ValidationReport validate_ring(const FusionRing& ring) {
  ValidationReport rep;
  const std::size_t r = ring.rank();
  const auto& nm = ring.names();

  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        if (ring.N(a, b, c) < 0)
          rep.fail("negative multiplicity N[" + nm[a] + "," + nm[b] + "->" + nm[c] + "]");

  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t c = 0; c < r; ++c) {
      const int want = b == c ? 1 : 0;
      if (ring.N(0, b, c) != want || ring.N(b, 0, c) != want)
        rep.fail("unit axiom: N[" + nm[0] + "," + nm[b] + "->" + nm[c] + "] or N[" + nm[b] + "," +
                 nm[0] + "->" + nm[c] + "] != " + std::to_string(want));
    }

  if (ring.dual(0) != 0) rep.fail("dual axiom: vacuum is not self-dual");
  for (std::size_t a = 0; a < r; ++a) {
    if (ring.dual(ring.dual(a)) != a) rep.fail("dual axiom: dual is not an involution at " + nm[a]);
    for (std::size_t b = 0; b < r; ++b) {
      const int want = b == ring.dual(a) ? 1 : 0;
      if (ring.N(a, b, 0) != want)
        rep.fail("dual axiom: N[" + nm[a] + "," + nm[b] + "->" + nm[0] + "] != " +
                 std::to_string(want));
    }
  }

  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        if (ring.N(a, b, c) != ring.N(ring.dual(b), ring.dual(a), ring.dual(c)))
          rep.fail("duality symmetry: N[" + nm[a] + "," + nm[b] + "->" + nm[c] +
                   "] != N[dual(b),dual(a)->dual(c)]");

  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t f = 0; f < r; ++f) {
          long lhs = 0, rhs = 0;
          for (std::size_t e = 0; e < r; ++e) {
            lhs += static_cast<long>(ring.N(a, b, e)) * ring.N(e, c, f);
            rhs += static_cast<long>(ring.N(b, c, e)) * ring.N(a, e, f);
          }
          if (lhs != rhs)
            rep.fail("associativity: (" + nm[a] + "," + nm[b] + "," + nm[c] + "->" + nm[f] +
                     "): " + std::to_string(lhs) + " != " + std::to_string(rhs));
        }
  return rep;
}

std::vector<Label> fuse(const FusionRing& ring, std::size_t a, std::size_t b) {
  if (a >= ring.rank() || b >= ring.rank()) throw InputError("label out of range in fuse");
  std::vector<Label> out;
  for (std::size_t c = 0; c < ring.rank(); ++c)
    for (int k = 0; k < ring.N(a, b, c); ++k) out.push_back(ring.label(c));
  return out;
}

Eigen::VectorXd quantum_dims(const FusionRing& ring, const QuantumDimsOptions& opts) {
  const std::size_t r = ring.rank();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r, r);
  for (std::size_t a = 0; a < r; ++a) A += ring.fusion_matrix(a);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(r);
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    Eigen::VectorXd w = A * v;
    if (!(w(0) > 0)) throw NumericalError("quantum_dims: vacuum component vanished");
    w /= w(0);
    const double delta = (w - v).cwiseAbs().maxCoeff();
    v = std::move(w);
    if (delta < opts.tolerance) {
      // Converged; a few more steps take the remaining error down to rounding.
      for (int extra = 0; extra < 64; ++extra) {
        Eigen::VectorXd u = A * v;
        u /= u(0);
        const double step = (u - v).cwiseAbs().maxCoeff();
        v = std::move(u);
        if (step <= 4 * std::numeric_limits<double>::epsilon() * v.cwiseAbs().maxCoeff()) break;
      }
      return v;
    }
  }
  throw NumericalError("quantum_dims: power iteration did not converge within " +
                       std::to_string(opts.max_iterations) + " iterations");
}

}  // namespace topomono
