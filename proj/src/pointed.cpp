#include "topomono/pointed.hpp"

#include <algorithm>
#include <numeric>

#include "topomono/error.hpp"

namespace topomono {

namespace {

cplx ipow(cplx z, long k) {
  cplx out = 1;
  for (long i = 0; i < k; ++i) out *= z;
  return out;
}

struct Basis {
  std::vector<std::size_t> label;  // grading of each basis vector
  std::vector<int> copy;           // multiplicity index within its label
  std::vector<std::size_t> offset; // first basis index of each label
};

Basis basis_of(const SemisimpleObject& obj) {
  Basis b;
  for (std::size_t a = 0; a < obj.rank(); ++a) {
    b.offset.push_back(b.label.size());
    for (int mu = 0; mu < obj.mult(a); ++mu) {
      b.label.push_back(a);
      b.copy.push_back(mu);
    }
  }
  return b;
}

// R = (id (x) T^*) R_std as a D x D array: coefficient of bar(e_i') (x) e_i.
Eigen::MatrixXcd r_vector(const ConjugateDeformation& def, const Basis& bs) {
  const auto D = static_cast<Eigen::Index>(bs.label.size());
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index ip = 0; ip < D; ++ip) {
    const auto g = bs.label[ip];
    const Eigen::MatrixXcd Tstar = def.T().block(g).adjoint();
    for (int nu = 0; nu < Tstar.rows(); ++nu)
      r(ip, static_cast<Eigen::Index>(bs.offset[g]) + nu) = Tstar(nu, bs.copy[ip]);
  }
  return r;
}

// Rbar = (T^{-1} (x) id) Rbar_std as a D x D array: coefficient of e_j (x) bar(e_j').
Eigen::MatrixXcd rbar_vector(const ConjugateDeformation& def, const Basis& bs) {
  const auto D = static_cast<Eigen::Index>(bs.label.size());
  Eigen::MatrixXcd rb = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index jp = 0; jp < D; ++jp) {
    const auto h = bs.label[jp];
    const Eigen::MatrixXcd Tinv = def.T().block(h).inverse();
    for (int nu = 0; nu < Tinv.rows(); ++nu)
      rb(static_cast<Eigen::Index>(bs.offset[h]) + nu, jp) = Tinv(nu, bs.copy[jp]);
  }
  return rb;
}

// eps(rho, sigma): e_i (x) f_j -> c(g_i, h_j) f_j (x) e_i, as an (E D) x (D E) matrix.
Eigen::MatrixXcd braiding_matrix(const PointedCategory& pc, const Basis& rho, const Basis& sigma) {
  const auto D = static_cast<Eigen::Index>(rho.label.size());
  const auto E = static_cast<Eigen::Index>(sigma.label.size());
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(E * D, D * E);
  for (Eigen::Index i = 0; i < D; ++i)
    for (Eigen::Index j = 0; j < E; ++j)
      B(j * D + i, i * E + j) = pc.r_scalar(rho.label[i], sigma.label[j]);
  return B;
}

// <v, Op v> with v[i', m, j'] = r(i', i) rb(j, j'), m = i * E + j.
cplx sandwich(const Eigen::MatrixXcd& r, const Eigen::MatrixXcd& rb, const Eigen::MatrixXcd& op) {
  const auto D = r.rows(), E = rb.rows();
  cplx acc = 0;
  Eigen::VectorXcd w(D * E);
  for (Eigen::Index ip = 0; ip < D; ++ip)
    for (Eigen::Index jp = 0; jp < E; ++jp) {
      for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = 0; j < E; ++j) w(i * E + j) = r(ip, i) * rb(j, jp);
      acc += w.dot(op * w);  // dot conjugates its left argument
    }
  return acc;
}

void require_usable(const PointedCategory& pc, const ConjugateDeformation& def) {
  if (!same_ring(def.object().ring_ptr(), pc.ring()))
    throw InputError("object is not over the pointed category's group ring");
  if (def.object().is_zero()) throw ZeroObjectError("contraction of the zero object");
  if (!pc.report().ok()) throw InputError("pointed data unusable: " + pc.report().violations.front());
}

}  // namespace

PointedCategory::PointedCategory(std::vector<int> orders, std::vector<cplx> q,
                                 std::vector<std::string> names, double tolerance)
    : orders_(std::move(orders)), q_(std::move(q)), tol_(tolerance) {
  std::size_t n = 1;
  long exponent = 1;
  for (int o : orders_) {
    if (o < 1) throw InputError("cyclic factor order must be positive");
    n *= static_cast<std::size_t>(o);
    exponent = std::lcm(exponent, static_cast<long>(o));
    if (n > kMaxPointedOrder) throw InputError("pointed group order exceeds 64");
  }
  if (exponent > kMaxPointedExponent) throw InputError("pointed group exponent exceeds 12");
  if (q_.size() != n)
    throw InputError("quadratic form has " + std::to_string(q_.size()) +
                     " values, group order is " + std::to_string(n));
  ring_ = abelian_group_ring(orders_, std::move(names));
  report_ = validate_pointed(*this);
}

std::vector<int> PointedCategory::coords(std::size_t g) const {
  std::vector<int> x(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    x[i] = static_cast<int>(g % orders_[i]);
    g /= orders_[i];
  }
  return x;
}

std::size_t PointedCategory::element(const std::vector<int>& x) const {
  std::size_t g = 0;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    const int o = orders_[i];
    g = g * o + static_cast<std::size_t>(((x[i] % o) + o) % o);
  }
  return g;
}

std::size_t PointedCategory::add(std::size_t g, std::size_t h) const {
  auto x = coords(g);
  const auto y = coords(h);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return element(x);
}

std::size_t PointedCategory::neg(std::size_t g) const {
  auto x = coords(g);
  for (auto& v : x) v = -v;
  return element(x);
}

cplx PointedCategory::monodromy(std::size_t g, std::size_t h) const {
  return q_[add(g, h)] / (q_[g] * q_[h]);
}

cplx PointedCategory::r_scalar(std::size_t g, std::size_t h) const {
  const auto x = coords(g), y = coords(h);
  cplx out = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<int> ei(x.size(), 0);
    ei[i] = 1;
    const std::size_t gi = element(ei);
    out *= ipow(q_[gi], static_cast<long>(x[i]) * y[i]);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      std::vector<int> ej(x.size(), 0);
      ej[j] = 1;
      out *= ipow(monodromy(gi, element(ej)), static_cast<long>(x[i]) * y[j]);
    }
  }
  return out;
}

ValidationReport validate_pointed(const PointedCategory& pc) {
  ValidationReport rep;
  const double tol = pc.tolerance();
  const std::size_t n = pc.order();
  const auto& q = pc.q();
  const auto& nm = pc.ring()->names();
  if (std::abs(q[0] - cplx(1)) > tol) rep.fail("q(0) != 1");
  for (std::size_t g = 0; g < n; ++g) {
    if (std::abs(std::abs(q[g]) - 1) > tol) rep.fail("|q(" + nm[g] + ")| != 1");
    if (std::abs(q[g] - q[pc.neg(g)]) > tol) rep.fail("q(-" + nm[g] + ") != q(" + nm[g] + ")");
  }
  if (!rep.ok()) return rep;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      if (std::abs(pc.monodromy(g, h) - pc.monodromy(h, g)) > tol)
        rep.fail("B not symmetric at (" + nm[g] + "," + nm[h] + ")");
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(pc.monodromy(pc.add(g, h), k) - pc.monodromy(g, k) * pc.monodromy(h, k)) >
            tol) {
          rep.fail("B not a bicharacter at (" + nm[g] + "+" + nm[h] + "," + nm[k] + ")");
          break;
        }
    }
  if (!rep.ok()) return rep;
  for (std::size_t g = 0; g < n; ++g) {
    if (std::abs(pc.r_scalar(g, g) - q[g]) > tol)
      rep.fail("no valid R-scalar splitting: c(" + nm[g] + "," + nm[g] + ") != q(" + nm[g] + ")");
    for (std::size_t h = 0; h < n; ++h)
      if (std::abs(pc.r_scalar(g, h) * pc.r_scalar(h, g) - pc.monodromy(g, h)) > tol)
        rep.fail("no valid R-scalar splitting: c(g,h) c(h,g) != B(g,h) at (" + nm[g] + "," +
                 nm[h] + ")");
  }
  return rep;
}

ModularData pointed_modular_data(const PointedCategory& pc) {
  if (!pc.report().ok())
    throw InputError("invalid pointed category: " + pc.report().violations.front());
  const auto n = static_cast<Eigen::Index>(pc.order());
  Eigen::MatrixXcd S(n, n);
  Eigen::VectorXcd theta(n);
  for (Eigen::Index g = 0; g < n; ++g) {
    theta(g) = pc.q()[g];
    for (Eigen::Index h = 0; h < n; ++h) S(g, h) = pc.monodromy(g, h);
  }
  return ModularData(pc.ring(), std::move(S), std::move(theta), Eigen::VectorXd::Ones(n),
                     pc.tolerance(), "pointed");
}

cplx contract_double_braiding(const PointedCategory& pc, const ConjugateDeformation& rho,
                              const ConjugateDeformation& sigma) {
  require_usable(pc, rho);
  require_usable(pc, sigma);
  const Basis br = basis_of(rho.object()), bs = basis_of(sigma.object());
  const Eigen::MatrixXcd eps_rs = braiding_matrix(pc, br, bs);
  const Eigen::MatrixXcd eps_sr = braiding_matrix(pc, bs, br);
  const Eigen::MatrixXcd monodromy = eps_sr * eps_rs;
  return sandwich(r_vector(rho, br), rbar_vector(sigma, bs), monodromy);
}

cplx contract_twist(const PointedCategory& pc, const ConjugateDeformation& rho) {
  require_usable(pc, rho);
  const Basis br = basis_of(rho.object());
  return sandwich(r_vector(rho, br), rbar_vector(rho, br), braiding_matrix(pc, br, br));
}

SemisimpleObject PointedView::pull_back(const SemisimpleObject& obj) const {
  std::vector<int> m(element_to_label.size());
  for (std::size_t g = 0; g < m.size(); ++g) m[g] = obj.mult(element_to_label[g]);
  return {category.ring(), std::move(m)};
}

ConjugateDeformation PointedView::pull_back(const ConjugateDeformation& def) const {
  const auto obj = pull_back(def.object());
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t g = 0; g < element_to_label.size(); ++g)
    blocks.push_back(def.T().block(element_to_label[g]));
  return {obj, BlockMorphism::endo(obj, std::move(blocks))};
}

namespace {

struct GroupTable {
  std::size_t n;
  std::vector<std::size_t> add;
  std::size_t sum(std::size_t g, std::size_t h) const { return add[g * n + h]; }
  std::size_t order_of(std::size_t g) const {
    std::size_t k = 1, x = g;
    while (x != 0) {
      x = sum(x, g);
      ++k;
    }
    return k;
  }
};

bool decompose(const GroupTable& G, std::vector<bool>& in_h, std::size_t h_size,
               std::vector<std::size_t>& gens) {
  if (h_size == G.n) return true;
  if (gens.size() >= 6) return false;
  std::vector<std::size_t> cand;
  for (std::size_t g = 1; g < G.n; ++g) {
    if (in_h[g]) continue;
    bool trivial = true;
    for (std::size_t x = g; x != 0; x = G.sum(x, g))
      if (in_h[x]) {
        trivial = false;
        break;
      }
    if (trivial) cand.push_back(g);
  }
  std::stable_sort(cand.begin(), cand.end(),
                   [&](std::size_t a, std::size_t b) { return G.order_of(a) > G.order_of(b); });
  for (std::size_t g : cand) {
    std::vector<bool> next(G.n, false);
    std::size_t size = 0;
    for (std::size_t h = 0; h < G.n; ++h) {
      if (!in_h[h]) continue;
      std::size_t x = h;
      do {
        if (!next[x]) {
          next[x] = true;
          ++size;
        }
        x = G.sum(x, g);
      } while (x != h);
    }
    gens.push_back(g);
    if (decompose(G, next, size, gens)) {
      in_h = std::move(next);
      return true;
    }
    gens.pop_back();
  }
  return false;
}

}  // namespace

std::optional<PointedView> pointed_view(const ModularData& md) {
  const auto& ring = md.ring();
  const std::size_t n = ring.rank();
  if (n > kMaxPointedOrder) return std::nullopt;
  GroupTable G{n, std::vector<std::size_t>(n * n)};
  for (std::size_t g = 0; g < n; ++g) {
    if (std::abs(md.dims()(g) - 1.0) > md.tolerance()) return std::nullopt;
    for (std::size_t h = 0; h < n; ++h) {
      int total = 0;
      for (std::size_t c = 0; c < n; ++c) {
        const int m = ring.N(g, h, c);
        if (m < 0 || m > 1) return std::nullopt;
        if (m == 1) G.add[g * n + h] = c;
        total += m;
      }
      if (total != 1) return std::nullopt;
    }
  }
  std::vector<bool> in_h(n, false);
  in_h[0] = true;
  std::vector<std::size_t> gens;
  if (!decompose(G, in_h, 1, gens)) return std::nullopt;

  std::vector<int> orders;
  for (auto g : gens) orders.push_back(static_cast<int>(G.order_of(g)));
  long exponent = 1;
  for (int o : orders) exponent = std::lcm(exponent, static_cast<long>(o));
  if (exponent > kMaxPointedExponent) return std::nullopt;

  std::vector<std::size_t> to_label(n);
  std::vector<std::size_t> stride(orders.size(), 1);
  for (std::size_t i = 1; i < orders.size(); ++i) stride[i] = stride[i - 1] * orders[i - 1];
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t label = 0, rest = e;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const auto xi = rest % orders[i];
      rest /= orders[i];
      for (std::size_t k = 0; k < xi; ++k) label = G.sum(label, gens[i]);
    }
    to_label[e] = label;
  }
  std::vector<cplx> q(n);
  std::vector<std::string> names(n);
  for (std::size_t e = 0; e < n; ++e) {
    q[e] = md.theta()(to_label[e]);
    names[e] = ring.name(to_label[e]);
  }
  return PointedView{PointedCategory(std::move(orders), std::move(q), std::move(names),
                                     md.tolerance()),
                     std::move(to_label)};
}

}  // namespace topomono
