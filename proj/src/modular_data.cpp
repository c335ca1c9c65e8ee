#include "topomono/modular_data.hpp"

#include <cmath>
#include <sstream>

#include "topomono/error.hpp"

namespace topomono {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string fmt(cplx z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

std::vector<cplx> verlinde_complex(const ModularData& md) {
  const std::size_t r = md.rank();
  const auto& S = md.S();
  const double D2 = md.global_dim_sq();
  for (std::size_t x = 0; x < r; ++x)
    if (std::abs(S(0, x)) < md.tolerance())
      throw NumericalError("verlinde_fusion: S[0," + md.ring().name(x) + "] vanishes");
  std::vector<cplx> out(r * r * r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        cplx acc = 0;
        for (std::size_t x = 0; x < r; ++x)
          acc += S(a, x) * S(b, x) * std::conj(S(c, x)) / S(0, x);
        out[(a * r + b) * r + c] = acc / D2;
      }
  return out;
}

double unitarity_defect(const ModularData& md) {
  const std::size_t r = md.rank();
  const Eigen::MatrixXcd G = md.S() * md.S().adjoint();
  const Eigen::MatrixXcd want = md.global_dim_sq() * Eigen::MatrixXcd::Identity(r, r);
  return (G - want).cwiseAbs().maxCoeff();
}

}  // namespace

ModularData::ModularData(RingPtr ring, Eigen::MatrixXcd S, Eigen::VectorXcd theta,
                         Eigen::VectorXd dims, double tolerance, std::string name)
    : ring_(std::move(ring)),
      S_(std::move(S)),
      theta_(std::move(theta)),
      dims_(std::move(dims)),
      tolerance_(tolerance),
      name_(std::move(name)) {
  if (!ring_) throw InputError("modular data without a fusion ring");
  const auto r = static_cast<Eigen::Index>(ring_->rank());
  if (S_.rows() != r || S_.cols() != r)
    throw InputError("S is " + std::to_string(S_.rows()) + "x" + std::to_string(S_.cols()) +
                     ", ring rank is " + std::to_string(r));
  if (theta_.size() != r) throw InputError("theta length does not match ring rank");
  if (dims_.size() != r) throw InputError("dims length does not match ring rank");
  if (!(tolerance_ > 0)) throw InputError("tolerance must be positive");
}

ModularData ModularData::with_tolerance(double tol) const {
  return ModularData(ring_, S_, theta_, dims_, tol, name_);
}

ModularData ModularData::with_name(std::string name) const {
  return ModularData(ring_, S_, theta_, dims_, tolerance_, std::move(name));
}

ValidationReport validate_modular_data(const ModularData& md, bool strict) {
  ValidationReport rep = validate_ring(md.ring());
  const std::size_t r = md.rank();
  const double tol = md.tolerance();
  const auto& S = md.S();
  const auto& th = md.theta();
  const auto& d = md.dims();
  const auto& nm = md.ring().names();

  for (std::size_t a = 0; a < r; ++a)
    if (!(d(a) > 0)) rep.fail("dimension of " + nm[a] + " is not positive: " + fmt(d(a)));

  for (std::size_t a = 0; a < r; ++a) {
    if (std::abs(S(0, a) - d(a)) > tol)
      rep.fail("S[" + nm[0] + "," + nm[a] + "] = " + fmt(S(0, a)) + " != d(" + nm[a] +
               ") = " + fmt(d(a)));
    if (std::abs(S(a, 0) - d(a)) > tol)
      rep.fail("S[" + nm[a] + "," + nm[0] + "] = " + fmt(S(a, 0)) + " != d(" + nm[a] +
               ") = " + fmt(d(a)));
  }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      if (std::abs(S(a, b) - S(b, a)) > tol)
        rep.fail("S not symmetric at (" + nm[a] + "," + nm[b] + ")");

  if (std::abs(th(0) - cplx(1.0)) > tol) rep.fail("vacuum twist is " + fmt(th(0)) + ", not 1");
  for (std::size_t a = 0; a < r; ++a)
    if (std::abs(std::abs(th(a)) - 1.0) > tol)
      rep.fail("twist of " + nm[a] + " is not unit modulus: " + fmt(th(a)));
  for (std::size_t a = 0; a < r; ++a) {
    const std::size_t ad = md.ring().dual(a);
    if (ad > a && std::abs(th(a) - th(ad)) > tol)
      rep.fail("twist of " + nm[a] + " differs from twist of its dual " + nm[ad]);
  }

  // dims must be a character of the fusion ring
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      double rhs = 0;
      for (std::size_t c = 0; c < r; ++c) rhs += md.ring().N(a, b, c) * d(c);
      if (std::abs(d(a) * d(b) - rhs) > tol * std::max(1.0, rhs))
        rep.fail("dimensions not multiplicative on " + nm[a] + " x " + nm[b]);
    }

  if (!strict) return rep;

  const double D2 = md.global_dim_sq();
  const double defect = unitarity_defect(md);
  if (defect > tol * std::max(1.0, D2)) {
    rep.fail("modularity: S S^* != D^2 I (max deviation " + fmt(defect) + ", D^2 = " + fmt(D2) +
             ")");
    return rep;
  }
  bool vacuum_row_ok = true;
  for (std::size_t x = 0; x < r; ++x)
    if (std::abs(S(0, x)) < tol) vacuum_row_ok = false;
  if (!vacuum_row_ok) {
    rep.fail("Verlinde: vacuum row of S has a zero entry");
    return rep;
  }
  const auto Nv = verlinde_complex(md);
  const double vtol = 10 * tol;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        const cplx v = Nv[(a * r + b) * r + c];
        if (std::abs(v - std::round(v.real())) > vtol)
          rep.fail("Verlinde: non-integral coefficient " + fmt(v) + " at (" + nm[a] + "," + nm[b] +
                   "->" + nm[c] + ")");
        else if (std::abs(v - cplx(md.ring().N(a, b, c))) > vtol)
          rep.fail("Verlinde: coefficient at (" + nm[a] + "," + nm[b] + "->" + nm[c] +
                   ") is " + fmt(v.real()) + ", ring has " + std::to_string(md.ring().N(a, b, c)));
      }
  return rep;
}

FusionTensor verlinde_fusion(const ModularData& md) {
  if (unitarity_defect(md) > md.tolerance() * std::max(1.0, md.global_dim_sq()))
    throw InputError("verlinde_fusion: data is not modular (S S^* != D^2 I)");
  const auto Nv = verlinde_complex(md);
  FusionTensor out{md.rank(), std::vector<double>(Nv.size())};
  for (std::size_t i = 0; i < Nv.size(); ++i) out.values[i] = Nv[i].real();
  return out;
}

std::size_t numerical_rank(const Eigen::MatrixXcd& S, double tol) {
  if (S.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv(0));
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++k;
  return k;
}

}  // namespace topomono
