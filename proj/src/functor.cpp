#include "topomono/functor.hpp"

#include <sstream>

#include "topomono/error.hpp"

namespace topomono {

namespace {

std::string row_str(const Eigen::MatrixXi& M, Eigen::Index r) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index c = 0; c < M.cols(); ++c) os << (c ? "," : "") << M(r, c);
  os << "]";
  return os.str();
}

}  // namespace

TensorFunctorData::TensorFunctorData(ModularData src, ModularData tgt, Eigen::MatrixXi m,
                                     std::vector<std::optional<Blocks>> defs)
    : source(std::move(src)), target(std::move(tgt)), M(std::move(m)), deformations(std::move(defs)) {
  const auto r2 = static_cast<Eigen::Index>(source.rank());
  const auto r1 = static_cast<Eigen::Index>(target.rank());
  if (M.rows() != r2 || M.cols() != r1)
    throw InputError("functor matrix is " + std::to_string(M.rows()) + "x" +
                     std::to_string(M.cols()) + ", expected " + std::to_string(r2) + "x" +
                     std::to_string(r1));
  if ((M.array() < 0).any()) throw InputError("functor matrix has negative entries");
  if (deformations.empty()) deformations.resize(source.rank());
  if (deformations.size() != source.rank())
    throw InputError("functor needs one (optional) deformation per source label");
  for (std::size_t z = 0; z < deformations.size(); ++z) {
    if (!deformations[z]) continue;
    // shape check through BlockMorphism
    BlockMorphism::endo(image(z), *deformations[z]);
  }
}

SemisimpleObject TensorFunctorData::image(std::size_t zeta) const {
  if (zeta >= source.rank()) throw InputError("source label out of range");
  std::vector<int> m(target.rank());
  for (std::size_t a = 0; a < target.rank(); ++a) m[a] = M(zeta, a);
  return {target.ring_ptr(), std::move(m)};
}

TensorFunctorData TensorFunctorData::with_deformations(
    std::vector<std::optional<Blocks>> defs) const {
  return {source, target, M, std::move(defs)};
}

TensorFunctorData identity_functor(const ModularData& md) {
  const auto r = static_cast<Eigen::Index>(md.rank());
  return {md, md, Eigen::MatrixXi::Identity(r, r)};
}

ValidationReport validate_functor(const TensorFunctorData& fd, const FunctorCheckOptions& opts) {
  ValidationReport rep;
  const auto& R2 = fd.source.ring();
  const auto& R1 = fd.target.ring();
  const std::size_t r2 = R2.rank(), r1 = R1.rank();
  const auto& M = fd.M;
  const double tol = opts.tolerance;

  for (std::size_t a = 0; a < r1; ++a)
    if (M(0, a) != (a == 0 ? 1 : 0)) {
      rep.fail("vacuum row: F(" + R2.name(0) + ") is " + row_str(M, 0) + ", not the vacuum");
      break;
    }
  for (std::size_t z = 0; z < r2; ++z)
    if (M.row(z).sum() == 0) rep.fail("faithfulness: F(" + R2.name(z) + ") is the zero object");

  for (std::size_t z = 0; z < r2; ++z)
    for (std::size_t x = 0; x < r2; ++x)
      for (std::size_t c = 0; c < r1; ++c) {
        long lhs = 0, rhs = 0;
        for (std::size_t g = 0; g < r2; ++g) lhs += static_cast<long>(R2.N(z, x, g)) * M(g, c);
        for (std::size_t a = 0; a < r1; ++a) {
          if (M(z, a) == 0) continue;
          for (std::size_t b = 0; b < r1; ++b)
            rhs += static_cast<long>(M(z, a)) * M(x, b) * R1.N(a, b, c);
        }
        if (lhs != rhs) {
          rep.fail("fusion homomorphism: F(" + R2.name(z) + " x " + R2.name(x) + ") and F(" +
                   R2.name(z) + ") x F(" + R2.name(x) + ") differ at " + R1.name(c) + " (" +
                   std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
          c = r1;
        }
      }

  for (std::size_t z = 0; z < r2; ++z)
    for (std::size_t a = 0; a < r1; ++a)
      if (M(R2.dual(z), R1.dual(a)) != M(z, a)) {
        rep.fail("dual compatibility: M[dual " + R2.name(z) + "][dual " + R1.name(a) +
                 "] != M[" + R2.name(z) + "][" + R1.name(a) + "]");
      }

  const auto& d1 = fd.target.dims();
  const auto& d2 = fd.source.dims();
  for (std::size_t z = 0; z < r2; ++z) {
    double dim = 0;
    for (std::size_t a = 0; a < r1; ++a) dim += M(z, a) * d1(a);
    if (std::abs(dim - d2(z)) > tol * std::max(1.0, d2(z)))
      rep.fail("dimension: d(F(" + R2.name(z) + ")) = " + std::to_string(dim) + " != " +
               std::to_string(d2(z)));
  }

  const auto& t1 = fd.target.theta();
  const auto& t2 = fd.source.theta();
  for (std::size_t z = 0; z < r2; ++z) {
    cplx sum = 0;
    for (std::size_t a = 0; a < r1; ++a) sum += static_cast<double>(M(z, a)) * t1(a);
    if (std::abs(sum - t2(z)) > tol) {
      const std::string msg = "twist: sum of target twists in F(" + R2.name(z) +
                              ") does not equal theta(" + R2.name(z) + ")";
      if (opts.twist_as_warning)
        rep.warn(msg);
      else
        rep.fail(msg);
    }
  }
  return rep;
}

namespace {

ConjugateDeformation transported(const TensorFunctorData& fd, std::size_t zeta) {
  const auto obj = fd.image(zeta);
  if (!fd.deformations[zeta]) return ConjugateDeformation(obj);
  return {obj, BlockMorphism::endo(obj, *fd.deformations[zeta])};
}

void require_valid(const TensorFunctorData& fd, const FunctorCheckOptions& opts) {
  const auto rep = validate_functor(fd, opts);
  if (!rep.ok()) throw InputError("invalid functor: " + rep.violations.front());
}

}  // namespace

ConjugateDeformation transport_solution(const TensorFunctorData& fd, std::size_t zeta,
                                        const FunctorCheckOptions& opts) {
  if (zeta >= fd.source.rank()) throw InputError("source label out of range");
  require_valid(fd, opts);
  return transported(fd, zeta);
}

TheoremResiduals theorem_residuals(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                   const Eigen::MatrixXi& N, const ModularData& source,
                                   const ModularData& target) {
  TheoremResiduals r;
  const Eigen::MatrixXcd XS1Y =
      X.cast<cplx>() * target.S() * Y.cast<cplx>();
  r.s_relation = (source.S() - XS1Y).cwiseAbs().maxCoeff();
  r.x_dims = (X * target.dims() - source.dims()).cwiseAbs().maxCoeff();
  r.y_dims = (Y.transpose() * target.dims() - source.dims()).cwiseAbs().maxCoeff();
  r.twist = (source.theta() - N.cast<double>().cast<cplx>() * target.theta()).cwiseAbs().maxCoeff();
  return r;
}

TransportResult transport_matrices(const TensorFunctorData& fd, const FunctorCheckOptions& opts) {
  require_valid(fd, opts);
  const std::size_t r2 = fd.source.rank(), r1 = fd.target.rank();
  TransportResult tr;
  tr.X = Eigen::MatrixXd::Zero(r2, r1);
  tr.Y = Eigen::MatrixXd::Zero(r1, r2);
  tr.N = fd.M;
  const auto& d1 = fd.target.dims();
  for (std::size_t z = 0; z < r2; ++z) {
    const auto def = transported(fd, z);
    tr.X.row(z) = trace_coefficients(def, Side::left, d1).transpose();
    tr.Y.col(z) = trace_coefficients(def, Side::right, d1);
  }
  tr.residuals = theorem_residuals(tr.X, tr.Y, tr.N, fd.source, fd.target);
  return tr;
}

TheoremReport verify_theorem(const TransportResult& tr, const TensorFunctorData& fd,
                             double tolerance) {
  TheoremReport rep;
  const auto r2 = static_cast<Eigen::Index>(fd.source.rank());
  const auto r1 = static_cast<Eigen::Index>(fd.target.rank());
  const bool shapes = tr.X.rows() == r2 && tr.X.cols() == r1 && tr.Y.rows() == r1 &&
                      tr.Y.cols() == r2 && tr.N.rows() == r2 && tr.N.cols() == r1;
  rep.checks.push_back({"shapes", shapes, 0});
  if (!shapes) return rep;

  const auto res = theorem_residuals(tr.X, tr.Y, tr.N, fd.source, fd.target);
  rep.checks.push_back({"S2 = X S1 Y", res.s_relation < tolerance, res.s_relation});
  rep.checks.push_back({"X d1 = d2", res.x_dims < tolerance, res.x_dims});
  rep.checks.push_back({"Y^T d1 = d2", res.y_dims < tolerance, res.y_dims});
  rep.checks.push_back({"theta2 = N theta1", res.twist < tolerance, res.twist});

  const double xmin = tr.X.minCoeff(), ymin = tr.Y.minCoeff();
  rep.checks.push_back({"X nonnegative", xmin >= 0, xmin});
  rep.checks.push_back({"Y nonnegative", ymin >= 0, ymin});
  const int nmin = tr.N.minCoeff();
  rep.checks.push_back({"N nonnegative integer", nmin >= 0, static_cast<double>(nmin)});

  Eigen::Index mismatches = 0;
  for (Eigen::Index z = 0; z < r2; ++z)
    for (Eigen::Index a = 0; a < r1; ++a) {
      const bool n = tr.N(z, a) != 0, x = tr.X(z, a) != 0, y = tr.Y(a, z) != 0;
      if (n != x || n != y) ++mismatches;
    }
  rep.checks.push_back({"shared support of X rows, Y columns, N rows", mismatches == 0,
                        static_cast<double>(mismatches)});
  return rep;
}

TensorFunctorData compose_functors(const TensorFunctorData& F, const TensorFunctorData& G) {
  if (F.target.rank() != G.source.rank() || !same_ring(F.target.ring_ptr(), G.source.ring_ptr()))
    throw InputError("compose_functors: F's target is not G's source");
  return {F.source, G.target, F.M * G.M};
}

}  // namespace topomono
