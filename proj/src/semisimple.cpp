#include "topomono/semisimple.hpp"

#include <numeric>

#include "topomono/error.hpp"

namespace topomono {

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

SemisimpleObject::SemisimpleObject(RingPtr ring, std::vector<int> mult)
    : ring_(std::move(ring)), mult_(std::move(mult)) {
  if (!ring_) throw InputError("object without a fusion ring");
  if (mult_.size() != ring_->rank())
    throw InputError("multiplicity vector has " + std::to_string(mult_.size()) +
                     " entries, ring rank is " + std::to_string(ring_->rank()));
  for (int m : mult_)
    if (m < 0) throw InputError("negative multiplicity");
}

SemisimpleObject SemisimpleObject::zero(RingPtr ring) {
  const auto r = ring->rank();
  return {std::move(ring), std::vector<int>(r, 0)};
}

SemisimpleObject SemisimpleObject::simple(RingPtr ring, std::size_t a) {
  std::vector<int> m(ring->rank(), 0);
  m.at(a) = 1;
  return {std::move(ring), std::move(m)};
}

bool SemisimpleObject::is_zero() const {
  return std::all_of(mult_.begin(), mult_.end(), [](int m) { return m == 0; });
}

int SemisimpleObject::total_multiplicity() const {
  return std::accumulate(mult_.begin(), mult_.end(), 0);
}

bool SemisimpleObject::same_ring(const SemisimpleObject& other) const {
  return topomono::same_ring(ring_, other.ring_);
}

BlockMorphism::BlockMorphism(SemisimpleObject source, SemisimpleObject target,
                             std::vector<Eigen::MatrixXcd> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
  if (!source_.same_ring(target_)) throw InputError("morphism between objects of different rings");
  if (blocks_.size() != source_.rank())
    throw InputError("morphism needs one block per label");
  for (std::size_t a = 0; a < blocks_.size(); ++a)
    if (blocks_[a].rows() != target_.mult(a) || blocks_[a].cols() != source_.mult(a))
      throw InputError("block at label " + source_.ring().name(a) + " is " +
                       std::to_string(blocks_[a].rows()) + "x" + std::to_string(blocks_[a].cols()) +
                       ", expected " + std::to_string(target_.mult(a)) + "x" +
                       std::to_string(source_.mult(a)));
}

BlockMorphism BlockMorphism::identity(const SemisimpleObject& obj) {
  std::vector<Eigen::MatrixXcd> b;
  for (int m : obj.mult()) b.push_back(Eigen::MatrixXcd::Identity(m, m));
  return {obj, obj, std::move(b)};
}

BlockMorphism BlockMorphism::zero(const SemisimpleObject& source, const SemisimpleObject& target) {
  std::vector<Eigen::MatrixXcd> b;
  for (std::size_t a = 0; a < source.rank(); ++a)
    b.push_back(Eigen::MatrixXcd::Zero(target.mult(a), source.mult(a)));
  return {source, target, std::move(b)};
}

BlockMorphism BlockMorphism::endo(const SemisimpleObject& obj,
                                  std::vector<Eigen::MatrixXcd> blocks) {
  return {obj, obj, std::move(blocks)};
}

BlockMorphism BlockMorphism::adjoint() const {
  std::vector<Eigen::MatrixXcd> b;
  for (const auto& x : blocks_) b.push_back(x.adjoint());
  return {target_, source_, std::move(b)};
}

BlockMorphism BlockMorphism::compose(const BlockMorphism& other) const {
  if (!(other.target_ == source_)) throw InputError("compose: object mismatch");
  std::vector<Eigen::MatrixXcd> b;
  for (std::size_t a = 0; a < blocks_.size(); ++a) b.push_back(blocks_[a] * other.blocks_[a]);
  return {other.source_, target_, std::move(b)};
}

BlockMorphism BlockMorphism::operator+(const BlockMorphism& other) const {
  if (!(other.source_ == source_) || !(other.target_ == target_))
    throw InputError("sum of morphisms with different objects");
  std::vector<Eigen::MatrixXcd> b;
  for (std::size_t a = 0; a < blocks_.size(); ++a) b.push_back(blocks_[a] + other.blocks_[a]);
  return {source_, target_, std::move(b)};
}

double BlockMorphism::max_abs_diff(const BlockMorphism& other) const {
  double m = 0;
  for (std::size_t a = 0; a < blocks_.size(); ++a)
    if (blocks_[a].size() > 0) m = std::max(m, (blocks_[a] - other.block(a)).cwiseAbs().maxCoeff());
  return m;
}

ConjugateDeformation::ConjugateDeformation(SemisimpleObject object, BlockMorphism T)
    : T_(std::move(T)) {
  if (!(T_.source() == object) || !T_.is_endo())
    throw InputError("deformation must be an endomorphism of its object");
  for (std::size_t a = 0; a < object.rank(); ++a) {
    const auto& blk = T_.block(a);
    if (blk.size() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(blk);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxConditionNumber))
      throw NumericalError("deformation block at label " + object.ring().name(a) +
                           " is numerically singular (condition number " + std::to_string(cond) +
                           ")");
    cond_ = std::max(cond_, cond);
  }
}

ConjugateDeformation::ConjugateDeformation(const SemisimpleObject& object)
    : T_(BlockMorphism::identity(object)) {}

BlockMorphism ConjugateDeformation::gram() const { return T_.adjoint().compose(T_); }

BlockMorphism ConjugateDeformation::gram_inverse() const {
  std::vector<Eigen::MatrixXcd> b;
  const BlockMorphism G = gram();
  for (const auto& g : G.blocks())
    b.push_back(g.size() == 0 ? g : Eigen::MatrixXcd(g.inverse()));
  return BlockMorphism::endo(object(), std::move(b));
}

SemisimpleObject conjugate_object(const SemisimpleObject& rho) {
  std::vector<int> m(rho.rank(), 0);
  for (std::size_t a = 0; a < rho.rank(); ++a) m[rho.ring().dual(a)] = rho.mult(a);
  return {rho.ring_ptr(), std::move(m)};
}

cplx categorical_trace(const BlockMorphism& X, const Eigen::VectorXd& dims) {
  if (!X.is_endo()) throw InputError("categorical_trace: morphism is not an endomorphism");
  if (X.source().is_zero()) throw ZeroObjectError("categorical_trace: zero object");
  if (static_cast<std::size_t>(dims.size()) != X.source().rank())
    throw InputError("categorical_trace: dims length does not match ring rank");
  cplx acc = 0;
  for (std::size_t a = 0; a < X.blocks().size(); ++a)
    if (X.block(a).size() > 0) acc += dims(a) * X.block(a).trace();
  return acc;
}

BlockMorphism central_projection(const SemisimpleObject& rho, std::size_t a) {
  if (a >= rho.rank()) throw InputError("central_projection: label out of range");
  std::vector<Eigen::MatrixXcd> b;
  for (std::size_t c = 0; c < rho.rank(); ++c)
    b.push_back(c == a ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(rho.mult(c), rho.mult(c)))
                       : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(rho.mult(c), rho.mult(c))));
  return BlockMorphism::endo(rho, std::move(b));
}

std::pair<double, double> solution_norms(const ConjugateDeformation& def,
                                         const Eigen::VectorXd& dims) {
  return {categorical_trace(def.gram(), dims).real(),
          categorical_trace(def.gram_inverse(), dims).real()};
}

Eigen::VectorXd trace_coefficients(const ConjugateDeformation& def, Side side,
                                     const Eigen::VectorXd& dims) {
  const auto& rho = def.object();
  if (rho.is_zero()) throw ZeroObjectError("trace_coefficients: zero object");
  const BlockMorphism G = side == Side::left ? def.gram() : def.gram_inverse();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rho.rank());
  for (std::size_t a = 0; a < rho.rank(); ++a) {
    if (rho.mult(a) == 0) continue;
    out(a) = categorical_trace(central_projection(rho, a).compose(G), dims).real() / dims(a);
  }
  return out;
}

cplx double_braiding_trace(const ConjugateDeformation& rho, const ConjugateDeformation& sigma,
                           const ModularData& md) {
  if (!same_ring(rho.object().ring_ptr(), md.ring_ptr()) ||
      !same_ring(sigma.object().ring_ptr(), md.ring_ptr()))
    throw InputError("double_braiding_trace: objects are not over the modular data's ring");
  const Eigen::VectorXd t = trace_coefficients(rho, Side::left, md.dims());
  const Eigen::VectorXd s = trace_coefficients(sigma, Side::right, md.dims());
  cplx acc = 0;
  for (std::size_t a = 0; a < md.rank(); ++a) {
    if (t(a) == 0) continue;
    for (std::size_t b = 0; b < md.rank(); ++b)
      if (s(b) != 0) acc += t(a) * s(b) * md.S()(a, b);
  }
  return acc;
}

cplx twist_trace(const ConjugateDeformation& rho, const ModularData& md) {
  if (!same_ring(rho.object().ring_ptr(), md.ring_ptr()))
    throw InputError("twist_trace: object is not over the modular data's ring");
  if (rho.object().is_zero()) throw ZeroObjectError("twist_trace: zero object");
  cplx acc = 0;
  for (std::size_t a = 0; a < md.rank(); ++a) acc += static_cast<double>(rho.object().mult(a)) *
                                                     md.theta()(a);
  return acc;
}

}  // namespace topomono
