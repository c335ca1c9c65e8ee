#include "topomono/random.hpp"

#include "topomono/error.hpp"

namespace topomono {

namespace {

Eigen::MatrixXcd gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      M(i, j) = cplx(re, im);
    }
  return M;
}

double condition(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace

SemisimpleObject random_object(const RingPtr& ring, Rng& rng, const RandomObjectOptions& opts) {
  const std::size_t r = ring->rank();
  std::uniform_int_distribution<std::size_t> pick(0, r - 1);
  std::uniform_int_distribution<int> mult(1, opts.max_multiplicity);
  std::uniform_int_distribution<int> count(1, opts.max_total);
  std::vector<int> m(r, 0);
  int budget = count(rng);
  while (budget > 0) {
    const auto a = pick(rng);
    const int k = std::min(mult(rng), budget);
    if (m[a] + k > opts.max_multiplicity) {
      --budget;
      continue;
    }
    m[a] += k;
    budget -= k;
  }
  if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; })) m[pick(rng)] = 1;
  return {ring, std::move(m)};
}

ConjugateDeformation random_deformation(const SemisimpleObject& obj, Rng& rng) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n : obj.mult()) {
    if (n == 0) {
      blocks.emplace_back(0, 0);
      continue;
    }
    for (int attempt = 0;; ++attempt) {
      Eigen::MatrixXcd M = gaussian(n, rng);
      if (condition(M) < 1e4) {
        blocks.push_back(std::move(M));
        break;
      }
      if (attempt > 1000) throw NumericalError("random_deformation: could not draw a block");
    }
  }
  return {obj, BlockMorphism::endo(obj, std::move(blocks))};
}

ConjugateDeformation random_unitary_deformation(const SemisimpleObject& obj, Rng& rng) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n : obj.mult()) {
    if (n == 0) {
      blocks.emplace_back(0, 0);
      continue;
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(n, rng));
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      const cplx d = R(i, i);
      if (std::abs(d) > 0) Q.col(i) *= d / std::abs(d);
    }
    blocks.push_back(std::move(Q));
  }
  return {obj, BlockMorphism::endo(obj, std::move(blocks))};
}

}  // namespace topomono
