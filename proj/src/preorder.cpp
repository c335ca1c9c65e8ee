#include "topomono/preorder.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "topomono/error.hpp"
#include "topomono/nnls.hpp"

namespace topomono {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible: return "FEASIBLE";
    case Verdict::obstructed: return "OBSTRUCTED";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(CombinedVerdict v) {
  switch (v) {
    case CombinedVerdict::no_obstruction: return "NO-OBSTRUCTION";
    case CombinedVerdict::obstructed: return "OBSTRUCTED";
    case CombinedVerdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

using Row = std::vector<int>;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string num(cplx z) {
  if (std::abs(z.imag()) < 1e-12) return num(z.real());
  return "(" + num(z.real()) + "," + num(z.imag()) + ")";
}

// Exhaustive enumeration of nonnegative integer rows n with n_a <= caps[a],
// sum_a n_a d_a <= dim_limit, optionally sum_a n_a d_a = dim_target, and
// sum_a n_a theta_a = theta_target. Rows come out in ascending lexicographic order.
struct RowEnumerator {
  const Eigen::VectorXd& d;
  const Eigen::VectorXcd& theta;
  std::vector<int> caps;
  double dim_limit = std::numeric_limits<double>::infinity();
  std::optional<double> dim_target{};
  cplx theta_target{};
  double tol = kDefaultTolerance;
  std::size_t leaf_cap = 0;

  std::size_t leaves = 0;
  std::vector<Row> solutions{};

  void run() {
    Row cur(caps.size(), 0);
    visit(0, 0.0, cplx(0), cur);
  }

 private:
  double dim_slack() const { return tol * std::max(1.0, std::abs(dim_limit)); }

  void visit(std::size_t a, double weight, cplx th, Row& cur) {
    if (a == caps.size()) {
      if (++leaves > leaf_cap)
        throw ResourceError("row enumeration exceeded the candidate cap of " +
                            std::to_string(leaf_cap));
      if (dim_target && std::abs(weight - *dim_target) > tol * std::max(1.0, *dim_target)) return;
      if (std::abs(th - theta_target) > tol) return;
      solutions.push_back(cur);
      return;
    }
    for (int k = 0; k <= caps[a]; ++k) {
      const double w = weight + k * d(static_cast<Eigen::Index>(a));
      if (std::isfinite(dim_limit) && w > dim_limit + dim_slack()) break;
      cur[a] = k;
      visit(a + 1, w, th + static_cast<double>(k) * theta(static_cast<Eigen::Index>(a)), cur);
    }
    cur[a] = 0;
  }
};

std::size_t saturating_product(const std::vector<std::vector<Row>>& rows) {
  std::size_t total = 1;
  for (const auto& r : rows) {
    if (r.empty()) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / r.size())
      return std::numeric_limits<std::size_t>::max();
    total *= r.size();
  }
  return total;
}

// First `limit` matrices of the cartesian product, row 0 varying slowest.
std::vector<Eigen::MatrixXi> lex_product(const std::vector<std::vector<Row>>& rows,
                                         std::size_t cols, std::size_t limit) {
  std::vector<Eigen::MatrixXi> out;
  if (saturating_product(rows) == 0) return out;
  std::vector<std::size_t> pick(rows.size(), 0);
  while (out.size() < limit) {
    Eigen::MatrixXi M(rows.size(), cols);
    for (std::size_t z = 0; z < rows.size(); ++z)
      for (std::size_t a = 0; a < cols; ++a) M(z, a) = rows[z][pick[z]][a];
    out.push_back(std::move(M));
    std::size_t z = rows.size();
    while (z-- > 0) {
      if (++pick[z] < rows[z].size()) break;
      pick[z] = 0;
    }
    if (z == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

Row unit_row(std::size_t n) {
  Row r(n, 0);
  r[0] = 1;
  return r;
}

}  // namespace

PreorderResult check_twist_preorder(const Eigen::VectorXcd& theta2, const Eigen::VectorXd& d2,
                                    const Eigen::VectorXcd& theta1, const Eigen::VectorXd& d1,
                                    const TwistOptions& opts) {
  const auto r2 = static_cast<std::size_t>(theta2.size());
  const auto r1 = static_cast<std::size_t>(theta1.size());
  if (r1 == 0 || r2 == 0) throw InputError("twist vectors must be nonempty");
  if (static_cast<std::size_t>(d2.size()) != r2 || static_cast<std::size_t>(d1.size()) != r1)
    throw InputError("dimension vectors must match twist vectors");
  if (opts.bound < 0) throw InputError("bound must be nonnegative");

  PreorderResult res;
  ObstructionReport obs;
  obs.mode = "twist";
  obs.entry_bound = opts.bound;
  obs.row_dimension_cap = opts.dim_rows ? opts.bound * d2.maxCoeff() : 0;

  if (!opts.dim_rows) {
    double count = std::pow(opts.bound + 1.0, static_cast<double>(r1));
    if (count > static_cast<double>(opts.candidate_cap))
      throw ResourceError("twist search: (bound+1)^rank = " + num(count) +
                          " candidates per row exceeds the cap");
  }

  std::vector<std::vector<Row>> rows(r2);
  for (std::size_t z = 0; z < r2; ++z) {
    RowEnumerator en{d1, theta1, std::vector<int>(r1, opts.bound)};
    en.theta_target = theta2(z);
    en.tol = opts.tolerance;
    en.leaf_cap = opts.candidate_cap;
    if (opts.dim_rows) {
      en.dim_limit = std::min(d2(z), obs.row_dimension_cap);
      en.dim_target = d2(z);
      for (std::size_t a = 0; a < r1; ++a)
        en.caps[a] = static_cast<int>(std::floor((en.dim_limit + opts.tolerance) / d1(a)));
    }
    if (z == 0 && opts.vacuum_row) {
      en.caps.assign(r1, 0);
      en.caps[0] = 1;
      en.dim_limit = std::numeric_limits<double>::infinity();
    }
    en.run();
    res.candidates_examined += en.leaves;
    if (z == 0 && opts.vacuum_row) {
      // only e_0 is admissible
      std::erase_if(en.solutions, [&](const Row& r) { return r != unit_row(r1); });
    }
    rows[z] = std::move(en.solutions);
    if (rows[z].empty()) {
      res.verdict = Verdict::obstructed;
      obs.exhaustive = true;
      std::ostringstream os;
      os << "no nonnegative-integer combination of theta1";
      if (opts.dim_rows) os << " with total dimension " << num(d2(z));
      if (z == 0 && opts.vacuum_row) os << " supported on the vacuum";
      os << " equals theta2 entry " << z << " (= " << num(theta2(z)) << ")";
      if (!opts.dim_rows) os << " with entries <= " << opts.bound;
      obs.reason = os.str();
      res.obstruction = obs;
      return res;
    }
  }

  res.verdict = Verdict::feasible;
  res.solutions_found = saturating_product(rows);
  const Eigen::MatrixXcd th1 = theta1;
  for (auto& N : lex_product(rows, r1, opts.max_certificates)) {
    MonotoneCertificate c;
    c.mode = "twist";
    const Eigen::VectorXcd lhs = N.cast<double>().cast<cplx>() * theta1;
    c.residuals.emplace_back("theta2 - N theta1", (theta2 - lhs).cwiseAbs().maxCoeff());
    if (opts.dim_rows)
      c.residuals.emplace_back("N d1 - d2", (N.cast<double>() * d1 - d2).cwiseAbs().maxCoeff());
    c.N = std::move(N);
    res.certificates.push_back(std::move(c));
  }
  return res;
}

PreorderResult check_functor_search(const ModularData& md2, const ModularData& md1,
                                    const FunctorSearchOptions& opts) {
  const std::size_t r2 = md2.rank(), r1 = md1.rank();
  const auto& R2 = md2.ring();
  const auto& R1 = md1.ring();
  const auto& d1 = md1.dims();
  const auto& d2 = md2.dims();

  PreorderResult res;
  ObstructionReport obs;
  obs.mode = "functor";
  obs.entry_bound = opts.bound;
  obs.row_dimension_cap = d2.maxCoeff();

  std::vector<std::vector<Row>> cand(r2);
  cand[0] = {unit_row(r1)};
  for (std::size_t z = 1; z < r2; ++z) {
    RowEnumerator en{d1, md1.theta(), std::vector<int>(r1, 0)};
    en.dim_limit = d2(z);
    en.dim_target = d2(z);
    en.theta_target = md2.theta()(z);
    en.tol = opts.tolerance;
    en.leaf_cap = 10'000'000;
    for (std::size_t a = 0; a < r1; ++a)
      en.caps[a] = std::min(opts.bound,
                            static_cast<int>(std::floor((d2(z) + opts.tolerance) / d1(a))));
    en.run();
    res.candidates_examined += en.leaves;
    cand[z] = std::move(en.solutions);
    if (cand[z].empty()) {
      res.verdict = Verdict::obstructed;
      obs.exhaustive = true;
      obs.reason = "no multiplicity row for " + R2.name(z) + " has dimension " + num(d2(z)) +
                   " and twist sum " + num(md2.theta()(z)) + " (entries <= " +
                   std::to_string(opts.bound) + ")";
      res.obstruction = obs;
      return res;
    }
  }

  auto dual_row = [&](const Row& r) {
    Row out(r1);
    for (std::size_t a = 0; a < r1; ++a) out[R1.dual(a)] = r[a];
    return out;
  };

  std::vector<Row> assign(r2);
  std::vector<bool> done(r2, false);
  assign[0] = unit_row(r1);
  done[0] = true;

  auto homomorphism_ok = [&](std::size_t upto) {
    for (std::size_t x = 0; x <= upto; ++x)
      for (std::size_t y = 0; y <= upto; ++y) {
        if (x != upto && y != upto) {
          // pairs not involving `upto` may have become checkable through a product label
          bool touches = false;
          for (std::size_t g = 0; g < r2; ++g)
            if (R2.N(x, y, g) > 0 && g == upto) touches = true;
          if (!touches) continue;
        }
        bool ready = true;
        for (std::size_t g = 0; g < r2 && ready; ++g)
          if (R2.N(x, y, g) > 0 && !done[g]) ready = false;
        if (!ready) continue;
        for (std::size_t c = 0; c < r1; ++c) {
          long lhs = 0, rhs = 0;
          for (std::size_t g = 0; g < r2; ++g)
            if (R2.N(x, y, g) > 0) lhs += static_cast<long>(R2.N(x, y, g)) * assign[g][c];
          for (std::size_t a = 0; a < r1; ++a) {
            if (assign[x][a] == 0) continue;
            for (std::size_t b = 0; b < r1; ++b)
              rhs += static_cast<long>(assign[x][a]) * assign[y][b] * R1.N(a, b, c);
          }
          if (lhs != rhs) return false;
        }
      }
    return true;
  };

  std::size_t nodes = 0;
  bool truncated = false;
  std::vector<Eigen::MatrixXi> found;

  std::function<void(std::size_t)> place = [&](std::size_t z) {
    if (truncated) return;
    if (z == r2) {
      Eigen::MatrixXi M(r2, r1);
      for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t a = 0; a < r1; ++a) M(i, a) = assign[i][a];
      ++res.solutions_found;
      if (found.size() < opts.max_certificates) found.push_back(std::move(M));
      return;
    }
    std::vector<Row> options;
    const std::size_t zd = R2.dual(z);
    if (zd < z) {
      const Row forced = dual_row(assign[zd]);
      if (std::find(cand[z].begin(), cand[z].end(), forced) != cand[z].end())
        options.push_back(forced);
    } else {
      for (const auto& r : cand[z])
        if (zd != z || dual_row(r) == r) options.push_back(r);
    }
    for (const auto& r : options) {
      if (++nodes > opts.node_cap) {
        truncated = true;
        return;
      }
      assign[z] = r;
      done[z] = true;
      if (homomorphism_ok(z)) place(z + 1);
      done[z] = false;
      if (truncated) return;
    }
  };
  place(1);
  res.candidates_examined += nodes;

  for (auto& M : found) {
    TensorFunctorData fd(md2, md1, M);
    FunctorCheckOptions fo{opts.tolerance, false};
    if (!validate_functor(fd, fo).ok()) continue;
    const auto tr = transport_matrices(fd, fo);
    const auto rep = verify_theorem(tr, fd, opts.tolerance);
    if (!rep.all_pass()) continue;
    MonotoneCertificate c;
    c.mode = "functor";
    c.M = M;
    c.N = tr.N;
    c.X = tr.X;
    c.Y = tr.Y;
    c.residuals = {{"S2 - X S1 Y", tr.residuals.s_relation},
                   {"X d1 - d2", tr.residuals.x_dims},
                   {"Y^T d1 - d2", tr.residuals.y_dims},
                   {"theta2 - N theta1", tr.residuals.twist}};
    res.certificates.push_back(std::move(c));
  }

  if (!res.certificates.empty()) {
    res.verdict = Verdict::feasible;
    if (truncated) res.note = "enumeration truncated at the node cap; more candidates may exist";
  } else if (truncated) {
    res.verdict = Verdict::unknown;
    res.note = "enumeration truncated after " + std::to_string(nodes) +
               " nodes without a certificate";
  } else {
    res.verdict = Verdict::obstructed;
    obs.exhaustive = true;
    obs.reason =
        "no multiplicity matrix satisfies the vacuum, dimension, twist, dual and "
        "fusion-homomorphism constraints (entries <= " +
        std::to_string(opts.bound) + ")";
    res.obstruction = obs;
  }
  return res;
}

namespace {

struct AnlsState {
  Eigen::MatrixXd X, Y;
  double residual = std::numeric_limits<double>::infinity();
};

double s_residual(const Eigen::MatrixXcd& S2, const Eigen::VectorXd& d2, const Eigen::MatrixXcd& S1,
                  const Eigen::VectorXd& d1, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  const double s = (S2 - X.cast<cplx>() * S1 * Y.cast<cplx>()).cwiseAbs().maxCoeff();
  const double x = (X * d1 - d2).cwiseAbs().maxCoeff();
  const double y = (Y.transpose() * d1 - d2).cwiseAbs().maxCoeff();
  return std::max({s, x, y});
}

// min over v >= 0 of |C v - target|^2 + w^2 (d . v - dim)^2, with C complex.
Eigen::VectorXd constrained_nnls(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& target,
                                 const Eigen::VectorXd& d, double dim, double w) {
  const auto m = C.rows(), n = C.cols();
  Eigen::MatrixXd A(2 * m + 1, n);
  Eigen::VectorXd b(2 * m + 1);
  A.topRows(m) = C.real();
  A.middleRows(m, m) = C.imag();
  A.row(2 * m) = w * d.transpose();
  b.head(m) = target.real();
  b.segment(m, m) = target.imag();
  b(2 * m) = w * dim;
  return nnls(A, b).x;
}

}  // namespace

PreorderResult check_s_preorder(const Eigen::MatrixXcd& S2, const Eigen::VectorXd& d2,
                                const Eigen::MatrixXcd& S1, const Eigen::VectorXd& d1,
                                const SOptions& opts) {
  const auto n2 = S2.rows(), n1 = S1.rows();
  if (S2.cols() != n2 || S1.cols() != n1) throw InputError("S matrices must be square");
  if (d2.size() != n2 || d1.size() != n1) throw InputError("dimension vectors must match S");
  if (n1 == 0 || n2 == 0) throw InputError("S matrices must be nonempty");
  if (n1 > 64 || n2 > 64) throw ResourceError("S search is limited to rank 64");
  if (std::abs(S2(0, 0) - cplx(1)) > opts.tolerance || std::abs(S1(0, 0) - cplx(1)) > opts.tolerance)
    throw InputError("unnormalized S matrices must have S[0,0] = 1");

  PreorderResult res;
  ObstructionReport obs;
  obs.mode = "s_matrix";

  const std::size_t rank2 = numerical_rank(S2, opts.tolerance);
  const std::size_t rank1 = numerical_rank(S1, opts.tolerance);
  if (rank2 > rank1) {
    res.verdict = Verdict::obstructed;
    obs.exhaustive = true;
    obs.reason = "rank screen: rank(S2) = " + std::to_string(rank2) + " > rank(S1) = " +
                 std::to_string(rank1) + ", but rank(X S1 Y) <= rank(S1)";
    res.obstruction = obs;
    return res;
  }

  Rng rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double w = 1e3;
  AnlsState best;
  for (int start = 0; start < std::max(1, opts.multistart); ++start) {
    Eigen::MatrixXd Y(n1, n2);
    if (start == 0 && n1 == n2) {
      Y = Eigen::MatrixXd::Identity(n1, n2);
    } else {
      for (Eigen::Index i = 0; i < n1; ++i)
        for (Eigen::Index j = 0; j < n2; ++j) Y(i, j) = unif(rng);
      for (Eigen::Index j = 0; j < n2; ++j) Y.col(j) *= d2(j) / Y.col(j).dot(d1);
    }
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n2, n1);
    double prev = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 0; it < opts.iterations; ++it) {
      const Eigen::MatrixXcd A = S1 * Y.cast<cplx>();
      for (Eigen::Index z = 0; z < n2; ++z)
        X.row(z) = constrained_nnls(A.transpose(), S2.row(z).transpose(), d1, d2(z), w).transpose();
      const Eigen::MatrixXcd B = X.cast<cplx>() * S1;
      for (Eigen::Index x = 0; x < n2; ++x)
        Y.col(x) = constrained_nnls(B, S2.col(x), d1, d2(x), w);
      ++res.candidates_examined;
      const double r = s_residual(S2, d2, S1, d1, X, Y);
      if (r < best.residual) best = {X, Y, r};
      if (r < opts.tolerance) break;
      stall = (prev - r) < 1e-12 * std::max(1.0, prev) ? stall + 1 : 0;
      if (stall >= 25) break;
      prev = r;
    }
    if (best.residual < opts.tolerance) break;
  }

  if (best.residual < opts.tolerance) {
    res.verdict = Verdict::feasible;
    res.solutions_found = 1;
    MonotoneCertificate c;
    c.mode = "s_matrix";
    c.X = best.X;
    c.Y = best.Y;
    c.residuals = {
        {"S2 - X S1 Y", (S2 - best.X.cast<cplx>() * S1 * best.Y.cast<cplx>()).cwiseAbs().maxCoeff()},
        {"X d1 - d2", (best.X * d1 - d2).cwiseAbs().maxCoeff()},
        {"Y^T d1 - d2", (best.Y.transpose() * d1 - d2).cwiseAbs().maxCoeff()}};
    res.certificates.push_back(std::move(c));
  } else {
    res.verdict = Verdict::unknown;
    res.note = "alternating nonnegative least squares did not converge (best residual " +
               num(best.residual) + " after " + std::to_string(opts.multistart) +
               " starts); heuristic failure is not an obstruction";
  }
  return res;
}

PreorderResult check_s_preorder(const ModularData& md2, const ModularData& md1,
                                const SOptions& opts) {
  std::size_t examined = 0;
  if (opts.structured) {
    const std::size_t rank2 = numerical_rank(md2.S(), opts.tolerance);
    const std::size_t rank1 = numerical_rank(md1.S(), opts.tolerance);
    if (rank2 <= rank1) {
      auto fr = check_functor_search(md2, md1, opts.functor);
      examined = fr.candidates_examined;
      if (fr.verdict == Verdict::feasible) {
        PreorderResult res;
        res.verdict = Verdict::feasible;
        res.candidates_examined = examined;
        for (const auto& fc : fr.certificates) {
          MonotoneCertificate c;
          c.mode = "s_matrix";
          c.X = fc.X;
          c.Y = fc.Y;
          c.residuals = {fc.residuals[0], fc.residuals[1], fc.residuals[2]};
          res.certificates.push_back(std::move(c));
        }
        res.solutions_found = res.certificates.size();
        res.note = "certified by functor-shaped X, Y";
        return res;
      }
    }
  }
  auto res = check_s_preorder(md2.S(), md2.dims(), md1.S(), md1.dims(), opts);
  res.candidates_examined += examined;
  return res;
}

FullReport check_preorder_full(const ModularData& md2, const ModularData& md1,
                               const FullConfig& config) {
  FullReport rep;
  rep.twist = check_twist_preorder(md2.theta(), md2.dims(), md1.theta(), md1.dims(), config.twist);
  rep.functor = check_functor_search(md2, md1, config.functor);
  SOptions so = config.s;
  so.functor = config.functor;
  rep.s = check_s_preorder(md2, md1, so);

  const Verdict vs[] = {rep.twist.verdict, rep.functor.verdict, rep.s.verdict};
  const bool any_obstructed =
      std::any_of(std::begin(vs), std::end(vs), [](Verdict v) { return v == Verdict::obstructed; });
  const bool all_feasible =
      std::all_of(std::begin(vs), std::end(vs), [](Verdict v) { return v == Verdict::feasible; });
  if (any_obstructed) {
    rep.verdict = CombinedVerdict::obstructed;
    rep.statement =
        "OBSTRUCTED: a monotone of the degraded data cannot be obtained from the clean data, so no "
        "finite-depth channel maps the clean state to the degraded one.";
  } else if (all_feasible) {
    rep.verdict = CombinedVerdict::no_obstruction;
    rep.statement = kNoObstructionStatement;
  } else {
    rep.verdict = CombinedVerdict::unknown;
    rep.statement = "UNKNOWN: no obstruction was proven and not every check produced a certificate.";
  }
  return rep;
}

}  // namespace topomono
