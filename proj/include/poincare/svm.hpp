#pragma once

#include "poincare/dataset.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace poincare {

struct SvmOptions {
  double C = 1000.0;
  std::optional<double> tol;           ///< default 1e-6 * N * C
  std::optional<std::int64_t> max_iters;  ///< default 100 * N
  std::optional<std::int64_t> checkpoint_every;  ///< default N
  std::uint64_t seed = 0;
};

template <typename Scalar>
struct SvmModel {
  Point<Scalar> p;
  Vector<Scalar> w;
  Scalar C = 0;
  std::vector<Scalar> objective_trace;  ///< f(w_0) = N C, then one value per checkpoint
  std::int64_t iterations = 0;
  bool euclidean = false;

  Hyperplane<Scalar> hyperplane() const { return Hyperplane<Scalar>(p, w); }
};

/// 1/2 |w|^2 + C sum_i max(0, 1 - y_i <v_i, w>)
template <typename Scalar>
Scalar svm_objective(const Matrix<Scalar>& v, const std::vector<int>& labels, const Vector<Scalar>& w, Scalar C) {
  const Vector<Scalar> margins = v.transpose() * w;
  Scalar hinge = 0;
  for (Index i = 0; i < margins.size(); ++i) {
    hinge += std::max(Scalar(0), Scalar(1) - Scalar(labels[static_cast<std::size_t>(i)]) * margins(i));
  }
  return Scalar(0.5) * w.squaredNorm() + C * hinge;
}

namespace detail {

/// Stochastic subgradient descent on the primal hinge objective with step
/// 1 / (t + 1000). The full objective is evaluated every `checkpoint_every`
/// steps; training stops once it moves by at most `tol` between checkpoints.
template <typename Scalar>
SvmModel<Scalar> sgd_hinge(const Matrix<Scalar>& v, const std::vector<int>& labels, Point<Scalar> p,
                           const SvmOptions& opt) {
  if (!(opt.C > 0)) throw std::invalid_argument("C must be positive");
  const Index n = v.cols();
  const Scalar C = Scalar(opt.C);
  const Scalar nc = Scalar(n) * C;
  const Scalar tol = opt.tol ? Scalar(*opt.tol) : Scalar(1e-6) * nc;
  const std::int64_t max_iters = opt.max_iters ? *opt.max_iters : std::int64_t{100} * n;
  const std::int64_t every = std::max<std::int64_t>(1, opt.checkpoint_every ? *opt.checkpoint_every : n);

  SvmModel<Scalar> m{std::move(p), Vector<Scalar>::Zero(v.rows()), C, {nc}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);

  Scalar last = nc;
  std::int64_t t = 1;
  for (; t <= max_iters; ++t) {
    const Index i = pick(rng);
    const Scalar y = Scalar(labels[static_cast<std::size_t>(i)]);
    const Scalar step = Scalar(1) / Scalar(t + 1000);
    if (Scalar(1) - y * v.col(i).dot(m.w) < Scalar(0)) {
      m.w *= Scalar(1) - step;
    } else {
      m.w = (Scalar(1) - step) * m.w + (step * nc * y) * v.col(i);
    }
    if (t % every == 0) {
      const Scalar f = svm_objective(v, labels, m.w, C);
      m.objective_trace.push_back(f);
      if (std::abs(last - f) <= tol) break;
      last = f;
    }
  }
  m.iterations = std::min(t, max_iters);
  if (m.objective_trace.size() == 1 || m.iterations % every != 0) {
    m.objective_trace.push_back(svm_objective(v, labels, m.w, C));
  }
  return m;
}

}  // namespace detail

/// Soft-margin SVM in T_p: trains on v_i = log_p(x_i).
template <typename Scalar>
SvmModel<Scalar> svm_train(const LabeledDataset<Scalar>& ds, const Point<Scalar>& p, const SvmOptions& opt) {
  require_binary(ds);
  const TangentFeatures<Scalar> f = tangent_features(ds.points(), p);
  return detail::sgd_hinge(f.v, ds.labels(), p, opt);
}

/// Baseline: the same solver on raw ball coordinates, hyperplane through 0.
template <typename Scalar>
SvmModel<Scalar> euclidean_svm_train(const LabeledDataset<Scalar>& ds, const SvmOptions& opt) {
  require_binary(ds);
  SvmModel<Scalar> m = detail::sgd_hinge(ds.points(), ds.labels(), Point<Scalar>::origin(ds.dim()), opt);
  m.euclidean = true;
  return m;
}

}  // namespace poincare
