#pragma once

#include "poincare/dataset.hpp"

#include <cmath>
#include <vector>

namespace poincare {

/// Which clauses of the separability assumption fail, by point index.
template <typename Scalar>
struct MarginReport {
  bool satisfied = true;
  std::vector<Index> sign_violations;    ///< y_i <log_p(x_i), w> <= 0
  std::vector<Index> margin_violations;  ///< d(x_i, H) < eps
  std::vector<Index> norm_violations;    ///< |x_i| > R
  Scalar min_distance = std::numeric_limits<Scalar>::infinity();
};

template <typename Scalar>
MarginReport<Scalar> check_margin_assumption(const LabeledDataset<Scalar>& ds, const Hyperplane<Scalar>& h,
                                             Scalar eps, Scalar R) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(R > 0 && R < 1)) throw std::invalid_argument("R must lie in (0, 1)");
  if (ds.dim() != h.p().dim()) throw std::invalid_argument("dataset/hyperplane dimension mismatch");
  MarginReport<Scalar> rep;
  const auto& p = h.p().coords();
  for (Index i = 0; i < ds.size(); ++i) {
    const auto x = ds.point(i);
    const Scalar score = kernel::log_map(p, x).dot(h.w());
    if (!(ds.label(i) * score > 0)) rep.sign_violations.push_back(i);
    const Scalar dist = kernel::dist_to_hyperplane(x, p, h.w());
    rep.min_distance = std::min(rep.min_distance, dist);
    if (dist < eps) rep.margin_violations.push_back(i);
    if (x.norm() > R) rep.norm_violations.push_back(i);
  }
  rep.satisfied = rep.sign_violations.empty() && rep.margin_violations.empty() && rep.norm_violations.empty();
  return rep;
}

template <typename Scalar>
struct PerceptronModel {
  Point<Scalar> p;
  Vector<Scalar> w;
  Index updates = 0;
  Index epochs = 0;
  bool converged = false;

  Hyperplane<Scalar> hyperplane() const { return Hyperplane<Scalar>(p, w); }
};

/// Mistake-driven perceptron in T_p. Starts at w = 0, visits the data in
/// index order, and on y <log_p(x), w> <= 0 applies w += eta * y * log_p(x).
/// Stops after the first error-free pass or `max_epochs` passes.
template <typename Scalar>
PerceptronModel<Scalar> perceptron_train(const LabeledDataset<Scalar>& ds, const Point<Scalar>& p,
                                         Index max_epochs) {
  require_binary(ds);
  const TangentFeatures<Scalar> f = tangent_features(ds.points(), p);
  PerceptronModel<Scalar> m{p, Vector<Scalar>::Zero(ds.dim())};
  for (Index epoch = 0; epoch < max_epochs; ++epoch) {
    Index mistakes = 0;
    for (Index i = 0; i < ds.size(); ++i) {
      const Scalar y = Scalar(ds.label(i));
      if (y * f.v.col(i).dot(m.w) <= Scalar(0)) {
        m.w.noalias() += (f.eta(i) * y) * f.v.col(i);
        ++mistakes;
      }
    }
    m.updates += mistakes;
    m.epochs = epoch + 1;
    if (mistakes == 0) {
      m.converged = true;
      break;
    }
  }
  return m;
}

/// (2 R_p / ((1 - R_p^2) sinh(eps)))^2 with R_p = (|p| + R) / (1 + |p| R).
template <typename Scalar>
Scalar perceptron_bound(Scalar p_norm, Scalar R, Scalar eps) {
  if (!(p_norm >= 0 && p_norm < 1)) throw std::invalid_argument("|p| must lie in [0, 1)");
  if (!(R > 0 && R < 1)) throw std::invalid_argument("R must lie in (0, 1)");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const Scalar rp = (p_norm + R) / (Scalar(1) + p_norm * R);
  const Scalar root = Scalar(2) * rp / ((Scalar(1) - rp * rp) * std::sinh(eps));
  return root * root;
}

}  // namespace poincare
