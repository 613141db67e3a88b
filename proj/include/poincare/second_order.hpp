#pragma once

#include "poincare/perceptron.hpp"

#include <Eigen/Eigenvalues>

#include <optional>

namespace poincare {

template <typename Scalar>
struct SecondOrderState {
  Vector<Scalar> xi;                ///< sum of y z over mistakes
  Matrix<Scalar> mistake_columns;   ///< d x k, the z vectors at mistakes
  Scalar a = 0;
  Index mistakes = 0;
};

template <typename Scalar>
struct SecondOrderResult {
  SecondOrderState<Scalar> state;
  PerceptronModel<Scalar> model;  ///< w = (aI + X X^T)^+ xi, updates = mistakes
};

namespace detail {

/// Pseudo-inverse of a symmetric PSD matrix through its eigendecomposition.
template <typename Scalar>
Matrix<Scalar> symmetric_pinv(const Matrix<Scalar>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(m);
  const Vector<Scalar>& lam = es.eigenvalues();
  const Scalar tol = std::max(lam.cwiseAbs().maxCoeff(), Scalar(0)) * Scalar(m.rows()) *
                     std::numeric_limits<Scalar>::epsilon();
  Vector<Scalar> inv(lam.size());
  for (Index j = 0; j < lam.size(); ++j) inv(j) = lam(j) > tol ? Scalar(1) / lam(j) : Scalar(0);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

/// Prediction <w_t, z> for w_t = (aI + M + z z^T)^+ xi, where M = X X^T is the
/// mistake Gram matrix. Only rebuilt when a mistake changes M or xi.
///
/// a > 0: Sherman-Morrison gives <w_t, z> = z^T A^-1 xi / (1 + z^T A^-1 z),
///   and A^-1 itself is kept current with rank-one updates.
/// a = 0: if z has a component outside range(M) then <w_t, z> = 0 exactly;
///   otherwise the same identity holds with M^+ in place of A^-1.
template <typename Scalar>
class SecondOrderPredictor {
 public:
  SecondOrderPredictor(Index d, Scalar a)
      : a_(a), inv_(Matrix<Scalar>::Identity(d, d) / (a > 0 ? a : Scalar(1))), u_(Vector<Scalar>::Zero(d)),
        gram_(Matrix<Scalar>::Zero(d, d)) {
    if (a_ == 0) {
      inv_.setZero();
      null_basis_ = Matrix<Scalar>::Identity(d, d);
    }
  }

  Scalar score(const Eigen::Ref<const Vector<Scalar>>& z) const {
    if (a_ > 0) {
      return z.dot(u_) / (Scalar(1) + z.dot(inv_ * z));
    }
    if (null_basis_.cols() > 0) {
      const Scalar outside = (null_basis_.transpose() * z).squaredNorm();
      const Scalar tol = Scalar(z.size()) * std::numeric_limits<Scalar>::epsilon() * (lambda_max_ + z.squaredNorm());
      if (outside > tol) return Scalar(0);
    }
    return z.dot(u_) / (Scalar(1) + z.dot(inv_ * z));
  }

  void add_mistake(const Eigen::Ref<const Vector<Scalar>>& z, const Vector<Scalar>& xi) {
    if (a_ > 0) {
      const Vector<Scalar> az = inv_ * z;
      inv_ -= (az * az.transpose()) / (Scalar(1) + z.dot(az));
      u_.noalias() = inv_ * xi;
      return;
    }
    gram_.noalias() += z * z.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram_);
    const Vector<Scalar>& lam = es.eigenvalues();
    lambda_max_ = lam.cwiseAbs().maxCoeff();
    const Scalar tol = lambda_max_ * Scalar(gram_.rows()) * std::numeric_limits<Scalar>::epsilon();
    Index nnull = 0;
    for (Index j = 0; j < lam.size(); ++j) nnull += lam(j) <= tol;
    Vector<Scalar> inv_lam(lam.size());
    null_basis_.resize(gram_.rows(), nnull);
    for (Index j = 0, k = 0; j < lam.size(); ++j) {
      if (lam(j) > tol) {
        inv_lam(j) = Scalar(1) / lam(j);
      } else {
        inv_lam(j) = 0;
        null_basis_.col(k++) = es.eigenvectors().col(j);
      }
    }
    inv_ = es.eigenvectors() * inv_lam.asDiagonal() * es.eigenvectors().transpose();
    u_.noalias() = inv_ * xi;
  }

 private:
  Scalar a_;
  Matrix<Scalar> inv_;
  Vector<Scalar> u_;
  Matrix<Scalar> gram_;
  Matrix<Scalar> null_basis_;
  Scalar lambda_max_ = 0;
};

}  // namespace detail

/// Second-order perceptron on the scaled tangent vectors z_i = eta_i log_p(x_i).
/// a = 0 selects the pseudo-inverse variant.
template <typename Scalar>
SecondOrderResult<Scalar> second_order_train(const LabeledDataset<Scalar>& ds, const Point<Scalar>& p, Scalar a,
                                             Index max_epochs) {
  require_binary(ds);
  if (!(a >= 0)) throw std::invalid_argument("second-order parameter a must be >= 0");
  const Index d = ds.dim();
  TangentFeatures<Scalar> f = tangent_features(ds.points(), p);
  Matrix<Scalar> z = f.v * f.eta.asDiagonal();

  SecondOrderResult<Scalar> r{{Vector<Scalar>::Zero(d), Matrix<Scalar>(d, 0), a, 0},
                              {p, Vector<Scalar>::Zero(d)}};
  auto& st = r.state;
  std::vector<Index> mistake_idx;
  detail::SecondOrderPredictor<Scalar> predictor(d, a);

  for (Index epoch = 0; epoch < max_epochs; ++epoch) {
    Index mistakes = 0;
    for (Index i = 0; i < ds.size(); ++i) {
      const int y = ds.label(i);
      if (kernel::sign(predictor.score(z.col(i))) != y) {
        st.xi.noalias() += Scalar(y) * z.col(i);
        mistake_idx.push_back(i);
        predictor.add_mistake(z.col(i), st.xi);
        ++mistakes;
      }
    }
    st.mistakes += mistakes;
    r.model.epochs = epoch + 1;
    if (mistakes == 0) {
      r.model.converged = true;
      break;
    }
  }

  st.mistake_columns.resize(d, static_cast<Index>(mistake_idx.size()));
  for (std::size_t k = 0; k < mistake_idx.size(); ++k) st.mistake_columns.col(static_cast<Index>(k)) = z.col(mistake_idx[k]);
  const Matrix<Scalar> amat = Scalar(a) * Matrix<Scalar>::Identity(d, d) + st.mistake_columns * st.mistake_columns.transpose();
  r.model.w = a > 0 ? Vector<Scalar>(amat.ldlt().solve(st.xi)) : Vector<Scalar>(detail::symmetric_pinv(amat) * st.xi);
  r.model.updates = st.mistakes;
  return r;
}

/// Mistake bound (1/sinh(eps)) sqrt((a + w*^T X X^T w*) sum_j log(1 + lambda_j / a)).
/// Returns nullopt when a = 0, where the log-determinant term is undefined.
template <typename Scalar>
std::optional<Scalar> second_order_bound(const SecondOrderState<Scalar>& st, const Vector<Scalar>& w_star, Scalar eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (st.mistakes == 0) return Scalar(0);
  if (!(st.a > 0)) return std::nullopt;
  if (w_star.size() != st.mistake_columns.rows()) throw std::invalid_argument("w* dimension mismatch");
  const Matrix<Scalar> gram = st.mistake_columns * st.mistake_columns.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram, Eigen::EigenvaluesOnly);
  Scalar logdet = 0;
  for (Index j = 0; j < es.eigenvalues().size(); ++j) {
    logdet += std::log1p(std::max(es.eigenvalues()(j), Scalar(0)) / st.a);
  }
  const Scalar lambda_w = (st.mistake_columns.transpose() * w_star).squaredNorm();
  return std::sqrt((st.a + lambda_w) * logdet) / std::sinh(eps);
}

}  // namespace poincare
