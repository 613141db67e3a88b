#pragma once

#include "poincare/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace poincare {

/// Points (one per column) with integer labels. Binary tasks use {-1, +1},
/// multi-class tasks use arbitrary integer class ids.
template <typename Scalar>
class LabeledDataset {
 public:
  LabeledDataset() = default;

  LabeledDataset(Matrix<Scalar> points, std::vector<int> labels)
      : points_(std::move(points)), labels_(std::move(labels)) {
    if (static_cast<Index>(labels_.size()) != points_.cols()) {
      throw std::invalid_argument("label count " + std::to_string(labels_.size()) +
                                  " does not match point count " + std::to_string(points_.cols()));
    }
    if (points_.cols() > 0 && points_.rows() < 1) throw std::invalid_argument("points must have dimension >= 1");
    for (Index i = 0; i < points_.cols(); ++i) {
      if (!points_.col(i).allFinite() || points_.col(i).squaredNorm() >= Scalar(1)) {
        throw DomainError("point " + std::to_string(i) + " is not strictly inside the unit ball");
      }
    }
  }

  Index dim() const { return points_.rows(); }
  Index size() const { return points_.cols(); }
  bool empty() const { return points_.cols() == 0; }

  const Matrix<Scalar>& points() const { return points_; }
  auto point(Index i) const { return points_.col(i); }
  Point<Scalar> point_at(Index i) const { return make_point_unchecked<Scalar>(points_.col(i)); }
  const std::vector<int>& labels() const { return labels_; }
  int label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }

  Scalar max_norm() const { return empty() ? Scalar(0) : points_.colwise().norm().maxCoeff(); }

  /// Sorted distinct labels.
  std::vector<int> classes() const {
    std::set<int> s(labels_.begin(), labels_.end());
    return {s.begin(), s.end()};
  }

  bool is_binary() const {
    return std::all_of(labels_.begin(), labels_.end(), [](int y) { return y == 1 || y == -1; });
  }

  Index count(int label) const { return std::count(labels_.begin(), labels_.end(), label); }

  LabeledDataset subset(const std::vector<Index>& indices) const {
    Matrix<Scalar> pts(dim(), static_cast<Index>(indices.size()));
    std::vector<int> lab;
    lab.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      pts.col(static_cast<Index>(k)) = points_.col(indices[k]);
      lab.push_back(labels_[static_cast<std::size_t>(indices[k])]);
    }
    return LabeledDataset(std::move(pts), std::move(lab));
  }

  /// +1 for `positive`, -1 for everything else.
  LabeledDataset one_vs_rest(int positive) const {
    std::vector<int> lab(labels_.size());
    std::transform(labels_.begin(), labels_.end(), lab.begin(), [&](int y) { return y == positive ? 1 : -1; });
    LabeledDataset out;
    out.points_ = points_;
    out.labels_ = std::move(lab);
    return out;
  }

 private:
  Matrix<Scalar> points_;
  std::vector<int> labels_;
};

template <typename Scalar>
void require_binary(const LabeledDataset<Scalar>& ds) {
  if (ds.empty()) throw std::invalid_argument("dataset is empty");
  if (!ds.is_binary()) throw std::invalid_argument("binary training requires labels in {-1, +1}");
}

/// log_p of every point plus its eta weight; the tangent-space view all
/// classifiers train on.
template <typename Scalar>
struct TangentFeatures {
  Matrix<Scalar> v;    ///< d x N, column i = log_p(x_i)
  Vector<Scalar> eta;  ///< eta_i
};

template <typename Scalar>
TangentFeatures<Scalar> tangent_features(const Matrix<Scalar>& points, const Point<Scalar>& p) {
  if (points.rows() != p.dim()) throw std::invalid_argument("reference point dimension mismatch");
  TangentFeatures<Scalar> f{Matrix<Scalar>(points.rows(), points.cols()), Vector<Scalar>(points.cols())};
  const Scalar sigma = p.conformal_factor();
  for (Index i = 0; i < points.cols(); ++i) {
    f.v.col(i) = kernel::log_map(p.coords(), points.col(i));
    f.eta(i) = kernel::eta_from_norm(sigma, f.v.col(i).norm());
  }
  return f;
}

}  // namespace poincare
