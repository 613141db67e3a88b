#pragma once

#include "poincare/classifier.hpp"

#include <future>
#include <vector>

namespace poincare {

/// How each one-vs-rest classifier picks its reference point.
enum class RefPointMode { learn, origin, fixed };

struct OvrOptions {
  TrainOptions train;
  RefPointMode ref_point = RefPointMode::learn;
  std::optional<Vector<double>> fixed_point;  ///< used with RefPointMode::fixed
  bool parallel = false;
};

template <typename Scalar>
struct MultiClassModel {
  std::vector<int> class_ids;
  std::vector<BinaryClassifier<Scalar>> models;
  std::vector<PlattParams> platt;
  std::vector<TrainStats> stats;

  Index num_classes() const { return static_cast<Index>(class_ids.size()); }
  Index dim() const { return models.empty() ? 0 : models.front().w.size(); }
};

template <typename Scalar>
struct MultiClassPrediction {
  int class_id = 0;
  std::vector<double> probabilities;  ///< per entry of MultiClassModel::class_ids
};

namespace detail {

template <typename Scalar>
Point<Scalar> choose_reference(const LabeledDataset<Scalar>& binary, const OvrOptions& opt) {
  if (opt.train.algorithm == Algorithm::euclidean_svm) return Point<Scalar>::origin(binary.dim());
  switch (opt.ref_point) {
    case RefPointMode::learn: return learn_reference_point(binary);
    case RefPointMode::origin: return Point<Scalar>::origin(binary.dim());
    case RefPointMode::fixed:
      if (!opt.fixed_point) throw std::invalid_argument("fixed reference point requested but none given");
      return Point<Scalar>(opt.fixed_point->template cast<Scalar>());
  }
  return Point<Scalar>::origin(binary.dim());
}

template <typename Scalar>
std::pair<TrainedBinary<Scalar>, PlattParams> train_one_vs_rest(const LabeledDataset<Scalar>& ds, int cls,
                                                                const OvrOptions& opt) {
  const LabeledDataset<Scalar> binary = ds.one_vs_rest(cls);
  TrainedBinary<Scalar> tb = train_binary(binary, choose_reference(binary, opt), opt.train);
  std::vector<double> scores(static_cast<std::size_t>(binary.size()));
  for (Index i = 0; i < binary.size(); ++i) scores[static_cast<std::size_t>(i)] = double(tb.model.score(binary.point(i)));
  return {std::move(tb), platt_fit(scores, binary.labels())};
}

}  // namespace detail

/// One binary classifier per class (class vs rest), each with its own
/// reference point and a Platt calibration fitted on its training scores.
template <typename Scalar>
MultiClassModel<Scalar> ovr_train(const LabeledDataset<Scalar>& ds, const OvrOptions& opt) {
  const std::vector<int> classes = ds.classes();
  if (classes.size() < 2) throw std::invalid_argument("one-vs-rest needs at least two classes");

  MultiClassModel<Scalar> m;
  m.class_ids = classes;
  std::vector<std::pair<TrainedBinary<Scalar>, PlattParams>> results;
  if (opt.parallel) {
    std::vector<std::future<std::pair<TrainedBinary<Scalar>, PlattParams>>> jobs;
    for (int c : classes) {
      jobs.push_back(std::async(std::launch::async, [&ds, &opt, c] { return detail::train_one_vs_rest(ds, c, opt); }));
    }
    for (auto& j : jobs) results.push_back(j.get());
  } else {
    for (int c : classes) results.push_back(detail::train_one_vs_rest(ds, c, opt));
  }
  for (auto& [tb, pl] : results) {
    m.models.push_back(std::move(tb.model));
    m.stats.push_back(tb.stats);
    m.platt.push_back(pl);
  }
  return m;
}

/// Maximum a posteriori class over the calibrated per-class probabilities;
/// the smallest class id wins ties.
template <typename Scalar, typename Derived>
MultiClassPrediction<Scalar> ovr_predict(const MultiClassModel<Scalar>& m, const Eigen::MatrixBase<Derived>& x) {
  if (m.models.empty()) throw std::invalid_argument("empty multi-class model");
  MultiClassPrediction<Scalar> out;
  std::size_t best = 0;
  for (std::size_t k = 0; k < m.models.size(); ++k) {
    out.probabilities.push_back(m.platt[k].probability(double(m.models[k].score(x))));
    if (out.probabilities[k] > out.probabilities[best] ||
        (out.probabilities[k] == out.probabilities[best] && m.class_ids[k] < m.class_ids[best])) {
      best = k;
    }
  }
  out.class_id = m.class_ids[best];
  return out;
}

template <typename Scalar>
MultiClassPrediction<Scalar> ovr_predict(const MultiClassModel<Scalar>& m, const Point<Scalar>& x) {
  return ovr_predict(m, x.coords());
}

}  // namespace poincare
