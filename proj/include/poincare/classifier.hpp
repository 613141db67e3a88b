#pragma once

#include "poincare/hull.hpp"
#include "poincare/perceptron.hpp"
#include "poincare/platt.hpp"
#include "poincare/second_order.hpp"
#include "poincare/svm.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace poincare {

enum class Algorithm { perceptron, second_order, svm, euclidean_svm };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::perceptron: return "perceptron";
    case Algorithm::second_order: return "second-order";
    case Algorithm::svm: return "svm";
    case Algorithm::euclidean_svm: return "euclidean-svm";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "perceptron") return Algorithm::perceptron;
  if (s == "second-order") return Algorithm::second_order;
  if (s == "svm") return Algorithm::svm;
  if (s == "euclidean-svm") return Algorithm::euclidean_svm;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

/// Hyperparameters shared by every binary trainer; each algorithm reads the
/// fields it needs.
struct TrainOptions {
  Algorithm algorithm = Algorithm::svm;
  SvmOptions svm;
  double a = 0.0;                 ///< second-order ridge
  Index max_epochs = 1000;        ///< perceptron variants
};

/// Any trained hyperplane: score(x) = <log_p(x), w>, or <x, w> for the
/// Euclidean baseline.
template <typename Scalar>
struct BinaryClassifier {
  Algorithm algorithm = Algorithm::svm;
  Point<Scalar> p;
  Vector<Scalar> w;

  template <typename Derived>
  Scalar score(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != w.size()) throw std::invalid_argument("classifier/point dimension mismatch");
    if (algorithm == Algorithm::euclidean_svm) return x.dot(w);
    return kernel::log_map(p.coords(), x).dot(w);
  }
};

template <typename Scalar>
struct Prediction {
  int label = 0;  ///< -1, 0 or +1
  Scalar score = 0;
};

template <typename Scalar, typename Derived>
Prediction<Scalar> predict_binary(const BinaryClassifier<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  const Scalar s = model.score(x);
  return {kernel::sign(s), s};
}

template <typename Scalar>
Prediction<Scalar> predict_binary(const BinaryClassifier<Scalar>& model, const Point<Scalar>& x) {
  return predict_binary(model, x.coords());
}

/// Training diagnostics of a single binary run.
struct TrainStats {
  std::int64_t updates = 0;      ///< mistakes (perceptrons) or SGD steps (SVMs)
  std::int64_t epochs = 0;
  bool converged = true;
  std::optional<double> final_objective;
};

template <typename Scalar>
struct TrainedBinary {
  BinaryClassifier<Scalar> model;
  TrainStats stats;
};

template <typename Scalar>
TrainedBinary<Scalar> train_binary(const LabeledDataset<Scalar>& ds, const Point<Scalar>& p, const TrainOptions& opt) {
  TrainedBinary<Scalar> out{{opt.algorithm, p, Vector<Scalar>::Zero(ds.dim())}, {}};
  switch (opt.algorithm) {
    case Algorithm::perceptron: {
      const auto m = perceptron_train(ds, p, opt.max_epochs);
      out.model.w = m.w;
      out.stats = {m.updates, m.epochs, m.converged, std::nullopt};
      break;
    }
    case Algorithm::second_order: {
      const auto r = second_order_train(ds, p, Scalar(opt.a), opt.max_epochs);
      out.model.w = r.model.w;
      out.stats = {r.model.updates, r.model.epochs, r.model.converged, std::nullopt};
      break;
    }
    case Algorithm::svm: {
      const auto m = svm_train(ds, p, opt.svm);
      out.model.w = m.w;
      out.stats = {m.iterations, 0, true, double(m.objective_trace.back())};
      break;
    }
    case Algorithm::euclidean_svm: {
      const auto m = euclidean_svm_train(ds, opt.svm);
      out.model.p = m.p;
      out.model.w = m.w;
      out.stats = {m.iterations, 0, true, double(m.objective_trace.back())};
      break;
    }
  }
  return out;
}

template <typename Scalar>
Scalar accuracy(const BinaryClassifier<Scalar>& model, const LabeledDataset<Scalar>& ds) {
  if (ds.empty()) throw std::invalid_argument("accuracy of an empty dataset is undefined");
  Index correct = 0;
  for (Index i = 0; i < ds.size(); ++i) correct += predict_binary(model, ds.point(i)).label == ds.label(i);
  return Scalar(correct) / Scalar(ds.size());
}

}  // namespace poincare
