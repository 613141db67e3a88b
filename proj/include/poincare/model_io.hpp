#pragma once

#include "poincare/multiclass.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace poincare {

/// A serialized classifier: either one binary hyperplane (class_id +1 vs -1)
/// or a one-vs-rest family.
struct ModelDocument {
  bool binary = true;
  Algorithm algorithm = Algorithm::svm;
  MultiClassModel<double> model;
  nlohmann::json hyperparameters = nlohmann::json::object();
  nlohmann::json training_stats = nlohmann::json::object();

  Index dim() const { return model.dim(); }

  /// Binary: -1/0/+1 from the hyperplane side. Multi-class: MAP class id.
  int predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

nlohmann::json to_json(const ModelDocument& doc);
ModelDocument model_from_json(const nlohmann::json& j);

void save_model(const ModelDocument& doc, const std::string& path);
ModelDocument load_model(const std::string& path);

}  // namespace poincare
