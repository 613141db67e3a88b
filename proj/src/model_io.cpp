#include "poincare/model_io.hpp"

#include <cstdio>
#include <fstream>

namespace poincare {

using nlohmann::json;

namespace {

json vec_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vec_from_json(const json& j, Index dim, const char* what) {
  const auto vals = j.get<std::vector<double>>();
  if (static_cast<Index>(vals.size()) != dim) {
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(vals.size()) + " entries, expected " +
                                std::to_string(dim));
  }
  return Eigen::Map<const Eigen::VectorXd>(vals.data(), dim);
}

}  // namespace

int ModelDocument::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("model/point dimension mismatch");
  if (binary) return kernel::sign(model.models.front().score(x));
  return ovr_predict(model, x).class_id;
}

json to_json(const ModelDocument& doc) {
  json classes = json::array();
  for (std::size_t k = 0; k < doc.model.models.size(); ++k) {
    const auto& m = doc.model.models[k];
    classes.push_back({{"class_id", doc.model.class_ids[k]},
                       {"p", vec_to_json(m.p.coords())},
                       {"w", vec_to_json(m.w)},
                       {"platt", {{"A", doc.model.platt[k].A}, {"B", doc.model.platt[k].B}}}});
  }
  return {{"dimension", doc.dim()},
          {"task", doc.binary ? "binary" : "multiclass"},
          {"algorithm", std::string(to_string(doc.algorithm))},
          {"classes", classes},
          {"hyperparameters", doc.hyperparameters},
          {"training_stats", doc.training_stats}};
}

ModelDocument model_from_json(const json& j) {
  ModelDocument doc;
  const Index dim = j.at("dimension").get<Index>();
  if (dim < 1) throw std::invalid_argument("model dimension must be >= 1");
  doc.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  doc.binary = j.value("task", "binary") == "binary";
  for (const auto& c : j.at("classes")) {
    doc.model.class_ids.push_back(c.at("class_id").get<int>());
    doc.model.models.push_back({doc.algorithm, Point<double>(vec_from_json(c.at("p"), dim, "p")),
                                vec_from_json(c.at("w"), dim, "w")});
    const json& pl = c.at("platt");
    doc.model.platt.push_back({pl.at("A").get<double>(), pl.at("B").get<double>()});
  }
  if (doc.model.models.empty()) throw std::invalid_argument("model has no classes");
  if (doc.binary && doc.model.models.size() != 1) throw std::invalid_argument("binary model must have one class entry");
  doc.hyperparameters = j.value("hyperparameters", json::object());
  doc.training_stats = j.value("training_stats", json::object());
  return doc;
}

void save_model(const ModelDocument& doc, const std::string& path) {
  // Write to a sibling temp file first so a failure never leaves a partial model.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write model '" + path + "'");
    out << to_json(doc).dump(2) << '\n';
    if (!out) throw std::runtime_error("error writing model '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move model into place at '" + path + "'");
  }
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model '" + path + "'");
  return model_from_json(json::parse(in));
}

}  // namespace poincare
