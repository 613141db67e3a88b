#include "poincare/benchmark.hpp"
#include "poincare/data.hpp"
#include "poincare/model_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace poincare;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRuntime = 2, kNotConverged = 3 };

/// Validation failure that maps to the usage exit code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      throw std::runtime_error("failed writing '" + path + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move output into '" + path + "'");
  }
}

Eigen::VectorXd json_vector(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Index(v.size()));
}

Eigen::VectorXd read_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file '" + path + "'");
  const nlohmann::json j = nlohmann::json::parse(in);
  return json_vector(j.is_array() ? j : j.at("p"));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  Index n = 1000, d = 2;
  double R = 0.95, p_frac = 0.2, eps = 0.01;
  std::uint64_t seed = 0;
  std::string out = "-", truth;
};

int cmd_generate(const GenerateArgs& a) {
  const SyntheticData sd = generate_synthetic({a.n, a.d, a.R, a.p_frac * a.R, a.eps, a.seed});
  std::ostringstream os;
  write_dataset(sd.data, os);
  const std::string truth_path = !a.truth.empty() ? a.truth : (a.out == "-" ? std::string() : a.out + ".truth.json");
  if (!truth_path.empty()) {
    const nlohmann::json truth = {{"p", std::vector<double>(sd.truth.p().coords().data(), sd.truth.p().coords().data() + a.d)},
                                  {"w", std::vector<double>(sd.truth.w().data(), sd.truth.w().data() + a.d)},
                                  {"eps", a.eps},
                                  {"R", a.R},
                                  {"p_frac", a.p_frac},
                                  {"seed", a.seed}};
    write_text(truth.dump(2) + "\n", truth_path);
  }
  write_text(os.str(), a.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string algo = "svm", input, out, ref_point = "learn", ref_file;
  double C = 1000.0, a = 0.0;
  std::optional<double> tol;
  std::optional<std::int64_t> max_iters;
  Index max_epochs = 1000;
  std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& args) {
  TrainOptions opt;
  opt.algorithm = parse_algorithm(args.algo);
  opt.svm.C = args.C;
  opt.svm.tol = args.tol;
  opt.svm.max_iters = args.max_iters;
  opt.svm.seed = args.seed;
  opt.a = args.a;
  opt.max_epochs = args.max_epochs;
  if (args.ref_point == "file" && args.ref_file.empty()) throw UsageError("--ref-point file needs --ref-file");

  const Dataset ds = load_dataset(args.input);
  if (ds.empty()) throw std::runtime_error("training data is empty");

  ModelDocument doc;
  doc.algorithm = opt.algorithm;
  doc.binary = ds.is_binary();
  doc.hyperparameters = {{"C", args.C},           {"a", args.a},         {"max_epochs", args.max_epochs},
                         {"seed", args.seed},     {"ref_point", args.ref_point}};
  if (args.tol) doc.hyperparameters["tol"] = *args.tol;
  if (args.max_iters) doc.hyperparameters["max_iters"] = *args.max_iters;

  const auto t0 = std::chrono::steady_clock::now();
  if (doc.binary) {
    Point<double> p = Point<double>::origin(ds.dim());
    if (args.ref_point == "learn") p = learn_reference_point(ds, args.seed);
    if (args.ref_point == "file") p = Point<double>(read_reference_file(args.ref_file));
    if (p.dim() != ds.dim()) throw UsageError("reference point dimension does not match the data");
    const TrainedBinary<double> t = train_binary(ds, p, opt);
    doc.model.class_ids = {1};
    doc.model.models = {t.model};
    doc.model.platt = {PlattParams{}};
    doc.model.stats = {t.stats};
  } else {
    OvrOptions o;
    o.train = opt;
    o.ref_point = args.ref_point == "learn" ? RefPointMode::learn
                  : args.ref_point == "file" ? RefPointMode::fixed
                                             : RefPointMode::origin;
    if (o.ref_point == RefPointMode::fixed) o.fixed_point = read_reference_file(args.ref_file);
    doc.model = ovr_train(ds, o);
  }
  const double seconds = seconds_since(t0);

  std::int64_t updates = 0, epochs = 0;
  bool converged = true;
  double objective = 0;
  for (const TrainStats& s : doc.model.stats) {
    updates += s.updates;
    epochs = std::max(epochs, s.epochs);
    converged = converged && s.converged;
    if (s.final_objective) objective += *s.final_objective;
  }
  Index correct = 0;
  for (Index i = 0; i < ds.size(); ++i) correct += doc.predict(ds.point(i)) == ds.label(i);
  const double train_accuracy = double(correct) / double(ds.size());
  doc.training_stats = {{"updates", updates},   {"epochs", epochs},   {"converged", converged},
                        {"objective", objective}, {"train_accuracy", train_accuracy}, {"seconds", seconds}};

  std::cout << "algo=" << to_string(opt.algorithm) << " task=" << (doc.binary ? "binary" : "ovr")
            << " n=" << ds.size() << " d=" << ds.dim() << " classes=" << doc.model.num_classes()
            << " updates=" << updates << " epochs=" << epochs << " converged=" << (converged ? 1 : 0)
            << " objective=" << format_double(objective) << " train_accuracy=" << format_double(train_accuracy)
            << " seconds=" << format_double(seconds) << std::endl;

  if (!converged) {
    std::cerr << "error: training did not converge within " << args.max_epochs << " epochs; no model written\n";
    return kNotConverged;
  }
  if (!args.out.empty()) save_model(doc, args.out);
  return kOk;
}

// ---------------------------------------------------------------------------

void require_same_dim(const ModelDocument& m, const Dataset& ds) {
  if (m.dim() != ds.dim()) {
    throw UsageError("model dimension " + std::to_string(m.dim()) + " does not match data dimension " +
                     std::to_string(ds.dim()));
  }
}

int cmd_predict(const std::string& model_path, const std::string& input, const std::string& out) {
  const ModelDocument m = load_model(model_path);
  const Dataset ds = load_dataset(input);
  require_same_dim(m, ds);
  std::ostringstream os;
  for (Index i = 0; i < ds.size(); ++i) {
    if (m.binary) {
      os << predict_binary(m.model.models.front(), ds.point(i)).label << ','
         << format_double(m.model.models.front().score(ds.point(i))) << '\n';
    } else {
      const auto pr = ovr_predict(m.model, ds.point(i));
      os << pr.class_id;
      for (double q : pr.probabilities) os << ',' << format_double(q);
      os << '\n';
    }
  }
  write_text(os.str(), out);
  return kOk;
}

int cmd_evaluate(const std::string& model_path, const std::string& input) {
  const ModelDocument m = load_model(model_path);
  const Dataset ds = load_dataset(input);
  if (ds.empty()) throw UsageError("evaluation data is empty");
  require_same_dim(m, ds);
  std::set<int> classes(ds.labels().begin(), ds.labels().end());
  if (m.binary) classes.insert({-1, 1});
  else classes.insert(m.model.class_ids.begin(), m.model.class_ids.end());

  std::map<int, Index> tp, predicted, actual;
  Index correct = 0;
  for (Index i = 0; i < ds.size(); ++i) {
    const int guess = m.predict(ds.point(i));
    ++predicted[guess];
    ++actual[ds.label(i)];
    if (guess == ds.label(i)) {
      ++correct;
      ++tp[guess];
    }
  }
  std::cout << "n=" << ds.size() << " accuracy=" << format_double(double(correct) / double(ds.size()));
  for (int c : classes) {
    const double precision = predicted[c] ? double(tp[c]) / double(predicted[c]) : 0.0;
    const double recall = actual[c] ? double(tp[c]) / double(actual[c]) : 0.0;
    std::cout << " precision[" << c << "]=" << format_double(precision) << " recall[" << c
              << "]=" << format_double(recall) << " support[" << c << "]=" << actual[c];
  }
  std::cout << std::endl;
  return kOk;
}

// ---------------------------------------------------------------------------

struct HullArgs {
  std::string input, algo = "graham", out = "-";
  std::optional<int> cls;
  bool check = false;
};

int cmd_hull(const HullArgs& a) {
  const Dataset ds = load_dataset(a.input);
  if (ds.dim() != 2) throw UsageError("hull: unsupported dimension d=" + std::to_string(ds.dim()) + " (only d=2)");
  const Eigen::MatrixXd pts = a.cls ? class_points(ds, *a.cls) : ds.points();
  if (pts.cols() == 0) throw UsageError("hull: no points after class filter");

  if (a.algo != "graham" && a.algo != "quickhull") throw UsageError("hull: --algo must be graham or quickhull");
  const auto hull = a.algo == "graham" ? graham_scan(pts) : quickhull(pts);
  std::ostringstream os;
  for (const auto& v : hull.vertices) os << format_double(v.coords()(0)) << ',' << format_double(v.coords()(1)) << '\n';
  write_text(os.str(), a.out);

  if (a.check) {
    const auto g = graham_scan(pts), q = quickhull(pts);
    const std::set<Index> gs(g.indices.begin(), g.indices.end()), qs(q.indices.begin(), q.indices.end());
    const bool match = gs == qs;
    std::cerr << (match ? "MATCH" : "MISMATCH") << " vertices=" << gs.size() << '\n';
    if (!match) return kRuntime;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string suite = "table1", out = "-", json;
  std::size_t seeds = 20;
  std::uint64_t first_seed = 0;
  unsigned jobs = 1;
  bool full = false;
};

int cmd_benchmark(const BenchArgs& a) {
  if (a.seeds == 0) throw UsageError("--seeds must be positive");
  std::string lines;
  nlohmann::json doc;
  bool sound = true;
  if (a.suite == "table1") {
    bench::Table1Config cfg;
    cfg.seeds = bench::seed_range(a.first_seed, a.seeds);
    cfg.jobs = a.jobs;
    const bench::Table1Report r = bench::run_table1(cfg);
    lines = bench::to_lines(r);
    doc = bench::to_json(r);
    for (const auto& c : r.cells) sound = sound && c.bound_respected();
  } else if (a.suite == "figure4-desk") {
    bench::Figure4Config cfg;
    cfg.seeds = bench::seed_range(a.first_seed, a.seeds);
    cfg.jobs = a.jobs;
    if (a.full) cfg.n_sweep.push_back(1'000'000);
    const bench::Figure4Report r = bench::run_figure4(cfg);
    lines = bench::to_lines(r);
    doc = bench::to_json(r);
  } else {
    throw UsageError("unknown suite '" + a.suite + "' (table1 or figure4-desk)");
  }
  write_text(lines, a.out);
  if (!a.json.empty()) write_text(doc.dump(2) + "\n", a.json);
  if (!sound) {
    std::cerr << "error: a perceptron run exceeded its mistake bound or did not converge\n";
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear classifiers on the Poincare ball"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic margin-separated dataset");
  g->add_option("--n", gen.n, "number of points")->check(CLI::PositiveNumber);
  g->add_option("--d", gen.d, "dimension")->check(CLI::PositiveNumber);
  g->add_option("--R", gen.R, "maximum point norm")->check(CLI::Range(0.0, 1.0));
  g->add_option("--p-frac", gen.p_frac, "|p| as a fraction of R")->check(CLI::Range(0.0, 1.0));
  g->add_option("--eps", gen.eps, "margin");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "dataset path, - for stdout");
  g->add_option("--truth", gen.truth, "ground-truth JSON path (default <out>.truth.json)");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a binary or one-vs-rest classifier");
  t->add_option("--algo", tr.algo)->check(CLI::IsMember({"perceptron", "second-order", "svm", "euclidean-svm"}));
  t->add_option("--input", tr.input, "dataset path, - for stdin")->required();
  t->add_option("--c", tr.C, "SVM regularization");
  t->add_option("--tol", tr.tol, "SVM objective tolerance");
  t->add_option("--max-iters", tr.max_iters, "SVM iteration cap");
  t->add_option("--max-epochs", tr.max_epochs, "perceptron epoch cap")->check(CLI::PositiveNumber);
  t->add_option("--a", tr.a, "second-order ridge")->check(CLI::NonNegativeNumber);
  t->add_option("--seed", tr.seed);
  t->add_option("--ref-point", tr.ref_point)->check(CLI::IsMember({"learn", "file", "origin"}));
  t->add_option("--ref-file", tr.ref_file, "JSON with a \"p\" array, or a bare array");
  t->add_option("--out", tr.out, "model path");

  std::string pm, pi, po = "-";
  auto* p = app.add_subcommand("predict", "Predict labels for a dataset");
  p->add_option("--model", pm)->required();
  p->add_option("--input", pi)->required();
  p->add_option("--out", po);

  std::string em, ei;
  auto* e = app.add_subcommand("evaluate", "Accuracy and per-class precision/recall");
  e->add_option("--model", em)->required();
  e->add_option("--input", ei)->required();

  HullArgs ha;
  auto* h = app.add_subcommand("hull", "Hyperbolic convex hull of 2-D points");
  h->add_option("--input", ha.input)->required();
  h->add_option("--class", ha.cls, "keep only this label");
  h->add_option("--algo", ha.algo)->check(CLI::IsMember({"graham", "quickhull"}));
  h->add_flag("--check", ha.check, "cross-check Graham scan against Quickhull");
  h->add_option("--out", ha.out);

  BenchArgs ba;
  auto* b = app.add_subcommand("benchmark", "Mistake-bound and SVM comparison suites");
  b->add_option("--suite", ba.suite)->check(CLI::IsMember({"table1", "figure4-desk"}));
  b->add_option("--seeds", ba.seeds, "number of seeds");
  b->add_option("--first-seed", ba.first_seed);
  b->add_option("--jobs", ba.jobs)->check(CLI::PositiveNumber);
  b->add_flag("--full", ba.full, "add the N = 1e6 cell to the SVM sweep");
  b->add_option("--out", ba.out, "key=value report path");
  b->add_option("--json", ba.json, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*t) return cmd_train(tr);
    if (*p) return cmd_predict(pm, pi, po);
    if (*e) return cmd_evaluate(em, ei);
    if (*h) return cmd_hull(ha);
    if (*b) return cmd_benchmark(ba);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
