#include "poincare/classifier.hpp"
#include "poincare/data.hpp"

#include <doctest.h>

using namespace poincare;
using V = Eigen::VectorXd;
using M = Eigen::MatrixXd;

TEST_CASE("svm_objective by hand") {
  M v(2, 3);
  v << 1, 0, -1, 0, 2, 0;
  const V w = (V(2) << 0.5, 0.25).finished();
  // margins: 0.5, 0.5, -0.5 with labels +1, -1, -1 -> hinge 0.5 + 1.5 + 0.5
  CHECK(svm_objective(v, {1, -1, -1}, w, 2.0) == doctest::Approx(0.5 * 0.3125 + 2.0 * 2.5));
}

TEST_CASE("Poincare SVM separates Assumption-1 data with C = 1000") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double p_norm = 0.95 * (1 + double(seed % 3)) / 5;
    const auto sd = generate_synthetic({2000, 2, 0.95, p_norm, 0.3, seed});
    SvmOptions opt;
    opt.seed = seed;
    const auto m = svm_train(sd.data, sd.truth.p(), opt);
    CHECK(accuracy(BinaryClassifier<double>{Algorithm::svm, m.p, m.w}, sd.data) == 1.0);
    double margin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < sd.data.size(); ++i) {
      margin = std::min(margin, dist_to_hyperplane(sd.data.point_at(i), m.hyperplane()));
    }
    CHECK(margin > 0);
    REQUIRE(!m.objective_trace.empty());
    CHECK(m.objective_trace.front() == doctest::Approx(2000 * 1000.0));
    for (double f : m.objective_trace) CHECK(std::isfinite(f));
    CHECK(m.objective_trace.back() <= m.objective_trace.front());
    CHECK(m.iterations <= 100 * 2000);
  }
}

TEST_CASE("small margins still give near-perfect training accuracy") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto sd = generate_synthetic({2000, 2, 0.95, 0.57, 0.01, seed});
    SvmOptions opt;
    opt.seed = seed;
    const auto m = svm_train(sd.data, sd.truth.p(), opt);
    CHECK(accuracy(BinaryClassifier<double>{Algorithm::svm, m.p, m.w}, sd.data) >= 0.99);
  }
}

TEST_CASE("one-class data ends on the common side") {
  // Every point lies in the half x0 > 0.05, so a hyperplane through the origin
  // can put all of them on the positive side.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u0(0.05, 0.6), u1(-0.6, 0.6);
  M pts(2, 500);
  for (Index i = 0; i < pts.cols(); ++i) pts.col(i) << u0(rng), u1(rng);
  const Dataset ds(pts, std::vector<int>(500, 1));
  const auto m = svm_train(ds, Point<double>::origin(2), {});
  CHECK(accuracy(BinaryClassifier<double>{Algorithm::svm, m.p, m.w}, ds) == 1.0);
}

TEST_CASE("Euclidean SVM: separable through the origin vs curved boundary") {
  // Labels from the sign of the first coordinate: a Euclidean hyperplane through 0.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  M pts(2, 400);
  std::vector<int> lab;
  for (Index i = 0; i < 400; ++i) {
    double x;
    do x = u(rng); while (std::abs(x) < 0.05);
    pts.col(i) << x, u(rng);
    lab.push_back(x > 0 ? 1 : -1);
  }
  const Dataset flat(pts, lab);
  const auto e = euclidean_svm_train(flat, {});
  CHECK(e.euclidean);
  CHECK(e.p.norm() == 0.0);
  CHECK(accuracy(BinaryClassifier<double>{Algorithm::euclidean_svm, e.p, e.w}, flat) == 1.0);

  double mean = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto sd = generate_synthetic({2000, 2, 0.95, 0.57, 0.01, seed});
    const auto m = euclidean_svm_train(sd.data, {});
    mean += accuracy(BinaryClassifier<double>{Algorithm::euclidean_svm, m.p, m.w}, sd.data) / 4;
  }
  CHECK(mean < 1.0);
}

TEST_CASE("SVM training is deterministic in the seed") {
  const auto sd = generate_synthetic({800, 4, 0.95, 0.4, 0.05, 5});
  SvmOptions opt;
  opt.seed = 42;
  const auto a = svm_train(sd.data, sd.truth.p(), opt);
  const auto b = svm_train(sd.data, sd.truth.p(), opt);
  CHECK(a.w == b.w);
  CHECK(a.objective_trace == b.objective_trace);
  opt.seed = 43;
  CHECK_FALSE(svm_train(sd.data, sd.truth.p(), opt).w == a.w);
}

TEST_CASE("SVM option validation and caps") {
  const auto sd = generate_synthetic({100, 2, 0.95, 0.2, 0.05, 6});
  SvmOptions bad;
  bad.C = 0;
  CHECK_THROWS_AS(svm_train(sd.data, sd.truth.p(), bad), std::invalid_argument);
  SvmOptions few;
  few.max_iters = 37;
  few.checkpoint_every = 10;
  const auto m = svm_train(sd.data, sd.truth.p(), few);
  CHECK(m.iterations <= 37);
  CHECK(m.objective_trace.size() >= 2);
}

TEST_CASE("predict_binary: score sign, rescaling, and the reference point") {
  const auto sd = generate_synthetic({300, 3, 0.95, 0.4, 0.05, 7});
  const auto m = svm_train(sd.data, sd.truth.p(), {});
  const BinaryClassifier<double> c{Algorithm::svm, m.p, m.w};
  const BinaryClassifier<double> scaled{Algorithm::svm, m.p, V(3.5 * m.w)};
  CHECK(predict_binary(c, m.p).score == 0.0);
  for (Index i = 0; i < sd.data.size(); ++i) {
    const auto pr = predict_binary(c, sd.data.point(i));
    CHECK(pr.label == predict_binary(scaled, sd.data.point(i)).label);
    CHECK(pr.label == hyperplane_side(sd.data.point_at(i), m.hyperplane()));
  }
  CHECK_THROWS_AS(c.score(V::Zero(2)), std::invalid_argument);
}

TEST_CASE("train_binary dispatches every algorithm") {
  const auto sd = generate_synthetic({400, 2, 0.95, 0.2, 0.1, 8});
  for (Algorithm a : {Algorithm::perceptron, Algorithm::second_order, Algorithm::svm, Algorithm::euclidean_svm}) {
    TrainOptions opt;
    opt.algorithm = a;
    opt.max_epochs = 10000;
    const auto t = train_binary(sd.data, sd.truth.p(), opt);
    CHECK(t.model.algorithm == a);
    CHECK(parse_algorithm(to_string(a)) == a);
    if (a != Algorithm::euclidean_svm) {
      CHECK(accuracy(t.model, sd.data) == 1.0);
      CHECK(t.stats.converged);
    }
  }
  CHECK_THROWS_AS(parse_algorithm("kernel-svm"), std::invalid_argument);
}
