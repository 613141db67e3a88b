#include "poincare/data.hpp"
#include "poincare/perceptron.hpp"

#include <doctest.h>

using namespace poincare;
using V = Eigen::VectorXd;

namespace {

// Straight transcription of the update rule through the checked Point API.
struct OracleRun {
  V w;
  Index updates = 0;
  bool converged = false;
};

OracleRun oracle_perceptron(const Dataset& ds, const Point<double>& p, Index max_epochs) {
  OracleRun r{V::Zero(ds.dim())};
  for (Index e = 0; e < max_epochs && !r.converged; ++e) {
    Index mistakes = 0;
    for (Index i = 0; i < ds.size(); ++i) {
      const Tangent<double> v = log_map(p, Point<double>(V(ds.point(i))));
      if (ds.label(i) * v.coords().dot(r.w) <= 0) {
        r.w += eta_weight(v) * ds.label(i) * v.coords();
        ++mistakes;
      }
    }
    r.updates += mistakes;
    r.converged = mistakes == 0;
  }
  return r;
}

}  // namespace

TEST_CASE("perceptron_bound matches the tabulated column") {
  const double R = 0.95;
  CHECK(perceptron_bound(0.19, R, 1.0) == doctest::Approx(594).epsilon(0.01));
  CHECK(perceptron_bound(0.57, R, 1.0) == doctest::Approx(3670).epsilon(0.01));
  CHECK(perceptron_bound(0.19, R, 0.01) == doctest::Approx(8.2e6).epsilon(0.01));
  CHECK(perceptron_bound(0.0, 0.5, 1.0) == doctest::Approx(std::pow(2 * 0.5 / (0.75 * std::sinh(1.0)), 2)));
  CHECK_THROWS_AS(perceptron_bound(1.0, R, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(perceptron_bound(0.1, R, 0.0), std::invalid_argument);
}

TEST_CASE("single point needs exactly one update") {
  Eigen::MatrixXd pts(2, 1);
  pts << 0.3, -0.2;
  const Dataset ds(pts, {-1});
  const auto m = perceptron_train(ds, Point<double>(V::Constant(2, 0.05)), 10);
  CHECK(m.updates == 1);
  CHECK(m.converged);
  CHECK(m.epochs == 2);
}

TEST_CASE("non-binary labels are rejected") {
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(perceptron_train(Dataset(pts, {0, 1}), Point<double>::origin(2), 10), std::invalid_argument);
}

TEST_CASE("perceptron matches the transcription oracle and respects the bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double p_norm = (seed % 2 ? 0.6 : 0.2) * 0.95;
    const double eps = seed % 3 == 0 ? 0.1 : 0.5;
    const auto sd = generate_synthetic({500, 2 + Index(seed % 4), 0.95, p_norm, eps, seed});
    REQUIRE(check_margin_assumption(sd.data, sd.truth, eps, 0.95).satisfied);
    const auto m = perceptron_train(sd.data, sd.truth.p(), 100000);
    const auto o = oracle_perceptron(sd.data, sd.truth.p(), 100000);
    CHECK(m.converged);
    CHECK(m.updates == o.updates);
    CHECK((m.w - o.w).norm() <= 1e-9 * std::max(1.0, o.w.norm()));
    CHECK(double(m.updates) <= perceptron_bound(p_norm, 0.95, eps));
    for (Index i = 0; i < sd.data.size(); ++i) {
      REQUIRE(hyperplane_side(sd.data.point_at(i), m.hyperplane()) == sd.data.label(i));
    }
  }
}

TEST_CASE("negating all labels negates w with the same mistakes") {
  const auto sd = generate_synthetic({400, 3, 0.95, 0.3, 0.2, 11});
  std::vector<int> flipped(sd.data.labels());
  for (int& y : flipped) y = -y;
  const Dataset neg(sd.data.points(), flipped);
  const auto a = perceptron_train(sd.data, sd.truth.p(), 10000);
  const auto b = perceptron_train(neg, sd.truth.p(), 10000);
  CHECK(a.updates == b.updates);
  CHECK(a.epochs == b.epochs);
  CHECK((a.w + b.w).norm() == 0.0);
}

TEST_CASE("max_epochs caps non-separable data") {
  Eigen::MatrixXd pts(1, 2);
  pts << 0.5, 0.5;
  const auto m = perceptron_train(Dataset(pts, {1, -1}), Point<double>::origin(1), 7);
  CHECK_FALSE(m.converged);
  CHECK(m.epochs == 7);
}

TEST_CASE("check_margin_assumption reports each clause") {
  const auto sd = generate_synthetic({300, 2, 0.9, 0.2, 0.05, 3});
  const auto ok = check_margin_assumption(sd.data, sd.truth, 0.05, 0.9);
  CHECK(ok.satisfied);
  CHECK(ok.min_distance >= 0.05);

  std::vector<int> lab(sd.data.labels());
  lab[17] = -lab[17];
  const auto flipped = check_margin_assumption(Dataset(sd.data.points(), lab), sd.truth, 0.05, 0.9);
  CHECK_FALSE(flipped.satisfied);
  CHECK(flipped.sign_violations == std::vector<Index>{17});

  const double tight = ok.min_distance + 1e-6;
  const auto margin = check_margin_assumption(sd.data, sd.truth, tight, 0.9);
  CHECK_FALSE(margin.satisfied);
  CHECK(margin.margin_violations.size() >= 1);
  CHECK(margin.sign_violations.empty());

  const auto norm = check_margin_assumption(sd.data, sd.truth, 0.05, 0.5);
  CHECK_FALSE(norm.satisfied);
  CHECK_FALSE(norm.norm_violations.empty());
}
