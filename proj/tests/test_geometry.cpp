#include "poincare/geometry.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <complex>

using namespace poincare;
using poincare::test::random_in_ball;
using V = Eigen::VectorXd;

namespace {

V v2(double a, double b) { return (V(2) << a, b).finished(); }
Point<double> pt(double a, double b) { return Point<double>(v2(a, b)); }

// Independent oracles: complex-plane Mobius addition and the arccosh distance.
V complex_mobius(const V& x, const V& y) {
  const std::complex<double> a(x(0), x(1)), b(y(0), y(1));
  const std::complex<double> r = (a + b) / (1.0 + std::conj(a) * b);
  return v2(r.real(), r.imag());
}

double acosh_distance(const V& x, const V& y) {
  return std::acosh(1.0 + 2.0 * (x - y).squaredNorm() / ((1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm())));
}

}  // namespace

TEST_CASE("construction validates the open ball") {
  CHECK_THROWS_AS(Point<double>(v2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(Point<double>(v2(0.8, 0.8)), DomainError);
  CHECK_THROWS_AS(Point<double>(v2(NAN, 0.0)), DomainError);
  CHECK_THROWS_AS(Point<double>(V(0)), std::invalid_argument);
  CHECK_NOTHROW(Point<double>(v2(0.99, 0.0)));
  CHECK_THROWS_AS(Hyperplane<double>(pt(0, 0), v2(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Tangent<double>(pt(0, 0), V::Zero(3)), std::invalid_argument);
}

TEST_CASE("mobius_add worked examples") {
  CHECK(mobius_add(pt(0.5, 0), pt(0, 0)).coords().isApprox(v2(0.5, 0)));
  const V r = mobius_add(pt(0.5, 0), pt(0.25, 0)).coords();
  CHECK(r(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r(1) == 0.0);
  CHECK((0.5 + 0.25) / (1 + 0.5 * 0.25) == doctest::Approx(2.0 / 3.0));
  const Point<double> x = pt(0.3, -0.6);
  CHECK(mobius_add(-x, x).coords().norm() < 1e-15);
  CHECK_THROWS_AS(mobius_add(x, Point<double>(V::Zero(3))), std::invalid_argument);
}

TEST_CASE("mobius_add matches the complex-plane oracle") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    const V x = random_in_ball(2, 0.99, rng), y = random_in_ball(2, 0.99, rng);
    CHECK((kernel::mobius_add(x, y) - complex_mobius(x, y)).norm() <= 1e-12);
  }
}

TEST_CASE("mobius identities hold on random inputs") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10000; ++k) {
    const Index d = 1 + Index(k % 7);
    const V x = random_in_ball(d, 0.99, rng);
    const V z = V::Zero(d);
    REQUIRE((kernel::mobius_add(x, z) - x).norm() <= 1e-12);
    REQUIRE((kernel::mobius_add(z, x) - x).norm() <= 1e-12);
    REQUIRE(kernel::mobius_add(V(-x), x).norm() <= 1e-12);
  }
}

TEST_CASE("mobius_scalar_mul worked examples") {
  CHECK(mobius_scalar_mul(3.0, pt(0, 0)).coords().norm() == 0.0);
  CHECK(mobius_scalar_mul(1.0, pt(0.3, 0.4)).coords().isApprox(v2(0.3, 0.4), 1e-14));
  const V r = mobius_scalar_mul(2.0, pt(0.5, 0)).coords();
  CHECK(r(0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(2 * 0.5 / (1 + 0.25) == doctest::Approx(0.8));
  // 2 (x) x equals x (+) x.
  const Point<double> x = pt(-0.2, 0.45);
  CHECK(mobius_scalar_mul(2.0, x).coords().isApprox(mobius_add(x, x).coords(), 1e-13));
}

TEST_CASE("distance worked examples and oracle") {
  CHECK(distance(pt(0.2, 0.1), pt(0.2, 0.1)) == 0.0);
  CHECK(distance(pt(0, 0), pt(0.5, 0)) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    const Index d = 1 + Index(k % 5);
    const V x = random_in_ball(d, 0.95, rng), y = random_in_ball(d, 0.95, rng), z = random_in_ball(d, 0.95, rng);
    const double dxy = kernel::distance(x, y);
    CHECK(dxy == doctest::Approx(acosh_distance(x, y)).epsilon(1e-9));
    CHECK(dxy == doctest::Approx(kernel::distance(y, x)).epsilon(1e-12));
    CHECK(dxy <= kernel::distance(x, z) + kernel::distance(z, y) + 1e-12);
  }
}

TEST_CASE("geodesic_point endpoints, range and constant speed") {
  const Point<double> x = pt(0.1, 0.7), y = pt(-0.5, -0.3);
  CHECK(geodesic_point(x, y, 0.0) == x);
  CHECK(geodesic_point(x, y, 1.0) == y);
  CHECK_THROWS_AS(geodesic_point(x, y, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_point(x, y, -0.1), std::invalid_argument);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int k = 0; k < 2000; ++k) {
    const V a = random_in_ball(3, 0.95, rng), b = random_in_ball(3, 0.95, rng);
    const double t = unif(rng);
    const V g = kernel::geodesic(a, b, t);
    CHECK(kernel::distance(a, g) == doctest::Approx(t * kernel::distance(a, b)).epsilon(1e-9).scale(1));
    const V m = kernel::geodesic(a, b, 0.5);
    CHECK(kernel::distance(a, m) == doctest::Approx(kernel::distance(m, b)).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("exp and log maps") {
  const Point<double> o = pt(0, 0);
  const Tangent<double> zero(o, V::Zero(2));
  CHECK(exp_map(o, zero) == o);
  CHECK(log_map(o, o).coords().norm() == 0.0);
  const V v = v2(0.4, -1.1);
  CHECK(exp_map(o, Tangent<double>(o, v)).coords().isApprox(std::tanh(v.norm()) * v / v.norm(), 1e-14));
  const V l = log_map(o, pt(0.6, 0)).coords();
  CHECK(l(0) == doctest::Approx(std::atanh(0.6)).epsilon(1e-14));
  CHECK(l(0) == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK_THROWS_AS(exp_map(pt(0.1, 0), Tangent<double>(o, v)), std::invalid_argument);

  // distance(p, x) = sigma_p |log_p(x)|
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const V p = random_in_ball(4, 0.9, rng), x = random_in_ball(4, 0.95, rng);
    const double sigma = kernel::conformal_factor(p.squaredNorm());
    CHECK(kernel::distance(p, x) == doctest::Approx(sigma * kernel::log_map(p, x).norm()).epsilon(1e-9));
  }
}

TEST_CASE("exp/log round trips") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 10000; ++k) {
    const Index d = 1 + Index(k % 6);
    const V p = random_in_ball(d, 0.9, rng), x = random_in_ball(d, 0.95, rng);
    const V back = kernel::exp_map(p, kernel::log_map(p, x));
    REQUIRE((back - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
    V v(d);
    for (Index j = 0; j < d; ++j) v(j) = normal(rng);
    v *= 0.5 / kernel::conformal_factor(p.squaredNorm());  // keep exp_p(v) well inside the ball
    const V again = kernel::log_map(p, kernel::exp_map(p, v));
    REQUIRE((again - v).norm() <= 1e-9 * std::max(1.0, v.norm()));
  }
}

TEST_CASE("eta weight") {
  const Point<double> o = pt(0, 0);
  CHECK(eta_weight(Tangent<double>(o, V::Zero(2))) == 0.0);
  const Tangent<double> v = log_map(o, pt(0.6, 0));
  const double expected = 2 * 0.6 / ((1 - 0.36) * std::atanh(0.6));
  CHECK(eta_weight(v) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(eta_weight(v) == doctest::Approx(2.705).epsilon(1e-3));

  // The raw definition 2 tanh(s) / ((1 - tanh^2 s) |v|), s = sigma |v| / 2.
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const V p = random_in_ball(3, 0.9, rng), x = random_in_ball(3, 0.95, rng);
    const V lv = kernel::log_map(p, x);
    const double sigma = kernel::conformal_factor(p.squaredNorm());
    const double th = std::tanh(sigma * lv.norm() / 2);
    CHECK(kernel::eta_from_norm(sigma, lv.norm()) ==
          doctest::Approx(2 * th / ((1 - th * th) * lv.norm())).epsilon(1e-9));
  }
}

TEST_CASE("hyperplane distance: worked example and the two formulas agree") {
  const Hyperplane<double> h(pt(0, 0), v2(1, 0));
  CHECK(dist_to_hyperplane(pt(0.5, 0), h) == doctest::Approx(std::asinh(4.0 / 3.0)).epsilon(1e-14));
  CHECK(dist_to_hyperplane(pt(0.5, 0), h) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(dist_to_hyperplane(pt(0, 0.7), h) == 0.0);
  const Tangent<double> zero(h.p(), V::Zero(2));
  CHECK(dist_to_hyperplane_tangent(zero, h) == 0.0);
  CHECK(dist_to_hyperplane_tangent(Tangent<double>(h.p(), v2(0, 2)), h) == 0.0);
  CHECK_THROWS_AS(dist_to_hyperplane_tangent(Tangent<double>(pt(0.1, 0), v2(0, 2)), h), std::invalid_argument);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 10000; ++k) {
    const Index d = 2 + Index(k % 4);
    const V p = random_in_ball(d, 0.9, rng), x = random_in_ball(d, 0.95, rng);
    V w(d);
    for (Index j = 0; j < d; ++j) w(j) = normal(rng);
    const double sigma = kernel::conformal_factor(p.squaredNorm());
    const V lv = kernel::log_map(p, x);
    const double ball = kernel::dist_to_hyperplane(x, p, w);
    const double tangent = kernel::dist_to_hyperplane_tangent(lv, sigma, w);
    REQUIRE(ball == doctest::Approx(tangent).epsilon(1e-9).scale(1e-300));
    // With a unit normal the argument of asinh is eta |<v, w>|.
    const V wu = w.normalized();
    REQUIRE(tangent == doctest::Approx(std::asinh(kernel::eta_from_norm(sigma, lv.norm()) * std::abs(lv.dot(wu))))
                           .epsilon(1e-12));
  }
}

TEST_CASE("hyperplane_side") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 1000; ++k) {
    const Point<double> p(random_in_ball(3, 0.9, rng));
    const Point<double> x(random_in_ball(3, 0.95, rng));
    V w(3);
    for (Index j = 0; j < 3; ++j) w(j) = normal(rng);
    const Hyperplane<double> h(p, w);
    CHECK(hyperplane_side(p, h) == 0);
    const int s = hyperplane_side(x, h);
    CHECK(s == hyperplane_side(x, Hyperplane<double>(p, V(7.5 * w))));
    CHECK(s == kernel::sign(kernel::mobius_add(V(-p.coords()), x.coords()).dot(w)));
  }
}

TEST_CASE("supremum of |a (+) b| over the R-ball is attained at b* = R a/|a|") {
  std::mt19937_64 rng(10);
  const double R = 0.8;
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + Index(trial % 3);
    const V a = random_in_ball(d, 0.9, rng);
    const V b_star = R * a.normalized();
    const double best = kernel::mobius_add(a, b_star).norm();
    double sampled = 0;
    for (int k = 0; k < 10000; ++k) {
      sampled = std::max(sampled, kernel::mobius_add(a, random_in_ball(d, R, rng)).norm());
    }
    CHECK(sampled <= best + 1e-12);
    CHECK(best == doctest::Approx((a.norm() + R) / (1 + a.norm() * R)).epsilon(1e-12));
  }
}

TEST_CASE("boundary clamping keeps outputs in the ball") {
  const V x = v2(1 - 1e-16, 0);
  const V y = v2(1 - 1e-16, 0);
  CHECK(kernel::mobius_add(x, y).norm() < 1.0);
  CHECK(std::isfinite(kernel::distance(V::Zero(2), x)));
  CHECK(kernel::mobius_scalar_mul(50.0, v2(0.9, 0)).norm() < 1.0);
}

TEST_CASE("float instantiation") {
  const Point<float> x(Eigen::VectorXf::Constant(2, 0.3f));
  const Point<float> y(Eigen::VectorXf::Constant(2, -0.1f));
  CHECK(distance(x, y) == doctest::Approx(double(distance(Point<double>(x.coords().cast<double>()),
                                                            Point<double>(y.coords().cast<double>()))))
                              .epsilon(1e-5));
}
