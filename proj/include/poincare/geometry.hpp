#pragma once

// Gyrovector primitives on the Poincare ball (curvature -1).
//
// Two layers live here:
//  * `kernel::` functions take arbitrary Eigen expressions and perform no
//    validation. Training loops use these directly.
//  * `Point` / `Tangent` / `Hyperplane` wrap the kernels with the domain
//    checks (dimension agreement, strictly-inside-the-ball).

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace poincare {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

/// Raised when a coordinate vector leaves the open unit ball.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest norm any computed point is allowed to have: 1 - 1e-15, or a few
/// ulps below 1 for types too coarse to represent that.
template <typename Scalar>
constexpr Scalar ball_limit() {
  return Scalar(1) - std::max(Scalar(1e-15), Scalar(4) * std::numeric_limits<Scalar>::epsilon());
}

namespace kernel {

template <typename Scalar>
Scalar atanh_clamped(Scalar s) {
  return std::atanh(std::clamp(s, Scalar(0), ball_limit<Scalar>()));
}

/// Pulls a vector back inside the ball if round-off pushed it out.
template <typename Derived>
void clamp_to_ball(Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar n = x.norm();
  if (n > ball_limit<Scalar>()) x *= ball_limit<Scalar>() / n;
}

template <typename Scalar>
Scalar conformal_factor(Scalar squared_norm) {
  return Scalar(2) / (Scalar(1) - squared_norm);
}

template <typename Da, typename Db>
bool same_coords(const Eigen::MatrixBase<Da>& a, const Eigen::MatrixBase<Db>& b) {
  return (a.array() == b.array()).all();
}

template <typename Dx, typename Dy>
Vector<typename Dx::Scalar> mobius_add(const Eigen::MatrixBase<Dx>& x,
                                       const Eigen::MatrixBase<Dy>& y) {
  using Scalar = typename Dx::Scalar;
  const Scalar xy = x.dot(y);
  const Scalar xx = x.squaredNorm();
  const Scalar yy = y.squaredNorm();
  const Scalar denom = Scalar(1) + Scalar(2) * xy + xx * yy;
  Vector<Scalar> out = ((Scalar(1) + Scalar(2) * xy + yy) * x + (Scalar(1) - xx) * y) / denom;
  clamp_to_ball(out);
  return out;
}

template <typename Derived>
Vector<typename Derived::Scalar> mobius_scalar_mul(typename Derived::Scalar r,
                                                   const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar n = x.norm();
  if (n == Scalar(0)) return Vector<Scalar>::Zero(x.size());
  Vector<Scalar> out = (std::tanh(r * atanh_clamped(n)) / n) * x;
  clamp_to_ball(out);
  return out;
}

template <typename Dx, typename Dy>
typename Dx::Scalar distance(const Eigen::MatrixBase<Dx>& x, const Eigen::MatrixBase<Dy>& y) {
  using Scalar = typename Dx::Scalar;
  if (same_coords(x, y)) return Scalar(0);
  return Scalar(2) * atanh_clamped(mobius_add(-x, y).norm());
}

/// gamma_{x->y}(t) = x (+) (t (x) ((-x) (+) y))
template <typename Dx, typename Dy>
Vector<typename Dx::Scalar> geodesic(const Eigen::MatrixBase<Dx>& x, const Eigen::MatrixBase<Dy>& y,
                                     typename Dx::Scalar t) {
  return mobius_add(x, mobius_scalar_mul(t, mobius_add(-x, y)));
}

template <typename Dp, typename Dv>
Vector<typename Dp::Scalar> exp_map(const Eigen::MatrixBase<Dp>& p, const Eigen::MatrixBase<Dv>& v) {
  using Scalar = typename Dp::Scalar;
  const Scalar vn = v.norm();
  if (vn == Scalar(0)) return p;
  const Scalar sigma = conformal_factor(p.squaredNorm());
  Vector<Scalar> step = (std::tanh(sigma * vn / Scalar(2)) / vn) * v;
  clamp_to_ball(step);
  return mobius_add(p, step);
}

template <typename Dp, typename Dx>
Vector<typename Dp::Scalar> log_map(const Eigen::MatrixBase<Dp>& p, const Eigen::MatrixBase<Dx>& x) {
  using Scalar = typename Dp::Scalar;
  if (same_coords(p, x)) return Vector<Scalar>::Zero(p.size());
  const Vector<Scalar> u = mobius_add(-p, x);
  const Scalar un = u.norm();
  if (un == Scalar(0)) return Vector<Scalar>::Zero(p.size());
  const Scalar sigma = conformal_factor(p.squaredNorm());
  return (Scalar(2) / sigma * atanh_clamped(un) / un) * u;
}

/// eta = 2 tanh(s) / ((1 - tanh(s)^2) |v|) with s = sigma |v| / 2, which
/// simplifies to sinh(sigma |v|) / |v|. Zero for the zero vector.
template <typename Scalar>
Scalar eta_from_norm(Scalar sigma, Scalar v_norm) {
  if (v_norm == Scalar(0)) return Scalar(0);
  return std::sinh(sigma * v_norm) / v_norm;
}

/// Distance from x to H_{w,p} using the ball-side formula.
template <typename Dx, typename Dp, typename Dw>
typename Dx::Scalar dist_to_hyperplane(const Eigen::MatrixBase<Dx>& x, const Eigen::MatrixBase<Dp>& p,
                                       const Eigen::MatrixBase<Dw>& w) {
  using Scalar = typename Dx::Scalar;
  if (same_coords(p, x)) return Scalar(0);
  const Vector<Scalar> u = mobius_add(-p, x);
  const Scalar arg = Scalar(2) * std::abs(u.dot(w)) / ((Scalar(1) - u.squaredNorm()) * w.norm());
  return std::asinh(arg);
}

/// Distance from exp_p(v) to H_{w,p} using only tangent quantities.
template <typename Dv, typename Dw>
typename Dv::Scalar dist_to_hyperplane_tangent(const Eigen::MatrixBase<Dv>& v,
                                               typename Dv::Scalar sigma,
                                               const Eigen::MatrixBase<Dw>& w) {
  using Scalar = typename Dv::Scalar;
  const Scalar vn = v.norm();
  if (vn == Scalar(0)) return Scalar(0);
  return std::asinh(eta_from_norm(sigma, vn) * std::abs(v.dot(w)) / w.norm());
}

template <typename Scalar>
int sign(Scalar s) {
  return (s > Scalar(0)) - (s < Scalar(0));
}

/// 2-D cross product of two tangent vectors.
template <typename Da, typename Db>
typename Da::Scalar cross2(const Eigen::MatrixBase<Da>& a, const Eigen::MatrixBase<Db>& b) {
  return a(0) * b(1) - a(1) * b(0);
}

}  // namespace kernel

/// A point strictly inside the unit ball.
template <typename Scalar>
class Point {
 public:
  explicit Point(Vector<Scalar> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1) throw std::invalid_argument("point must have dimension >= 1");
    if (!coords_.allFinite()) throw DomainError("point has non-finite coordinates");
    if (coords_.squaredNorm() >= Scalar(1)) {
      throw DomainError("point norm " + std::to_string(double(coords_.norm())) +
                        " is not strictly inside the unit ball");
    }
  }

  static Point origin(Index dim) { return Point(Vector<Scalar>::Zero(dim)); }

  const Vector<Scalar>& coords() const { return coords_; }
  Index dim() const { return coords_.size(); }
  Scalar norm() const { return coords_.norm(); }
  Scalar squared_norm() const { return coords_.squaredNorm(); }

  /// sigma_p = 2 / (1 - |p|^2)
  Scalar conformal_factor() const { return kernel::conformal_factor(coords_.squaredNorm()); }

  /// Gyrogroup inverse; for the ball model this is plain negation.
  Point operator-() const { return Point(Vector<Scalar>(-coords_), Unchecked{}); }

  bool operator==(const Point& other) const { return coords_ == other.coords_; }

 private:
  template <typename S>
  friend Point<S> make_point_unchecked(Vector<S> coords);

  struct Unchecked {};
  Point(Vector<Scalar> coords, Unchecked) : coords_(std::move(coords)) {}

  Vector<Scalar> coords_;
};

/// Wraps kernel output that is already clamped inside the ball.
template <typename Scalar>
Point<Scalar> make_point_unchecked(Vector<Scalar> coords) {
  return Point<Scalar>(std::move(coords), typename Point<Scalar>::Unchecked{});
}

/// A vector in the tangent space at `base`.
template <typename Scalar>
class Tangent {
 public:
  Tangent(Point<Scalar> base, Vector<Scalar> coords) : base_(std::move(base)), coords_(std::move(coords)) {
    if (coords_.size() != base_.dim()) throw std::invalid_argument("tangent vector dimension mismatch");
  }

  const Point<Scalar>& base() const { return base_; }
  const Vector<Scalar>& coords() const { return coords_; }
  Scalar norm() const { return coords_.norm(); }

 private:
  Point<Scalar> base_;
  Vector<Scalar> coords_;
};

/// H_{w,p}: points whose log map at p is orthogonal to w.
template <typename Scalar>
class Hyperplane {
 public:
  Hyperplane(Point<Scalar> p, Vector<Scalar> w) : p_(std::move(p)), w_(std::move(w)) {
    if (w_.size() != p_.dim()) throw std::invalid_argument("hyperplane normal dimension mismatch");
    if (!(w_.norm() > Scalar(0)) || !w_.allFinite()) {
      throw std::invalid_argument("hyperplane normal must be finite with positive norm");
    }
  }
  explicit Hyperplane(const Tangent<Scalar>& w) : Hyperplane(w.base(), w.coords()) {}

  const Point<Scalar>& p() const { return p_; }
  const Vector<Scalar>& w() const { return w_; }

 private:
  Point<Scalar> p_;
  Vector<Scalar> w_;
};

namespace detail {

template <typename Scalar>
void require_same_dim(const Point<Scalar>& a, const Point<Scalar>& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

}  // namespace detail

template <typename Scalar>
Point<Scalar> mobius_add(const Point<Scalar>& x, const Point<Scalar>& y) {
  detail::require_same_dim(x, y);
  return make_point_unchecked(kernel::mobius_add(x.coords(), y.coords()));
}

template <typename Scalar>
Point<Scalar> mobius_scalar_mul(Scalar r, const Point<Scalar>& x) {
  return make_point_unchecked(kernel::mobius_scalar_mul(r, x.coords()));
}

template <typename Scalar>
Scalar distance(const Point<Scalar>& x, const Point<Scalar>& y) {
  detail::require_same_dim(x, y);
  return kernel::distance(x.coords(), y.coords());
}

template <typename Scalar>
Point<Scalar> geodesic_point(const Point<Scalar>& x, const Point<Scalar>& y, Scalar t) {
  detail::require_same_dim(x, y);
  if (!(t >= Scalar(0) && t <= Scalar(1))) throw std::invalid_argument("geodesic parameter outside [0, 1]");
  if (t == Scalar(0)) return x;
  if (t == Scalar(1)) return y;
  return make_point_unchecked(kernel::geodesic(x.coords(), y.coords(), t));
}

template <typename Scalar>
Point<Scalar> exp_map(const Point<Scalar>& p, const Tangent<Scalar>& v) {
  if (!(v.base() == p)) throw std::invalid_argument("tangent vector is not based at p");
  return make_point_unchecked(kernel::exp_map(p.coords(), v.coords()));
}

template <typename Scalar>
Point<Scalar> exp_map(const Tangent<Scalar>& v) {
  return exp_map(v.base(), v);
}

template <typename Scalar>
Tangent<Scalar> log_map(const Point<Scalar>& p, const Point<Scalar>& x) {
  detail::require_same_dim(p, x);
  return Tangent<Scalar>(p, kernel::log_map(p.coords(), x.coords()));
}

template <typename Scalar>
Scalar eta_weight(const Tangent<Scalar>& v) {
  return kernel::eta_from_norm(v.base().conformal_factor(), v.norm());
}

template <typename Scalar>
Scalar dist_to_hyperplane(const Point<Scalar>& x, const Hyperplane<Scalar>& h) {
  detail::require_same_dim(x, h.p());
  return kernel::dist_to_hyperplane(x.coords(), h.p().coords(), h.w());
}

template <typename Scalar>
Scalar dist_to_hyperplane_tangent(const Tangent<Scalar>& v, const Hyperplane<Scalar>& h) {
  if (!(v.base() == h.p())) throw std::invalid_argument("tangent vector is not based at the reference point");
  return kernel::dist_to_hyperplane_tangent(v.coords(), h.p().conformal_factor(), h.w());
}

/// sign(<log_p(x), w>)
template <typename Scalar>
int hyperplane_side(const Point<Scalar>& x, const Hyperplane<Scalar>& h) {
  detail::require_same_dim(x, h.p());
  return kernel::sign(kernel::log_map(h.p().coords(), x.coords()).dot(h.w()));
}

}  // namespace poincare
