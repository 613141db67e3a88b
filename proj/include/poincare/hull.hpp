#pragma once

// Geodesic convex hulls in the Poincare disk, and reference-point learning
// from the closest pair of points between two class hulls.

#include "poincare/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace poincare {

template <typename Scalar>
struct ConvexHull2D {
  std::vector<Index> indices;           ///< into the input columns, counterclockwise
  std::vector<Point<Scalar>> vertices;  ///< same order as `indices`
};

template <typename Scalar>
struct MinDistPair {
  Point<Scalar> a;
  Point<Scalar> b;
  Scalar dist = 0;
  Index index_a = 0;
  Index index_b = 0;
};

namespace hull_detail {

template <typename Scalar>
void require_planar(const Matrix<Scalar>& pts) {
  if (pts.rows() != 2) throw std::invalid_argument("convex hulls are only supported for d = 2");
  if (pts.cols() < 1) throw std::invalid_argument("convex hull needs at least one point");
}

/// Indices of the first occurrence of each distinct point, in input order.
template <typename Scalar>
std::vector<Index> unique_indices(const Matrix<Scalar>& pts) {
  std::vector<Index> order(static_cast<std::size_t>(pts.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  auto lex = [&](Index a, Index b) {
    if (pts(0, a) != pts(0, b)) return pts(0, a) < pts(0, b);
    if (pts(1, a) != pts(1, b)) return pts(1, a) < pts(1, b);
    return a < b;
  };
  std::sort(order.begin(), order.end(), lex);
  std::vector<Index> keep;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || pts.col(order[k]) != pts.col(order[k - 1])) keep.push_back(order[k]);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

/// Klein-model coordinates 2x / (1 + |x|^2). Geodesics are straight chords
/// there, so Klein-extreme points are always hull vertices.
template <typename Derived>
Vector<typename Derived::Scalar> to_klein(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return (Scalar(2) / (Scalar(1) + x.squaredNorm())) * x;
}

template <typename Derived>
Vector<typename Derived::Scalar> from_klein(const Eigen::MatrixBase<Derived>& k) {
  using Scalar = typename Derived::Scalar;
  return k / (Scalar(1) + std::sqrt(std::max(Scalar(0), Scalar(1) - k.squaredNorm())));
}

/// > 0 when x is to the left of the directed geodesic a -> b.
template <typename Da, typename Db, typename Dx>
typename Da::Scalar orient(const Eigen::MatrixBase<Da>& a, const Eigen::MatrixBase<Db>& b,
                           const Eigen::MatrixBase<Dx>& x) {
  return kernel::cross2(kernel::log_map(a, b), kernel::log_map(a, x));
}

template <typename Scalar>
ConvexHull2D<Scalar> make_hull(const Matrix<Scalar>& pts, std::vector<Index> idx) {
  ConvexHull2D<Scalar> h;
  h.indices = std::move(idx);
  for (Index i : h.indices) h.vertices.push_back(make_point_unchecked<Scalar>(pts.col(i)));
  return h;
}

/// Lowest point in Klein coordinates, ties broken by smallest Klein x.
template <typename Scalar>
Index klein_anchor(const Matrix<Scalar>& pts, const std::vector<Index>& idx) {
  return *std::min_element(idx.begin(), idx.end(), [&](Index a, Index b) {
    const Vector<Scalar> ka = to_klein(pts.col(a)), kb = to_klein(pts.col(b));
    if (ka(1) != kb(1)) return ka(1) < kb(1);
    return ka(0) < kb(0);
  });
}

template <typename Scalar>
void rotate_to_anchor(ConvexHull2D<Scalar>& h, Index anchor) {
  auto it = std::find(h.indices.begin(), h.indices.end(), anchor);
  if (it == h.indices.end()) return;
  const auto shift = it - h.indices.begin();
  std::rotate(h.indices.begin(), it, h.indices.end());
  std::rotate(h.vertices.begin(), h.vertices.begin() + shift, h.vertices.end());
}

}  // namespace hull_detail

/// Graham scan with geodesic orientation tests. Points are sorted by the
/// angle of log_{p0}(x) around the anchor p0, counterclockwise, nearer first
/// on ties; the scan pops only on a strictly clockwise turn, so geodesically
/// collinear boundary points are kept.
template <typename Scalar>
ConvexHull2D<Scalar> graham_scan(const Matrix<Scalar>& pts) {
  using namespace hull_detail;
  require_planar(pts);
  std::vector<Index> idx = unique_indices(pts);
  if (idx.size() < 3) return make_hull(pts, idx);

  const Index anchor = klein_anchor(pts, idx);
  const Vector<Scalar> p0 = pts.col(anchor);

  // The Klein horizontal through the anchor supports the hull; its direction
  // in T_{p0} is the zero-angle reference, so all angles fall in [0, pi].
  const Vector<Scalar> k0 = to_klein(p0);
  Vector<Scalar> k1 = k0;
  k1(0) += Scalar(0.5) * (std::sqrt(std::max(Scalar(0), Scalar(1) - k0(1) * k0(1))) - k0(0));
  const Vector<Scalar> ref = kernel::log_map(p0, from_klein(k1)).normalized();

  struct Entry {
    Index i;
    Scalar angle;
    Scalar radius;
  };
  std::vector<Entry> rest;
  for (Index i : idx) {
    if (i == anchor) continue;
    const Vector<Scalar> t = kernel::log_map(p0, pts.col(i));
    rest.push_back({i, std::atan2(kernel::cross2(ref, t), ref.dot(t)), t.norm()});
  }
  std::sort(rest.begin(), rest.end(), [](const Entry& a, const Entry& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.radius != b.radius) return a.radius < b.radius;
    return a.i < b.i;
  });

  std::vector<Index> stack{anchor};
  auto push = [&](Index i) {
    while (stack.size() > 1 &&
           orient(pts.col(stack[stack.size() - 2]), pts.col(stack.back()), pts.col(i)) < Scalar(0)) {
      stack.pop_back();
    }
    stack.push_back(i);
  };
  for (const Entry& e : rest) push(e.i);
  push(anchor);
  stack.pop_back();
  return make_hull(pts, stack);
}

namespace hull_detail {

template <typename Scalar>
void find_hull(const Matrix<Scalar>& pts, const std::vector<Index>& set, Index P, Index Q, std::vector<Index>& out) {
  if (set.empty()) return;
  const Vector<Scalar> mid = kernel::geodesic(pts.col(P), pts.col(Q), Scalar(0.5));
  const Vector<Scalar> dir = kernel::log_map(mid, pts.col(Q));
  const Vector<Scalar> normal = (Vector<Scalar>(2) << -dir(1), dir(0)).finished();

  Index far = -1;
  Scalar best = 0;
  for (Index i : set) {
    const Scalar dist = kernel::dist_to_hyperplane(pts.col(i), mid, normal);
    if (dist > best) {
      best = dist;
      far = i;
    }
  }
  if (far < 0) return;

  std::vector<Index> left, right;
  for (Index i : set) {
    if (i == far) continue;
    if (orient(pts.col(P), pts.col(far), pts.col(i)) > Scalar(0)) {
      left.push_back(i);
    } else if (orient(pts.col(far), pts.col(Q), pts.col(i)) > Scalar(0)) {
      right.push_back(i);
    }
  }
  find_hull(pts, left, P, far, out);
  out.push_back(far);
  find_hull(pts, right, far, Q, out);
}

}  // namespace hull_detail

/// Quickhull: split by the geodesic between the Klein-extreme left and right
/// points, then recurse on the farthest point from each chain geodesic.
template <typename Scalar>
ConvexHull2D<Scalar> quickhull(const Matrix<Scalar>& pts) {
  using namespace hull_detail;
  require_planar(pts);
  std::vector<Index> idx = unique_indices(pts);
  if (idx.size() < 3) return make_hull(pts, idx);

  auto klein_x_less = [&](Index a, Index b) {
    const Vector<Scalar> ka = to_klein(pts.col(a)), kb = to_klein(pts.col(b));
    if (ka(0) != kb(0)) return ka(0) < kb(0);
    return ka(1) < kb(1);
  };
  const Index A = *std::min_element(idx.begin(), idx.end(), klein_x_less);
  const Index B = *std::max_element(idx.begin(), idx.end(), klein_x_less);

  const Vector<Scalar> p0 = kernel::geodesic(pts.col(A), pts.col(B), Scalar(0.5));
  const Vector<Scalar> v = kernel::log_map(p0, pts.col(B));
  const Vector<Scalar> w = (Vector<Scalar>(2) << -v(1), v(0)).finished();

  std::vector<Index> upper, lower;
  for (Index i : idx) {
    if (i == A || i == B) continue;
    const Scalar s = w.dot(kernel::log_map(p0, pts.col(i)));
    if (s >= 0) upper.push_back(i);
    if (s <= 0) lower.push_back(i);
  }

  // A -> upper chain -> B -> lower chain runs clockwise.
  std::vector<Index> cw{A};
  find_hull(pts, upper, A, B, cw);
  cw.push_back(B);
  find_hull(pts, lower, B, A, cw);

  std::vector<Index> ccw(cw.rbegin(), cw.rend());
  ConvexHull2D<Scalar> h = make_hull(pts, std::move(ccw));
  rotate_to_anchor(h, klein_anchor(pts, idx));
  return h;
}

/// Closest pair between two point sets (columns), exhaustive; the first pair
/// in (i, j) lexicographic order wins ties.
template <typename Scalar>
MinDistPair<Scalar> min_distance_pair(const Matrix<Scalar>& plus, const Matrix<Scalar>& minus) {
  if (plus.cols() == 0 || minus.cols() == 0) throw std::invalid_argument("min_distance_pair needs two nonempty sets");
  if (plus.rows() != minus.rows()) throw std::invalid_argument("min_distance_pair dimension mismatch");
  Index bi = 0, bj = 0;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < plus.cols(); ++i) {
    for (Index j = 0; j < minus.cols(); ++j) {
      const Scalar dist = kernel::distance(plus.col(i), minus.col(j));
      if (dist < best) {
        best = dist;
        bi = i;
        bj = j;
      }
    }
  }
  return {make_point_unchecked<Scalar>(plus.col(bi)), make_point_unchecked<Scalar>(minus.col(bj)), best, bi, bj};
}

template <typename Scalar>
Point<Scalar> reference_midpoint(const MinDistPair<Scalar>& pair) {
  return geodesic_point(pair.a, pair.b, Scalar(0.5));
}

/// Points of one class as columns.
template <typename Scalar>
Matrix<Scalar> class_points(const LabeledDataset<Scalar>& ds, int label) {
  Matrix<Scalar> out(ds.dim(), ds.count(label));
  for (Index i = 0, k = 0; i < ds.size(); ++i) {
    if (ds.label(i) == label) out.col(k++) = ds.point(i);
  }
  return out;
}

inline constexpr Index kMaxPointsPerClass = 2000;

/// Geodesic midpoint of the closest cross-class pair. In d = 2 the search runs
/// over hull vertices; for d > 2 over all points, each class uniformly
/// subsampled to at most kMaxPointsPerClass.
template <typename Scalar>
Point<Scalar> learn_reference_point(const LabeledDataset<Scalar>& ds, std::uint64_t seed = 0) {
  require_binary(ds);
  Matrix<Scalar> pos = class_points(ds, 1);
  Matrix<Scalar> neg = class_points(ds, -1);
  if (pos.cols() == 0 || neg.cols() == 0) throw std::invalid_argument("reference point learning needs both classes");

  auto hull_matrix = [](const Matrix<Scalar>& pts) {
    const ConvexHull2D<Scalar> h = graham_scan(pts);
    Matrix<Scalar> out(2, static_cast<Index>(h.indices.size()));
    for (std::size_t k = 0; k < h.indices.size(); ++k) out.col(static_cast<Index>(k)) = pts.col(h.indices[k]);
    return out;
  };
  auto subsample = [&](const Matrix<Scalar>& pts, std::mt19937_64& rng) {
    if (pts.cols() <= kMaxPointsPerClass) return pts;
    std::vector<Index> order(static_cast<std::size_t>(pts.cols()));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(kMaxPointsPerClass));
    std::sort(order.begin(), order.end());
    Matrix<Scalar> out(pts.rows(), kMaxPointsPerClass);
    for (std::size_t k = 0; k < order.size(); ++k) out.col(static_cast<Index>(k)) = pts.col(order[k]);
    return out;
  };

  if (ds.dim() == 2) {
    pos = hull_matrix(pos);
    neg = hull_matrix(neg);
  } else {
    std::mt19937_64 rng(seed);
    pos = subsample(pos, rng);
    neg = subsample(neg, rng);
  }
  return reference_midpoint(min_distance_pair(pos, neg));
}

}  // namespace poincare
