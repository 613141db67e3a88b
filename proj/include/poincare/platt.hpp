#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace poincare {

/// P(y = +1 | s) = 1 / (1 + exp(A s + B))
struct PlattParams {
  double A = 0;
  double B = 0;

  double probability(double score) const {
    const double f = A * score + B;
    // Branch keeps exp() from overflowing on large |f|.
    return f >= 0 ? std::exp(-f) / (1.0 + std::exp(-f)) : 1.0 / (1.0 + std::exp(f));
  }
};

/// Maximum-likelihood sigmoid fit with prior-smoothed targets, solved by a
/// damped Newton iteration with backtracking line search.
inline PlattParams platt_fit(std::span<const double> scores, std::span<const int> labels, int max_iter = 200) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores/labels size mismatch");
  double n_pos = 0, n_neg = 0;
  for (int y : labels) {
    if (y == 1) ++n_pos;
    else if (y == -1) ++n_neg;
    else throw std::invalid_argument("Platt labels must be +1 or -1");
  }
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("Platt scaling needs both classes");

  const double hi = (n_pos + 1.0) / (n_pos + 2.0);
  const double lo = 1.0 / (n_neg + 2.0);
  const std::size_t n = scores.size();
  auto target = [&](std::size_t i) { return labels[i] == 1 ? hi : lo; };

  // Negative log-likelihood, written to avoid overflow in exp().
  auto nll = [&](double A, double B) {
    double f = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fa = scores[i] * A + B;
      const double t = target(i);
      f += fa >= 0 ? t * fa + std::log1p(std::exp(-fa)) : (t - 1.0) * fa + std::log1p(std::exp(fa));
    }
    return f;
  };

  constexpr double min_step = 1e-10;
  constexpr double sigma = 1e-12;
  constexpr double eps = 1e-5;
  PlattParams prm{0.0, std::log((n_neg + 1.0) / (n_pos + 1.0))};
  double fval = nll(prm.A, prm.B);

  for (int it = 0; it < max_iter; ++it) {
    double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fa = scores[i] * prm.A + prm.B;
      double p, q;
      if (fa >= 0) {
        p = std::exp(-fa) / (1.0 + std::exp(-fa));
        q = 1.0 / (1.0 + std::exp(-fa));
      } else {
        p = 1.0 / (1.0 + std::exp(fa));
        q = std::exp(fa) / (1.0 + std::exp(fa));
      }
      const double d2 = p * q;
      h11 += scores[i] * scores[i] * d2;
      h22 += d2;
      h21 += scores[i] * d2;
      const double d1 = target(i) - p;
      g1 += scores[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < eps && std::abs(g2) < eps) break;

    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;

    double step = 1.0;
    while (step >= min_step) {
      const double nA = prm.A + step * dA;
      const double nB = prm.B + step * dB;
      const double nf = nll(nA, nB);
      if (nf < fval + 1e-4 * step * gd) {
        prm = {nA, nB};
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < min_step) break;
  }
  return prm;
}

}  // namespace poincare
