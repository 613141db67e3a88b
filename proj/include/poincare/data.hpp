#pragma once

#include "poincare/dataset.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poincare {

using Dataset = LabeledDataset<double>;

struct SynthConfig {
  Index n = 1000;
  Index d = 2;
  double R = 0.95;
  double p_norm = 0.19;  ///< absolute |p|; use p_frac * R for the usual grid
  double eps = 0.01;
  std::uint64_t seed = 0;
};

struct SyntheticData {
  Dataset data;
  Hyperplane<double> truth;  ///< |w*| = 1
};

/// The generator cannot reach the requested margin at a usable rate.
class UnsatisfiableConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform points (Euclidean measure) in the radius-R ball, labelled by a
/// random hyperplane through a random p of norm `p_norm`, with every point
/// closer than `eps` to the hyperplane rejected.
SyntheticData generate_synthetic(const SynthConfig& cfg);

/// Well-separated multi-class data: class k is a Gaussian-like blob around a
/// center placed on a ring at hyperbolic distance `ring_distance` from the
/// origin, at angle 2 pi k / K. Points are exp_c(noise) with isotropic
/// tangent noise whose hyperbolic standard deviation is `spread`.
struct ClusterConfig {
  std::vector<Index> sizes{60, 50, 45, 40, 40, 35, 25, 24};  ///< points per class, K = sizes.size()
  double ring_distance = 2.5;
  double spread = 0.15;
  std::uint64_t seed = 0;
};

/// Labels are 0..K-1.
Dataset generate_clusters(const ClusterConfig& cfg);

/// Error while reading a dataset file; `line()` is 1-based, 0 if not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text format: a header `# d=<d> n=<N>` followed by rows `label,x1,...,xd`.
Dataset read_dataset(std::istream& in);
void write_dataset(const Dataset& ds, std::ostream& out);

/// Path "-" means stdin / stdout.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Stratified split. Each class contributes round(fraction * n_c) training
/// points (at least one); the rest go to the test set.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double fraction, std::uint64_t seed);

}  // namespace poincare
