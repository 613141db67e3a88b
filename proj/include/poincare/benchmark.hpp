#pragma once

#include "poincare/data.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace poincare::bench {

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

struct Summary {
  double mean = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};
Summary summarize(std::vector<double> values);

/// Runs `count` independent tasks on up to `jobs` threads. Task i writes only
/// its own slot, so results do not depend on `jobs`.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

// ---------------------------------------------------------------------------
// Mistake counts of both perceptrons against the first-order bound.

struct Table1Config {
  Index n = 10'000;
  Index d = 10;
  double R = 0.95;
  std::vector<double> eps{1.0, 0.1, 0.01, 0.001};
  std::vector<double> p_fracs{0.2, 0.6};  ///< |p| = frac * R
  std::vector<std::uint64_t> seeds = seed_range(0, 20);
  Index max_epochs = 100'000;
  double second_order_a = 0.0;
  bool second_order = true;
  unsigned jobs = 1;
};

struct Table1Run {
  std::uint64_t seed = 0;
  std::int64_t perceptron_updates = 0;
  bool perceptron_converged = false;
  std::int64_t second_order_mistakes = 0;
  bool second_order_converged = false;
  double seconds = 0;
};

struct Table1Cell {
  double eps = 0;
  double p_norm = 0;
  double bound = 0;
  std::vector<Table1Run> runs;

  Summary perceptron() const;
  Summary second_order() const;
  /// Every run converged with updates <= bound.
  bool bound_respected() const;
};

struct Table1Report {
  Table1Config config;
  std::vector<Table1Cell> cells;
};

Table1Report run_table1(const Table1Config& cfg);

// ---------------------------------------------------------------------------
// Poincare SVM vs Euclidean SVM accuracy and wall time, sweeping d and N.

struct Figure4Config {
  std::vector<Index> d_sweep{2, 10, 100, 1000};
  Index d_sweep_n = 10'000;
  std::vector<Index> n_sweep{1'000, 10'000, 100'000};
  Index n_sweep_d = 2;
  double eps = 0.01;
  double R = 0.95;
  std::vector<double> p_fracs{0.2, 0.6};
  double C = 1000.0;
  double train_fraction = 0.7;
  std::vector<std::uint64_t> seeds = seed_range(0, 20);
  unsigned jobs = 1;
};

struct Figure4Run {
  std::uint64_t seed = 0;
  double poincare_accuracy = 0;
  double euclidean_accuracy = 0;
  double poincare_seconds = 0;
  double euclidean_seconds = 0;
};

struct Figure4Cell {
  std::string sweep;  ///< "d" or "N"
  Index d = 0;
  Index n = 0;
  double p_norm = 0;
  std::vector<Figure4Run> runs;

  Summary poincare_accuracy() const;
  Summary euclidean_accuracy() const;
  Summary poincare_seconds() const;
  Summary euclidean_seconds() const;
};

struct Figure4Report {
  Figure4Config config;
  std::vector<Figure4Cell> cells;
};

/// One seed of the SVM comparison: generate, split, train both, score on test.
Figure4Run run_svm_comparison(Index n, Index d, double p_norm, double eps, double R, double C, double train_fraction,
                              std::uint64_t seed);

Figure4Report run_figure4(const Figure4Config& cfg);

// ---------------------------------------------------------------------------
// Reporting: key=value lines plus a JSON document.

std::string to_lines(const Table1Report& r);
std::string to_lines(const Figure4Report& r);
nlohmann::json to_json(const Table1Report& r);
nlohmann::json to_json(const Figure4Report& r);

}  // namespace poincare::bench
