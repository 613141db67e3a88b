#include "poincare/benchmark.hpp"

#include "poincare/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>

namespace poincare::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Run, typename F>
Summary summarize_runs(const std::vector<Run>& runs, F field) {
  std::vector<double> v;
  v.reserve(runs.size());
  for (const Run& r : runs) v.push_back(double(field(r)));
  return summarize(std::move(v));
}

std::string seeds_string(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(seeds[k]);
  }
  return s;
}

nlohmann::json summary_json(const Summary& s) {
  return {{"mean", s.mean}, {"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3}, {"max", s.max}};
}

}  // namespace

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), first);
  return s;
}

Summary summarize(std::vector<double> v) {
  if (v.empty()) return {};
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * double(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
  };
  return {std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()), v.front(), quantile(0.25), quantile(0.5),
          quantile(0.75), v.back()};
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------

Summary Table1Cell::perceptron() const {
  return summarize_runs(runs, [](const Table1Run& r) { return r.perceptron_updates; });
}

Summary Table1Cell::second_order() const {
  return summarize_runs(runs, [](const Table1Run& r) { return r.second_order_mistakes; });
}

bool Table1Cell::bound_respected() const {
  return std::all_of(runs.begin(), runs.end(), [&](const Table1Run& r) {
    return r.perceptron_converged && double(r.perceptron_updates) <= bound;
  });
}

Table1Report run_table1(const Table1Config& cfg) {
  Table1Report rep{cfg, {}};
  for (double frac : cfg.p_fracs) {
    for (double eps : cfg.eps) {
      const double p_norm = frac * cfg.R;
      rep.cells.push_back({eps, p_norm, perceptron_bound(p_norm, cfg.R, eps), std::vector<Table1Run>(cfg.seeds.size())});
    }
  }
  const std::size_t per_cell = cfg.seeds.size();
  parallel_for(rep.cells.size() * per_cell, cfg.jobs, [&](std::size_t task) {
    Table1Cell& cell = rep.cells[task / per_cell];
    Table1Run& run = cell.runs[task % per_cell];
    run.seed = cfg.seeds[task % per_cell];
    const auto t0 = Clock::now();
    const SyntheticData sd = generate_synthetic({cfg.n, cfg.d, cfg.R, cell.p_norm, cell.eps, run.seed});
    const auto pm = perceptron_train(sd.data, sd.truth.p(), cfg.max_epochs);
    run.perceptron_updates = pm.updates;
    run.perceptron_converged = pm.converged;
    if (cfg.second_order) {
      const auto so = second_order_train(sd.data, sd.truth.p(), cfg.second_order_a, cfg.max_epochs);
      run.second_order_mistakes = so.state.mistakes;
      run.second_order_converged = so.model.converged;
    }
    run.seconds = seconds_since(t0);
  });
  return rep;
}

// ---------------------------------------------------------------------------

Summary Figure4Cell::poincare_accuracy() const {
  return summarize_runs(runs, [](const Figure4Run& r) { return r.poincare_accuracy; });
}
Summary Figure4Cell::euclidean_accuracy() const {
  return summarize_runs(runs, [](const Figure4Run& r) { return r.euclidean_accuracy; });
}
Summary Figure4Cell::poincare_seconds() const {
  return summarize_runs(runs, [](const Figure4Run& r) { return r.poincare_seconds; });
}
Summary Figure4Cell::euclidean_seconds() const {
  return summarize_runs(runs, [](const Figure4Run& r) { return r.euclidean_seconds; });
}

Figure4Run run_svm_comparison(Index n, Index d, double p_norm, double eps, double R, double C, double train_fraction,
                              std::uint64_t seed) {
  Figure4Run run;
  run.seed = seed;
  const SyntheticData sd = generate_synthetic({n, d, R, p_norm, eps, seed});
  const auto [train, test] = train_test_split(sd.data, train_fraction, seed);
  SvmOptions opt;
  opt.C = C;
  opt.seed = seed;

  auto t0 = Clock::now();
  const auto ps = svm_train(train, sd.truth.p(), opt);
  run.poincare_seconds = seconds_since(t0);
  run.poincare_accuracy = accuracy(BinaryClassifier<double>{Algorithm::svm, ps.p, ps.w}, test);

  t0 = Clock::now();
  const auto es = euclidean_svm_train(train, opt);
  run.euclidean_seconds = seconds_since(t0);
  run.euclidean_accuracy = accuracy(BinaryClassifier<double>{Algorithm::euclidean_svm, es.p, es.w}, test);
  return run;
}

Figure4Report run_figure4(const Figure4Config& cfg) {
  Figure4Report rep{cfg, {}};
  for (double frac : cfg.p_fracs) {
    for (Index d : cfg.d_sweep) rep.cells.push_back({"d", d, cfg.d_sweep_n, frac * cfg.R, {}});
    for (Index n : cfg.n_sweep) rep.cells.push_back({"N", cfg.n_sweep_d, n, frac * cfg.R, {}});
  }
  for (auto& c : rep.cells) c.runs.resize(cfg.seeds.size());
  const std::size_t per_cell = cfg.seeds.size();
  parallel_for(rep.cells.size() * per_cell, cfg.jobs, [&](std::size_t task) {
    Figure4Cell& cell = rep.cells[task / per_cell];
    cell.runs[task % per_cell] = run_svm_comparison(cell.n, cell.d, cell.p_norm, cfg.eps, cfg.R, cfg.C,
                                                    cfg.train_fraction, cfg.seeds[task % per_cell]);
  });
  return rep;
}

// ---------------------------------------------------------------------------

std::string to_lines(const Table1Report& r) {
  std::ostringstream os;
  os << "suite=table1 n=" << r.config.n << " d=" << r.config.d << " R=" << format_double(r.config.R)
     << " a=" << format_double(r.config.second_order_a) << " seeds=" << seeds_string(r.config.seeds) << '\n';
  for (const auto& c : r.cells) {
    const Summary p = c.perceptron();
    const Summary s = c.second_order();
    os << "cell eps=" << format_double(c.eps) << " p_norm=" << format_double(c.p_norm)
       << " perceptron_mean=" << format_double(p.mean) << " perceptron_max=" << format_double(p.max)
       << " second_order_mean=" << format_double(s.mean) << " second_order_max=" << format_double(s.max)
       << " bound=" << format_double(c.bound) << " bound_respected=" << (c.bound_respected() ? 1 : 0)
       << " seconds=" << format_double(summarize_runs(c.runs, [](const Table1Run& x) { return x.seconds; }).mean)
       << '\n';
  }
  return os.str();
}

std::string to_lines(const Figure4Report& r) {
  std::ostringstream os;
  os << "suite=figure4-desk eps=" << format_double(r.config.eps) << " C=" << format_double(r.config.C)
     << " seeds=" << seeds_string(r.config.seeds) << '\n';
  for (const auto& c : r.cells) {
    const Summary pa = c.poincare_accuracy(), ea = c.euclidean_accuracy();
    const Summary pt = c.poincare_seconds(), et = c.euclidean_seconds();
    os << "cell sweep=" << c.sweep << " d=" << c.d << " n=" << c.n << " p_norm=" << format_double(c.p_norm)
       << " poincare_acc_q1=" << format_double(pa.q1) << " poincare_acc_median=" << format_double(pa.median)
       << " poincare_acc_q3=" << format_double(pa.q3) << " poincare_acc_mean=" << format_double(pa.mean)
       << " euclidean_acc_q1=" << format_double(ea.q1) << " euclidean_acc_median=" << format_double(ea.median)
       << " euclidean_acc_q3=" << format_double(ea.q3) << " euclidean_acc_mean=" << format_double(ea.mean)
       << " poincare_seconds=" << format_double(pt.median) << " euclidean_seconds=" << format_double(et.median)
       << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const Table1Report& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& x : c.runs) {
      runs.push_back({{"seed", x.seed},
                      {"perceptron_updates", x.perceptron_updates},
                      {"perceptron_converged", x.perceptron_converged},
                      {"second_order_mistakes", x.second_order_mistakes},
                      {"second_order_converged", x.second_order_converged},
                      {"seconds", x.seconds}});
    }
    cells.push_back({{"algorithm", "perceptron+second-order"},
                     {"eps", c.eps},
                     {"p_norm", c.p_norm},
                     {"bound", c.bound},
                     {"bound_respected", c.bound_respected()},
                     {"perceptron", summary_json(c.perceptron())},
                     {"second_order", summary_json(c.second_order())},
                     {"runs", runs}});
  }
  return {{"suite", "table1"},
          {"n", r.config.n},
          {"d", r.config.d},
          {"R", r.config.R},
          {"second_order_a", r.config.second_order_a},
          {"max_epochs", r.config.max_epochs},
          {"seeds", r.config.seeds},
          {"cells", cells}};
}

nlohmann::json to_json(const Figure4Report& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& x : c.runs) {
      runs.push_back({{"seed", x.seed},
                      {"poincare_accuracy", x.poincare_accuracy},
                      {"euclidean_accuracy", x.euclidean_accuracy},
                      {"poincare_seconds", x.poincare_seconds},
                      {"euclidean_seconds", x.euclidean_seconds}});
    }
    cells.push_back({{"sweep", c.sweep},
                     {"d", c.d},
                     {"n", c.n},
                     {"p_norm", c.p_norm},
                     {"poincare_accuracy", summary_json(c.poincare_accuracy())},
                     {"euclidean_accuracy", summary_json(c.euclidean_accuracy())},
                     {"poincare_seconds", summary_json(c.poincare_seconds())},
                     {"euclidean_seconds", summary_json(c.euclidean_seconds())},
                     {"runs", runs}});
  }
  return {{"suite", "figure4-desk"},
          {"eps", r.config.eps},
          {"R", r.config.R},
          {"C", r.config.C},
          {"train_fraction", r.config.train_fraction},
          {"seeds", r.config.seeds},
          {"cells", cells}};
}

}  // namespace poincare::bench
