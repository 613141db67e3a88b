#include "poincare/benchmark.hpp"
#include "poincare/perceptron.hpp"

#include <doctest.h>

using namespace poincare;
using namespace poincare::bench;

TEST_CASE("summarize computes quantiles by linear interpolation") {
  const Summary s = summarize({4, 1, 3, 2, 5});
  CHECK(s.mean == 3);
  CHECK(s.min == 1);
  CHECK(s.q1 == 2);
  CHECK(s.median == 3);
  CHECK(s.q3 == 4);
  CHECK(s.max == 5);
  CHECK(summarize({1, 2}).median == 1.5);
  CHECK(summarize({}).mean == 0);
}

TEST_CASE("parallel_for covers every index once and propagates errors") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                  std::runtime_error);
}

TEST_CASE("small table1 run: bound respected and reproducible across job counts") {
  Table1Config cfg;
  cfg.n = 400;
  cfg.d = 4;
  cfg.eps = {1.0, 0.1};
  cfg.seeds = seed_range(5, 3);
  const Table1Report a = run_table1(cfg);
  cfg.jobs = 3;
  const Table1Report b = run_table1(cfg);
  REQUIRE(a.cells.size() == 4);
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    CHECK(a.cells[c].bound_respected());
    CHECK(a.cells[c].bound == doctest::Approx(perceptron_bound(a.cells[c].p_norm, 0.95, a.cells[c].eps)));
    for (std::size_t r = 0; r < a.cells[c].runs.size(); ++r) {
      CHECK(a.cells[c].runs[r].seed == 5 + r);
      CHECK(a.cells[c].runs[r].perceptron_updates == b.cells[c].runs[r].perceptron_updates);
      CHECK(a.cells[c].runs[r].second_order_mistakes == b.cells[c].runs[r].second_order_mistakes);
      CHECK(a.cells[c].runs[r].second_order_converged);
    }
  }
  const std::string lines = to_lines(a);
  CHECK(lines.find("suite=table1") == 0);
  CHECK(lines.find("seeds=5,6,7") != std::string::npos);
  CHECK(lines.find("bound_respected=1") != std::string::npos);
  const auto j = to_json(a);
  CHECK(j.at("cells").size() == 4);
  CHECK(j.at("seeds") == nlohmann::json({5, 6, 7}));
}

TEST_CASE("small figure4 run") {
  Figure4Config cfg;
  cfg.d_sweep = {2, 5};
  cfg.d_sweep_n = 500;
  cfg.n_sweep = {300};
  cfg.p_fracs = {0.6};
  cfg.seeds = seed_range(0, 2);
  const Figure4Report r = run_figure4(cfg);
  REQUIRE(r.cells.size() == 3);
  CHECK(r.cells[0].sweep == "d");
  CHECK(r.cells[2].sweep == "N");
  CHECK(r.cells[2].n == 300);
  for (const auto& c : r.cells) {
    for (const auto& run : c.runs) {
      CHECK(run.poincare_accuracy >= 0.95);
      CHECK(run.euclidean_accuracy <= 1.0);
      CHECK(run.poincare_seconds >= 0);
    }
  }
  CHECK(to_lines(r).find("sweep=N d=2 n=300") != std::string::npos);
  CHECK(to_json(r).at("cells").size() == 3);

  const auto again = run_svm_comparison(500, 2, 0.57, 0.01, 0.95, 1000, 0.7, 1);
  CHECK(again.poincare_accuracy == r.cells[0].runs[1].poincare_accuracy);
}
