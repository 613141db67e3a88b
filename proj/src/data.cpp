#include "poincare/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

namespace poincare {

namespace {

Eigen::VectorXd random_unit(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(d);
  do {
    for (Index k = 0; k < d; ++k) v(k) = normal(rng);
  } while (v.norm() == 0.0);
  return v.normalized();
}

constexpr std::int64_t kProbeBatch = 1'000'000;
constexpr double kMinAcceptance = 1e-6;

}  // namespace

SyntheticData generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("N must be >= 1");
  if (cfg.d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(cfg.R > 0 && cfg.R < 1)) throw std::invalid_argument("R must lie in (0, 1)");
  if (!(cfg.eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(cfg.p_norm >= 0 && cfg.p_norm < 1)) throw std::invalid_argument("|p| must lie in [0, 1)");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::VectorXd w = random_unit(cfg.d, rng);
  const Eigen::VectorXd p = cfg.p_norm * random_unit(cfg.d, rng);

  Eigen::MatrixXd pts(cfg.d, cfg.n);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(cfg.n));
  std::int64_t drawn = 0;
  Index accepted = 0;
  while (accepted < cfg.n) {
    const Eigen::VectorXd x = cfg.R * std::pow(unif(rng), 1.0 / double(cfg.d)) * random_unit(cfg.d, rng);
    ++drawn;
    const double score = kernel::log_map(p, x).dot(w);
    if (score != 0.0 && kernel::dist_to_hyperplane(x, p, w) >= cfg.eps) {
      pts.col(accepted++) = x;
      labels.push_back(score > 0 ? 1 : -1);
    }
    if (drawn % kProbeBatch == 0 && double(accepted) < kMinAcceptance * double(drawn)) {
      throw UnsatisfiableConfig("acceptance rate below 1e-6 after " + std::to_string(drawn) +
                                " candidates: margin eps=" + format_double(cfg.eps) + " is too large");
    }
  }
  return {Dataset(std::move(pts), std::move(labels)), Hyperplane<double>(Point<double>(p), w)};
}

Dataset generate_clusters(const ClusterConfig& cfg) {
  const auto K = static_cast<Index>(cfg.sizes.size());
  if (K < 1) throw std::invalid_argument("need at least one cluster");
  if (!(cfg.ring_distance > 0) || !(cfg.spread >= 0)) throw std::invalid_argument("bad cluster geometry");
  Index total = 0;
  for (Index n : cfg.sizes) {
    if (n < 1) throw std::invalid_argument("every cluster needs at least one point");
    total += n;
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  const double pi = std::acos(-1.0);
  Eigen::MatrixXd pts(2, total);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(total));
  for (Index k = 0; k < K; ++k) {
    const double angle = 2 * pi * double(k) / double(K);
    // From the origin, hyperbolic distance r corresponds to norm tanh(r / 2).
    const Eigen::Vector2d center = std::tanh(cfg.ring_distance / 2) * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    const double sigma = kernel::conformal_factor(center.squaredNorm());
    for (Index j = 0; j < cfg.sizes[static_cast<std::size_t>(k)]; ++j) {
      // A tangent vector of norm t at c moves a hyperbolic distance sigma_c * t.
      const Eigen::Vector2d noise(normal(rng), normal(rng));
      Eigen::VectorXd x = kernel::exp_map(center, (cfg.spread / sigma) * noise);
      if (x.squaredNorm() >= 1.0) x = center;
      pts.col(static_cast<Index>(labels.size())) = x;
      labels.push_back(static_cast<int>(k));
    }
  }
  return Dataset(std::move(pts), std::move(labels));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long d = -1, n = -1;

  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(0, "empty dataset");
  {
    std::string_view h = trim(line);
    if (h.empty() || h.front() != '#') throw ParseError(lineno, "missing header '# d=<d> n=<N>'");
    std::istringstream tokens{std::string(h.substr(1))};
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      long long value = 0;
      if (key != "d" && key != "n") continue;
      if (!parse_number(std::string_view(tok).substr(eq + 1), value) || value < 0) {
        throw ParseError(lineno, "bad header value '" + tok + "'");
      }
      (key == "d" ? d : n) = value;
    }
    if (d < 1 || n < 0) throw ParseError(lineno, "header must declare d>=1 and n>=0");
  }
  if (n == 0) throw ParseError(lineno, "empty dataset");

  Eigen::MatrixXd pts(d, n);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (static_cast<long long>(labels.size()) == n) throw ParseError(lineno, "more rows than the header's n=" + std::to_string(n));

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = row.find(',', start);
      fields.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (static_cast<long long>(fields.size()) != d + 1) {
      throw ParseError(lineno, "expected " + std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
    }
    int label = 0;
    if (!parse_number(fields[0], label)) throw ParseError(lineno, "bad label '" + std::string(fields[0]) + "'");
    const Index col = static_cast<Index>(labels.size());
    for (long long k = 0; k < d; ++k) {
      double v = 0;
      if (!parse_number(fields[static_cast<std::size_t>(k + 1)], v) || !std::isfinite(v)) {
        throw ParseError(lineno, "bad coordinate '" + std::string(fields[static_cast<std::size_t>(k + 1)]) + "'");
      }
      pts(k, col) = v;
    }
    if (pts.col(col).squaredNorm() >= 1.0) {
      throw ParseError(lineno, "point norm " + format_double(pts.col(col).norm()) + " is not inside the unit ball");
    }
    labels.push_back(label);
  }
  if (static_cast<long long>(labels.size()) != n) {
    throw ParseError(lineno, "header declares n=" + std::to_string(n) + " but found " + std::to_string(labels.size()) + " rows");
  }
  return Dataset(std::move(pts), std::move(labels));
}

void write_dataset(const Dataset& ds, std::ostream& out) {
  out << "# d=" << ds.dim() << " n=" << ds.size() << '\n';
  std::string row;
  for (Index i = 0; i < ds.size(); ++i) {
    row = std::to_string(ds.label(i));
    for (Index k = 0; k < ds.dim(); ++k) {
      row += ',';
      row += format_double(ds.points()(k, i));
    }
    row += '\n';
    out << row;
  }
}

Dataset load_dataset(const std::string& path) {
  if (path == "-") return read_dataset(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return read_dataset(in);
}

void save_dataset(const Dataset& ds, const std::string& path) {
  if (path == "-") {
    write_dataset(ds, std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset '" + path + "'");
  write_dataset(ds, out);
  if (!out) throw std::runtime_error("error writing dataset '" + path + "'");
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0 && fraction < 1)) throw std::invalid_argument("split fraction must lie in (0, 1)");
  std::map<int, std::vector<Index>> by_class;
  for (Index i = 0; i < ds.size(); ++i) by_class[ds.label(i)].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<Index> train, test;
  for (auto& [label, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_c = static_cast<long long>(idx.size());
    const long long n_train = std::clamp<long long>(std::llround(fraction * double(n_c)), 1, n_c);
    train.insert(train.end(), idx.begin(), idx.begin() + n_train);
    test.insert(test.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {ds.subset(train), ds.subset(test)};
}

}  // namespace poincare
