#include "qbc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "qbc/ensemble.hpp"
#include "qbc/rng.hpp"

namespace qbc {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Work item identifying one random state draw.
struct Task {
  int dim;
  double epsilon;
  std::uint64_t eps_index;
  int sample;
};

// Runs both methods on one freshly drawn state; appends two records.
void run_task(const Task& t, const ExperimentConfig& cfg, std::vector<SampleRecord>& out,
              std::size_t slot) {
  Rng rng(sample_seed(cfg.master_seed, static_cast<std::uint64_t>(t.dim), t.eps_index,
                      static_cast<std::uint64_t>(t.sample)));
  const ProbVector p = ProbVector::FromUnsorted(random_diagonal_state(t.dim, rng));
  const std::pair<double, double> priors{cfg.priors[0], cfg.priors[1]};

  const BinPartition part_a = arithmetic_bins(p, t.epsilon);
  const auto [flat_a, sigma_a] = bin_weights(p, part_a);
  const BinnedRate rate_a = binned_rate(flat_a, sigma_a, priors);
  const double err_a = binning_error(p, apply_binning(p, part_a));
  out[slot] = SampleRecord{t.dim,   t.epsilon,          t.sample,          'A',
                           part_a.num_bins(), rate_a.rate, rate_a.log2_bins, err_a};

  const BinPartition part_g = geometric_bins(p, t.epsilon);
  const auto [flat_g, sigma_g] = bin_weights(p, part_g);
  const BinnedRate rate_g = binned_rate(flat_g, sigma_g, priors);
  const double err_g = binning_error(p, apply_binning(p, part_g));
  out[slot + 1] = SampleRecord{t.dim,   t.epsilon,          t.sample,          'G',
                               part_g.num_bins(), rate_g.rate, rate_g.log2_bins, err_g};
}

// Records land in preassigned slots, so the output is identical for any
// worker count.
std::vector<SampleRecord> run_tasks(const std::vector<Task>& tasks,
                                    const ExperimentConfig& cfg, int threads) {
  std::vector<SampleRecord> records(tasks.size() * 2);
  threads = std::max(1, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(tasks[i], cfg, records, 2 * i);
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = static_cast<std::size_t>(w); i < tasks.size();
           i += static_cast<std::size_t>(threads)) {
        run_task(tasks[i], cfg, records, 2 * i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return records;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dims.empty()) throw std::invalid_argument("ExperimentConfig: no dimensions");
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("ExperimentConfig: dimension must be positive");
  }
  if (!epsilon_inv_sqrt_dim) {
    if (epsilons.empty()) throw std::invalid_argument("ExperimentConfig: no epsilon values");
    for (double e : epsilons) {
      if (!(e > 0.0)) throw std::invalid_argument("ExperimentConfig: epsilon must be positive");
    }
  }
  if (samples < 1) throw std::invalid_argument("ExperimentConfig: samples must be >= 1");
  if (std::abs(priors[0] + priors[1] - 1.0) > 1e-10 || priors[0] < 0.0 || priors[1] < 0.0) {
    throw std::invalid_argument("ExperimentConfig: priors must form a distribution");
  }
}

std::vector<SampleRecord> sweep_error(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  if (cfg.dims.size() != 1) {
    throw std::invalid_argument("sweep_error: exactly one dimension expected");
  }
  if (cfg.epsilon_inv_sqrt_dim) {
    throw std::invalid_argument("sweep_error: explicit epsilon grid expected");
  }
  std::vector<Task> tasks;
  tasks.reserve(cfg.epsilons.size() * static_cast<std::size_t>(cfg.samples));
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    for (int s = 0; s < cfg.samples; ++s) {
      tasks.push_back(Task{cfg.dims[0], cfg.epsilons[e], static_cast<std::uint64_t>(e), s});
    }
  }
  return run_tasks(tasks, cfg, threads);
}

std::vector<SampleRecord> sweep_dimension(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  std::vector<Task> tasks;
  tasks.reserve(cfg.dims.size() * static_cast<std::size_t>(cfg.samples));
  for (int d : cfg.dims) {
    const double eps = cfg.epsilon_inv_sqrt_dim
                           ? 1.0 / std::sqrt(static_cast<double>(d))
                           : (cfg.epsilons.size() == 1 ? cfg.epsilons[0] : 0.0);
    if (!(eps > 0.0)) {
      throw std::invalid_argument(
          "sweep_dimension: use the 1/sqrt(d) rule or a single epsilon");
    }
    for (int s = 0; s < cfg.samples; ++s) {
      tasks.push_back(Task{d, eps, 0, s});
    }
  }
  return run_tasks(tasks, cfg, threads);
}

std::vector<AggregatePoint> aggregate(const std::vector<SampleRecord>& records) {
  std::map<std::tuple<int, double, char>, AggregatePoint> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.dim, r.epsilon, r.method}];
    if (g.count == 0) {
      g = AggregatePoint{r.dim, r.epsilon, r.method, 0.0, 0.0, 0};
    }
    g.mean_rate_entropy += r.rate_entropy;
    g.mean_rate_log2l += r.rate_log2l;
    ++g.count;
  }
  std::vector<AggregatePoint> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) {
    g.mean_rate_entropy /= static_cast<double>(g.count);
    g.mean_rate_log2l /= static_cast<double>(g.count);
    out.push_back(g);
  }
  return out;
}

std::vector<DifferencePoint> aggregate_difference(const std::vector<SampleRecord>& records) {
  struct Acc {
    std::map<int, std::pair<double, double>> a, g;  // sample -> (entropy, log2l)
  };
  std::map<std::pair<int, double>, Acc> groups;
  for (const auto& r : records) {
    auto& acc = groups[{r.dim, r.epsilon}];
    auto& side = r.method == 'A' ? acc.a : acc.g;
    side[r.sample] = {r.rate_entropy, r.rate_log2l};
  }
  std::vector<DifferencePoint> out;
  for (const auto& [key, acc] : groups) {
    DifferencePoint p{key.first, key.second, 0.0, 0.0, 0.0, 0.0};
    long paired = 0;
    double sum_ae = 0, sum_al = 0, sum_ge = 0, sum_gl = 0;
    for (const auto& [sample, va] : acc.a) {
      sum_ae += va.first;
      sum_al += va.second;
      const auto it = acc.g.find(sample);
      if (it != acc.g.end()) {
        p.paired_mean_entropy += va.first - it->second.first;
        p.paired_mean_log2l += va.second - it->second.second;
        ++paired;
      }
    }
    for (const auto& [sample, vg] : acc.g) {
      sum_ge += vg.first;
      sum_gl += vg.second;
    }
    if (paired > 0) {
      p.paired_mean_entropy /= static_cast<double>(paired);
      p.paired_mean_log2l /= static_cast<double>(paired);
    }
    if (!acc.a.empty() && !acc.g.empty()) {
      p.mean_diff_entropy = sum_ae / static_cast<double>(acc.a.size()) -
                            sum_ge / static_cast<double>(acc.g.size());
      p.mean_diff_log2l = sum_al / static_cast<double>(acc.a.size()) -
                          sum_gl / static_cast<double>(acc.g.size());
    }
    out.push_back(p);
  }
  return out;
}

FitResult fit_error_curve(const std::vector<std::pair<double, double>>& points, int dim) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_error_curve: at least 3 points required");
  }
  for (const auto& [x, y] : points) {
    if (!(x > 0.0)) throw std::invalid_argument("fit_error_curve: epsilon must be positive");
  }
  const double log2d = std::log2(static_cast<double>(dim));
  const Index n = static_cast<Index>(points.size());

  double ymin = points[0].second;
  double ymax = points[0].second;
  for (const auto& [x, y] : points) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  // Constant data pinned at log2(d): a = 0 and b carries no information.
  if (ymax - ymin < 1e-14 && std::abs(ymax - log2d) < 1e-12) {
    FitResult r{"error_curve", 0.0, 1.0, 0.0, static_cast<int>(n), true};
    for (const auto& [x, y] : points) r.rss += (y - log2d) * (y - log2d);
    return r;
  }

  const auto residuals = [&](double a, double b, Eigen::VectorXd& r) {
    for (Index i = 0; i < n; ++i) {
      const auto& [x, y] = points[static_cast<std::size_t>(i)];
      r[i] = y - (log2d - a * (1.0 - std::exp(-b * std::sqrt(x))));
    }
  };
  const auto rss_of = [&](double a, double b) {
    Eigen::VectorXd r(n);
    residuals(a, b, r);
    return r.squaredNorm();
  };

  double a = log2d - ymin;
  double b = 1.0;
  double best = rss_of(a, b);

  // Damped Gauss-Newton; on a singular system fall back to a coarse grid and
  // refine from the best cell.
  const auto refine = [&](double& pa, double& pb) {
    double lambda = 1e-3;
    double current = rss_of(pa, pb);
    Eigen::VectorXd r(n);
    for (int it = 0; it < 1000; ++it) {
      residuals(pa, pb, r);
      Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
      Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
      for (Index i = 0; i < n; ++i) {
        const double sx = std::sqrt(points[static_cast<std::size_t>(i)].first);
        const double e = std::exp(-pb * sx);
        // d residual / d a = (1 - e), d residual / d b = a sx e.
        const Eigen::Vector2d j{1.0 - e, pa * sx * e};
        jtj += j * j.transpose();
        jtr += j * r[i];
      }
      bool stepped = false;
      for (int tries = 0; tries < 12; ++tries) {
        Eigen::Matrix2d damped = jtj;
        damped(0, 0) += lambda * std::max(jtj(0, 0), 1e-12);
        damped(1, 1) += lambda * std::max(jtj(1, 1), 1e-12);
        if (std::abs(damped.determinant()) < 1e-300) {
          lambda *= 10.0;
          continue;
        }
        const Eigen::Vector2d step = damped.ldlt().solve(jtr);
        const double na = pa - step[0];
        const double nb = pb - step[1];
        const double next = rss_of(na, nb);
        if (next <= current) {
          const double rel = (current - next) / std::max(current, 1e-300);
          pa = na;
          pb = nb;
          current = next;
          lambda = std::max(lambda / 10.0, 1e-12);
          stepped = true;
          if (rel < 1e-12) return current;
          break;
        }
        lambda *= 10.0;
      }
      if (!stepped) return current;
    }
    return current;
  };

  double ra = a, rb = b;
  double rss = refine(ra, rb);

  if (!std::isfinite(rss) || rss > best + 1e-9) {
    // Grid fallback over a in [0, log2d + span], b log-spaced.
    double ga = ra, gb = rb;
    double grss = std::numeric_limits<double>::infinity();
    for (int ia = 0; ia <= 40; ++ia) {
      const double ca = (log2d + 2.0) * ia / 40.0;
      for (int ib = 0; ib <= 40; ++ib) {
        const double cb = std::pow(10.0, -2.0 + 4.0 * ib / 40.0);
        const double c = rss_of(ca, cb);
        if (c < grss) {
          grss = c;
          ga = ca;
          gb = cb;
        }
      }
    }
    grss = refine(ga, gb);
    if (grss < rss) {
      ra = ga;
      rb = gb;
      rss = grss;
    }
  }
  return FitResult{"error_curve", ra, rb, rss, static_cast<int>(n), false};
}

FitResult fit_dim_curve(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("fit_dim_curve: at least 2 points required");
  }
  bool distinct = false;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0)) throw std::invalid_argument("fit_dim_curve: dimensions must be positive");
    if (x != points[0].first) distinct = true;
  }
  if (!distinct) throw std::invalid_argument("fit_dim_curve: all dimensions equal");

  const Index n = static_cast<Index>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double lx = std::log2(x);
    sx += lx;
    sy += y;
    sxx += lx * lx;
    sxy += lx * y;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  const double a = (static_cast<double>(n) * sxy - sx * sy) / denom;
  const double b = (sy - a * sx) / static_cast<double>(n);
  double rss = 0;
  for (const auto& [x, y] : points) {
    const double r = y - (a * std::log2(x) + b);
    rss += r * r;
  }
  return FitResult{"dim_curve", a, b, rss, static_cast<int>(n), false};
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid(50);
  for (int i = 0; i < 50; ++i) {
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, -4.0 + 4.0 * i / 49.0);
  }
  return grid;
}

std::vector<int> default_dimension_list() {
  std::vector<int> dims;
  for (int k = 6; k <= 13; ++k) dims.push_back(1 << k);
  return dims;
}

std::string records_to_csv(const std::vector<SampleRecord>& records, bool timestamp_header) {
  std::ostringstream os;
  if (timestamp_header) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
  }
  os << "dim,epsilon,sample,method,L,rate_entropy,rate_log2L,l1_error\n";
  for (const auto& r : records) {
    os << r.dim << ',' << format_double(r.epsilon) << ',' << r.sample << ',' << r.method << ','
       << r.bins << ',' << format_double(r.rate_entropy) << ',' << format_double(r.rate_log2l)
       << ',' << format_double(r.l1_error) << "\n";
  }
  return os.str();
}

std::vector<SampleRecord> records_from_csv(std::istream& in) {
  std::vector<SampleRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("dim,", 0) == 0) continue;
    SampleRecord r{};
    char method = 0;
    long bins = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%d,%c,%ld,%lf,%lf,%lf", &r.dim, &r.epsilon, &r.sample,
                    &method, &bins, &r.rate_entropy, &r.rate_log2l, &r.l1_error) != 8) {
      throw std::runtime_error("records_from_csv: malformed line: " + line);
    }
    r.method = method;
    r.bins = bins;
    records.push_back(r);
  }
  return records;
}

}  // namespace qbc
