#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbc/binning.hpp"

namespace qbc {

enum class RateKind { Entropy, Log2L, Both };

struct ExperimentConfig {
  std::vector<int> dims;
  std::vector<double> epsilons;       // ignored when epsilon_inv_sqrt_dim is set
  bool epsilon_inv_sqrt_dim = false;  // per-dim rule eps = 1/sqrt(d)
  int samples = 1000;
  std::uint64_t master_seed = 42;
  RateKind rate_kind = RateKind::Both;
  std::array<double, 2> priors{0.5, 0.5};

  void validate() const;
};

/// One binning run of one random diagonal state against the flat state.
struct SampleRecord {
  int dim;
  double epsilon;
  int sample;
  char method;  // 'A' or 'G'
  Index bins;
  double rate_entropy;
  double rate_log2l;
  double l1_error;
};

/// Rate vs allowed error at fixed dimension: one fresh random state per
/// (epsilon, sample) pair, both methods on the same state.
std::vector<SampleRecord> sweep_error(const ExperimentConfig& cfg, int threads = 1);

/// Rate vs dimension with eps = 1/sqrt(d) per dimension.
std::vector<SampleRecord> sweep_dimension(const ExperimentConfig& cfg, int threads = 1);

struct AggregatePoint {
  int dim;
  double epsilon;
  char method;
  double mean_rate_entropy;
  double mean_rate_log2l;
  long count;
};

/// Mean rates per (dim, epsilon, method), keys in sorted order.
std::vector<AggregatePoint> aggregate(const std::vector<SampleRecord>& records);

struct DifferencePoint {
  int dim;
  double epsilon;
  double paired_mean_entropy;  // mean over samples of (A - G), shared states
  double paired_mean_log2l;
  double mean_diff_entropy;    // mean(A) - mean(G)
  double mean_diff_log2l;
};

/// Arithmetic-minus-geometric differences per (dim, epsilon), both paired on
/// shared random states and as a difference of means.
std::vector<DifferencePoint> aggregate_difference(const std::vector<SampleRecord>& records);

struct FitResult {
  std::string model;  // "error_curve" | "dim_curve"
  double a = 0.0;
  double b = 0.0;
  double rss = 0.0;
  int n = 0;
  bool b_unidentifiable = false;
};

/// Least squares for f(x) = log2(d) - a (1 - exp(-b sqrt(x))) on points
/// (epsilon, mean rate), via damped Gauss-Newton with an analytic Jacobian.
FitResult fit_error_curve(const std::vector<std::pair<double, double>>& points, int dim);

/// Ordinary least squares for f(x) = a log2(x) + b on points (dim, mean rate).
FitResult fit_dim_curve(const std::vector<std::pair<double, double>>& points);

/// 50 log-spaced values covering 1e-4 .. 1.
std::vector<double> default_epsilon_grid();
/// Powers of two 64 .. 8192.
std::vector<int> default_dimension_list();

/// CSV with columns dim,epsilon,sample,method,L,rate_entropy,rate_log2L,l1_error;
/// floats carry 17 significant digits. The optional timestamp header line is
/// suppressed for byte-reproducible output.
std::string records_to_csv(const std::vector<SampleRecord>& records, bool timestamp_header);
std::vector<SampleRecord> records_from_csv(std::istream& in);

}  // namespace qbc
