#pragma once

#include <utility>
#include <vector>

#include "qbc/linalg.hpp"

namespace qbc {

/// Probability vector kept in descending order. Unsorted input is sorted and
/// the permutation recorded so diagonal states can be mapped back.
class ProbVector {
 public:
  /// `values[sorted position] = input[permutation()[sorted position]]`.
  static ProbVector FromUnsorted(Eigen::VectorXd values);
  /// Input already descending; identity permutation.
  static ProbVector FromSorted(Eigen::VectorXd values);

  Index dim() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  const std::vector<Index>& permutation() const { return perm_; }

 private:
  ProbVector(Eigen::VectorXd values, std::vector<Index> perm);

  friend ProbVector apply_binning(const ProbVector& p, const struct BinPartition& part);

  Eigen::VectorXd values_;
  std::vector<Index> perm_;
};

/// Contiguous bins over {1..d}: 1-based boundaries k_1 < ... < k_L = d, bin i
/// covering indices {k_{i-1}+1, ..., k_i}.
struct BinPartition {
  std::vector<Index> boundaries;

  Index num_bins() const { return static_cast<Index>(boundaries.size()); }
  Index bin_begin(Index i) const { return i == 0 ? 0 : boundaries[static_cast<std::size_t>(i - 1)]; }
  Index bin_end(Index i) const { return boundaries[static_cast<std::size_t>(i)]; }
  Index bin_size(Index i) const { return bin_end(i) - bin_begin(i); }
};

/// Greedy maximal bins under |p_first - p_last| <= eps/d.
BinPartition arithmetic_bins(const ProbVector& p, double eps);

/// Greedy maximal bins under p_last / p_first >= 1/(1+eps), boundary
/// inclusive. Zero entries form one final eps-independent bin.
BinPartition geometric_bins(const ProbVector& p, double eps);

/// Replace every entry by its bin's arithmetic average.
ProbVector apply_binning(const ProbVector& p, const BinPartition& part);

/// l1 distance sum_i |p_i - q_i| between distributions of equal dimension.
double binning_error(const ProbVector& p, const ProbVector& q);

/// Per-bin weights |I_i|/d of the flat state and sum_{m in I_i} p_m of sigma.
std::pair<Eigen::VectorXd, Eigen::VectorXd> bin_weights(const ProbVector& p,
                                                        const BinPartition& part);

struct BinnedRate {
  double rate;      // S(p_rho K_off(rho) + p_sigma K_off(sigma)) in bits
  double log2_bins; // log2 L upper bound
};

BinnedRate binned_rate(const Eigen::VectorXd& p_bins_flat, const Eigen::VectorXd& p_bins_sigma,
                       std::pair<double, double> priors);

}  // namespace qbc
