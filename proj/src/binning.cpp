#include "qbc/binning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qbc {

namespace {

constexpr double kSumTol = 1e-12;

void check_distribution(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw std::invalid_argument("ProbVector: empty");
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) throw std::invalid_argument("ProbVector: negative entry");
  }
  if (std::abs(v.sum() - 1.0) > kSumTol) {
    std::ostringstream os;
    os << "ProbVector: entries sum to " << v.sum();
    throw std::invalid_argument(os.str());
  }
}

// Largest index k >= start with values[k] >= threshold; values descending.
Index extend_bin(const Eigen::VectorXd& values, Index start, double threshold) {
  Index k = start;
  while (k + 1 < values.size() && values[k + 1] >= threshold) ++k;
  return k;
}

}  // namespace

ProbVector::ProbVector(Eigen::VectorXd values, std::vector<Index> perm)
    : values_(std::move(values)), perm_(std::move(perm)) {}

ProbVector ProbVector::FromUnsorted(Eigen::VectorXd values) {
  check_distribution(values);
  std::vector<Index> perm(static_cast<std::size_t>(values.size()));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Index a, Index b) { return values[a] > values[b]; });
  Eigen::VectorXd sorted(values.size());
  for (Index i = 0; i < values.size(); ++i) sorted[i] = values[perm[static_cast<std::size_t>(i)]];
  return ProbVector(std::move(sorted), std::move(perm));
}

ProbVector ProbVector::FromSorted(Eigen::VectorXd values) {
  check_distribution(values);
  for (Index i = 0; i + 1 < values.size(); ++i) {
    if (values[i] < values[i + 1]) {
      throw std::invalid_argument("ProbVector: values not descending");
    }
  }
  std::vector<Index> perm(static_cast<std::size_t>(values.size()));
  std::iota(perm.begin(), perm.end(), Index{0});
  return ProbVector(std::move(values), std::move(perm));
}

BinPartition arithmetic_bins(const ProbVector& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("arithmetic_bins: eps must be positive");
  const Eigen::VectorXd& v = p.values();
  const double threshold = eps / static_cast<double>(p.dim());
  BinPartition part;
  Index start = 0;
  while (start < p.dim()) {
    const Index k = extend_bin(v, start, v[start] - threshold);
    part.boundaries.push_back(k + 1);
    start = k + 1;
  }
  return part;
}

BinPartition geometric_bins(const ProbVector& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("geometric_bins: eps must be positive");
  const Eigen::VectorXd& v = p.values();
  BinPartition part;
  Index start = 0;
  while (start < p.dim()) {
    if (v[start] <= 0.0) {
      // The ratio test is undefined at zero; the zero tail is one bin.
      part.boundaries.push_back(p.dim());
      break;
    }
    const Index k = extend_bin(v, start, v[start] / (1.0 + eps));
    part.boundaries.push_back(k + 1);
    start = k + 1;
  }
  return part;
}

ProbVector apply_binning(const ProbVector& p, const BinPartition& part) {
  if (part.boundaries.empty() || part.boundaries.back() != p.dim()) {
    throw std::invalid_argument("apply_binning: partition does not cover the vector");
  }
  const Eigen::VectorXd& v = p.values();
  Eigen::VectorXd out(p.dim());
  for (Index i = 0; i < part.num_bins(); ++i) {
    const Index begin = part.bin_begin(i);
    const Index end = part.bin_end(i);
    const double avg = v.segment(begin, end - begin).sum() / static_cast<double>(end - begin);
    out.segment(begin, end - begin).setConstant(avg);
  }
  // Bin averages are nonincreasing across bins, so `out` stays descending;
  // keep the original permutation so entries still map back to input order.
  return ProbVector(std::move(out), p.permutation());
}

double binning_error(const ProbVector& p, const ProbVector& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("binning_error: dimension mismatch");
  return (p.values() - q.values()).cwiseAbs().sum();
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bin_weights(const ProbVector& p,
                                                        const BinPartition& part) {
  const Index bins = part.num_bins();
  Eigen::VectorXd flat(bins);
  Eigen::VectorXd sigma(bins);
  for (Index i = 0; i < bins; ++i) {
    flat[i] = static_cast<double>(part.bin_size(i)) / static_cast<double>(p.dim());
    sigma[i] = p.values().segment(part.bin_begin(i), part.bin_size(i)).sum();
  }
  return {std::move(flat), std::move(sigma)};
}

BinnedRate binned_rate(const Eigen::VectorXd& p_bins_flat, const Eigen::VectorXd& p_bins_sigma,
                       std::pair<double, double> priors) {
  if (p_bins_flat.size() != p_bins_sigma.size()) {
    throw std::invalid_argument("binned_rate: bin count mismatch");
  }
  if (std::abs(p_bins_flat.sum() - 1.0) > 1e-10 ||
      std::abs(p_bins_sigma.sum() - 1.0) > 1e-10) {
    throw std::invalid_argument("binned_rate: bin weights must each sum to 1");
  }
  const Eigen::VectorXd mix = priors.first * p_bins_flat + priors.second * p_bins_sigma;
  return {shannon_entropy<double>(mix), std::log2(static_cast<double>(p_bins_flat.size()))};
}

}  // namespace qbc
