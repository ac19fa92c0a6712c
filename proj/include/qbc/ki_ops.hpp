#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qbc/ensemble.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

enum class KrausDirection { Off, On };

/// Channel in Kraus form, sum_j A_j rho A_j^dagger. Completeness
/// sum A^dagger A = I is checked at construction within 1e-10.
class KrausChannel {
 public:
  static KrausChannel Create(std::vector<Eigen::MatrixXcd> operators, KrausDirection direction);

  const std::vector<Eigen::MatrixXcd>& operators() const { return ops_; }
  KrausDirection direction() const { return direction_; }
  Index input_dim() const { return in_dim_; }
  Index output_dim() const { return out_dim_; }

 private:
  std::vector<Eigen::MatrixXcd> ops_;
  KrausDirection direction_ = KrausDirection::Off;
  Index in_dim_ = 0;
  Index out_dim_ = 0;
};

/// Channel removing the redundant parts: partial trace over each H_R^(l),
/// mapping states of the block form to (+)_l q^(l) rho_Q^(l).
KrausChannel build_k_off(const KIStructure& structure);

/// Channel reattaching the redundant parts: tensors each block with rho_R^(l),
/// built from the eigendecomposition of rho_R (zero eigenvalues dropped).
KrausChannel build_k_on(const KIStructure& structure);

DensityMatrixXd apply_channel(const KrausChannel& ch, const DensityMatrixXd& rho);

/// || K_on(K_off(rho_x)) - rho_x ||_1 for each ensemble member.
std::vector<double> local_error(const KIStructure& structure, const Ensemble& phi);

/// Compression rate S(sum_x p_x K_off(rho_x)) in bits.
double rate(const KIStructure& structure, const Ensemble& phi);

using ChannelFn = std::function<DensityMatrixXd(const DensityMatrixXd&)>;

/// Wraps Kraus channels (or their composition) as a plain state map.
ChannelFn as_channel_fn(const KrausChannel& ch);
ChannelFn compose(const KrausChannel& outer, const KrausChannel& inner);

/// f(Lambda) = 1 - sum_x p_x F(rho_x, Lambda(rho_x)), evaluated single-letter.
double diagnostic_f(const ChannelFn& lambda, const Ensemble& phi);

struct GDiagnostic {
  double delta;
  double g;
};

/// g(Lambda) = h2(Delta) + Delta log2(d_A - 1) with
/// Delta = 1 - sum_i lambda_i(rho) <i|Lambda(|i><i|)|i> over the average
/// state's eigenbasis (descending eigenvalues, ties by index). d_A = 1 gives 0.
GDiagnostic diagnostic_g(const ChannelFn& lambda, const Ensemble& phi);

struct ProtocolReport {
  std::vector<std::string> labels;
  std::vector<double> errors;   // per-label local errors
  double max_error = 0.0;
  double rate = 0.0;            // with the approximate structure
  std::optional<double> rate_exact;  // with the exact structure, when supplied
  double f = 0.0;
  double g = 0.0;
  double delta = 0.0;
};

/// Full single-letter diagnostics of the finite-approximation protocol for an
/// ensemble and an approximate structure.
ProtocolReport protocol_report(const KIStructure& approx, const Ensemble& phi,
                               const std::optional<KIStructure>& exact = std::nullopt);

}  // namespace qbc
