#include "qbc/ki_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbc {

namespace {

constexpr double kCompletenessTol = 1e-10;

}  // namespace

KrausChannel KrausChannel::Create(std::vector<Eigen::MatrixXcd> operators,
                                  KrausDirection direction) {
  if (operators.empty()) throw std::invalid_argument("KrausChannel: no operators");
  const Index in = operators.front().cols();
  const Index out = operators.front().rows();
  for (const auto& a : operators) {
    if (a.cols() != in || a.rows() != out) {
      throw std::invalid_argument("KrausChannel: operator shape mismatch");
    }
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(in, in);
  for (const auto& a : operators) acc += a.adjoint() * a;
  const double dev = (acc - Eigen::MatrixXcd::Identity(in, in)).cwiseAbs().maxCoeff();
  if (dev > kCompletenessTol) {
    std::ostringstream os;
    os << "KrausChannel: completeness violated by " << dev;
    throw std::invalid_argument(os.str());
  }
  KrausChannel ch;
  ch.ops_ = std::move(operators);
  ch.direction_ = direction;
  ch.in_dim_ = in;
  ch.out_dim_ = out;
  return ch;
}

KrausChannel build_k_off(const KIStructure& structure) {
  const Index full = structure.total_dim();
  const Index off = structure.off_dim();
  std::vector<Eigen::MatrixXcd> ops;
  for (Index l = 0; l < structure.num_blocks(); ++l) {
    const auto& blk = structure.blocks()[static_cast<std::size_t>(l)];
    const Index in_off = structure.block_offset(l);
    const Index out_off = structure.q_offset(l);
    for (Index j = 0; j < blk.dim_r; ++j) {
      // I_Q (x) <j| on block l, embedded in the full spaces.
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(off, full);
      for (Index q = 0; q < blk.dim_q; ++q) {
        a(out_off + q, in_off + q * blk.dim_r + j) = 1.0;
      }
      ops.push_back(std::move(a));
    }
  }
  if (structure.basis()) {
    for (auto& a : ops) a = (a * (*structure.basis())).eval();
  }
  return KrausChannel::Create(std::move(ops), KrausDirection::Off);
}

KrausChannel build_k_on(const KIStructure& structure) {
  const Index full = structure.total_dim();
  const Index off = structure.off_dim();
  std::vector<Eigen::MatrixXcd> ops;
  for (Index l = 0; l < structure.num_blocks(); ++l) {
    const auto& blk = structure.blocks()[static_cast<std::size_t>(l)];
    const Index in_off = structure.block_offset(l);
    const Index out_off = structure.q_offset(l);
    const Spectrum<double> spec = eig_hermitian(blk.rho_r.hermitian());
    for (Index k = 0; k < blk.dim_r; ++k) {
      double r = spec.eigenvalues[k];
      if (r < 0.0) r = 0.0;  // clamped rounding noise
      if (r == 0.0) continue;
      // I_Q (x) sqrt(r_k) |k> on block l.
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(full, off);
      const double root = std::sqrt(r);
      for (Index q = 0; q < blk.dim_q; ++q) {
        for (Index rr = 0; rr < blk.dim_r; ++rr) {
          a(in_off + q * blk.dim_r + rr, out_off + q) = root * spec.eigenvectors(rr, k);
        }
      }
      ops.push_back(std::move(a));
    }
  }
  if (structure.basis()) {
    for (auto& a : ops) a = (structure.basis()->adjoint() * a).eval();
  }
  return KrausChannel::Create(std::move(ops), KrausDirection::On);
}

DensityMatrixXd apply_channel(const KrausChannel& ch, const DensityMatrixXd& rho) {
  if (rho.dim() != ch.input_dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(ch.output_dim(), ch.output_dim());
  for (const auto& a : ch.operators()) {
    acc += a * rho.matrix() * a.adjoint();
  }
  acc = ((acc + acc.adjoint()) / 2.0).eval();
  return DensityMatrixXd(std::move(acc));
}

std::vector<double> local_error(const KIStructure& structure, const Ensemble& phi) {
  if (structure.total_dim() != phi.dim()) {
    throw std::invalid_argument("local_error: structure/ensemble dimension mismatch");
  }
  const KrausChannel off = build_k_off(structure);
  const KrausChannel on = build_k_on(structure);
  std::vector<double> errors;
  errors.reserve(phi.states.size());
  for (const auto& rho : phi.states) {
    const DensityMatrixXd round_trip = apply_channel(on, apply_channel(off, rho));
    errors.push_back(trace_norm(round_trip.hermitian() - rho.hermitian()));
  }
  return errors;
}

double rate(const KIStructure& structure, const Ensemble& phi) {
  if (structure.total_dim() != phi.dim()) {
    throw std::invalid_argument("rate: structure/ensemble dimension mismatch");
  }
  const KrausChannel off = build_k_off(structure);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(off.output_dim(), off.output_dim());
  for (Index a = 0; a < phi.size(); ++a) {
    acc += phi.probs[a] *
           apply_channel(off, phi.states[static_cast<std::size_t>(a)]).matrix();
  }
  acc = ((acc + acc.adjoint()) / 2.0).eval();
  return von_neumann_entropy(DensityMatrixXd(std::move(acc)));
}

ChannelFn as_channel_fn(const KrausChannel& ch) {
  return [ch](const DensityMatrixXd& rho) { return apply_channel(ch, rho); };
}

ChannelFn compose(const KrausChannel& outer, const KrausChannel& inner) {
  return [outer, inner](const DensityMatrixXd& rho) {
    return apply_channel(outer, apply_channel(inner, rho));
  };
}

double diagnostic_f(const ChannelFn& lambda, const Ensemble& phi) {
  double acc = 0.0;
  for (Index a = 0; a < phi.size(); ++a) {
    const auto& rho = phi.states[static_cast<std::size_t>(a)];
    acc += phi.probs[a] * fidelity(rho, lambda(rho));
  }
  return 1.0 - acc;
}

GDiagnostic diagnostic_g(const ChannelFn& lambda, const Ensemble& phi) {
  const Index d = phi.dim();
  if (d <= 1) return {0.0, 0.0};
  const Spectrum<double> spec = eig_hermitian(average_state(phi).hermitian());
  double overlap = 0.0;
  for (Index i = 0; i < d; ++i) {
    if (spec.eigenvalues[i] <= 0.0) continue;
    const Eigen::VectorXcd v = spec.eigenvectors.col(i);
    const DensityMatrixXd basis_state = DensityMatrixXd::Pure(v);
    const Eigen::VectorXcd mapped = lambda(basis_state).matrix() * v;
    overlap += spec.eigenvalues[i] * v.dot(mapped).real();
  }
  double delta = 1.0 - overlap;
  if (delta < 0.0 && delta > -1e-12) delta = 0.0;
  const double g = binary_entropy(delta) +
                   (d > 2 ? delta * std::log2(static_cast<double>(d - 1)) : 0.0);
  return {delta, g};
}

ProtocolReport protocol_report(const KIStructure& approx, const Ensemble& phi,
                               const std::optional<KIStructure>& exact) {
  ProtocolReport report;
  report.labels = phi.labels;
  report.errors = local_error(approx, phi);
  report.max_error = *std::max_element(report.errors.begin(), report.errors.end());
  report.rate = rate(approx, phi);
  if (exact) {
    report.rate_exact = rate(*exact, phi);
  }
  const KrausChannel off = build_k_off(approx);
  const KrausChannel on = build_k_on(approx);
  const ChannelFn round_trip = compose(on, off);
  report.f = diagnostic_f(round_trip, phi);
  const GDiagnostic gd = diagnostic_g(round_trip, phi);
  report.delta = gd.delta;
  report.g = gd.g;
  return report;
}

}  // namespace qbc
