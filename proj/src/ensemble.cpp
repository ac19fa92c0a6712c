#include "qbc/ensemble.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbc {

namespace {

constexpr double kProbSumTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
// Rank tolerance of the vectorized commutant/intertwiner solves, relative to
// the largest pivot.
constexpr double kRankTol = 1e-9;

void check_probability_vector(const Eigen::VectorXd& p, double sum_tol, const char* what) {
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || p[i] > 1.0 + 1e-15) {
      std::ostringstream os;
      os << what << ": probability " << p[i] << " outside [0,1]";
      throw std::invalid_argument(os.str());
    }
  }
  if (std::abs(p.sum() - 1.0) > sum_tol) {
    std::ostringstream os;
    os << what << ": probabilities sum to " << p.sum();
    throw std::invalid_argument(os.str());
  }
}

// Real-imaginary split of a complex homogeneous system K z = 0: the real
// unknown vector is (Re z, Im z).
Eigen::MatrixXd realify(const Eigen::MatrixXcd& k) {
  const Index r = k.rows();
  const Index c = k.cols();
  Eigen::MatrixXd out(2 * r, 2 * c);
  out.block(0, 0, r, c) = k.real();
  out.block(0, c, r, c) = -k.imag();
  out.block(r, 0, r, c) = k.imag();
  out.block(r, c, r, c) = k.real();
  return out;
}

// Column-major vectorization: rows of the coefficient matrix are equations
// for vec(X) under X A - A X = 0, i.e. (A^T (x) I - I (x) A) vec(X) = 0.
Eigen::MatrixXcd commutator_rows(const Eigen::MatrixXcd& a) {
  const Index m = a.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
  Eigen::MatrixXcd k(m * m, m * m);
  k = Eigen::kroneckerProduct(a.transpose(), id) - Eigen::kroneckerProduct(id, a);
  return k;
}

// Rows for V A - alpha B V = 0 with V an (mB x mA) unknown:
// (A^T (x) I_mB - alpha I_mA (x) B) vec(V) = 0.
Eigen::MatrixXcd intertwiner_rows(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                  double alpha) {
  const Index ma = a.rows();
  const Index mb = b.rows();
  return Eigen::MatrixXcd(
      Eigen::kroneckerProduct(a.transpose(), Eigen::MatrixXcd::Identity(mb, mb)) -
      alpha * Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(ma, ma), b));
}

}  // namespace

Ensemble Ensemble::Create(Eigen::VectorXd probs, std::vector<DensityMatrixXd> states,
                          std::vector<std::string> labels) {
  if (static_cast<std::size_t>(probs.size()) != states.size()) {
    throw std::invalid_argument("Ensemble: probability/state count mismatch");
  }
  if (states.empty()) throw std::invalid_argument("Ensemble: empty");
  check_probability_vector(probs, kProbSumTol, "Ensemble");
  const Index d = states.front().dim();
  for (const auto& s : states) {
    if (s.dim() != d) throw std::invalid_argument("Ensemble: states on different spaces");
  }
  if (labels.empty()) {
    labels.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) labels[i] = std::to_string(i);
  } else if (labels.size() != states.size()) {
    throw std::invalid_argument("Ensemble: label count mismatch");
  }
  Ensemble phi;
  phi.labels = std::move(labels);
  phi.probs = std::move(probs);
  phi.states = std::move(states);
  return phi;
}

KIStructure KIStructure::Create(std::vector<KIBlock> blocks,
                                std::optional<Eigen::MatrixXcd> basis) {
  if (blocks.empty()) throw std::invalid_argument("KIStructure: no blocks");
  KIStructure s;
  for (const auto& b : blocks) {
    if (b.dim_q < 1 || b.dim_r < 1) {
      throw std::invalid_argument("KIStructure: block dimensions must be positive");
    }
    if (b.rho_r.dim() != b.dim_r) {
      throw std::invalid_argument("KIStructure: rho_R dimension mismatch");
    }
    s.offsets_.push_back(s.total_dim_);
    s.q_offsets_.push_back(s.off_dim_);
    s.total_dim_ += b.dim_q * b.dim_r;
    s.off_dim_ += b.dim_q;
  }
  if (basis) {
    if (basis->rows() != s.total_dim_ || basis->cols() != s.total_dim_) {
      throw std::invalid_argument("KIStructure: basis dimension mismatch");
    }
    const double dev = (basis->adjoint() * (*basis) -
                        Eigen::MatrixXcd::Identity(s.total_dim_, s.total_dim_))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > kUnitaryTol) {
      std::ostringstream os;
      os << "KIStructure: basis not unitary (deviation " << dev << ")";
      throw std::invalid_argument(os.str());
    }
  }
  s.blocks_ = std::move(blocks);
  s.basis_ = std::move(basis);
  return s;
}

BlockState BlockState::Create(Eigen::VectorXd weights, std::vector<DensityMatrixXd> q_states) {
  if (static_cast<std::size_t>(weights.size()) != q_states.size()) {
    throw std::invalid_argument("BlockState: weight/state count mismatch");
  }
  check_probability_vector(weights, kProbSumTol, "BlockState");
  BlockState bs;
  bs.weights = std::move(weights);
  bs.q_states = std::move(q_states);
  return bs;
}

ClassicalEnsemble ClassicalEnsemble::Create(Eigen::VectorXd probs,
                                            std::vector<Eigen::VectorXd> distributions) {
  if (static_cast<std::size_t>(probs.size()) != distributions.size() || distributions.empty()) {
    throw std::invalid_argument("ClassicalEnsemble: shape mismatch");
  }
  check_probability_vector(probs, kProbSumTol, "ClassicalEnsemble");
  const Index d = distributions.front().size();
  for (const auto& q : distributions) {
    if (q.size() != d) throw std::invalid_argument("ClassicalEnsemble: dimension mismatch");
    if (std::abs(q.sum() - 1.0) > 1e-12) {
      throw std::invalid_argument("ClassicalEnsemble: distribution does not sum to 1");
    }
  }
  ClassicalEnsemble ce;
  ce.probs = std::move(probs);
  ce.distributions = std::move(distributions);
  return ce;
}

Ensemble ClassicalEnsemble::to_ensemble() const {
  std::vector<DensityMatrixXd> states;
  states.reserve(distributions.size());
  for (const auto& q : distributions) states.push_back(DensityMatrixXd::Diagonal(q));
  return Ensemble::Create(probs, std::move(states));
}

DensityMatrixXd average_state(const Ensemble& phi) {
  bool diag = true;
  for (const auto& s : phi.states) diag = diag && s.is_diagonal();
  if (diag) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(phi.dim());
    for (Index a = 0; a < phi.size(); ++a) {
      d += phi.probs[a] * phi.states[static_cast<std::size_t>(a)].diagonal();
    }
    return DensityMatrixXd::Diagonal(std::move(d));
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(phi.dim(), phi.dim());
  for (Index a = 0; a < phi.size(); ++a) {
    acc += phi.probs[a] * phi.states[static_cast<std::size_t>(a)].matrix();
  }
  return DensityMatrixXd(std::move(acc));
}

double holevo_information(const Ensemble& phi) {
  double avg_entropy = 0.0;
  for (Index a = 0; a < phi.size(); ++a) {
    avg_entropy += phi.probs[a] * von_neumann_entropy(phi.states[static_cast<std::size_t>(a)]);
  }
  return von_neumann_entropy(average_state(phi)) - avg_entropy;
}

DensityMatrixXd assemble(const KIStructure& structure, const BlockState& bs) {
  const auto& blocks = structure.blocks();
  if (bs.q_states.size() != blocks.size()) {
    throw std::invalid_argument("assemble: block count mismatch");
  }
  std::vector<HermitianMatrixXd> parts;
  std::vector<double> weights;
  parts.reserve(blocks.size());
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (bs.q_states[l].dim() != blocks[l].dim_q) {
      throw std::invalid_argument("assemble: rho_Q dimension mismatch");
    }
    parts.push_back(tensor(bs.q_states[l].hermitian(), blocks[l].rho_r.hermitian()));
    weights.push_back(bs.weights[static_cast<Index>(l)]);
  }
  HermitianMatrixXd block_form = direct_sum<double>(parts, weights);
  if (!structure.basis()) {
    return DensityMatrixXd(std::move(block_form));
  }
  const Eigen::MatrixXcd& gamma = *structure.basis();
  return DensityMatrixXd(Eigen::MatrixXcd(gamma.adjoint() * block_form.matrix() * gamma));
}

DensityMatrixXd dephase(const DensityMatrixXd& rho) {
  return DensityMatrixXd::Diagonal(rho.diagonal());
}

IrreducibilityResult check_irreducibility(
    const std::vector<std::pair<double, DensityMatrixXd>>& weighted_states) {
  if (weighted_states.empty()) {
    throw std::invalid_argument("check_irreducibility: empty state list");
  }
  const Index m = weighted_states.front().second.dim();
  for (const auto& [q, s] : weighted_states) {
    if (s.dim() != m) throw std::invalid_argument("check_irreducibility: dimension mismatch");
  }
  Eigen::MatrixXcd k(static_cast<Index>(weighted_states.size()) * m * m, m * m);
  Index row = 0;
  for (const auto& [q, s] : weighted_states) {
    k.middleRows(row, m * m) = commutator_rows(q * s.matrix());
    row += m * m;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(realify(k));
  lu.setThreshold(kRankTol);
  const Index real_nullity = 2 * m * m - lu.rank();
  const int dim = static_cast<int>(real_nullity / 2);
  return IrreducibilityResult{dim == 1, dim};
}

EquivalenceVerdict check_block_equivalence(const KIStructure& structure,
                                           const std::vector<BlockState>& bs_list, Index l,
                                           Index lp) {
  if (l == lp) throw std::invalid_argument("check_block_equivalence: l == l'");
  const auto& blocks = structure.blocks();
  const Index ml = blocks[static_cast<std::size_t>(l)].dim_q;
  const Index mlp = blocks[static_cast<std::size_t>(lp)].dim_q;
  if (ml != mlp) return {EquivalenceKind::Inequivalent};

  // Trace consistency fixes alpha: q^(a,l) = alpha q^(a,l') for every label.
  bool have_alpha = false;
  double alpha = 1.0;
  for (const auto& bs : bs_list) {
    const double ql = bs.weights[l];
    const double qlp = bs.weights[lp];
    if (ql == 0.0 && qlp == 0.0) continue;
    if (ql == 0.0 || qlp == 0.0) return {EquivalenceKind::Inequivalent};
    const double ratio = ql / qlp;
    if (!have_alpha) {
      alpha = ratio;
      have_alpha = true;
    } else if (std::abs(ratio - alpha) > 1e-9 * std::max(1.0, std::abs(alpha))) {
      return {EquivalenceKind::Inequivalent};
    }
  }
  if (!have_alpha) return {EquivalenceKind::Inconclusive};

  Eigen::MatrixXcd k(static_cast<Index>(bs_list.size()) * ml * ml, ml * ml);
  Index row = 0;
  for (const auto& bs : bs_list) {
    const Eigen::MatrixXcd a = bs.weights[l] * bs.q_states[static_cast<std::size_t>(l)].matrix();
    const Eigen::MatrixXcd b =
        bs.weights[lp] * bs.q_states[static_cast<std::size_t>(lp)].matrix();
    k.middleRows(row, ml * ml) = intertwiner_rows(a, b, alpha);
    row += ml * ml;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(realify(k));
  lu.setThreshold(kRankTol);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (lu.rank() == 2 * ml * ml) return {EquivalenceKind::Inequivalent};

  // Representative from the kernel; a deterministic combination is enough at
  // these dimensions.
  Eigen::VectorXd combo = Eigen::VectorXd::Zero(kernel.rows());
  for (Index c = 0; c < kernel.cols(); ++c) {
    combo += std::cos(1.0 + static_cast<double>(c)) * kernel.col(c);
  }
  Eigen::MatrixXcd v(ml, ml);
  for (Index j = 0; j < ml; ++j) {
    for (Index i = 0; i < ml; ++i) {
      v(i, j) = std::complex<double>(combo[j * ml + i], combo[ml * ml + j * ml + i]);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> inv_check(v);
  inv_check.setThreshold(kRankTol);
  if (inv_check.rank() < ml) return {EquivalenceKind::Inconclusive};

  // Polar test: keep the unitary factor and verify it still intertwines.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd u = svd.matrixU() * svd.matrixV().adjoint();
  for (const auto& bs : bs_list) {
    const Eigen::MatrixXcd a = bs.weights[l] * bs.q_states[static_cast<std::size_t>(l)].matrix();
    const Eigen::MatrixXcd b =
        bs.weights[lp] * bs.q_states[static_cast<std::size_t>(lp)].matrix();
    if ((u * a - alpha * b * u).cwiseAbs().maxCoeff() > 1e-8) {
      return {EquivalenceKind::Inconclusive};
    }
  }
  return {EquivalenceKind::Equivalent, alpha};
}

Eigen::VectorXd random_diagonal_state(Index d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("random_diagonal_state: d must be positive");
  Eigen::VectorXd v(d);
  double sum = 0.0;
  do {
    for (Index i = 0; i < d; ++i) {
      v[i] = uniform01(rng);
    }
    sum = v.sum();
  } while (sum == 0.0);
  return v / sum;
}

}  // namespace qbc
