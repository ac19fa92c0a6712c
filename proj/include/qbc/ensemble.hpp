#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbc/linalg.hpp"
#include "qbc/rng.hpp"

namespace qbc {

/// Labeled probability/state pairs on a common space.
struct Ensemble {
  std::vector<std::string> labels;
  Eigen::VectorXd probs;
  std::vector<DensityMatrixXd> states;

  static Ensemble Create(Eigen::VectorXd probs, std::vector<DensityMatrixXd> states,
                         std::vector<std::string> labels = {});

  Index size() const { return probs.size(); }
  Index dim() const { return states.empty() ? 0 : states.front().dim(); }
};

/// One factor H_Q (x) H_R of a block decomposition, with its shared redundant
/// state rho_R.
struct KIBlock {
  Index dim_q;
  Index dim_r;
  DensityMatrixXd rho_r;
};

/// Block decomposition H = (+)_l H_Q^(l) (x) H_R^(l), each block carrying the
/// label-independent redundant state. An optional unitary maps states into the
/// block layout (block_form = basis * rho * basis^dagger); by default blocks
/// live in the computational basis in listed order.
class KIStructure {
 public:
  static KIStructure Create(std::vector<KIBlock> blocks,
                            std::optional<Eigen::MatrixXcd> basis = std::nullopt);

  const std::vector<KIBlock>& blocks() const { return blocks_; }
  const std::optional<Eigen::MatrixXcd>& basis() const { return basis_; }

  Index num_blocks() const { return static_cast<Index>(blocks_.size()); }
  Index total_dim() const { return total_dim_; }
  /// Dimension after the redundant parts are removed: sum of dim_q.
  Index off_dim() const { return off_dim_; }
  /// Offset of block l in the full space / in the stripped space.
  Index block_offset(Index l) const { return offsets_[static_cast<std::size_t>(l)]; }
  Index q_offset(Index l) const { return q_offsets_[static_cast<std::size_t>(l)]; }

 private:
  std::vector<KIBlock> blocks_;
  std::optional<Eigen::MatrixXcd> basis_;
  std::vector<Index> offsets_;
  std::vector<Index> q_offsets_;
  Index total_dim_ = 0;
  Index off_dim_ = 0;
};

/// Per-state block data: weights q^(l) and non-redundant parts rho_Q^(l).
struct BlockState {
  Eigen::VectorXd weights;
  std::vector<DensityMatrixXd> q_states;

  static BlockState Create(Eigen::VectorXd weights, std::vector<DensityMatrixXd> q_states);
};

/// States simultaneously diagonal in one shared basis, kept as distributions.
struct ClassicalEnsemble {
  Eigen::VectorXd probs;
  std::vector<Eigen::VectorXd> distributions;

  static ClassicalEnsemble Create(Eigen::VectorXd probs,
                                  std::vector<Eigen::VectorXd> distributions);
  Ensemble to_ensemble() const;
};

DensityMatrixXd average_state(const Ensemble& phi);

/// I(Phi) = S(sum p_a rho_a) - sum p_a S(rho_a), in bits.
double holevo_information(const Ensemble& phi);

/// basis^dagger ( (+)_l q_l rho_Q^(l) (x) rho_R^(l) ) basis.
DensityMatrixXd assemble(const KIStructure& structure, const BlockState& bs);

/// Completely dephasing channel in the computational basis.
DensityMatrixXd dephase(const DensityMatrixXd& rho);

struct IrreducibilityResult {
  bool irreducible;
  int commutant_dim;
};

/// Complex dimension of {X : X (q_a rho_a) = (q_a rho_a) X for all a} on one
/// block; irreducible iff the commutant is trivial (dimension 1).
IrreducibilityResult check_irreducibility(
    const std::vector<std::pair<double, DensityMatrixXd>>& weighted_states);

enum class EquivalenceKind { Inequivalent, Equivalent, Inconclusive };

struct EquivalenceVerdict {
  EquivalenceKind kind;
  double alpha = 0.0;  // scaling factor when Equivalent
};

/// Tests whether blocks l and lp of a structure can be related by an isometry
/// V with V q^(a,l) rho_Q^(a,l) = alpha q^(a,lp) rho_Q^(a,lp) V for all states.
/// `bs_list` holds the per-state block data. Returns Inconclusive when the
/// intertwiner space is nontrivial but no unitary representative is found.
EquivalenceVerdict check_block_equivalence(const KIStructure& structure,
                                           const std::vector<BlockState>& bs_list, Index l,
                                           Index lp);

/// d uniform draws on [0,1) normalized by their sum (redrawn on an all-zero
/// draw). Returns an unsorted probability vector.
Eigen::VectorXd random_diagonal_state(Index d, Rng& rng);

}  // namespace qbc
