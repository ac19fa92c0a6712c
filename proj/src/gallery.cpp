#include "qbc/gallery.hpp"

#include <cmath>

#include "qbc/ki_ops.hpp"

namespace qbc {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("gallery: epsilon must lie in (0, 1/2)");
  }
}

DensityMatrixXd flat_state(Index d) {
  return DensityMatrixXd::Diagonal(Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d)));
}

DensityMatrixXd scalar_one() {
  return DensityMatrixXd::Diagonal(Eigen::VectorXd::Ones(1));
}

}  // namespace

GalleryCase example1(double epsilon) {
  check_epsilon(epsilon);

  Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(4, 4);
  m1(0, 0) = m1(1, 1) = 2.0;
  m1(0, 1) = m1(1, 0) = 1.0 - 2.0 * epsilon;
  m1 /= 4.0;

  Eigen::MatrixXcd m2 = Eigen::MatrixXcd::Zero(4, 4);
  m2(0, 0) = m2(1, 1) = epsilon;
  m2(2, 2) = m2(3, 3) = 2.0 - epsilon;
  m2(2, 3) = m2(3, 2) = 1.0;
  m2 /= 4.0;

  Eigen::MatrixXcd omega(2, 2);
  omega << 2.0, 1.0, 1.0, 2.0;
  omega /= 4.0;
  const DensityMatrixXd omega_state{omega};

  Ensemble phi = Ensemble::Create((Eigen::VectorXd(2) << 0.5, 0.5).finished(),
                                  {DensityMatrixXd(m1), DensityMatrixXd(m2)},
                                  {"rho1", "rho2"});

  // Two one-dimensional classical labels sharing the same redundant omega.
  KIStructure approx = KIStructure::Create({{1, 2, omega_state}, {1, 2, omega_state}});
  // The exact ensemble carries no redundancy; one full block keeps K_off trivial.
  KIStructure exact = KIStructure::Create({{4, 1, scalar_one()}});

  GalleryCase c{std::move(phi), std::move(approx), std::move(exact), {}};
  c.expected["epsilon"] = epsilon;
  c.expected["error_rho1"] = epsilon;
  c.expected["error_rho2"] = epsilon / 2.0;
  c.expected["rate"] = binary_entropy((2.0 + epsilon) / 4.0);
  // Average-state block eigenvalues (3-e)/8, (1+3e)/8, (3-e)/8, (1-e)/8.
  const Eigen::Vector4d lam{(3.0 - epsilon) / 8.0, (1.0 + 3.0 * epsilon) / 8.0,
                            (3.0 - epsilon) / 8.0, (1.0 - epsilon) / 8.0};
  c.expected["rate_exact"] = shannon_entropy<double>(lam);
  return c;
}

GalleryCase example2(double epsilon, Index n, std::optional<DensityMatrixXd> omega_a,
                     std::optional<DensityMatrixXd> omega_b) {
  check_epsilon(epsilon);
  if (n < 2) throw std::invalid_argument("example2: N must be at least 2");
  const DensityMatrixXd wa = omega_a.value_or(flat_state(2));
  const DensityMatrixXd wb = omega_b.value_or(flat_state(2));
  const Index da = wa.dim();
  const Index db = wb.dim();
  const Index band = 2 * n;

  // sigma_1: cyclic nearest-neighbour couplings of strength epsilon.
  Eigen::MatrixXcd s1 = Eigen::MatrixXcd::Zero(band, band);
  for (Index i = 0; i < band; ++i) {
    s1(i, i) = 2.0;
    const Index next = (i + 1) % band;
    s1(i, next) += epsilon;
    s1(next, i) += epsilon;
  }
  s1 /= 4.0 * static_cast<double>(n);
  const DensityMatrixXd sigma1{s1};

  Eigen::VectorXd s2diag(band);
  s2diag.head(n).setConstant((1.0 + 2.0 * epsilon) / (4.0 * static_cast<double>(n)));
  s2diag.tail(n).setConstant((3.0 - 2.0 * epsilon) / (4.0 * static_cast<double>(n)));
  const DensityMatrixXd sigma2 = DensityMatrixXd::Diagonal(s2diag);

  const std::vector<HermitianMatrixXd> parts1{wa.hermitian(), sigma1.hermitian(),
                                              wb.hermitian()};
  const std::vector<HermitianMatrixXd> parts2{wa.hermitian(), sigma2.hermitian(),
                                              wb.hermitian()};
  const std::vector<double> w1{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> w2{1.0 / 6.0, 1.0 / 3.0, 1.0 / 2.0};
  DensityMatrixXd rho1{direct_sum<double>(parts1, w1)};
  DensityMatrixXd rho2{direct_sum<double>(parts2, w2)};

  Ensemble phi = Ensemble::Create((Eigen::VectorXd(2) << 0.5, 0.5).finished(),
                                  {std::move(rho1), std::move(rho2)}, {"rho1", "rho2"});

  // Redundant parts of the approximate ensemble:
  //   omega_a~ = (2/3)(omega_a (+) I/2N), omega_b~ = (2/3)(I/2N (+) omega_b).
  const std::vector<double> two_thirds_one_third{2.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> one_third_two_thirds{1.0 / 3.0, 2.0 / 3.0};
  const std::vector<HermitianMatrixXd> wa_parts{wa.hermitian(), flat_state(n).hermitian()};
  const std::vector<HermitianMatrixXd> wb_parts{flat_state(n).hermitian(), wb.hermitian()};
  DensityMatrixXd omega_a_tilde{direct_sum<double>(wa_parts, two_thirds_one_third)};
  DensityMatrixXd omega_b_tilde{direct_sum<double>(wb_parts, one_third_two_thirds)};

  KIStructure approx = KIStructure::Create(
      {{1, da + n, std::move(omega_a_tilde)}, {1, n + db, std::move(omega_b_tilde)}});
  KIStructure exact =
      KIStructure::Create({{1, da, wa}, {band, 1, scalar_one()}, {1, db, wb}});

  GalleryCase c{std::move(phi), std::move(approx), std::move(exact), {}};
  c.expected["epsilon"] = epsilon;
  c.expected["n"] = static_cast<double>(n);
  c.expected["error_rho2"] = 4.0 * epsilon / 9.0;
  // The paper bounds the first error by epsilon; record the exact trace norm.
  const std::vector<double> errs = local_error(c.approx_structure, c.ensemble);
  c.expected["error_rho1"] = errs[0];
  c.expected["rate_bound"] = 1.0;
  c.expected["rate_exact_lower"] =
      std::log2(2.0 * static_cast<double>(n)) / 3.0;
  return c;
}

}  // namespace qbc
