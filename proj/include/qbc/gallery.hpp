#pragma once

#include <map>
#include <optional>
#include <string>

#include "qbc/ensemble.hpp"

namespace qbc {

/// A worked ensemble with its approximate and exact block structures plus the
/// reference values its tests pin down.
struct GalleryCase {
  Ensemble ensemble;
  KIStructure approx_structure;
  KIStructure exact_structure;
  std::map<std::string, double> expected;
};

/// Four-dimensional two-state ensemble whose approximation shares one
/// two-dimensional redundant part across both labels. Valid for
/// 0 < epsilon < 1/2.
GalleryCase example1(double epsilon);

/// 2N-dimensional middle band between two redundant flanks; the approximation
/// merges three classical parts into two large blocks. omega_a/omega_b default
/// to maximally mixed qubits. Valid for 0 < epsilon < 1/2 and N >= 2.
GalleryCase example2(double epsilon, Index n,
                     std::optional<DensityMatrixXd> omega_a = std::nullopt,
                     std::optional<DensityMatrixXd> omega_b = std::nullopt);

}  // namespace qbc
