#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>

#include "qbc/ensemble.hpp"
#include "qbc/experiments.hpp"
#include "qbc/ki_ops.hpp"

// File formats shared repo-wide:
//   matrix     {"dim": n, "re": [[..]], "im": [[..]]}  or  {"diag": [..]}
//   ensemble   {"probs": [..], "states": [<matrix>..], "labels": [..]?}
//   structure  {"blocks": [{"dimQ":, "dimR":, "rhoR": <matrix>}..], "basis": <matrix>?}
//   report     {"errors": {label: err}, "rate":, "rate_exact":, "f":, "g":, "delta":}

namespace qbc::io {

using json = nlohmann::json;

json matrix_to_json(const HermitianMatrixXd& m);
HermitianMatrixXd matrix_from_json(const json& j);

json density_to_json(const DensityMatrixXd& rho);
DensityMatrixXd density_from_json(const json& j);

json ensemble_to_json(const Ensemble& phi);
Ensemble ensemble_from_json(const json& j);

json structure_to_json(const KIStructure& s);
KIStructure structure_from_json(const json& j);

json report_to_json(const ProtocolReport& report);

json fit_to_json(const FitResult& fit);

json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);

Eigen::VectorXd prob_vector_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace qbc::io
