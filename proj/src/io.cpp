#include "qbc/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace qbc::io {

json matrix_to_json(const HermitianMatrixXd& m) {
  if (m.is_diagonal()) {
    const Eigen::VectorXd d = m.diagonal();
    return json{{"diag", std::vector<double>(d.begin(), d.end())}};
  }
  const Index n = m.dim();
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < n; ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Index j = 0; j < n; ++j) {
      re_row.push_back(m.matrix()(i, j).real());
      im_row.push_back(m.matrix()(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrixXd matrix_from_json(const json& j) {
  if (j.contains("diag")) {
    const auto vals = j.at("diag").get<std::vector<double>>();
    Eigen::VectorXd d(static_cast<Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) d[static_cast<Index>(i)] = vals[i];
    return HermitianMatrixXd::Diagonal(std::move(d));
  }
  const Index n = j.at("dim").get<Index>();
  const auto& re = j.at("re");
  Eigen::MatrixXcd m(n, n);
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      const double real = re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k));
      const double imag =
          has_im ? j.at("im").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k))
                       .get<double>()
                 : 0.0;
      m(i, k) = std::complex<double>(real, imag);
    }
  }
  return HermitianMatrixXd(std::move(m));
}

json density_to_json(const DensityMatrixXd& rho) { return matrix_to_json(rho.hermitian()); }

DensityMatrixXd density_from_json(const json& j) {
  return DensityMatrixXd(matrix_from_json(j));
}

json ensemble_to_json(const Ensemble& phi) {
  json states = json::array();
  for (const auto& s : phi.states) states.push_back(density_to_json(s));
  return json{{"probs", std::vector<double>(phi.probs.begin(), phi.probs.end())},
              {"states", std::move(states)},
              {"labels", phi.labels}};
}

Ensemble ensemble_from_json(const json& j) {
  const auto probs = j.at("probs").get<std::vector<double>>();
  Eigen::VectorXd p(static_cast<Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) p[static_cast<Index>(i)] = probs[i];
  std::vector<DensityMatrixXd> states;
  for (const auto& js : j.at("states")) states.push_back(density_from_json(js));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Ensemble::Create(std::move(p), std::move(states), std::move(labels));
}

json structure_to_json(const KIStructure& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks()) {
    blocks.push_back(
        json{{"dimQ", b.dim_q}, {"dimR", b.dim_r}, {"rhoR", density_to_json(b.rho_r)}});
  }
  json out{{"blocks", std::move(blocks)}};
  if (s.basis()) {
    const Eigen::MatrixXcd& g = *s.basis();
    json re = json::array();
    json im = json::array();
    for (Index i = 0; i < g.rows(); ++i) {
      json re_row = json::array();
      json im_row = json::array();
      for (Index k = 0; k < g.cols(); ++k) {
        re_row.push_back(g(i, k).real());
        im_row.push_back(g(i, k).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    out["basis"] = json{{"dim", g.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
  }
  return out;
}

KIStructure structure_from_json(const json& j) {
  std::vector<KIBlock> blocks;
  for (const auto& jb : j.at("blocks")) {
    blocks.push_back(KIBlock{jb.at("dimQ").get<Index>(), jb.at("dimR").get<Index>(),
                             density_from_json(jb.at("rhoR"))});
  }
  std::optional<Eigen::MatrixXcd> basis;
  if (j.contains("basis") && !j.at("basis").is_null()) {
    const auto& jb = j.at("basis");
    const Index n = jb.at("dim").get<Index>();
    Eigen::MatrixXcd g(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < n; ++k) {
        g(i, k) = std::complex<double>(
            jb.at("re").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)),
            jb.at("im").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)));
      }
    }
    basis = std::move(g);
  }
  return KIStructure::Create(std::move(blocks), std::move(basis));
}

json report_to_json(const ProtocolReport& report) {
  json errors = json::object();
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    errors[report.labels[i]] = report.errors[i];
  }
  json out{{"errors", std::move(errors)}, {"rate", report.rate},
           {"rate_exact", nullptr},       {"f", report.f},
           {"g", report.g},               {"delta", report.delta},
           {"fidelity_convention", "squared"}};
  if (report.rate_exact) out["rate_exact"] = *report.rate_exact;
  return out;
}

json fit_to_json(const FitResult& fit) {
  json out{{"model", fit.model}, {"a", fit.a}, {"b", fit.b}, {"rss", fit.rss}, {"n", fit.n}};
  if (fit.b_unidentifiable) out["b_unidentifiable"] = true;
  return out;
}

json config_to_json(const ExperimentConfig& cfg) {
  json out{{"dims", cfg.dims},
           {"samples", cfg.samples},
           {"seed", cfg.master_seed},
           {"priors", cfg.priors}};
  if (cfg.epsilon_inv_sqrt_dim) {
    out["epsilon_rule"] = "inv_sqrt_dim";
  } else {
    out["epsilons"] = cfg.epsilons;
  }
  switch (cfg.rate_kind) {
    case RateKind::Entropy: out["rate_kind"] = "entropy"; break;
    case RateKind::Log2L: out["rate_kind"] = "log2L"; break;
    case RateKind::Both: out["rate_kind"] = "both"; break;
  }
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.dims = j.at("dims").get<std::vector<int>>();
  if (j.contains("epsilon_rule")) {
    const auto rule = j.at("epsilon_rule").get<std::string>();
    if (rule != "inv_sqrt_dim") {
      throw std::invalid_argument("config: unknown epsilon_rule " + rule);
    }
    cfg.epsilon_inv_sqrt_dim = true;
  }
  if (j.contains("epsilons")) cfg.epsilons = j.at("epsilons").get<std::vector<double>>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("priors")) {
    const auto p = j.at("priors").get<std::vector<double>>();
    if (p.size() != 2) throw std::invalid_argument("config: priors must have two entries");
    cfg.priors = {p[0], p[1]};
  }
  if (j.contains("rate_kind")) {
    const auto kind = j.at("rate_kind").get<std::string>();
    if (kind == "entropy") cfg.rate_kind = RateKind::Entropy;
    else if (kind == "log2L") cfg.rate_kind = RateKind::Log2L;
    else if (kind == "both") cfg.rate_kind = RateKind::Both;
    else throw std::invalid_argument("config: unknown rate_kind " + kind);
  }
  cfg.validate();
  return cfg;
}

Eigen::VectorXd prob_vector_from_json(const json& j) {
  std::vector<double> vals;
  if (j.is_array()) {
    vals = j.get<std::vector<double>>();
  } else if (j.contains("probs")) {
    vals = j.at("probs").get<std::vector<double>>();
  } else if (j.contains("diag")) {
    vals = j.at("diag").get<std::vector<double>>();
  } else {
    throw std::invalid_argument("prob vector: expected an array or {\"probs\": [..]}");
  }
  Eigen::VectorXd v(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Index>(i)] = vals[i];
  return v;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace qbc::io
