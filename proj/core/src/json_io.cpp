#include "saddlepep/json_io.hpp"

#include <stdexcept>

namespace pep {

namespace {

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i];
  return v;
}

Json multipliers_to_json(const std::vector<MultiplierEntry>& entries) {
  Json a = Json::array();
  for (const MultiplierEntry& e : entries)
    a.push_back({{"c", static_cast<int>(e.c)},
                 {"i", e.i},
                 {"j", e.j},
                 {"v", e.value}});
  return a;
}

std::vector<MultiplierEntry> multipliers_from_json(const Json& j) {
  std::vector<MultiplierEntry> out;
  for (const Json& e : j)
    out.push_back({static_cast<ConstraintId>(e.at("c").get<int>()),
                   e.at("i").get<std::string>(), e.at("j").get<std::string>(),
                   e.at("v").get<double>()});
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected a non-empty JSON matrix");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw std::invalid_argument("ragged JSON matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c];
  }
  return m;
}

Json to_json(const SampleSet& set) {
  Json samples = Json::array();
  for (const SaddleSample& s : set.samples)
    samples.push_back({{"x", vector_to_json(s.x)},
                       {"y", vector_to_json(s.y)},
                       {"gx", vector_to_json(s.gx)},
                       {"gy", vector_to_json(s.gy)},
                       {"f", s.f}});
  return {{"d_x", set.d_x}, {"d_y", set.d_y}, {"samples", samples}};
}

SampleSet sample_set_from_json(const Json& j) {
  SampleSet set;
  set.d_x = j.at("d_x").get<int>();
  set.d_y = j.at("d_y").get<int>();
  for (const Json& s : j.at("samples")) {
    SaddleSample sample;
    sample.x = vector_from_json(s.at("x"));
    sample.y = vector_from_json(s.at("y"));
    sample.gx = vector_from_json(s.at("gx"));
    sample.gy = vector_from_json(s.at("gy"));
    sample.f = s.at("f").get<double>();
    set.samples.push_back(std::move(sample));
  }
  set.validate();
  return set;
}

Json to_json(const CheckReport& report) {
  Json v = Json::array();
  for (const Violation& viol : report.violations)
    v.push_back({{"i", viol.i},
                 {"j", viol.j},
                 {"constraint", viol.constraint},
                 {"slack", viol.slack}});
  return {{"ok", report.ok()}, {"violations", v}};
}

Json to_json(const ConstraintKernel& kernel) {
  return {{"id", to_string(kernel.id)},
          {"A", matrix_to_json(kernel.A)},
          {"B", matrix_to_json(kernel.B)}};
}

Json to_json(const KernelSet& ks) {
  Json kernels = Json::array();
  for (const ConstraintKernel& k : ks.kernels) kernels.push_back(to_json(k));
  Json sym = Json::array();
  for (ConstraintId c : ks.rule.symmetric) sym.push_back(to_string(c));
  Json zero = Json::array();
  for (ConstraintId c : ks.rule.zeroed) zero.push_back(to_string(c));
  return {{"kernels", kernels},
          {"symmetric_multipliers", sym},
          {"zeroed", zero}};
}

Json to_json(const Certificate& cert) {
  return {{"rho2", cert.rho2},
          {"lambda", multipliers_to_json(cert.lambda)},
          {"nu", multipliers_to_json(cert.nu)},
          {"Px", matrix_to_json(cert.Px)},
          {"Py", matrix_to_json(cert.Py)},
          {"residuals",
           {{"min_multiplier", cert.residuals.min_multiplier},
            {"min_psd_eigenvalue",
             {{"stage0_x", cert.residuals.min_eig_stage0_x},
              {"stage0_y", cert.residuals.min_eig_stage0_y},
              {"stage1_x", cert.residuals.min_eig_stage1_x},
              {"stage1_y", cert.residuals.min_eig_stage1_y}}},
            {"max_equality_residual", cert.residuals.max_equality_residual}}}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.rho2 = j.at("rho2").get<double>();
  cert.lambda = multipliers_from_json(j.at("lambda"));
  cert.nu = multipliers_from_json(j.at("nu"));
  cert.Px = matrix_from_json(j.at("Px"));
  cert.Py = matrix_from_json(j.at("Py"));
  if (j.contains("residuals")) {
    const Json& r = j.at("residuals");
    cert.residuals.min_multiplier = r.value("min_multiplier", 0.0);
    if (r.contains("min_psd_eigenvalue")) {
      const Json& e = r.at("min_psd_eigenvalue");
      cert.residuals.min_eig_stage0_x = e.value("stage0_x", 0.0);
      cert.residuals.min_eig_stage0_y = e.value("stage0_y", 0.0);
      cert.residuals.min_eig_stage1_x = e.value("stage1_x", 0.0);
      cert.residuals.min_eig_stage1_y = e.value("stage1_y", 0.0);
    }
    cert.residuals.max_equality_residual = r.value("max_equality_residual", 0.0);
  }
  return cert;
}

Json to_json(const RateResult& result) {
  Json j = {{"method", to_string(result.spec.method)},
            {"set", to_string(result.set_id)},
            {"kappa", result.kappa},
            {"eta", result.eta},
            {"rho", result.rho},
            {"certified", result.certificate.has_value()}};
  if (result.certificate) j["certificate"] = to_json(*result.certificate);
  return j;
}

Json problem_dump(const LyapSdp& sdp) {
  auto stage_json = [](const LyapStage& stage) {
    Json cons = Json::array();
    for (const LiftedConstraint& c : stage.constraints) {
      Json m = Json::array();
      for (Eigen::Index k = 0; k < c.m.size(); ++k) m.push_back(c.m[k]);
      cons.push_back({{"c", to_string(c.c)},
                      {"i", c.i},
                      {"j", c.j},
                      {"var", c.var},
                      {"A", matrix_to_json(c.A)},
                      {"B", matrix_to_json(c.B)},
                      {"m", m}});
    }
    return Json{{"n", stage.trace.n},
                {"n_f", stage.trace.n_f},
                {"n_vars", stage.n_vars},
                {"constraints", cons},
                {"anchor_x", matrix_to_json(stage.anchor_x)},
                {"anchor_y", matrix_to_json(stage.anchor_y)},
                {"state_x_cur", matrix_to_json(stage.state_x_cur)},
                {"state_y_cur", matrix_to_json(stage.state_y_cur)},
                {"state_x_prev", matrix_to_json(stage.state_x_prev)},
                {"state_y_prev", matrix_to_json(stage.state_y_prev)}};
  };
  return {{"method", to_string(sdp.spec.method)},
          {"eta", sdp.spec.eta},
          {"set", to_string(sdp.set_id)},
          {"kappa", sdp.kappa},
          {"rho2", sdp.rho2},
          {"p", sdp.p},
          {"stage0", stage_json(sdp.stage0)},
          {"stage1", stage_json(sdp.stage1)}};
}

Json to_json(const QuadraticGame& game) {
  return {{"P", matrix_to_json(game.P)},   {"Q", matrix_to_json(game.Q)},
          {"R", matrix_to_json(game.R)},   {"a", vector_to_json(game.a)},
          {"b", vector_to_json(game.b)},   {"mu", game.mu},
          {"L", game.L}};
}

QuadraticGame game_from_json(const Json& j) {
  QuadraticGame g;
  g.P = matrix_from_json(j.at("P"));
  g.Q = matrix_from_json(j.at("Q"));
  g.R = matrix_from_json(j.at("R"));
  g.a = vector_from_json(j.at("a"));
  g.b = vector_from_json(j.at("b"));
  g.mu = j.at("mu").get<double>();
  g.L = j.at("L").get<double>();
  return g;
}

Json to_json(const SoundnessReport& report) {
  return {{"skipped", report.skipped},
          {"ok", report.ok},
          {"max_excess", report.max_excess},
          {"max_ratio", report.max_ratio},
          {"certified_rho2", report.certified_rho2}};
}

}  // namespace pep
