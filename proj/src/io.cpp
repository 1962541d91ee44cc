#include "vortex/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vortex::io {

namespace {

json quad_to_json(const RadialQuadratures& q) {
  return {{"flux1", q.flux1}, {"flux2", q.flux2}, {"joint", q.joint},
          {"mass1", q.mass1}, {"mass2", q.mass2}};
}

RadialQuadratures quad_from_json(const json& j) {
  return {j.at("flux1"), j.at("flux2"), j.at("joint"), j.at("mass1"), j.at("mass2")};
}

}  // namespace

json radial_to_json(const RadialSolution& sol) {
  json j;
  j["schema"] = kSchemaRadial;
  j["params"] = {{"n1", sol.params.n1},
                 {"n2", sol.params.n2},
                 {"eps", sol.params.eps},
                 {"lambda", sol.params.lambda}};
  j["shoot"] = {{"a1", sol.shoot.a1}, {"a2", sol.shoot.a2}};
  j["outcome"] = {{"kind", outcome_kind_name(sol.outcome.kind)},
                  {"beta1", sol.outcome.beta1},
                  {"beta2", sol.outcome.beta2},
                  {"reason", sol.outcome.reason}};
  j["beta_slope"] = {sol.beta_slope.first, sol.beta_slope.second};
  j["beta_flux"] = {sol.beta_flux.first, sol.beta_flux.second};
  j["beta_agreement"] = sol.beta_agreement;
  j["certified"] = sol.certified;
  j["quad"] = quad_to_json(sol.quad);
  j["quad_tail"] = quad_to_json(sol.quad_tail);
  json samples = json::array();
  for (const auto& s : sol.samples)
    samples.push_back({s.t, s.u1, s.u2, s.m1, s.m2});
  j["samples"] = std::move(samples);
  return j;
}

RadialSolution radial_from_json(const json& j) {
  if (j.value("schema", "") != kSchemaRadial)
    throw std::invalid_argument("radial_from_json: unexpected schema");
  RadialSolution sol;
  sol.params = {j["params"].at("n1"), j["params"].at("n2"), j["params"].at("eps"),
                j["params"].at("lambda")};
  sol.shoot = {j["shoot"].at("a1"), j["shoot"].at("a2")};
  auto kind = outcome_kind_from_name(j["outcome"].at("kind"));
  if (!kind) throw std::invalid_argument("radial_from_json: unknown outcome kind");
  sol.outcome.kind = *kind;
  sol.outcome.beta1 = j["outcome"].at("beta1");
  sol.outcome.beta2 = j["outcome"].at("beta2");
  sol.outcome.reason = j["outcome"].at("reason");
  sol.beta_slope = {j["beta_slope"][0], j["beta_slope"][1]};
  sol.beta_flux = {j["beta_flux"][0], j["beta_flux"][1]};
  sol.beta_agreement = j["beta_agreement"];
  sol.certified = j["certified"];
  sol.quad = quad_from_json(j["quad"]);
  sol.quad_tail = quad_from_json(j["quad_tail"]);
  for (const auto& s : j["samples"])
    sol.samples.push_back({s[0], s[1], s[2], s[3], s[4]});
  return sol;
}

json report_to_json(const IdentityReport& r) {
  json j;
  j["schema"] = kSchemaReport;
  j["beta"] = {r.beta1, r.beta2};
  j["effective_n"] = {r.eff_n1, r.eff_n2};
  j["integrals"] = {{"flux1", r.flux1}, {"flux2", r.flux2}, {"mass1", r.mass1},
                    {"mass2", r.mass2}, {"joint", r.joint}};
  j["expected"] = {{"flux1", r.exp_flux1}, {"flux2", r.exp_flux2},
                   {"mass1", r.exp_mass1}, {"mass2", r.exp_mass2},
                   {"joint", r.exp_joint}};
  j["grad_corr"] = r.grad_corr;
  j["rel_err"] = {{"flux1", r.rel_err_flux1}, {"flux2", r.rel_err_flux2},
                  {"mass1", r.rel_err_mass1}, {"mass2", r.rel_err_mass2},
                  {"joint", r.rel_err_joint}};
  j["max_rel_err"] = r.max_rel_err();
  return j;
}

json planar_header_json(const PlanarSolution& sol, const std::string& payload_name) {
  json j;
  j["schema"] = kSchemaPlanar;
  json p1 = json::array(), p2 = json::array();
  for (const auto& p : sol.config.points1) p1.push_back({p[0], p[1]});
  for (const auto& p : sol.config.points2) p2.push_back({p[0], p[1]});
  j["config"] = {{"n1", sol.config.n1}, {"n2", sol.config.n2},
                 {"points1", p1},       {"points2", p2},
                 {"eps", sol.config.eps}};
  j["decay"] = {sol.decay.beta1, sol.decay.beta2};
  j["grid"] = {{"radius", sol.grid_radius}, {"side", sol.grid_side},
               {"tol", sol.grid_tol}};
  j["residual_norm"] = sol.residual_norm;
  j["newton_history"] = sol.newton_history;
  j["converged"] = sol.converged;
  j["payload"] = payload_name;
  return j;
}

void write_planar_payload(const PlanarSolution& sol, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.precision(17);
  f << "x,y,v1,v2\n";
  DiskGrid grid(sol.grid_radius, sol.grid_side);
  for (int k = 0; k < grid.num_nodes(); ++k) {
    auto [x, y] = grid.coord(k);
    f << x << ',' << y << ',' << sol.v1[k] << ',' << sol.v2[k] << '\n';
  }
}

PlanarSolution planar_from_files(const std::string& header_path) {
  json j = read_json(header_path);
  if (j.value("schema", "") != kSchemaPlanar)
    throw std::invalid_argument("planar_from_files: unexpected schema");
  PlanarSolution sol;
  sol.config.n1 = j["config"].at("n1");
  sol.config.n2 = j["config"].at("n2");
  for (const auto& p : j["config"].at("points1"))
    sol.config.points1.push_back({p[0], p[1]});
  for (const auto& p : j["config"].at("points2"))
    sol.config.points2.push_back({p[0], p[1]});
  sol.config.eps = j["config"].at("eps");
  sol.decay = {j["decay"][0], j["decay"][1]};
  sol.grid_radius = j["grid"].at("radius");
  sol.grid_side = j["grid"].at("side");
  sol.grid_tol = j["grid"].at("tol");
  sol.residual_norm = j["residual_norm"];
  sol.newton_history = j["newton_history"].get<std::vector<double>>();
  sol.converged = j["converged"];

  const auto payload =
      std::filesystem::path(header_path).parent_path() / j.at("payload").get<std::string>();
  std::ifstream f(payload);
  if (!f) throw std::invalid_argument("cannot read payload " + payload.string());
  std::string line;
  std::getline(f, line);  // header row
  DiskGrid grid(sol.grid_radius, sol.grid_side);
  sol.v1.resize(grid.num_nodes());
  sol.v2.resize(grid.num_nodes());
  int k = 0;
  while (std::getline(f, line)) {
    std::istringstream ss(line);
    std::string tok;
    double vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, tok, ',')) throw std::runtime_error("bad payload row");
      vals[c] = std::stod(tok);
    }
    if (k >= grid.num_nodes()) throw std::runtime_error("payload too long");
    sol.v1[k] = vals[2];
    sol.v2[k] = vals[3];
    ++k;
  }
  if (k != grid.num_nodes()) throw std::runtime_error("payload too short");
  return sol;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  return json::parse(f);
}

void write_atlas_csv(const std::vector<AtlasCell>& cells, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.precision(17);
  f << "a1,a2,outcome,beta1,beta2\n";
  for (const auto& c : cells)
    f << c.a1 << ',' << c.a2 << ',' << outcome_kind_name(c.outcome.kind) << ','
      << c.outcome.beta1 << ',' << c.outcome.beta2 << '\n';
}

std::vector<AtlasCell> read_atlas_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::vector<AtlasCell> cells;
  std::string line;
  std::getline(f, line);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok[5];
    for (int c = 0; c < 5; ++c)
      if (!std::getline(ss, tok[c], ',')) throw std::runtime_error("bad atlas row");
    AtlasCell c;
    c.a1 = std::stod(tok[0]);
    c.a2 = std::stod(tok[1]);
    auto kind = outcome_kind_from_name(tok[2]);
    if (!kind) throw std::runtime_error("bad outcome in atlas row");
    c.outcome.kind = *kind;
    c.outcome.beta1 = std::stod(tok[3]);
    c.outcome.beta2 = std::stod(tok[4]);
    cells.push_back(c);
  }
  return cells;
}

}  // namespace vortex::io
