#include "dualcd/json_io.hpp"

#include <fstream>

#include "dualcd/errors.hpp"

namespace dualcd {

namespace {

Json vec_to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vec_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("json: expected an array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Json mat_to_json(const Matrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) j.push_back(vec_to_json(m.row(r).transpose()));
  return j;
}

Matrix mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("json: expected an array of rows");
  const size_t cols = j[0].size();
  Matrix m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != cols) throw InvalidArgument("json: ragged matrix");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

Json set_to_json(const ConvexSet& s) {
  Json j;
  j["kind"] = set_kind_name(s.kind());
  struct V {
    Json& j;
    void operator()(const ConvexSet::Hyperplane& d) const {
      j["a"] = vec_to_json(d.a);
      j["b"] = d.b;
    }
    void operator()(const ConvexSet::Halfspace& d) const {
      j["a"] = vec_to_json(d.a);
      j["b"] = d.b;
    }
    void operator()(const ConvexSet::Ball& d) const {
      j["c"] = vec_to_json(d.c);
      j["r"] = d.r;
    }
    void operator()(const ConvexSet::Box& d) const {
      j["l"] = vec_to_json(d.l);
      j["u"] = vec_to_json(d.u);
    }
    void operator()(const ConvexSet::Soc& d) const { j["n"] = d.n; }
    void operator()(const ConvexSet::Affine& d) const {
      j["A"] = mat_to_json(d.A);
      j["b"] = vec_to_json(d.b);
    }
  };
  std::visit(V{j}, s.data());
  return j;
}

ConvexSet set_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "hyperplane") return ConvexSet::hyperplane(vec_from_json(j.at("a")), j.at("b").get<double>());
  if (kind == "halfspace") return ConvexSet::halfspace(vec_from_json(j.at("a")), j.at("b").get<double>());
  if (kind == "ball") return ConvexSet::ball(vec_from_json(j.at("c")), j.at("r").get<double>());
  if (kind == "box") return ConvexSet::box(vec_from_json(j.at("l")), vec_from_json(j.at("u")));
  if (kind == "second_order_cone") return ConvexSet::second_order_cone(j.at("n").get<int>());
  if (kind == "affine_subspace")
    return ConvexSet::affine_subspace(mat_from_json(j.at("A")), vec_from_json(j.at("b")));
  throw InvalidArgument("json: unknown set kind '" + kind + "'");
}

Json objective_to_json(const Objective& o) {
  Json j;
  if (o.kind() == ObjectiveKind::HalfSqDist) {
    j["kind"] = "half_sq_dist";
    j["v"] = vec_to_json(o.anchor());
  } else {
    j["kind"] = "quadratic";
    j["Q"] = mat_to_json(o.Q());
    j["q"] = vec_to_json(o.q());
    j["c"] = o.constant();
  }
  return j;
}

Objective objective_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "half_sq_dist") return Objective::half_sq_dist(vec_from_json(j.at("v")));
  if (kind == "quadratic")
    return Objective::quadratic(mat_from_json(j.at("Q")), vec_from_json(j.at("q")),
                                j.value("c", 0.0));
  throw InvalidArgument("json: unknown objective kind '" + kind + "'");
}

Json instance_to_json(const ProblemInstance& p) {
  Json j;
  j["n"] = p.n();
  j["objective"] = objective_to_json(p.objective());
  j["sets"] = Json::array();
  for (const auto& s : p.sets()) j["sets"].push_back(set_to_json(s));
  if (p.certificate()) {
    const auto& c = *p.certificate();
    Json cert;
    cert["x_star"] = vec_to_json(c.x_star);
    cert["y_star"] = Json::array();
    for (const auto& b : c.y_star) cert["y_star"].push_back(vec_to_json(b));
    cert["d_star"] = c.d_star;
    if (c.slater_witness) cert["slater_witness"] = vec_to_json(*c.slater_witness);
    j["certificate"] = cert;
  }
  return j;
}

ProblemInstance instance_from_json(const Json& j) {
  Objective obj = objective_from_json(j.at("objective"));
  std::vector<ConvexSet> sets;
  for (const auto& js : j.at("sets")) sets.push_back(set_from_json(js));
  std::optional<Certificate> cert;
  if (j.contains("certificate")) {
    const Json& jc = j["certificate"];
    Certificate c;
    c.x_star = vec_from_json(jc.at("x_star"));
    for (const auto& jb : jc.at("y_star")) c.y_star.push_back(vec_from_json(jb));
    c.d_star = jc.at("d_star").get<double>();
    if (jc.contains("slater_witness")) c.slater_witness = vec_from_json(jc["slater_witness"]);
    cert = std::move(c);
  }
  ProblemInstance p(std::move(obj), std::move(sets), std::move(cert));
  if (j.contains("n") && j["n"].get<int>() != p.n())
    throw InvalidArgument("json: declared dimension does not match the objective");
  return p;
}

Json dual_state_to_json(const DualState& y) {
  Json j;
  j["blocks"] = Json::array();
  for (int i = 0; i < y.m(); ++i) j["blocks"].push_back(vec_to_json(y.block(i)));
  return j;
}

DualState dual_state_from_json(const ProblemInstance& p, const Json& j) {
  std::vector<Vector> blocks;
  for (const auto& jb : j.at("blocks")) blocks.push_back(vec_from_json(jb));
  return DualState(p, std::move(blocks));
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig cfg;
  cfg.instance = j.at("instance").get<std::string>();
  cfg.solver = j.value("solver", cfg.solver);
  cfg.budget = j.value("budget", cfg.budget);
  cfg.tol = j.value("tol", cfg.tol);
  if (j.contains("seeds")) {
    cfg.seeds.clear();
    const Json& js = j["seeds"];
    if (js.is_array()) {
      for (const auto& s : js) cfg.seeds.push_back(s.get<std::uint64_t>());
    } else if (js.is_object()) {
      const auto from = js.at("from").get<std::uint64_t>();
      const auto to = js.at("to").get<std::uint64_t>();
      for (std::uint64_t s = from; s <= to; ++s) cfg.seeds.push_back(s);
    } else {
      throw InvalidArgument("config: seeds must be an array or {from, to}");
    }
  }
  cfg.k0 = j.value("k0", cfg.k0);
  cfg.sigma_bar = j.value("sigma_bar", cfg.sigma_bar);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.out_dir = j.value("out", cfg.out_dir);
  cfg.tail_fraction = j.value("tail_fraction", cfg.tail_fraction);
  cfg.validate();
  return cfg;
}

CertifiedInstance load_instance(const std::string& ref) {
  for (const auto& name : builtin_names())
    if (name == ref) return builtin_instance(ref);
  Json j = read_json_file(ref);
  return CertifiedInstance{ref, instance_from_json(j), false};
}

Json summary_to_json(const ExperimentSummary& s) {
  Json j;
  j["solver"] = s.solver;
  j["instance"] = s.instance;
  j["seeds"] = s.seeds;
  j["rho_hat"] = s.rho_hat;
  j["sigma_hat"] = std::isfinite(s.sigma_hat) ? Json(s.sigma_hat) : Json("inf");
  j["checks"] = Json{{"thpd_pass", s.thpd_pass}, {"envelope_pass", s.envelope.pass}};
  j["envelope_checked"] = s.envelope.checked;
  j["d_star"] = s.d_star;
  j["d_star_source"] = s.d_star_source;
  j["mean_fit"] = Json{{"rho_hat", s.mean_fit.rho_hat},
                       {"r_squared", s.mean_fit.r_squared},
                       {"window_begin", s.mean_fit.window_begin},
                       {"window_end", s.mean_fit.window_end}};
  j["trace_files"] = s.trace_files;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace dualcd
