#include "realgit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace realgit::cli {

using json = nlohmann::ordered_json;

namespace {

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, size_t i) { return base + "/" + std::to_string(i); }

double number_at(const json& j, const std::string& at) {
  if (!j.is_number()) throw SchemaError(at, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(at, "expected a finite number");
  return v;
}

Vector vector_at(const json& j, const std::string& at, std::optional<int> len = std::nullopt) {
  if (!j.is_array()) throw SchemaError(at, "expected an array of numbers");
  if (len && static_cast<int>(j.size()) != *len)
    throw SchemaError(at, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_at(j[i], ptr(at, i));
  return v;
}

Matrix matrix_at(const json& j, const std::string& at, std::optional<int> dim = std::nullopt) {
  if (!j.is_array() || j.empty()) throw SchemaError(at, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  if (dim && rows != *dim) throw SchemaError(at, "expected " + std::to_string(*dim) + " rows, got " + std::to_string(rows));
  Matrix m(rows, rows);
  for (int r = 0; r < rows; ++r) {
    const std::string rp = ptr(at, static_cast<size_t>(r));
    const Vector row = vector_at(j[static_cast<size_t>(r)], rp);
    if (row.size() != rows) throw SchemaError(rp, "matrix must be square (" + std::to_string(rows) + " columns)");
    m.row(r) = row.transpose();
  }
  return m;
}

std::vector<Matrix> matrix_list_at(const json& j, const std::string& at, std::optional<int> dim) {
  if (!j.is_array()) throw SchemaError(at, "expected an array of matrices");
  std::vector<Matrix> out;
  for (size_t i = 0; i < j.size(); ++i) {
    Matrix m = matrix_at(j[i], ptr(at, i), dim);
    if (!dim) dim = static_cast<int>(m.rows());
    out.push_back(std::move(m));
  }
  return out;
}

const json& require(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr(at, key), "missing required field");
  return *it;
}

void reject_unknown(const json& j, const std::string& at, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) throw SchemaError(ptr(at, it.key()), "unknown field");
  }
}

int sl_size(const std::string& name, const std::string& at) {
  if (name == "sl2") return 2;
  if (name == "sl3") return 3;
  if (name == "sl4") return 4;
  throw SchemaError(at, "unknown group preset '" + name + "' (expected sl2, sl3 or sl4)");
}

std::pair<ReductiveStructure, std::string> parse_group(const json& j) {
  const std::string at = "/group";
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    return {sl_preset(sl_size(name, at)), name};
  }
  if (!j.is_object()) throw SchemaError(at, "expected a preset name or an object");
  if (j.contains("preset")) {
    reject_unknown(j, at, {"preset", "n"});
    const json& pj = j["preset"];
    if (!pj.is_string() || pj.get<std::string>() != "sl") throw SchemaError(ptr(at, "preset"), "only the 'sl' preset family exists");
    const json& nj = require(j, "n", at);
    if (!nj.is_number_integer() || nj.get<int>() < 2 || nj.get<int>() > 4)
      throw SchemaError(ptr(at, "n"), "expected an integer between 2 and 4");
    const int n = nj.get<int>();
    return {sl_preset(n), "sl" + std::to_string(n)};
  }
  reject_unknown(j, at, {"ambient_dim", "basis_k", "basis_p"});
  const json& dj = require(j, "ambient_dim", at);
  if (!dj.is_number_integer() || dj.get<int>() < 1) throw SchemaError(ptr(at, "ambient_dim"), "expected a positive integer");
  const int n = dj.get<int>();
  auto bk = matrix_list_at(require(j, "basis_k", at), ptr(at, "basis_k"), n);
  auto bp = matrix_list_at(require(j, "basis_p", at), ptr(at, "basis_p"), n);
  if (bp.empty()) throw SchemaError(ptr(at, "basis_p"), "p must be nonzero");
  ReductiveStructure s(n, std::move(bk), std::move(bp));
  if (s.p_basis_degenerate()) throw SchemaError(ptr(at, "basis_p"), "basis is linearly dependent");
  return {std::move(s), "custom"};
}

enum class RepKind { Defining, Adjoint, Sym, Custom };

Representation parse_representation(const json& j, const ReductiveStructure& s, Space space,
                                    std::string& name, RepKind& kind, int& degree) {
  const std::string at = "/representation";
  auto sym = [&](int d, const std::string& where) {
    if (s.ambient_dim() != 2) throw SchemaError(where, "sym_d needs a group of 2x2 matrices");
    if (d < 1 || d > 6) throw SchemaError(where, "degree must be between 1 and 6");
    kind = RepKind::Sym;
    degree = d;
    name = "sym_" + std::to_string(d);
    return sym_representation(s, d, space);
  };
  if (j.is_string()) {
    name = j.get<std::string>();
    if (name == "defining") {
      kind = RepKind::Defining;
      return defining_representation(s, space);
    }
    if (name == "adjoint") {
      kind = RepKind::Adjoint;
      return adjoint_representation(s, space);
    }
    if (name.rfind("sym_", 0) == 0 && name.size() == 5 && std::isdigit(static_cast<unsigned char>(name[4])))
      return sym(name[4] - '0', at);
    throw SchemaError(at, "unknown representation preset '" + name + "'");
  }
  if (!j.is_object()) throw SchemaError(at, "expected a preset name or an object");
  if (j.contains("preset")) {
    reject_unknown(j, at, {"preset", "degree"});
    const json& pj = j["preset"];
    if (!pj.is_string() || pj.get<std::string>() != "sym") throw SchemaError(ptr(at, "preset"), "expected 'sym'");
    const json& dj = require(j, "degree", at);
    if (!dj.is_number_integer()) throw SchemaError(ptr(at, "degree"), "expected an integer");
    return sym(dj.get<int>(), ptr(at, "degree"));
  }
  reject_unknown(j, at, {"rho_k", "rho_p"});
  auto rk = matrix_list_at(require(j, "rho_k", at), ptr(at, "rho_k"), std::nullopt);
  std::optional<int> m;
  if (!rk.empty()) m = static_cast<int>(rk.front().rows());
  auto rp = matrix_list_at(require(j, "rho_p", at), ptr(at, "rho_p"), m);
  if (static_cast<int>(rk.size()) != s.dim_k())
    throw SchemaError(ptr(at, "rho_k"), "expected " + std::to_string(s.dim_k()) + " matrices (one per basis_k element)");
  if (static_cast<int>(rp.size()) != s.dim_p())
    throw SchemaError(ptr(at, "rho_p"), "expected " + std::to_string(s.dim_p()) + " matrices (one per basis_p element)");
  kind = RepKind::Custom;
  name = "custom";
  Representation rep(s, std::move(rk), std::move(rp), space);
  const RepresentationDiagnostics d = rep.check(1e-8);
  if (d.p_symmetry > 1e-8) throw SchemaError(ptr(at, "rho_p"), "matrices must be symmetric");
  if (d.k_antisymmetry > 1e-8) throw SchemaError(ptr(at, "rho_k"), "matrices must be antisymmetric");
  if (d.homomorphism > 1e-8) throw SchemaError(at, "matrices do not define a Lie-algebra homomorphism");
  return rep;
}

}  // namespace

Problem parse_problem(const json& j) {
  if (!j.is_object()) throw SchemaError("", "problem must be a JSON object");
  reject_unknown(j, "", {"group", "representation", "space", "points", "tolerances", "seed", "max_iters"});

  auto [s, gname] = parse_group(require(j, "group", ""));

  Space space = Space::Affine;
  if (j.contains("space")) {
    const json& sj = j["space"];
    if (!sj.is_string() || (sj != "affine" && sj != "projective"))
      throw SchemaError("/space", "expected \"affine\" or \"projective\"");
    space = sj == "affine" ? Space::Affine : Space::Projective;
  }

  std::string rname;
  RepKind kind = RepKind::Custom;
  int degree = 0;
  Representation rep = parse_representation(require(j, "representation", ""), s, space, rname, kind, degree);

  Tolerances tol;
  if (j.contains("tolerances")) {
    const json& tj = j["tolerances"];
    if (!tj.is_object()) throw SchemaError("/tolerances", "expected an object");
    reject_unknown(tj, "/tolerances", {"weight", "flow", "component"});
    auto positive = [&](const char* key, double& slot) {
      if (!tj.contains(key)) return;
      const double v = number_at(tj[key], ptr("/tolerances", key));
      if (v <= 0) throw SchemaError(ptr("/tolerances", key), "expected a positive number");
      slot = v;
    };
    positive("weight", tol.weight);
    positive("flow", tol.flow);
    positive("component", tol.component);
  }

  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("/seed", "expected a non-negative integer");
    seed = j["seed"].get<std::uint64_t>();
  }
  int max_iters = 10000;
  if (j.contains("max_iters")) {
    if (!j["max_iters"].is_number_integer() || j["max_iters"].get<long>() < 1)
      throw SchemaError("/max_iters", "expected a positive integer");
    max_iters = j["max_iters"].get<int>();
  }

  const json& pts = require(j, "points", "");
  if (!pts.is_array()) throw SchemaError("/points", "expected an array");
  std::vector<NamedPoint> points;
  for (size_t i = 0; i < pts.size(); ++i) {
    const std::string at = ptr("/points", i);
    const json& pj = pts[i];
    if (!pj.is_object()) throw SchemaError(at, "expected an object");
    reject_unknown(pj, at, {"id", "vector", "matrix", "coefficients"});
    const json& idj = require(pj, "id", at);
    if (!idj.is_string()) throw SchemaError(ptr(at, "id"), "expected a string");
    NamedPoint np{idj.get<std::string>(), Vector()};
    for (const auto& other : points)
      if (other.id == np.id) throw SchemaError(ptr(at, "id"), "duplicate point id '" + np.id + "'");
    const int forms = static_cast<int>(pj.contains("vector")) + static_cast<int>(pj.contains("matrix")) +
                      static_cast<int>(pj.contains("coefficients"));
    if (forms != 1) throw SchemaError(at, "give exactly one of vector, matrix, coefficients");
    if (pj.contains("vector")) {
      np.vec = vector_at(pj["vector"], ptr(at, "vector"), rep.dim_v());
    } else if (pj.contains("matrix")) {
      if (kind != RepKind::Adjoint) throw SchemaError(ptr(at, "matrix"), "matrix points need the adjoint representation");
      const Matrix m = matrix_at(pj["matrix"], ptr(at, "matrix"), s.ambient_dim());
      const Vector c = adjoint_coordinates(s, m);
      if ((flatten(m) - s.g_frame() * c).norm() > 1e-9 * std::max(1.0, m.norm()))
        throw SchemaError(ptr(at, "matrix"), "matrix does not lie in g");
      np.vec = c;
    } else {
      if (kind != RepKind::Sym) throw SchemaError(ptr(at, "coefficients"), "coefficient points need a sym_d representation");
      np.vec = sym_coordinates(degree, vector_at(pj["coefficients"], ptr(at, "coefficients"), degree + 1));
    }
    if (space == Space::Projective && np.vec.norm() == 0.0)
      throw SchemaError(ptr(at, pj.contains("vector") ? "vector" : pj.contains("matrix") ? "matrix" : "coefficients"),
                        "the zero vector is not a point of projective space");
    points.push_back(std::move(np));
  }

  return Problem{gname, rname, std::move(rep), std::move(points), tol, seed, max_iters};
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read problem file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

void apply_overrides(Problem& p, const Overrides& o) {
  if (o.tol) p.tol.weight = *o.tol;
  if (o.seed) p.seed = *o.seed;
  if (o.max_iters) p.max_iters = *o.max_iters;
}

ClassifyOptions classify_options(const Problem& p) {
  ClassifyOptions c;
  c.weight_tol = p.tol.weight;
  c.zero.zero_tol = p.tol.weight;
  c.zero.seed = p.seed;
  c.zero.weight.component_tol = p.tol.component;
  c.flow.tol = p.tol.flow;
  c.flow.max_iters = p.max_iters;
  return c;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) + 0.0);  // no negative zeros in output
  return a;
}

json matrix_to_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r).transpose()));
  return a;
}

json report_to_json(const std::string& id, const StabilityReport& r) {
  json o;
  o["id"] = id;
  o["label"] = to_string(r.label);
  o["certified"] = r.certified;
  if (r.min_weight_infinite)
    o["min_weight"] = "inf";
  else
    o["min_weight"] = r.min_weight;
  json zs = json::array();
  for (const auto& z : r.zero_directions) zs.push_back(vector_to_json(z.coords));
  o["zero_directions"] = zs;
  o["unstable_direction"] = r.unstable_direction ? vector_to_json(r.unstable_direction->coords) : json(nullptr);
  o["witness_matrix"] = r.witness ? matrix_to_json(r.witness->mat) : json(nullptr);
  o["fixed_direction"] = r.fixed_direction ? vector_to_json(r.fixed_direction->coords) : json(nullptr);
  o["stabilizer_dims"] = {r.stab_dim, r.stab_dim_k, r.stab_dim_p};
  if (r.flow_run)
    o["flow"] = {{"iterations", r.flow_iterations},
                 {"final_moment_norm", r.flow_final_moment_norm},
                 {"termination", to_string(r.flow_termination)}};
  else
    o["flow"] = nullptr;
  o["notes"] = r.notes;
  return o;
}

Vector parse_vector(const std::string& text) {
  std::string t = text;
  if (t.find(",,") != std::string::npos) throw InputError("empty entry in '" + text + "'");
  std::replace(t.begin(), t.end(), ',', ' ');
  t.erase(std::remove(t.begin(), t.end(), '['), t.end());
  t.erase(std::remove(t.begin(), t.end(), ']'), t.end());
  std::istringstream in(t);
  std::vector<double> vals;
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw InputError("cannot parse '" + tok + "' as a number");
    }
    if (used != tok.size()) throw InputError("cannot parse '" + tok + "' as a number");
    vals.push_back(v);
  }
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

namespace {

bool write_text(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

const NamedPoint* find_point(const Problem& p, const std::string& id) {
  for (const auto& np : p.points)
    if (np.id == id) return &np;
  return nullptr;
}

Direction parse_direction(const Problem& p, const std::string& text) {
  const Vector v = parse_vector(text);
  if (v.size() != p.rep.structure().dim_p())
    throw SchemaError("--direction", "expected " + std::to_string(p.rep.structure().dim_p()) +
                                         " coordinates in basis_p, got " + std::to_string(v.size()));
  return Direction(v);
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Commands that compute with the action need a compatible structure; `check`
// reports the residuals instead of refusing.
void require_compatible(const Problem& p) {
  const StructureDiagnostics d = check_compatible_structure(p.rep.structure());
  if (!d.ok) throw SchemaError("/group", "basis is not a compatible reductive structure (run `check`)");
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int cmd_classify(const std::string& problem_path, const std::string& out_path, const Overrides& o,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Problem p = load_problem(problem_path);
    require_compatible(p);
    apply_overrides(p, o);
    const ClassifyOptions opts = classify_options(p);
    std::vector<json> reports(p.points.size());
    std::vector<std::string> failures(p.points.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < p.points.size(); i = next++) {
        try {
          const StabilityReport r = classify(p.rep, make_point(p.rep, p.points[i].vec), opts);
          reports[i] = report_to_json(p.points[i].id, r);
        } catch (const Error& e) {
          failures[i] = e.what();
        }
      }
    };
    const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(p.points.size())));
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    bool indeterminate = false;
    json arr = json::array();
    for (size_t i = 0; i < reports.size(); ++i) {
      if (!failures[i].empty()) {
        err << "error: point '" << p.points[i].id << "': " << failures[i] << "\n";
        return kExitFailure;
      }
      if (reports[i]["label"] == "Indeterminate") indeterminate = true;
      arr.push_back(std::move(reports[i]));
    }
    if (!write_text(out_path, arr.dump(2) + "\n", out, err)) return kExitFailure;
    return indeterminate ? kExitIndeterminate : kExitOk;
  });
}

int cmd_weights(const std::string& problem_path, const std::string& point_id,
                const std::string& direction, double t_max, const std::string& csv_path,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(problem_path);
    require_compatible(p);
    const NamedPoint* np = find_point(p, point_id);
    if (!np) throw SchemaError("--point", "unknown point id '" + point_id + "'");
    if (!(t_max >= 1.0) || !std::isfinite(t_max)) throw SchemaError("--t-max", "expected a finite number >= 1");
    const Direction beta = parse_direction(p, direction);
    const Point x = make_point(p.rep, np->vec);
    std::ostringstream csv;
    csv << "t,value\n";
    csv << "0," << num(weight_curve(p.rep, x, beta, 0.0)) << "\n";
    for (double t = 1.0; t <= t_max; t *= 2.0) csv << num(t) << "," << num(weight_curve(p.rep, x, beta, t)) << "\n";
    MaxWeightOptions mo;
    mo.component_tol = p.tol.component;
    const MaxWeight lim = max_weight_algebraic(p.rep, x, beta, mo);
    csv << "inf," << (lim.infinite ? std::string("inf") : num(lim.value)) << "\n";
    for (const auto& w : lim.warnings) err << "warning: " << w << "\n";
    return write_text(csv_path, csv.str(), out, err) ? kExitOk : kExitFailure;
  });
}

int cmd_flow(const std::string& problem_path, const std::string& point_id, const std::string& out_path,
             const Overrides& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Problem p = load_problem(problem_path);
    require_compatible(p);
    apply_overrides(p, o);
    const NamedPoint* np = find_point(p, point_id);
    if (!np) throw SchemaError("--point", "unknown point id '" + point_id + "'");
    const ClassifyOptions opts = classify_options(p);
    const FlowTrace tr = kempf_ness_flow(p.rep, make_point(p.rep, np->vec), opts.flow);
    json j;
    j["id"] = np->id;
    j["termination"] = to_string(tr.termination);
    j["iterations"] = tr.iterations;
    j["final_moment_norm"] = tr.final_moment_norm;
    j["final_point"] = vector_to_json(tr.final_point.vec);
    j["witness_matrix"] = matrix_to_json(tr.accumulated.mat);
    j["stabilizer_dims"] = {tr.initial_stabilizer_dim, tr.final_stabilizer_dim};
    j["escape_direction"] = tr.escape_direction ? vector_to_json(tr.escape_direction->coords) : json(nullptr);
    j["diagnostics"] = tr.diagnostics;
    json its = json::array();
    for (const auto& it : tr.iterates)
      its.push_back({{"moment_norm", it.moment_norm}, {"phi", it.phi}, {"step", it.step}});
    j["iterates"] = its;
    if (!write_text(out_path, j.dump(2) + "\n", out, err)) return kExitFailure;
    return tr.termination == FlowTermination::Stalled ? kExitIndeterminate : kExitOk;
  });
}

int cmd_parabolic(const std::string& problem_path, const std::string& direction, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(problem_path);
    require_compatible(p);
    const Direction beta = parse_direction(p, direction);
    const auto& s = p.rep.structure();
    const SubalgebraSplit split = parabolic_subalgebra(s, beta);
    const GlobalDecomposition gd = check_global_decomposition(s, beta);
    auto list = [](const std::vector<Matrix>& ms) {
      json a = json::array();
      for (const auto& m : ms) a.push_back(matrix_to_json(m));
      return a;
    };
    json j;
    j["dims"] = {{"levi", split.levi.size()},
                 {"nilradical_plus", split.nilradical_plus.size()},
                 {"nilradical_minus", split.nilradical_minus.size()},
                 {"parabolic_plus", split.parabolic_plus.size()}};
    j["levi"] = list(split.levi);
    j["nilradical_plus"] = list(split.nilradical_plus);
    j["nilradical_minus"] = list(split.nilradical_minus);
    j["global_decomposition"] = {{"holds", gd.holds},
                                 {"dim_g", gd.dim_g},
                                 {"dim_k", gd.dim_k},
                                 {"dim_parabolic", gd.dim_parabolic},
                                 {"dim_sum", gd.dim_sum},
                                 {"dim_intersection", gd.dim_intersection},
                                 {"dim_k_beta", gd.dim_k_beta}};
    out << j.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_check(const std::string& problem_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(problem_path);
    const StructureDiagnostics d = check_compatible_structure(p.rep.structure());
    const RepresentationDiagnostics rd = p.rep.check();
    json j;
    j["group"] = p.group_name;
    j["representation"] = p.representation_name;
    j["space"] = to_string(p.rep.space());
    j["structure"] = {{"ok", d.ok},
                      {"closure_kk", d.closure_kk},
                      {"closure_kp", d.closure_kp},
                      {"closure_pp", d.closure_pp},
                      {"theta_k", d.theta_k},
                      {"theta_p", d.theta_p},
                      {"ad_invariance", d.ad_invariance},
                      {"jacobi", d.jacobi},
                      {"rank_deficit", d.rank_deficit},
                      {"tolerance", d.tolerance},
                      {"convention", d.convention}};
    j["representation_check"] = {{"ok", rd.ok},
                                 {"homomorphism", rd.homomorphism},
                                 {"k_antisymmetry", rd.k_antisymmetry},
                                 {"p_symmetry", rd.p_symmetry}};
    j["linear_growth_constant"] = linear_growth_constant(p.rep);
    out << j.dump(2) << "\n";
    return d.ok && rd.ok ? kExitOk : kExitFailure;
  });
}

}  // namespace realgit::cli
