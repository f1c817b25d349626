/**
 * @file io.hpp
 * @brief JSON documents, workspaces and the job runner behind the hopfgal CLI.
 *
 * A workspace is {"documents": {name: document}}. Documents refer to each other by name.
 * Rational scalars are integers or "p/q" strings; others are {"order": N, "num": [...], "den": d}.
 * Tensors are dense nested arrays in row-major basis order.
 */
#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopfgal/banica.hpp"

namespace hopfgal {

using json = nlohmann::json;

inline constexpr std::size_t kDefaultMaxDim = 64;

inline std::size_t max_dim() {
  if (const char* s = std::getenv("HOPFGAL_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxDim;
}

inline Error schema_error(const std::string& ptr, const std::string& what) {
  return input_error("schema", "at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

inline const json& need(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) throw schema_error(ptr, "missing \"" + key + "\"");
  return j.at(key);
}

// ---- scalars ----

inline mpq_class rational_from_json(const json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return mpq_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  throw schema_error(ptr, "expected an integer or a \"p/q\" string");
}

inline Scalar scalar_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) return Scalar(rational_from_json(j, ptr));
  const json& o = need(j, "order", ptr);
  if (!o.is_number_integer() || o.get<long long>() <= 0) throw schema_error(ptr + "/order", "order must be a positive integer");
  const json& num = need(j, "num", ptr);
  if (!num.is_array()) throw schema_error(ptr + "/num", "expected an array");
  mpq_class den(1);
  if (j.contains("den")) den = rational_from_json(j.at("den"), ptr + "/den");
  if (den <= 0) throw schema_error(ptr + "/den", "den must be positive");
  std::vector<mpq_class> c;
  for (std::size_t k = 0; k < num.size(); ++k) {
    mpq_class v = rational_from_json(num[k], ptr + "/num/" + std::to_string(k)) / den;
    v.canonicalize();
    c.push_back(v);
  }
  return Scalar::from_coeffs(static_cast<unsigned>(o.get<long long>()), std::move(c));
}

inline json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

/// Rationals print as an integer or "p/q"; everything else as {order, num, den} in lowest order.
inline json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) {
    mpq_class q = s.coeffs().empty() ? mpq_class(0) : s.coeffs()[0];
    q.canonicalize();
    if (q.get_den() == 1) return integer_json(q.get_num());
    return q.get_str();
  }
  mpz_class den = 1;
  for (const auto& c : s.coeffs()) den = lcm(den, mpz_class(c.get_den()));
  json num = json::array();
  for (const auto& c : s.coeffs()) {
    mpq_class v = c * den;
    v.canonicalize();
    num.push_back(integer_json(v.get_num()));
  }
  return json{{"order", s.order()}, {"num", num}, {"den", integer_json(den)}};
}

// ---- arrays ----

inline Vec vec_from_json(const json& j, const std::string& ptr, std::optional<std::size_t> len = std::nullopt) {
  if (!j.is_array()) throw schema_error(ptr, "expected an array");
  if (len && j.size() != *len) throw schema_error(ptr, "expected length " + std::to_string(*len));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], ptr + "/" + std::to_string(i)));
  return v;
}

/// Row-major nested array into a matrix M(i, j) = j[i][j].
inline Mat mat_from_json(const json& j, const std::string& ptr, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw schema_error(ptr, "expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vec row = vec_from_json(j[r], ptr + "/" + std::to_string(r), cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline Tensor3 tensor_from_json(const json& j, const std::string& ptr, std::size_t a, std::size_t b, std::size_t c) {
  if (!j.is_array() || j.size() != a) throw schema_error(ptr, "expected " + std::to_string(a) + " slices");
  Tensor3 t(a, b, c);
  for (std::size_t i = 0; i < a; ++i) {
    const Mat m = mat_from_json(j[i], ptr + "/" + std::to_string(i), b, c);
    for (std::size_t x = 0; x < b; ++x) t.set_fiber(i, x, m.row(x));
  }
  return t;
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

inline json mat_to_json(const Mat& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_to_json(m.row(r)));
  return a;
}

inline json tensor_to_json(const Tensor3& t) {
  json a = json::array();
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    json s = json::array();
    for (std::size_t x = 0; x < t.dim1(); ++x) s.push_back(vec_to_json(t.fiber_vec(i, x)));
    a.push_back(s);
  }
  return a;
}

inline json space_to_json(const Space& s) {
  json b = json::array();
  for (const auto& v : s.basis()) b.push_back(vec_to_json(v));
  return json{{"kind", "subspace"}, {"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", b}};
}

inline json report_to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks()) {
    json o{{"name", c.name}, {"passed", c.passed}};
    if (c.skipped) o["skipped"] = true;
    if (!c.witness.empty()) o["witness"] = c.witness;
    if (!c.note.empty()) o["note"] = c.note;
    checks.push_back(o);
  }
  return json{{"title", r.title()}, {"passed", r.passed()}, {"checks", checks}};
}

// ---- documents ----

inline json algebra_to_json(const StarAlgebra& a) {
  json j{{"kind", "algebra"}, {"dim", a.dim}, {"mult", tensor_to_json(a.mult)}, {"unit", vec_to_json(a.unit)},
         {"star", mat_to_json(a.star)}};
  if (a.state) {
    j["state"] = vec_to_json(*a.state);
    j["tracial"] = a.tracial;
  }
  return j;
}

inline json hopf_to_json(const HopfStarAlgebra& h) {
  json j = algebra_to_json(h.alg);
  j["kind"] = "hopf";
  j["comult"] = tensor_to_json(h.comult);
  j["counit"] = vec_to_json(h.counit);
  j["antipode"] = mat_to_json(h.antipode);
  j["kac"] = h.kac;
  return j;
}

inline void check_dim(std::size_t n, const std::string& ptr) {
  if (n == 0) throw schema_error(ptr, "dimension must be positive");
  if (n > max_dim()) throw input_error("too-large", "at " + ptr + ": dimension " + std::to_string(n) + " exceeds HOPFGAL_MAX_DIM = " + std::to_string(max_dim()));
}

inline GroupTable group_table_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw schema_error(ptr, "expected a square array");
  GroupTable t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw schema_error(ptr + "/" + std::to_string(i), "expected an array");
    std::vector<std::size_t> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      if (!j[i][k].is_number_unsigned()) throw schema_error(ptr + "/" + std::to_string(i) + "/" + std::to_string(k), "expected an element index");
      row.push_back(j[i][k].get<std::size_t>());
    }
    t.push_back(row);
  }
  check_dim(t.size(), ptr);
  return t;
}

inline StarAlgebra algebra_fields(const json& j, const std::string& ptr) {
  StarAlgebra a;
  const json& mult = need(j, "mult", ptr);
  if (!mult.is_array()) throw schema_error(ptr + "/mult", "expected an array");
  a.dim = mult.size();
  if (j.contains("dim") && j.at("dim") != a.dim) throw schema_error(ptr + "/dim", "disagrees with the size of mult");
  check_dim(a.dim, ptr);
  a.mult = tensor_from_json(mult, ptr + "/mult", a.dim, a.dim, a.dim);
  a.unit = vec_from_json(need(j, "unit", ptr), ptr + "/unit", a.dim);
  a.star = mat_from_json(need(j, "star", ptr), ptr + "/star", a.dim, a.dim);
  if (j.contains("state")) {
    a.state = vec_from_json(j.at("state"), ptr + "/state", a.dim);
    a.tracial = j.value("tracial", false);
  }
  return a;
}

struct Workspace {
  std::map<std::string, json> docs;
  unsigned order = 1;  // lcm of all scalar orders in the file

  const json& doc(const std::string& name, const std::string& kind, const std::string& ptr) const {
    auto it = docs.find(name);
    if (it == docs.end()) throw input_error("dangling-reference", "at " + ptr + ": unknown document '" + name + "'");
    const std::string k = it->second.value("kind", "");
    if (k != kind) throw schema_error("/documents/" + name, "expected kind " + kind + ", found " + k);
    return it->second;
  }

  /// A field holding either a reference by name or an inline document.
  std::pair<const json*, std::string> field(const json& j, const std::string& key, const std::string& kind, const std::string& ptr) const {
    const json& f = need(j, key, ptr);
    if (f.is_string()) return {&doc(f.get<std::string>(), kind, ptr + "/" + key), "/documents/" + f.get<std::string>()};
    return {&f, ptr + "/" + key};
  }

  StarAlgebra algebra(const json& j, const std::string& ptr) const {
    if (j.contains("matrix_units")) {
      const std::size_t n = j.at("matrix_units").get<std::size_t>();
      check_dim(n * n, ptr);
      return matrix_algebra(n);
    }
    if (j.contains("functions_on")) {
      const std::size_t n = j.at("functions_on").get<std::size_t>();
      check_dim(n, ptr);
      return function_algebra_on(n);
    }
    if (j.contains("hopf")) {
      auto [h, p] = field(j, "hopf", "hopf", ptr);
      return hopf(*h, p).alg;
    }
    return algebra_fields(j, ptr);
  }
  StarAlgebra algebra_ref(const json& j, const std::string& key, const std::string& ptr) const {
    const json& f = need(j, key, ptr);
    if (f.is_string()) {
      const std::string name = f.get<std::string>();
      auto it = docs.find(name);
      if (it != docs.end() && it->second.value("kind", "") == "hopf") return hopf(it->second, "/documents/" + name).alg;
    }
    auto [d, p] = field(j, key, "algebra", ptr);
    return algebra(*d, p);
  }

  HopfStarAlgebra hopf(const json& j, const std::string& ptr) const {
    if (j.contains("group_table")) {
      const GroupTable t = group_table_from_json(j.at("group_table"), ptr + "/group_table");
      return j.value("dual", false) ? function_algebra(t) : group_algebra(t);
    }
    HopfStarAlgebra h;
    h.alg = algebra_fields(j, ptr);
    const std::size_t n = h.alg.dim;
    h.comult = tensor_from_json(need(j, "comult", ptr), ptr + "/comult", n, n, n);
    h.counit = vec_from_json(need(j, "counit", ptr), ptr + "/counit", n);
    h.antipode = mat_from_json(need(j, "antipode", ptr), ptr + "/antipode", n, n);
    h.kac = j.value("kac", false);
    return h;
  }
  HopfStarAlgebra hopf_ref(const json& j, const std::string& key, const std::string& ptr) const {
    auto [d, p] = field(j, key, "hopf", ptr);
    return hopf(*d, p);
  }

  ModuleAlgebraAction action(const json& j, const std::string& ptr) const {
    ModuleAlgebraAction m;
    m.hopf = hopf_ref(j, "hopf", ptr);
    m.alg = algebra_ref(j, "alg", ptr);
    if (j.contains("unitaries")) {
      // h_g . x = u_g x u_g^* on Mat_n in matrix-unit coordinates
      const json& us = j.at("unitaries");
      std::size_t n = 0;
      while (n * n < m.alg.dim) ++n;
      if (n * n != m.alg.dim) throw schema_error(ptr + "/alg", "conjugation actions need a matrix algebra");
      if (!us.is_array() || us.size() != m.hopf.dim()) throw schema_error(ptr + "/unitaries", "one unitary per basis element of H");
      std::vector<Mat> ops;
      for (std::size_t g = 0; g < us.size(); ++g) {
        const Mat u = mat_from_json(us[g], ptr + "/unitaries/" + std::to_string(g), n, n);
        const Mat uh = u.adjoint();
        Mat op(n * n, n * n);
        for (std::size_t k = 0; k < n * n; ++k) {
          const Vec c = (u * Mat::unvec(n, n, basis_vector<Scalar>(n * n, k)) * uh).vec();
          for (std::size_t r = 0; r < n * n; ++r) op(r, k) = c[r];
        }
        ops.push_back(op);
      }
      m.act = action_tensor(ops);
    } else {
      m.act = tensor_from_json(need(j, "act", ptr), ptr + "/act", m.hopf.dim(), m.alg.dim, m.alg.dim);
    }
    return m;
  }
  ModuleAlgebraAction action_ref(const json& j, const std::string& key, const std::string& ptr) const {
    auto [d, p] = field(j, key, "action", ptr);
    return action(*d, p);
  }

  ComoduleAlgebra comodule(const json& j, const std::string& ptr) const {
    const HopfStarAlgebra h = hopf_ref(j, "hopf", ptr);
    if (j.value("regular", false)) return regular_comodule(h);
    if (j.value("trivial", false)) return trivial_comodule(h);
    ComoduleAlgebra c{h, algebra_ref(j, "alg", ptr), Mat()};
    const std::size_t nb = c.alg.dim, nh = h.dim();
    const Tensor3 t = tensor_from_json(need(j, "coact", ptr), ptr + "/coact", nb, nb, nh);
    c.coact = Mat(nb * nh, nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t x = 0; x < nb; ++x)
        for (const auto& [k, v] : t.fiber(i, x)) c.coact(x * nh + k, i) = v;
    return c;
  }

  Space subspace(const json& j, const std::string& ptr, std::size_t ambient) const {
    const std::size_t n = need(j, "ambient", ptr).get<std::size_t>();
    if (n != ambient) throw schema_error(ptr + "/ambient", "expected ambient dimension " + std::to_string(ambient));
    const json& b = need(j, "basis", ptr);
    if (!b.is_array()) throw schema_error(ptr + "/basis", "expected an array of vectors");
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < b.size(); ++i) vs.push_back(vec_from_json(b[i], ptr + "/basis/" + std::to_string(i), n));
    return Space::span(n, vs);
  }
  Space subspace_ref(const json& j, const std::string& key, const std::string& ptr, std::size_t ambient) const {
    auto [d, p] = field(j, key, "subspace", ptr);
    return subspace(*d, p, ambient);
  }
};

inline void collect_orders(const json& j, unsigned& order) {
  if (j.is_object()) {
    if (j.contains("order") && j.contains("num") && j.at("order").is_number_unsigned())
      order = std::lcm(order, j.at("order").get<unsigned>());
    for (const auto& [k, v] : j.items()) collect_orders(v, order);
  } else if (j.is_array()) {
    for (const auto& v : j) collect_orders(v, order);
  }
}

inline const std::set<std::string>& known_kinds() {
  static const std::set<std::string> k{"algebra", "hopf", "action", "comodule", "pairing", "subspace", "job"};
  return k;
}

inline void check_references(const Workspace& ws) {
  static const std::set<std::string> ref_keys{"hopf", "alg", "q", "h"};
  for (const auto& [name, d] : ws.docs) {
    const std::string ptr = "/documents/" + name;
    if (!d.is_object()) throw schema_error(ptr, "expected an object");
    const std::string kind = d.value("kind", "");
    if (!known_kinds().count(kind)) throw schema_error(ptr + "/kind", "unknown kind '" + kind + "'");
    for (const auto& [k, v] : d.items()) {
      const bool is_ref = kind == "job" ? k != "command" && k != "kind" : ref_keys.count(k) > 0;
      if (!is_ref) continue;
      auto check = [&](const json& x, const std::string& p) {
        if (x.is_string() && !ws.docs.count(x.get<std::string>()))
          throw input_error("dangling-reference", "at " + p + ": unknown document '" + x.get<std::string>() + "'");
      };
      if (v.is_array() && kind == "job" && k == "targets")
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], ptr + "/" + k + "/" + std::to_string(i));
      else
        check(v, ptr + "/" + k);
    }
  }
}

inline Workspace workspace_from_json(const json& j) {
  Workspace ws;
  const json& docs = need(j, "documents", "");
  if (!docs.is_object()) throw schema_error("/documents", "expected an object");
  for (const auto& [k, v] : docs.items()) ws.docs[k] = v;
  collect_orders(j, ws.order);
  check_references(ws);
  return ws;
}

inline Workspace parse_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("io", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("parse", std::string("invalid JSON: ") + e.what());
  }
  return workspace_from_json(j);
}

// ---- jobs ----

struct RunResult {
  json out;
  int exit_code = 0;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "dual",     "smash",       "commutant", "jones",
                                          "qgal-depth2", "qgal-banica", "centralizer", "measure"};
  return c;
}

/// The job document for a command: the named one, or the unique job with that command.
inline std::optional<std::pair<std::string, json>> find_job(const Workspace& ws, const std::string& command, const std::string& name) {
  if (!name.empty()) {
    const json& j = ws.doc(name, "job", "--job");
    if (need(j, "command", "/documents/" + name) != command)
      throw input_error("job-mismatch", "job '" + name + "' is not a " + command + " job");
    return std::make_pair(name, j);
  }
  std::optional<std::pair<std::string, json>> found;
  for (const auto& [k, d] : ws.docs)
    if (d.value("kind", "") == "job" && d.value("command", "") == command) {
      if (found) throw input_error("ambiguous-job", "several " + command + " jobs; pick one with --job");
      found = std::make_pair(k, d);
    }
  return found;
}

inline Report validate_document(const Workspace& ws, const std::string& name) {
  const json& d = ws.docs.at(name);
  const std::string ptr = "/documents/" + name;
  const std::string kind = d.value("kind", "");
  Report r(name);
  if (kind == "algebra") r.merge(validate_algebra(ws.algebra(d, ptr)), kind);
  else if (kind == "hopf") r.merge(validate_hopf(ws.hopf(d, ptr)), kind);
  else if (kind == "action") r.merge(validate_action(ws.action(d, ptr)), kind);
  else if (kind == "comodule") r.merge(validate_comodule(ws.comodule(d, ptr)), kind);
  else if (kind == "pairing") {
    const HopfStarAlgebra q = ws.hopf_ref(d, "q", ptr), h = ws.hopf_ref(d, "h", ptr);
    r.merge(validate_pairing(q, h, HopfPairing{mat_from_json(need(d, "p", ptr), ptr + "/p", q.dim(), h.dim())}), kind);
  }
  return r;
}

inline RunResult run_job(const Workspace& ws, const std::string& command, const std::string& job_name = {}) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw input_error("unknown-command", "unknown command '" + command + "'");
  const auto job = find_job(ws, command, job_name);
  std::vector<Report> reports;
  json result = json::object();
  if (!job && command != "validate") throw input_error("no-job", "no " + command + " job in the workspace");
  const json jd = job ? job->second : json::object();
  const std::string jp = job ? "/documents/" + job->first : "";

  if (command == "validate") {
    std::vector<std::string> targets;
    if (jd.contains("targets"))
      for (const auto& t : jd.at("targets")) targets.push_back(t.get<std::string>());
    else
      for (const auto& [k, d] : ws.docs)
        if (d.value("kind", "") != "job" && d.value("kind", "") != "subspace") targets.push_back(k);
    for (const auto& t : targets) {
      if (!ws.docs.count(t)) throw input_error("dangling-reference", "unknown document '" + t + "'");
      reports.push_back(validate_document(ws, t));
    }
    result["validated"] = targets;
  } else if (command == "dual") {
    const HopfStarAlgebra h = ws.hopf_ref(jd, "hopf", jp);
    const HopfStarAlgebra d = dual_hopf(h);
    reports.push_back(validate_hopf(d));
    reports.push_back(validate_pairing(d, h, canonical_pairing(h)));
    result["hopf"] = hopf_to_json(d);
  } else if (command == "smash") {
    const ModuleAlgebraAction m = ws.action_ref(jd, "action", jp);
    check_dim(m.alg.dim * m.hopf.dim(), jp + "/action");
    const Report va = validate_action(m);
    reports.push_back(va);
    if (va.passed()) {
      const SmashProduct sp = smash_product(m);
      reports.push_back(validate_algebra(sp.total));
      reports.push_back(innerify_check(sp));
      result["algebra"] = algebra_to_json(sp.total);
    }
  } else if (command == "commutant") {
    const StarAlgebra a = ws.algebra_ref(jd, "algebra", jp);
    const Space s = jd.contains("subspace") ? ws.subspace_ref(jd, "subspace", jp, a.dim) : whole(a);
    result["commutant"] = space_to_json(relative_commutant(s, a));
  } else if (command == "jones") {
    StarAlgebra a = ws.algebra_ref(jd, "algebra", jp);
    if (jd.contains("state")) {
      a.state = vec_from_json(jd.at("state"), jp + "/state", a.dim);
      a.tracial = true;
    }
    const Space n = ws.subspace_ref(jd, "subalgebra", jp, a.dim);
    const GnsSpace g = gns(a);
    reports.push_back(g.report);
    const BasicConstruction bc = basic_construction(g, n);
    reports.push_back(bc.report);
    json dims{{"M", a.dim}, {"N", n.dim()}, {"M1", bc.m1.dim()}, {"N'nM1", bc.ncomm.intersect(bc.m1).dim()},
              {"End(NMN)", bimodule_endos(a, n, n).dim()}};
    result["dims"] = dims;
    if (bc.index) {
      result["index"] = scalar_to_json(*bc.index);
      reports.push_back(markov_check(bc));
      reports.push_back(bimodule_endos_check(bc));
    } else {
      result["index"] = nullptr;
      result["note"] = "N is not a factor; no index or Markov trace";
    }
  } else if (command == "qgal-depth2") {
    const ModuleAlgebraAction m = ws.action_ref(jd, "action", jp);
    check_dim(m.alg.dim * m.hopf.dim(), jp + "/action");
    const Report va = validate_action(m);
    if (!va.passed()) throw input_error("action-invalid", va.summary());
    const QGalCertificate c = canonical_qgal(smash_product(m));
    reports.push_back(c.report);
    result["qgal_dim"] = c.qgal.dim();
    result["dual_hopf"] = hopf_to_json(c.qgal);
    result["end_dim"] = c.endos.ends.dim();
    result["commutant_dim"] = c.outer.witness.dim();
    result["fixed_points"] = space_to_json(c.fixed);
  } else if (command == "qgal-banica") {
    auto [cd, cp] = ws.field(jd, "comodule_algebra", "comodule", jp);
    const ComoduleAlgebra b = ws.comodule(*cd, cp);
    const ModuleAlgebraAction act = ws.action_ref(jd, "action", jp);
    check_dim(b.alg.dim * act.alg.dim * act.hopf.dim(), jp);
    const HopfStarAlgebra q = ws.hopf_ref(jd, "ambient_hopf", jp);
    const ModuleAlgebraAction qact = ws.action_ref(jd, "ambient_action", jp);
    const FixedPointData d = banica_data(b, act);
    const BanicaResult r = qgal_banica(d, q, qact);
    reports.push_back(r.report);
    result["c_dim"] = d.c.dim();
    result["centralizer"] = space_to_json(r.space);
    result["hopf"] = hopf_to_json(r.qgal);
    result["lifted_action"] = tensor_to_json(r.lifted.act);
    result["state"] = vec_to_json(r.state);
  } else if (command == "centralizer") {
    const HopfStarAlgebra q = ws.hopf_ref(jd, "hopf", jp);
    const Space s = ws.subspace_ref(jd, "subset", jp, q.dim());
    const HopfSubalgebraResult r = hopf_centralizer(q, s);
    reports.push_back(r.report);
    result["centralizer"] = space_to_json(r.space);
  } else if (command == "measure") {
    const HopfStarAlgebra h = ws.hopf_ref(jd, "coalgebra", jp);
    const StarCoalgebra c = coalgebra_of(h);
    const json& carrier = need(jd, "carrier", jp);
    const std::size_t rows = carrier.is_array() ? carrier.size() : 0;
    Multispan ms{rows, mat_from_json(carrier, jp + "/carrier", rows, c.dim), {}};
    const json& spans = need(jd, "spans", jp);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const std::string p = jp + "/spans/" + std::to_string(i);
      const json& s = spans[i];
      const std::size_t l = need(s, "l", p).get<std::size_t>(), r = need(s, "r", p).get<std::size_t>();
      const json& left = need(s, "left", p);
      const std::size_t t = left.is_array() ? left.size() : 0;
      ms.spans.push_back({l, r, mat_from_json(left, p + "/left", t, ipow(rows, l)),
                          mat_from_json(need(s, "right", p), p + "/right", t, ipow(rows, r)),
                          s.value("name", "span" + std::to_string(i))});
    }
    Space w = constraint_subspace(c, ms);
    if (jd.contains("within")) w = w.intersect(ws.subspace_ref(jd, "within", jp, c.dim));
    const SubcoalgebraResult sub = largest_subcoalgebra(c, w);
    Report r("measure");
    r.add("subcoalgebra", is_subcoalgebra(c, sub.space));
    std::string wit;
    for (std::size_t i = 0; i < sub.space.dim() && wit.empty(); ++i)
      for (const auto& s : ms.spans)
        if (!is_zero_vector(span_defect(c, ms, s, sub.space.basis()[i]))) {
          wit = s.name + witness(i);
          break;
        }
    r.add("measures", wit.empty(), wit);
    reports.push_back(r);
    result["constraints"] = space_to_json(w);
    result["subcoalgebra"] = space_to_json(sub.space);
    result["trace"] = sub.trace;
  }

  RunResult rr;
  bool ok = true;
  json reps = json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    reps.push_back(report_to_json(r));
  }
  rr.out = json{{"command", command}, {"passed", ok}, {"reports", reps}, {"result", result}, {"scalar_order", ws.order}};
  if (job) rr.out["job"] = job->first;
  rr.exit_code = ok ? 0 : 1;
  return rr;
}

inline json error_to_json(const Error& e) {
  return json{{"error", {{"code", e.code()}, {"kind", e.kind() == ErrorKind::input ? "input" : "internal"}, {"message", e.what()}}}};
}

}  // namespace hopfgal
