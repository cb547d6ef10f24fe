#include "gridres/job.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "gridres/cayley_bacharach.hpp"
#include "gridres/lines.hpp"
#include "gridres/parse.hpp"
#include "gridres/toric.hpp"

namespace gridres {

namespace {

using json = nlohmann::json;

struct Result {
  json body;
  int exit_code = exit_ok;
  std::string verdict = "ok";
  std::string summary;
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_input, what); }

std::string text_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  bad(what + " must be a string or an integer");
}

void check_shape(const json& in) {
  if (!in.is_object()) bad("input document must be an object");
  static const std::set<std::string> known{"field", "vars", "polys", "grids", "lines", "params", "subcommand"};
  for (const auto& [k, v] : in.items()) {
    if (!known.count(k)) bad("unknown section \"" + k + "\"");
  }
  auto need = [&](const char* key, bool ok, const char* what) {
    if (in.contains(key) && !ok) bad(std::string("\"") + key + "\" must be " + what);
  };
  need("vars", in.contains("vars") && in["vars"].is_array(), "a list of names");
  need("polys", in.contains("polys") && in["polys"].is_object(), "an object");
  need("grids", in.contains("grids") && in["grids"].is_array(), "a list of node lists");
  need("lines", in.contains("lines") && in["lines"].is_object(), "an object with red/blue/green lists");
  need("params", in.contains("params") && in["params"].is_object(), "an object");
}

Field parse_field(const json& in) {
  check_shape(in);
  if (!in.contains("field")) bad("missing \"field\"");
  const json& f = in["field"];
  if (!f.is_object() || !f.contains("kind")) bad("\"field\" must be an object with a \"kind\"");
  std::string kind = f["kind"].get<std::string>();
  if (kind == "rational") return Field::rationals();
  if (kind != "prime") bad("field kind must be \"prime\" or \"rational\", got \"" + kind + "\"");
  if (!f.contains("modulus")) bad("prime field needs a \"modulus\"");
  std::string m = text_of(f["modulus"], "modulus");
  if (m.empty() || m.find_first_not_of("0123456789") != std::string::npos || m.size() > 19) {
    bad("modulus must be a positive integer, got \"" + m + "\"");
  }
  return Field::prime(std::stoull(m));
}

std::string field_name(const Field& f) { return f.is_prime() ? "F_" + std::to_string(f.modulus()) : "Q"; }

// Highest variable index mentioned in a polynomial text, for documents without "vars".
std::size_t scan_arity(const std::string& s) {
  std::size_t n = 0;
  static const std::regex indexed("z([0-9]+)");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), indexed); it != std::sregex_iterator(); ++it) {
    n = std::max<std::size_t>(n, std::stoul((*it)[1]));
  }
  if (n) return n;
  static const std::regex word("[A-Za-z_][A-Za-z0-9_]*");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), word); it != std::sregex_iterator(); ++it) {
    std::string w = it->str();
    if (w == "y") n = std::max<std::size_t>(n, 2);
    if (w == "z") n = std::max<std::size_t>(n, 3);
    if (w == "x") n = std::max<std::size_t>(n, 1);
  }
  return std::max<std::size_t>(n, 1);
}

class Context {
 public:
  Context(const json& in, const JobOptions& opts) : in_(in), opts_(opts), field_(parse_field(in)) {
    if (in_.contains("vars")) names_ = in_["vars"].get<std::vector<std::string>>();
  }

  const Field& field() const { return field_; }
  const json& params() const {
    static const json empty = json::object();
    return in_.contains("params") ? in_["params"] : empty;
  }
  bool has_param(const char* k) const { return params().contains(k); }
  std::uint64_t budget(std::uint64_t fallback) const { return opts_.budget.value_or(fallback); }

  std::size_t arity() {
    if (n_) return *n_;
    if (!names_.empty()) n_ = names_.size();
    else if (in_.contains("grids")) n_ = in_["grids"].size();
    else if (polys().contains("g") && polys()["g"].is_array()) n_ = polys()["g"].size();
    else if (has_param("n")) n_ = params()["n"].get<std::size_t>();
    else {
      std::size_t n = 1;
      if (polys().is_object()) {
        for (const auto& [k, v] : polys().items()) {
          if (v.is_string()) n = std::max(n, scan_arity(v.get<std::string>()));
          if (v.is_array()) {
            for (const auto& s : v) n = std::max(n, scan_arity(s.get<std::string>()));
          }
        }
      }
      n_ = n;
    }
    if (*n_ == 0) bad("number of variables must be positive");
    return *n_;
  }

  std::vector<std::string> names() {
    if (!names_.empty()) return names_;
    return default_variable_names(arity());
  }

  const json& polys() const {
    static const json empty = json::object();
    return in_.contains("polys") ? in_["polys"] : empty;
  }
  bool has_poly(const char* k) const { return polys().contains(k); }

  Polynomial poly_text(const std::string& s) {
    return parse_poly(s, arity(), field_, std::span<const std::string>(names_));
  }
  Polynomial poly(const char* key) {
    if (!has_poly(key)) bad(std::string("missing polys.") + key);
    return poly_text(polys()[key].get<std::string>());
  }
  std::vector<Polynomial> poly_list(const char* key) {
    if (!has_poly(key) || !polys()[key].is_array()) bad(std::string("polys.") + key + " must be a list");
    std::vector<Polynomial> out;
    for (const auto& s : polys()[key]) out.push_back(poly_text(s.get<std::string>()));
    return out;
  }

  FieldElement element(const json& j) { return field_.parse(text_of(j, "field element")); }

  Point point(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) bad("point must be a list of " + std::to_string(n) + " field elements");
    Point p;
    for (const auto& e : j) p.push_back(element(e));
    return p;
  }

  GridSystem grids() {
    if (!in_.contains("grids") || !in_["grids"].is_array()) bad("missing \"grids\" (a list of node lists)");
    std::vector<std::vector<FieldElement>> nodes;
    for (const auto& set : in_["grids"]) {
      if (!set.is_array()) bad("each grid must be a list of field elements");
      std::vector<FieldElement> s;
      for (const auto& e : set) s.push_back(element(e));
      nodes.push_back(std::move(s));
    }
    if (!names_.empty() && names_.size() != nodes.size()) bad("\"vars\" and \"grids\" disagree on the arity");
    return GridSystem(field_, std::move(nodes));
  }

  ProjLine line(const json& j) {
    if (j.is_array()) {
      if (j.size() != 3) bad("line coordinates must be [a, b, c] for a*x + b*y + c*z = 0");
      return ProjLine(element(j[0]), element(j[1]), element(j[2]));
    }
    std::string s = j.get<std::string>();
    auto eq = s.find('=');
    if (eq == std::string::npos || s.find('=', eq + 1) != std::string::npos) {
      bad("line \"" + s + "\" must be an equation like \"y = 2*x + 1\"");
    }
    static const std::vector<std::string> xyz{"x", "y", "z"};
    Polynomial lhs = parse_poly(s.substr(0, eq), 3, field_, xyz);
    Polynomial rhs = parse_poly(s.substr(eq + 1), 3, field_, xyz);
    Polynomial d = lhs - rhs;
    FieldElement c[3] = {field_.zero(), field_.zero(), field_.zero()};
    for (const auto& [m, coef] : d.terms()) {
      std::int64_t deg = degree_of(m);
      if (deg == 0) {
        c[2] += coef;
        continue;
      }
      if (deg != 1 || *std::min_element(m.begin(), m.end()) < 0) bad("line \"" + s + "\" is not linear");
      for (std::size_t i = 0; i < 3; ++i) {
        if (m[i] == 1) c[i] += coef;
      }
    }
    return ProjLine(c[0], c[1], c[2]);
  }

  std::vector<ProjLine> line_list(const char* color) {
    if (!in_.contains("lines") || !in_["lines"].contains(color)) bad(std::string("missing lines.") + color);
    std::vector<ProjLine> out;
    for (const auto& l : in_["lines"][color]) out.push_back(line(l));
    return out;
  }

  /// "lines" section, or params.construction = {"kind": "roots", "n": 3} / {"kind": "slope", "slope": "1"}.
  LineConfiguration configuration(bool need_green) {
    if (has_param("construction")) {
      const json& c = params()["construction"];
      std::string kind = c.at("kind").get<std::string>();
      if (kind == "roots") return roots_of_unity_config(field_, c.at("n").get<std::size_t>());
      if (kind == "slope") return slope_config(field_, c.contains("slope") ? element(c["slope"]) : field_.one());
      bad("construction kind must be \"roots\" or \"slope\"");
    }
    LineConfiguration cfg{field_, line_list("red"), line_list("blue"), {}};
    if (need_green || (in_.contains("lines") && in_["lines"].contains("green"))) cfg.green = line_list("green");
    return cfg;
  }

  ProjPoint proj_point(const json& j) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3)) bad("point must be [x, y] or [x, y, z]");
    if (j.size() == 2) return ProjPoint::affine(element(j[0]), element(j[1]));
    return ProjPoint(element(j[0]), element(j[1]), element(j[2]));
  }

 private:
  const json& in_;
  JobOptions opts_;
  Field field_;
  std::vector<std::string> names_;
  std::optional<std::size_t> n_;
};

json elem(const FieldElement& e) { return e.to_string(); }

json point_json(const Point& p) {
  json a = json::array();
  for (const auto& e : p) a.push_back(e.to_string());
  return a;
}

json proj_json(const ProjPoint& p) {
  return {{"text", p.to_string()}, {"coords", {p[0].to_string(), p[1].to_string(), p[2].to_string()}}};
}

json line_json(const ProjLine& l) {
  return {{"equation", l.to_string()}, {"coords", {l[0].to_string(), l[1].to_string(), l[2].to_string()}}};
}

json lines_json(const std::vector<ProjLine>& ls) {
  json a = json::array();
  for (const auto& l : ls) a.push_back(line_json(l));
  return a;
}

json monomial_json(const Monomial& m) { return json(std::vector<int>(m.begin(), m.end())); }

json polytope_json(const LatticePolytope& p) {
  json facets = json::array();
  for (const auto& f : p.facets()) facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
  return {{"vertices", p.vertices()}, {"dimension", p.dimension()}, {"facets", facets}};
}

// ---- subcommands ----

Result cmd_coeff(Context& c) {
  Polynomial f = c.poly("f");
  GridSystem grid = c.grids();
  Monomial t = grid.target_exponent();
  bool relaxed = check_relaxed_support(f, t);
  bool classical = check_classical_degree(f, t);
  FieldElement via = coefficient_via_grid(f, grid);
  FieldElement direct = f.coefficient(t);
  Result r;
  r.body = {{"coefficient", elem(via)},     {"target", monomial_json(t)},
            {"direct_coefficient", elem(direct)}, {"agrees", via == direct},
            {"relaxed_support", relaxed},   {"classical_degree", classical}};
  if (!(via == direct)) {
    r.exit_code = exit_negative;
    r.verdict = "mismatch";
  }
  r.summary = "grid sum gives " + via.to_string() + " (direct coefficient " + direct.to_string() + ")";
  return r;
}

Result cmd_witness(Context& c) {
  Polynomial f = c.poly("f");
  GridSystem grid = c.grids();
  WitnessSearch w = find_nonvanishing_witness(f, grid);
  Result r;
  r.body = {{"coefficient", elem(w.coefficient)}, {"witness", nullptr}};
  if (w.witness) {
    r.body["witness"] = {{"point", point_json(w.witness->point)}, {"value", elem(w.witness->value)}};
    r.summary = "f(" + point_to_string(w.witness->point) + ") = " + w.witness->value.to_string();
  } else {
    r.verdict = "vanishes";
    r.summary = "f vanishes on the whole grid";
  }
  return r;
}

Result cmd_cb_verify(Context& c) {
  Polynomial f = c.poly("f");
  CbRelation rel = cb_coefficients(SeparableSystem(c.grids()));
  CbResidual res = verify_cb(f, rel);
  json coeffs = json::array();
  for (std::size_t i = 0; i < rel.points.size(); ++i) {
    coeffs.push_back({{"point", point_json(rel.points[i])}, {"alpha", elem(rel.coefficients[i])}});
  }
  Result r;
  r.body = {{"residual", elem(res.residual)}, {"degree", res.degree},         {"degree_bound", res.bound},
            {"within_bound", res.within_bound()}, {"consistent", res.consistent()}, {"coefficients", coeffs}};
  if (!res.consistent()) {
    r.exit_code = exit_negative;
    r.verdict = "relation_violated";
  }
  r.summary = "residual " + res.residual.to_string() + " (degree " + std::to_string(res.degree) + ", bound " +
              std::to_string(res.bound) + ")";
  return r;
}

Result cmd_cb_forced(Context& c) {
  GridSystem grid = c.grids();
  CbRelation rel = cb_coefficients(SeparableSystem(grid));
  const std::size_t n = grid.dimension();
  if (!c.has_param("target")) bad("missing params.target");
  Point target = c.point(c.params()["target"], n);
  std::map<Point, FieldElement, PointLess> values;
  std::optional<Polynomial> f;
  if (c.has_param("values")) {
    for (const auto& v : c.params()["values"]) {
      Point p = c.point(v.at("point"), n);
      if (!values.emplace(p, c.element(v.at("value"))).second) bad("value given twice at " + point_to_string(p));
    }
  } else if (c.has_poly("f")) {
    f = c.poly("f");
    for (const auto& p : rel.points) {
      if (!(p == target)) values.emplace(p, f->evaluate(p));
    }
  } else {
    bad("give params.values or polys.f");
  }
  FieldElement v = forced_value(values, rel, target);
  Result r;
  r.body = {{"target", point_json(target)}, {"forced_value", elem(v)}, {"degree_bound", rel.degree_bound()}};
  if (f) {
    FieldElement actual = f->evaluate(target);
    r.body["actual_value"] = elem(actual);
    r.body["degree"] = f->total_degree();
    if (!(actual == v) && f->total_degree() <= rel.degree_bound()) {
      r.exit_code = exit_negative;
      r.verdict = "relation_violated";
    }
  }
  r.summary = "forced value at " + point_to_string(target) + " is " + v.to_string();
  return r;
}

Result cmd_cover_bound(Context& c) {
  GridSystem grid = c.grids();
  if (!c.has_param("excluded")) bad("missing params.excluded");
  Point ex = c.point(c.params()["excluded"], grid.dimension());
  CoverBound cb = min_cover_size(grid, ex, c.budget(1'000'000));
  Result r;
  r.body = {{"min_lines", cb.min_lines}, {"bound", cb.bound},         {"holds", cb.holds()},
            {"lines", lines_json(cb.cover.lines)}, {"search_nodes", cb.cover.nodes}};
  if (!cb.holds()) {
    r.exit_code = exit_negative;
    r.verdict = "bound_violated";
  }
  r.summary = std::to_string(cb.min_lines) + " lines needed, bound " + std::to_string(cb.bound);
  return r;
}

Result cmd_hyper_verify(Context& c) {
  HypersurfaceSystem sys(c.poly_list("g"));
  Polynomial f = c.poly("f");
  HypersurfaceVerdict v = verify_hypersurface_theorem(sys, f);
  json sols = json::array(), vals = json::array();
  for (std::size_t i = 0; i < v.solutions.size(); ++i) {
    sols.push_back(point_json(v.solutions[i]));
    vals.push_back(elem(v.values[i]));
  }
  Result r;
  r.body = {{"status", to_string(v.status)}, {"solutions", sols}, {"solution_count", v.solutions.size()},
            {"expected", v.expected}, {"values", vals}, {"degree", v.degree}, {"degree_bound", v.degree_bound},
            {"target_coefficient", elem(v.target_coefficient)}, {"witness", nullptr}};
  if (v.witness) r.body["witness"] = point_json(*v.witness);
  r.verdict = to_string(v.status);
  if (v.status == HypersurfaceVerdict::Status::counterexample) r.exit_code = exit_negative;
  r.summary = "|X| = " + std::to_string(v.solutions.size()) + " (expected " + std::to_string(v.expected) + "), " +
              to_string(v.status);
  return r;
}

Result cmd_newton(Context& c) {
  Result r;
  std::vector<Polynomial> ps;
  if (c.has_poly("g")) ps = c.poly_list("g");
  if (c.has_poly("f")) ps.push_back(c.poly("f"));
  if (ps.empty()) bad("give polys.f or polys.g");
  json parts = json::array();
  std::optional<LatticePolytope> sum;
  for (const auto& p : ps) {
    LatticePolytope np = newton_polytope(p);
    json pj = polytope_json(np);
    if (c.has_param("direction")) {
      pj["face"] = face_in_direction(np, c.params()["direction"].get<IntVec>()).vertices();
    }
    parts.push_back(pj);
    sum = sum ? minkowski_sum(*sum, np) : np;
  }
  r.body = {{"polytopes", parts}, {"minkowski_sum", polytope_json(*sum)}};
  if (c.has_param("direction")) {
    r.body["minkowski_sum"]["face"] = face_in_direction(*sum, c.params()["direction"].get<IntVec>()).vertices();
  }
  r.summary = "sum polytope " + sum->to_string();
  return r;
}

Result cmd_unfolded(Context& c) {
  NewtonSystem sys(c.poly_list("g"));
  UnfoldedResult u = is_unfolded(sys);
  Result r;
  r.body = {{"unfolded", u.unfolded}, {"directions_checked", u.directions_checked}, {"witness", nullptr},
            {"minkowski_sum", polytope_json(sys.sum())}};
  if (u.witness) r.body["witness"] = *u.witness;
  if (!u.unfolded) {
    r.exit_code = exit_negative;
    r.verdict = "not_unfolded";
  }
  r.summary = u.unfolded ? "unfolded" : "not unfolded, direction " + to_string(*u.witness);
  return r;
}

std::vector<Point> torus_zeros(const std::vector<Polynomial>& g, const Field& field) {
  const std::size_t n = g.size();
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(field.modulus() - 1);
  if (count > 1e7) bad("torus enumeration over F_p^n is limited to 10^7 points");
  std::vector<Point> out;
  std::vector<std::size_t> sizes(n, field.modulus() - 1);
  for_each_index(sizes, [&](std::span<const std::size_t> idx) {
    Point p;
    for (auto i : idx) p.push_back(field.from_int(static_cast<std::int64_t>(i + 1)));
    for (const auto& gi : g) {
      if (!gi.evaluate(p).is_zero()) return;
    }
    out.push_back(std::move(p));
  });
  return out;
}

Result cmd_toric_verify(Context& c) {
  std::optional<GridSystem> grid;
  std::vector<Polynomial> g;
  if (c.has_poly("g")) {
    g = c.poly_list("g");
  } else {
    grid = c.grids();
    SeparableSystem s(*grid);
    for (std::size_t i = 0; i < grid->dimension(); ++i) g.push_back(s.embedded(i));
  }
  NewtonSystem sys(g);
  const Field& field = c.field();
  const std::size_t n = sys.dimension();

  std::vector<Point> zeros;
  if (c.has_param("zeros")) {
    for (const auto& z : c.params()["zeros"]) zeros.push_back(c.point(z, n));
  } else if (grid) {
    for_each_index(grid->sizes(), [&](std::span<const std::size_t> idx) { zeros.push_back(grid->point(idx)); });
  } else if (field.is_prime()) {
    zeros = torus_zeros(g, field);
  } else {
    bad("over Q give params.zeros or use grids");
  }

  std::vector<Polynomial> samples;
  if (c.has_param("samples")) {
    for (const auto& s : c.params()["samples"]) samples.push_back(c.poly_text(s.get<std::string>()));
  } else if (c.has_poly("f")) {
    samples.push_back(c.poly("f"));
  } else {
    bad("give polys.f or params.samples");
  }
  VertexCoefficients kv = solve_vertex_coefficients(sys, zeros, samples);

  Result r;
  json kj = json::array();
  for (const auto& v : kv.vertices) {
    json e = {{"vertex", v}, {"k", nullptr}};
    if (kv.k.count(v)) e["k"] = kv.k.at(v);
    kj.push_back(e);
  }
  json anomalies = kv.anomalies;
  r.body = {{"zeros", zeros.size()}, {"rank", kv.rank}, {"vertex_coefficients", kj}, {"anomalies", anomalies}};
  json zj = json::array();
  for (const auto& z : zeros) zj.push_back(point_json(z));
  r.body["zero_points"] = zj;

  bool agree = true;
  if (c.has_poly("f")) {
    Polynomial f = c.poly("f");
    FieldElement lhs = residue_sum_over_zeros(sys, f, zeros);
    VertexSplit split = vertex_split(sys, f);
    json res = json::array();
    FieldElement rhs = field.zero();
    bool complete = true;
    for (const auto& v : kv.vertices) {
      FieldElement rv = vertex_residue(sys, f, v, split.direction.at(v));
      bool zero_side = std::find(split.zero.begin(), split.zero.end(), v) != split.zero.end();
      res.push_back({{"vertex", v}, {"direction", split.direction.at(v)}, {"residue", elem(rv)},
                     {"side", zero_side ? "zero" : "plus"}});
      if (rv.is_zero()) continue;
      if (!kv.determined.count(v)) {
        complete = false;
        continue;
      }
      rhs += kv.determined.at(v) * rv;
    }
    if (n % 2 == 1) rhs = -rhs;
    r.body["residue_sum"] = elem(lhs);
    r.body["vertex_residues"] = res;
    r.body["vertex_side"] = complete ? json(elem(rhs)) : json(nullptr);
    agree = complete && lhs == rhs;
    if (grid && check_relaxed_support(f, grid->target_exponent())) {
      FieldElement cg = coefficient_via_grid(f, *grid);
      r.body["grid_coefficient"] = elem(cg);
      agree = agree && cg == lhs;
    }
    r.body["agree"] = agree;
    r.summary = "sum over zeros " + lhs.to_string() + ", vertex side " + (complete ? rhs.to_string() : "undetermined");
  } else {
    r.summary = "solved " + std::to_string(kv.k.size()) + " of " + std::to_string(kv.vertices.size()) + " k_v";
  }
  if (!agree) {
    r.exit_code = exit_negative;
    r.verdict = "disagree";
  }
  return r;
}

json cover_report(const LineConfiguration& cfg) {
  GreenCoverCheck chk = validate_green_cover(cfg);
  json parts = json::array();
  for (std::size_t i = 0; i < cfg.green.size(); ++i) {
    json pts = json::array();
    for (auto k : chk.points_on[i]) pts.push_back(chk.grid[k].point.to_string());
    parts.push_back({{"line", line_json(cfg.green[i])}, {"points", pts}});
  }
  json out = {{"valid", chk.valid}, {"partition", chk.partition}, {"problems", chk.problems}, {"green", parts}};
  if (cfg.green.size() >= 2) {
    auto center = concurrency_point(cfg.green);
    out["green_center"] = center ? proj_json(*center) : json(nullptr);
  }
  return out;
}

json dependence_json(const ProductDependence& d) {
  return {{"alpha", elem(d.alpha)}, {"beta", elem(d.beta)},        {"gamma", elem(d.gamma)},
          {"holds", d.holds},       {"center", proj_json(d.center)}, {"probe", proj_json(d.probe)}};
}

Result cmd_lines_search(Context& c) {
  LineConfiguration cfg = c.configuration(false);
  GreenSearchOptions opts;
  if (c.has_param("prune")) opts.prune = c.params()["prune"].get<bool>();
  opts.node_budget = c.budget(opts.node_budget);
  auto covers = search_green_covers(cfg.red, cfg.blue, opts);
  json cj = json::array();
  for (const auto& g : covers) {
    auto center = g.size() >= 2 ? concurrency_point(g) : std::nullopt;
    cj.push_back({{"lines", lines_json(g)}, {"concurrent", center.has_value()},
                  {"center", center ? proj_json(*center) : json(nullptr)}});
  }
  Result r;
  r.body = {{"red", lines_json(cfg.red)}, {"blue", lines_json(cfg.blue)}, {"covers", cj}, {"count", covers.size()}};
  r.summary = std::to_string(covers.size()) + " green covers";
  return r;
}

Result cmd_lines_check(Context& c) {
  LineConfiguration cfg = c.configuration(true);
  Result r;
  r.body = cover_report(cfg);
  bool ok = r.body["valid"].get<bool>();
  if (ok && (cfg.green.size() == 1 || concurrency_point(cfg.green))) {
    ProductDependence d = verify_product_dependence(cfg);
    r.body["product_dependence"] = dependence_json(d);
    ok = d.holds;
  }
  if (!ok) {
    r.exit_code = exit_negative;
    r.verdict = "invalid";
  }
  r.summary = ok ? "valid green cover" : "not a valid green cover";
  return r;
}

Result cmd_lines_classify(Context& c) {
  LineConfiguration cfg = c.configuration(false);
  std::vector<std::vector<ProjLine>> families;
  if (!cfg.green.empty()) {
    families.push_back(cfg.green);
  } else {
    GreenSearchOptions opts;
    opts.node_budget = c.budget(opts.node_budget);
    families = search_green_covers(cfg.red, cfg.blue, opts);
  }
  const std::size_t n = cfg.red.size();
  auto red_center = n >= 2 ? concurrency_point(cfg.red) : std::nullopt;
  json out = json::array();
  for (const auto& g : families) {
    LineConfiguration one{cfg.field, cfg.red, cfg.blue, g};
    json e = cover_report(one);
    e["red_concurrent"] = red_center.has_value();
    bool green_conc = g.size() == 1 || (g.size() >= 2 && concurrency_point(g));
    e["green_concurrent"] = green_conc;
    if (e["valid"].get<bool>() && green_conc) e["product_dependence"] = dependence_json(verify_product_dependence(one));
    if (!e["valid"].get<bool>()) {
      e["normalization"] = {{"skipped", "not a valid cover"}};
    } else if (n < 2 || !red_center || !green_conc) {
      e["normalization"] = {{"skipped", "needs n >= 2 with concurrent red and green lines"}};
    } else if (cfg.field.is_prime() && n % cfg.field.modulus() == 0) {
      e["normalization"] = {{"skipped", "characteristic divides n"}};
    } else {
      BiconcurrentNormal nb = normalize_biconcurrent(one);
      json u = json::array(), v = json::array();
      for (const auto& x : nb.u) u.push_back(elem(x));
      for (const auto& x : nb.v) v.push_back(elem(x));
      e["normalization"] = {{"U", u}, {"V", v}, {"U_subgroup", nb.u_subgroup}, {"V_equals_U", nb.v_equals_u},
                            {"blue", lines_json(nb.normalized.blue)}};
    }
    out.push_back(e);
  }
  Result r;
  r.body = {{"red", lines_json(cfg.red)}, {"blue", lines_json(cfg.blue)}, {"families", out},
            {"count", families.size()}};
  r.summary = std::to_string(families.size()) + " green families classified";
  return r;
}

Result cmd_problem1_bound(Context& c) {
  LineConfiguration cfg = c.configuration(false);
  if (!c.has_param("excluded")) bad("missing params.excluded");
  ProjPoint ex = c.proj_point(c.params()["excluded"]);
  Problem1Bound b = check_problem1_bound(cfg.red, cfg.blue, ex, c.budget(1'000'000));
  Result r;
  r.body = {{"min_lines", b.min_lines}, {"bound", b.bound}, {"holds", b.holds()}, {"lines", lines_json(b.cover.lines)},
            {"excluded", proj_json(ex)}};
  if (!b.holds()) {
    r.exit_code = exit_negative;
    r.verdict = "bound_violated";
  }
  r.summary = std::to_string(b.min_lines) + " green lines needed, bound " + std::to_string(b.bound);
  return r;
}

const std::map<std::string, std::function<Result(Context&)>>& table() {
  static const std::map<std::string, std::function<Result(Context&)>> t{
      {"coeff", cmd_coeff},
      {"witness", cmd_witness},
      {"cb-verify", cmd_cb_verify},
      {"cb-forced", cmd_cb_forced},
      {"cover-bound", cmd_cover_bound},
      {"hyper-verify", cmd_hyper_verify},
      {"newton", cmd_newton},
      {"unfolded", cmd_unfolded},
      {"toric-verify", cmd_toric_verify},
      {"lines-search", cmd_lines_search},
      {"lines-check", cmd_lines_check},
      {"lines-classify", cmd_lines_classify},
      {"problem1-bound", cmd_problem1_bound},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"coeff",        "witness",      "cb-verify",      "cb-forced",
                                              "cover-bound",  "hyper-verify", "newton",         "unfolded",
                                              "toric-verify", "lines-search", "lines-check",    "lines-classify",
                                              "problem1-bound"};
  return names;
}

JobOutcome run_job(const std::string& subcommand, const nlohmann::json& input, const JobOptions& options) {
  JobOutcome out;
  auto it = table().find(subcommand);
  if (it == table().end()) {
    out.exit_code = exit_invalid;
    out.error = "unknown subcommand \"" + subcommand + "\"";
    return out;
  }
  auto start = std::chrono::steady_clock::now();
  try {
    Context ctx(input, options);
    Result r = it->second(ctx);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.report = json{{"subcommand", subcommand}, {"field", field_name(ctx.field())},
                      {"input", input},           {"result", r.body},
                      {"verdict", r.verdict},     {"exit_code", r.exit_code},
                      {"elapsed_ms", ms}};
    out.exit_code = r.exit_code;
    out.summary = subcommand + ": " + r.summary;
  } catch (const Error& e) {
    out.error = e.what();
    switch (e.code()) {
      case ErrorCode::budget_exceeded: out.exit_code = exit_budget; break;
      case ErrorCode::verification_failed: out.exit_code = exit_negative; break;
      default: out.exit_code = exit_invalid;
    }
  } catch (const nlohmann::json::exception& e) {
    out.error = std::string("malformed input document: ") + e.what();
    out.exit_code = exit_invalid;
  } catch (const std::exception& e) {
    out.error = e.what();
    out.exit_code = exit_invalid;
  }
  return out;
}

}  // namespace gridres
