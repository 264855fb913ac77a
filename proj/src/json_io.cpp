#include "cochord/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace cochord {

namespace {

double parse_real(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      size_t used = 0;
      const std::string s = v.get<std::string>();
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception& e) {
      throw SchemaError(path, std::string("not a decimal string: ") + e.what());
    }
  }
  throw SchemaError(path, "expected a number or decimal string");
}

int parse_int(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<int>();
  throw SchemaError(path, "expected an integer");
}

Vec parse_vec(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        parse_real(v[i], path + "/" + std::to_string(i));
  return out;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw SchemaError(path + "/" + it.key(), "unknown field");
}

Json real_json(double v) { return Json(format_real(v)); }

Json vec_json(const Vec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(real_json(v(i)));
  return arr;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

BodyPtr body_from_json(const Json& doc, const std::string& path) {
  if (!doc.is_object() || doc.size() != 1)
    throw SchemaError(path, "expected an object with exactly one body tag");
  const std::string tag = doc.begin().key();
  const Json& v = doc.begin().value();
  const std::string p = path + "/" + tag;
  if (!v.is_object()) throw SchemaError(p, "expected an object");

  if (tag == "ellipsoid") {
    reject_unknown(v, {"radii"}, p);
    return make_ellipsoid(parse_vec(v.at("radii"), p + "/radii"));
  }
  if (tag == "elliptic_ball") {
    reject_unknown(v, {"axes"}, p);
    return make_elliptic_ball(parse_vec(v.at("axes"), p + "/axes"));
  }
  if (tag == "ball") {
    reject_unknown(v, {"center", "a", "dim", "radius"}, p);
    const double r = parse_real(v.at("radius"), p + "/radius");
    if (v.contains("center"))
      return make_ball(parse_vec(v.at("center"), p + "/center"), r);
    if (v.contains("a")) {
      if (!v.contains("dim"))
        throw SchemaError(p, "ball with \"a\" shorthand needs \"dim\"");
      const int d = parse_int(v.at("dim"), p + "/dim");
      if (d < 2 || d % 2) throw SchemaError(p + "/dim", "need even dim >= 2");
      return make_offcenter_ball(d / 2, parse_real(v.at("a"), p + "/a"), r);
    }
    if (!v.contains("dim"))
      throw SchemaError(p, "ball needs \"center\", or \"a\"/\"dim\"");
    return make_ball(parse_int(v.at("dim"), p + "/dim"), r);
  }
  if (tag == "box") {
    reject_unknown(v, {"intervals"}, p);
    const Json& arr = v.at("intervals");
    if (!arr.is_array()) throw SchemaError(p + "/intervals", "expected array");
    std::vector<std::array<double, 4>> quads;
    for (size_t i = 0; i < arr.size(); ++i) {
      const Vec q = parse_vec(arr[i], p + "/intervals/" + std::to_string(i));
      if (q.size() != 4)
        throw SchemaError(p + "/intervals/" + std::to_string(i),
                          "expected [a, b, c, d]");
      quads.push_back({q(0), q(1), q(2), q(3)});
    }
    return make_box(quads);
  }
  if (tag == "interval_box") {
    reject_unknown(v, {"bounds"}, p);
    const Json& arr = v.at("bounds");
    if (!arr.is_array()) throw SchemaError(p + "/bounds", "expected array");
    std::vector<std::pair<double, double>> b;
    for (size_t i = 0; i < arr.size(); ++i) {
      const Vec q = parse_vec(arr[i], p + "/bounds/" + std::to_string(i));
      if (q.size() != 2)
        throw SchemaError(p + "/bounds/" + std::to_string(i),
                          "expected [lo, hi]");
      b.emplace_back(q(0), q(1));
    }
    return make_interval_box(b);
  }
  if (tag == "polydisc") {
    reject_unknown(v, {"radii"}, p);
    return make_polydisc(parse_vec(v.at("radii"), p + "/radii"));
  }
  if (tag == "polytope") {
    reject_unknown(v, {"vertices", "centrally_symmetric"}, p);
    const Json& arr = v.at("vertices");
    if (!arr.is_array() || arr.empty())
      throw SchemaError(p + "/vertices", "expected a nonempty array");
    const Vec first = parse_vec(arr[0], p + "/vertices/0");
    Mat verts(first.size(), arr.size());
    verts.col(0) = first;
    for (size_t i = 1; i < arr.size(); ++i) {
      const Vec vi = parse_vec(arr[i], p + "/vertices/" + std::to_string(i));
      if (vi.size() != first.size())
        throw SchemaError(p + "/vertices/" + std::to_string(i),
                          "inconsistent vertex dimension");
      verts.col(static_cast<Eigen::Index>(i)) = vi;
    }
    bool sym = false;
    if (v.contains("centrally_symmetric")) {
      if (!v.at("centrally_symmetric").is_boolean())
        throw SchemaError(p + "/centrally_symmetric", "expected a boolean");
      sym = v.at("centrally_symmetric").get<bool>();
    }
    return make_vertex_polytope(verts, sym);
  }
  if (tag == "cube") {
    reject_unknown(v, {"dim", "half_width"}, p);
    return make_cube(parse_int(v.at("dim"), p + "/dim"),
                     parse_real(v.at("half_width"), p + "/half_width"));
  }
  if (tag == "cross_polytope") {
    reject_unknown(v, {"dim", "scale"}, p);
    return make_cross_polytope(parse_int(v.at("dim"), p + "/dim"),
                               parse_real(v.at("scale"), p + "/scale"));
  }
  if (tag == "product") {
    reject_unknown(v, {"left", "right"}, p);
    return make_product(body_from_json(v.at("left"), p + "/left"),
                        body_from_json(v.at("right"), p + "/right"));
  }
  if (tag == "lagrangian_product") {
    reject_unknown(v, {"q", "p"}, p);
    return make_lagrangian_product(body_from_json(v.at("q"), p + "/q"),
                                   body_from_json(v.at("p"), p + "/p"));
  }
  if (tag == "polar") {
    reject_unknown(v, {"of"}, p);
    return make_polar(body_from_json(v.at("of"), p + "/of"));
  }
  if (tag == "psum") {
    reject_unknown(v, {"p", "left", "right"}, p);
    return make_psum(parse_real(v.at("p"), p + "/p"),
                     body_from_json(v.at("left"), p + "/left"),
                     body_from_json(v.at("right"), p + "/right"));
  }
  if (tag == "scale") {
    reject_unknown(v, {"factor", "of"}, p);
    return make_scale(parse_real(v.at("factor"), p + "/factor"),
                      body_from_json(v.at("of"), p + "/of"));
  }
  if (tag == "translate") {
    reject_unknown(v, {"shift", "of"}, p);
    return make_translate(parse_vec(v.at("shift"), p + "/shift"),
                          body_from_json(v.at("of"), p + "/of"));
  }
  if (tag == "symm_diff") {
    reject_unknown(v, {"of"}, p);
    return make_symm_diff(body_from_json(v.at("of"), p + "/of"));
  }
  throw SchemaError(p, "unknown body tag");
}

namespace {

class Serializer : public BodyVisitor {
 public:
  Json out;

  void elliptic_ball(const Vec& axes) override {
    // Paired axes serialize in the symplectic radii form.
    const int d = static_cast<int>(axes.size());
    if (d % 2 == 0) {
      const int n = d / 2;
      bool paired = true;
      for (int i = 0; i < n; ++i)
        if (axes(i) != axes(n + i)) paired = false;
      if (paired) {
        out = Json{{"ellipsoid", {{"radii", vec_json(axes.head(n))}}}};
        return;
      }
    }
    out = Json{{"elliptic_ball", {{"axes", vec_json(axes)}}}};
  }
  void ball(const Vec& center, double radius) override {
    out = Json{{"ball",
                {{"center", vec_json(center)}, {"radius", real_json(radius)}}}};
  }
  void interval_box(const std::vector<std::pair<double, double>>& b) override {
    Json arr = Json::array();
    for (auto& [lo, hi] : b)
      arr.push_back(Json::array({real_json(lo), real_json(hi)}));
    out = Json{{"interval_box", {{"bounds", arr}}}};
  }
  void polydisc(const Vec& radii) override {
    out = Json{{"polydisc", {{"radii", vec_json(radii)}}}};
  }
  void vertex_polytope(const Mat& v, bool sym) override {
    Json arr = Json::array();
    for (Eigen::Index j = 0; j < v.cols(); ++j)
      arr.push_back(vec_json(v.col(j)));
    out = Json{{"polytope",
                {{"centrally_symmetric", sym}, {"vertices", arr}}}};
  }
  void product(const BodyPtr& l, const BodyPtr& r) override {
    out = Json{{"product",
                {{"left", body_to_json(*l)}, {"right", body_to_json(*r)}}}};
  }
  void lagrangian_product(const BodyPtr& q, const BodyPtr& p) override {
    out = Json{{"lagrangian_product",
                {{"p", body_to_json(*p)}, {"q", body_to_json(*q)}}}};
  }
  void polar(const BodyPtr& of) override {
    out = Json{{"polar", {{"of", body_to_json(*of)}}}};
  }
  void psum(double p, const BodyPtr& l, const BodyPtr& r) override {
    out = Json{{"psum",
                {{"left", body_to_json(*l)},
                 {"p", real_json(p)},
                 {"right", body_to_json(*r)}}}};
  }
  void scale(double f, const BodyPtr& of) override {
    out = Json{{"scale",
                {{"factor", real_json(f)}, {"of", body_to_json(*of)}}}};
  }
  void translate(const Vec& s, const BodyPtr& of) override {
    out = Json{{"translate",
                {{"of", body_to_json(*of)}, {"shift", vec_json(s)}}}};
  }
  void symm_diff(const BodyPtr& of) override {
    out = Json{{"symm_diff", {{"of", body_to_json(*of)}}}};
  }
};

}  // namespace

Json body_to_json(const Body& body) {
  Serializer s;
  body.accept(s);
  return s.out;
}

JobSpec job_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("/", "job must be an object");
  reject_unknown(doc,
                 {"command", "body", "body2", "frame", "method", "solver",
                  "check", "spectrum", "chord", "out", "csv"},
                 "");
  JobSpec job;
  if (!doc.contains("command"))
    throw SchemaError("/command", "missing required field");
  job.command = doc.at("command").get<std::string>();
  const std::set<std::string> commands{"capacity", "spectrum", "chord",
                                       "check", "corpus"};
  if (!commands.count(job.command))
    throw SchemaError("/command", "unknown command " + job.command);

  if (doc.contains("body")) job.body = body_from_json(doc.at("body"));
  if (doc.contains("body2")) job.body2 = body_from_json(doc.at("body2"), "/body2");
  if (doc.contains("frame")) {
    const Json& f = doc.at("frame");
    reject_unknown(f, {"n", "k"}, "/frame");
    job.frame = Frame(parse_int(f.at("n"), "/frame/n"),
                      parse_int(f.at("k"), "/frame/k"));
    job.frame_set = true;
  }
  if (doc.contains("method")) {
    job.method = doc.at("method").get<std::string>();
    const std::set<std::string> methods{"auto", "closed_form", "solver",
                                        "flow"};
    if (!methods.count(job.method))
      throw SchemaError("/method", "unknown method " + job.method);
  }
  if (doc.contains("solver")) {
    const Json& s = doc.at("solver");
    reject_unknown(s, {"N", "max_iters", "tol_rel", "restarts", "seed", "p",
                       "threads"},
                   "/solver");
    if (s.contains("N")) job.solver.N = parse_int(s.at("N"), "/solver/N");
    if (s.contains("max_iters"))
      job.solver.max_iters = parse_int(s.at("max_iters"), "/solver/max_iters");
    if (s.contains("tol_rel"))
      job.solver.tol_rel = parse_real(s.at("tol_rel"), "/solver/tol_rel");
    if (s.contains("restarts"))
      job.solver.restarts = parse_int(s.at("restarts"), "/solver/restarts");
    if (s.contains("seed"))
      job.solver.seed =
          static_cast<std::uint64_t>(parse_int(s.at("seed"), "/solver/seed"));
    if (s.contains("p")) job.solver.p = parse_real(s.at("p"), "/solver/p");
    if (s.contains("threads"))
      job.solver.threads = parse_int(s.at("threads"), "/solver/threads");
    if (job.solver.tol_rel <= 0 || job.solver.tol_rel > 1e-2)
      throw SchemaError("/solver/tol_rel", "must lie in (0, 1e-2]");
  }
  if (doc.contains("check")) {
    const Json& c = doc.at("check");
    reject_unknown(c, {"name", "p", "eps_ladder"}, "/check");
    job.check_name = c.at("name").get<std::string>();
    if (c.contains("p")) job.check_p = parse_real(c.at("p"), "/check/p");
    if (c.contains("eps_ladder")) {
      job.eps_ladder.clear();
      const Vec e = parse_vec(c.at("eps_ladder"), "/check/eps_ladder");
      for (Eigen::Index i = 0; i < e.size(); ++i)
        job.eps_ladder.push_back(e(i));
    }
  }
  if (doc.contains("spectrum")) {
    const Json& s = doc.at("spectrum");
    reject_unknown(s, {"radii", "cutoff"}, "/spectrum");
    job.radii = parse_vec(s.at("radii"), "/spectrum/radii");
    job.cutoff = parse_real(s.at("cutoff"), "/spectrum/cutoff");
  }
  if (doc.contains("chord")) {
    const Json& c = doc.at("chord");
    reject_unknown(c, {"a", "radius", "samples"}, "/chord");
    job.ball_a = parse_real(c.at("a"), "/chord/a");
    job.ball_radius = parse_real(c.at("radius"), "/chord/radius");
    if (c.contains("samples"))
      job.chord_samples = parse_int(c.at("samples"), "/chord/samples");
  }
  if (doc.contains("out")) job.out_path = doc.at("out").get<std::string>();
  if (doc.contains("csv")) job.csv_path = doc.at("csv").get<std::string>();
  return job;
}

Json chord_to_json(const Chord& c) {
  Json out;
  out["action"] = real_json(c.action);
  out["return_time"] = real_json(c.return_time);
  Json res;
  for (const auto& [k, v] : c.residuals) res[k] = real_json(v);
  out["residuals"] = res;
  Json samples = Json::array();
  for (Eigen::Index j = 0; j < c.path.samples.cols(); ++j)
    samples.push_back(vec_json(c.path.samples.col(j)));
  out["samples"] = samples;
  return out;
}

std::string chord_csv(const Chord& c) {
  std::ostringstream os;
  const int d = static_cast<int>(c.path.samples.rows());
  os << "t";
  for (int i = 0; i < d / 2; ++i) os << ",q" << i + 1;
  for (int i = 0; i < d / 2; ++i) os << ",p" << i + 1;
  os << "\n";
  const int N = static_cast<int>(c.path.samples.cols()) - 1;
  for (int j = 0; j <= N; ++j) {
    os << format_real(static_cast<double>(j) / N);
    for (int i = 0; i < d; ++i)
      os << ',' << format_real(c.path.samples(i, j));
    os << "\n";
  }
  return os.str();
}

Json capacity_result_to_json(const CapacityResult& r) {
  Json out;
  out["value"] = real_json(r.value);
  out["method"] = r.method;
  if (!r.formula_id.empty()) out["formula_id"] = r.formula_id;
  out["bracket"] = Json::array({real_json(r.lower), real_json(r.upper)});
  if (r.carrier) out["carrier"] = chord_to_json(*r.carrier);
  return out;
}

Json solve_result_to_json(const SolveResult& r) {
  Json out;
  out["capacity"] = real_json(r.capacity);
  out["multiplier_a0"] = vec_json(r.multiplier_a0);
  out["normalization_shift"] = vec_json(r.normalization_shift);
  out["carrier"] = chord_to_json(r.carrier);
  Json diag;
  diag["iterations"] = r.diagnostics.iterations;
  diag["stationarity"] = real_json(r.diagnostics.stationarity);
  diag["constraint_residual"] = real_json(r.diagnostics.constraint_residual);
  diag["gauge_variation"] = real_json(r.diagnostics.gauge_variation);
  diag["converged"] = r.diagnostics.converged;
  Json rv = Json::array();
  for (double v : r.diagnostics.restart_values) rv.push_back(real_json(v));
  diag["restart_values"] = rv;
  out["diagnostics"] = diag;
  return out;
}

Json inequality_report_to_json(const InequalityReport& r) {
  Json out;
  out["formula_id"] = r.formula_id;
  out["lhs"] = real_json(r.lhs);
  out["rhs"] = real_json(r.rhs);
  out["slack"] = real_json(r.slack);
  out["holds"] = r.holds;
  out["tol"] = real_json(r.tol);
  out["inputs"] = r.inputs;
  return out;
}

std::string inequality_csv_row(const InequalityReport& r) {
  std::ostringstream os;
  os << r.formula_id << ',' << format_real(r.lhs) << ',' << format_real(r.rhs)
     << ',' << format_real(r.slack) << ',' << (r.holds ? "true" : "false")
     << '\n';
  return os.str();
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << text;
}

void emit_json(const JobSpec& job, const Json& doc) {
  write_text(job.out_path, doc.dump(2) + "\n");
}

int run_capacity(const JobSpec& job) {
  if (!job.body) throw SchemaError("/body", "capacity requires a body");
  if (!job.frame_set) throw SchemaError("/frame", "capacity requires a frame");
  int status = 0;
  CapacityResult cap;
  try {
    cap = compute_capacity(job.body, job.frame, job.solver, job.method);
  } catch (const ConvergenceError& e) {
    cap.value = e.best.capacity;
    cap.method = "dual-solver";
    cap.upper = e.best.capacity;
    cap.lower = 0.0;
    cap.carrier = e.best.carrier;
    status = 4;
  }
  Json out = capacity_result_to_json(cap);
  if (status == 4) out["converged"] = false;
  emit_json(job, out);
  if (!job.csv_path.empty() && cap.carrier)
    write_text(job.csv_path, chord_csv(*cap.carrier));
  return status;
}

int run_spectrum(const JobSpec& job) {
  if (job.radii.size() == 0)
    throw SchemaError("/spectrum/radii", "spectrum requires radii");
  if (!job.frame_set) throw SchemaError("/frame", "spectrum requires a frame");
  const double cutoff = job.cutoff > 0 ? job.cutoff : 8.0;
  auto spec = return_spectrum(job.frame, job.radii, cutoff);
  const std::string csv = spectrum_csv(spec);
  if (!job.csv_path.empty()) write_text(job.csv_path, csv);
  Json out;
  out["count"] = spec.size();
  out["minimum"] = spec.empty() ? Json() : Json(format_real(spec.front().action));
  emit_json(job, out);
  if (job.csv_path.empty()) write_text("-", csv);
  return 0;
}

int run_chord(const JobSpec& job) {
  if (!job.frame_set) throw SchemaError("/frame", "chord requires a frame");
  Chord c = ball_chord(job.frame, job.ball_a, job.ball_radius,
                       job.chord_samples);
  emit_json(job, chord_to_json(c));
  if (!job.csv_path.empty()) write_text(job.csv_path, chord_csv(c));
  return 0;
}

int run_check(const JobSpec& job) {
  if (!job.body) throw SchemaError("/body", "check requires a body");
  InequalityReport rep;
  if (job.check_name == "j_norm") {
    JNormOptions opt;
    opt.wrap_symm_diff = true;
    rep = j_norm_upper_bound(job.body, job.frame, job.solver, opt);
  } else if (job.check_name == "brunn_minkowski") {
    if (!job.body2) throw SchemaError("/body2", "pair check requires body2");
    rep = brunn_minkowski_check(job.body, job.body2, job.check_p, job.frame,
                                job.solver);
  } else if (job.check_name == "sandwich") {
    rep = sandwich_check(job.body, job.frame, job.solver);
  } else if (job.check_name == "inscribed_ball") {
    rep = inscribed_ball_lower_bound(job.body, job.frame, job.solver);
  } else if (job.check_name == "viterbo_ratio") {
    rep = viterbo_ratio(job.body, job.frame, job.solver);
  } else if (job.check_name == "mean_width") {
    if (!job.body2) throw SchemaError("/body2", "pair check requires body2");
    rep = mean_width_bound(job.body, job.body2, job.solver);
  } else if (job.check_name == "dk_derivative") {
    if (!job.body2) throw SchemaError("/body2", "pair check requires body2");
    DkResult dk =
        dk_derivative(job.body, job.body2, job.frame, job.solver,
                      job.eps_ladder);
    Json out;
    out["estimate"] = real_json(dk.estimate);
    out["lower"] = real_json(dk.lower);
    out["upper"] = real_json(dk.upper);
    out["bracket_holds"] = dk.bracket_holds;
    Json q = Json::array();
    for (double x : dk.quotients) q.push_back(real_json(x));
    out["quotients"] = q;
    emit_json(job, out);
    return dk.bracket_holds ? 0 : 1;
  } else {
    throw SchemaError("/check/name", "unknown check " + job.check_name);
  }
  emit_json(job, inequality_report_to_json(rep));
  if (!job.csv_path.empty()) write_text(job.csv_path, inequality_csv_row(rep));
  return rep.holds ? 0 : 1;
}

int run_corpus(const JobSpec& job) {
  // Golden closed-form rows cross-checked by the solver.
  struct Row {
    std::string formula_id;
    BodyPtr body;
    Frame frame;
    double expected;
  };
  std::vector<Row> rows;
  {
    Vec r2(2);
    r2 << 1.0, 1.0;
    rows.push_back({"ball_n2_k0", make_ball(4, 1.0), Frame(2, 0),
                    ellipsoid_capacity(Frame(2, 0), r2).value});
    rows.push_back({"ball_n2_k1", make_ball(4, 1.0), Frame(2, 1),
                    ellipsoid_capacity(Frame(2, 1), r2).value});
    Vec re(2);
    re << 1.0, 2.0;
    rows.push_back({"ellipsoid_12_k1", make_ellipsoid(re), Frame(2, 1),
                    ellipsoid_capacity(Frame(2, 1), re).value});
    rows.push_back({"polydisc_1_sqrt2", make_polydisc(Vec((Vec(2) << 1.0, std::sqrt(2.0)).finished())),
                    Frame(2, 1),
                    polydisc_capacity(Frame(2, 1), (Vec(2) << 1.0, std::sqrt(2.0)).finished()).value});
    std::vector<std::array<double, 4>> quads{{0.0, 1.0, 1.0, 1.0},
                                             {0.0, 2.0, 1.0, 3.0}};
    rows.push_back({"box_n2_k1", make_box(quads), Frame(2, 1),
                    box_capacity(Frame(2, 1), quads).value});
    rows.push_back({"offcenter_ball_a05", make_offcenter_ball(1, 0.5, 1.0),
                    Frame(1, 0),
                    offcenter_ball_capacity(Frame(1, 0), 0.5, 1.0).value});
    BodyPtr cube = make_cube(2, 1.0);
    rows.push_back({"cube_x_polar_k0",
                    make_lagrangian_product(cube, make_polar(cube)),
                    Frame(2, 0), 2.0});
  }
  std::ostringstream table;
  table << "formula_id,expected,computed,rel_error\n";
  bool all_ok = true;
  Json jrows = Json::array();
  for (const auto& row : rows) {
    SolveResult sr;
    try {
      sr = solve(row.body, row.frame, job.solver);
    } catch (const ConvergenceError& e) {
      sr = e.best;
    }
    const double rel =
        std::abs(sr.capacity - row.expected) / std::abs(row.expected);
    all_ok = all_ok && rel < 0.02;
    table << row.formula_id << ',' << format_real(row.expected) << ','
          << format_real(sr.capacity) << ',' << format_real(rel) << "\n";
    Json jr;
    jr["formula_id"] = row.formula_id;
    jr["expected"] = real_json(row.expected);
    jr["computed"] = real_json(sr.capacity);
    jr["rel_error"] = real_json(rel);
    jrows.push_back(jr);
  }
  Json out;
  out["rows"] = jrows;
  out["all_within_tolerance"] = all_ok;
  emit_json(job, out);
  if (!job.csv_path.empty()) write_text(job.csv_path, table.str());
  return all_ok ? 0 : 1;
}

}  // namespace

int run_job(const JobSpec& job) {
  try {
    if (job.command == "capacity") return run_capacity(job);
    if (job.command == "spectrum") return run_spectrum(job);
    if (job.command == "chord") return run_chord(job);
    if (job.command == "check") return run_check(job);
    if (job.command == "corpus") return run_corpus(job);
    throw SchemaError("/command", "unknown command");
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    std::cout << "{\"best_upper_bound\": \"" << format_real(e.best.capacity)
              << "\"}\n";
    return 4;
  } catch (const Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cochord
