// Command-line surface over the capacity library: capacity, spectrum,
// chord, check and corpus jobs driven by JSON body/job documents.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cochord/json_io.hpp"

namespace {

using cochord::Json;
using cochord::JobSpec;

Json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw cochord::SchemaError(path, "cannot open file");
  Json doc;
  try {
    is >> doc;
  } catch (const std::exception& e) {
    throw cochord::SchemaError(path, std::string("JSON parse error: ") +
                                         e.what());
  }
  return doc;
}

struct CliOptions {
  std::string job_file;
  std::string body_file;
  std::string body2_file;
  int n = 0;
  int k = -1;
  std::string method;
  int N = 0;
  double p = 0.0;
  long seed = -1;
  int restarts = 0;
  double tol = 0.0;
  std::string out;
  std::string csv;
  std::string check_name;
  std::vector<double> radii;
  double cutoff = 0.0;
  double chord_a = 0.0;
  double chord_radius = 1.0;
  int chord_samples = 2048;
};

void apply_overrides(JobSpec& job, const CliOptions& o) {
  if (!o.body_file.empty())
    job.body = cochord::body_from_json(load_json_file(o.body_file));
  if (!o.body2_file.empty())
    job.body2 = cochord::body_from_json(load_json_file(o.body2_file), "/body2");
  if (o.n > 0) {
    const int k = (o.k >= 0) ? o.k : 0;
    job.frame = cochord::Frame(o.n, k);
    job.frame_set = true;
  }
  if (!o.method.empty()) job.method = o.method;
  if (o.N > 0) job.solver.N = o.N;
  if (o.p > 0) job.solver.p = o.p;
  if (o.seed >= 0) job.solver.seed = static_cast<std::uint64_t>(o.seed);
  if (o.restarts > 0) job.solver.restarts = o.restarts;
  if (o.tol > 0) job.solver.tol_rel = o.tol;
  if (!o.out.empty()) job.out_path = o.out;
  if (!o.csv.empty()) job.csv_path = o.csv;
  if (!o.check_name.empty()) job.check_name = o.check_name;
  if (!o.radii.empty()) {
    job.radii.resize(static_cast<Eigen::Index>(o.radii.size()));
    for (size_t i = 0; i < o.radii.size(); ++i)
      job.radii(static_cast<Eigen::Index>(i)) = o.radii[i];
  }
  if (o.cutoff > 0) job.cutoff = o.cutoff;
  job.ball_a = o.chord_a;
  if (o.chord_radius > 0) job.ball_radius = o.chord_radius;
  if (o.chord_samples > 0) job.chord_samples = o.chord_samples;
}

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--job", o.job_file, "JSON job file");
  cmd->add_option("--body", o.body_file, "JSON body file");
  cmd->add_option("--n", o.n, "half-dimension n");
  cmd->add_option("--k", o.k, "coisotropic index k");
  cmd->add_option("--method", o.method,
                  "closed_form | solver | flow | auto");
  cmd->add_option("--N", o.N, "segment count");
  cmd->add_option("--p", o.p, "dual exponent");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--restarts", o.restarts, "multistart count");
  cmd->add_option("--tol", o.tol, "relative objective tolerance");
  cmd->add_option("--out", o.out, "output JSON path (default stdout)");
  cmd->add_option("--csv", o.csv, "output CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coisotropic capacities of convex bodies"};
  app.require_subcommand(1);
  CliOptions o;

  CLI::App* cap = app.add_subcommand("capacity", "compute a capacity");
  add_common(cap, o);
  CLI::App* spec = app.add_subcommand("spectrum", "ellipsoid chord spectrum");
  add_common(spec, o);
  spec->add_option("--radii", o.radii, "ellipsoid radii");
  spec->add_option("--cutoff", o.cutoff, "action cutoff");
  CLI::App* chord = app.add_subcommand("chord", "off-center ball chord");
  add_common(chord, o);
  chord->add_option("--a", o.chord_a, "center offset");
  chord->add_option("--radius", o.chord_radius, "ball radius");
  chord->add_option("--samples", o.chord_samples, "sample count");
  CLI::App* check = app.add_subcommand("check", "run a named inequality");
  add_common(check, o);
  check->add_option("--name", o.check_name,
                    "j_norm | brunn_minkowski | sandwich | inscribed_ball | "
                    "viterbo_ratio | mean_width | dk_derivative");
  check->add_option("--body2", o.body2_file, "JSON body file (pair operand)");
  CLI::App* corpus = app.add_subcommand("corpus", "golden suite table");
  add_common(corpus, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    JobSpec job;
    if (!o.job_file.empty()) {
      job = cochord::job_from_json(load_json_file(o.job_file));
    } else {
      job.command = app.get_subcommands().front()->get_name();
    }
    apply_overrides(job, o);
    return cochord::run_job(job);
  } catch (const cochord::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const cochord::Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
