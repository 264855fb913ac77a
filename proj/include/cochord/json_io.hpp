/**
 * @file json_io.hpp
 * @brief JSON body schema, job specifications, and result serialization.
 *
 * All reals are serialized as decimal strings with 17 significant digits so
 * canonical documents round-trip byte-identically.  Parsers reject unknown
 * fields and report JSON-pointer-style paths.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cochord/body.hpp"
#include "cochord/bounds.hpp"
#include "cochord/flow.hpp"
#include "cochord/solver.hpp"

namespace cochord {

using Json = nlohmann::json;

/// Thrown on malformed documents; maps to exit code 2.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

std::string format_real(double v);

BodyPtr body_from_json(const Json& doc, const std::string& path = "/body");
Json body_to_json(const Body& body);

struct JobSpec {
  std::string command;  // capacity | spectrum | chord | check | corpus
  BodyPtr body;
  BodyPtr body2;  // pair operand for two-body checks
  Frame frame{1, 0};
  bool frame_set = false;
  std::string method = "auto";
  SolveConfig solver;
  // check
  std::string check_name;
  double check_p = 2.0;
  std::vector<double> eps_ladder{0.2, 0.1, 0.05};
  // spectrum / chord
  Vec radii;
  double cutoff = 0.0;
  double ball_a = 0.0;
  double ball_radius = 1.0;
  int chord_samples = 2048;
  // outputs
  std::string out_path;   // "-" or empty: stdout
  std::string csv_path;
};

JobSpec job_from_json(const Json& doc);

Json capacity_result_to_json(const CapacityResult& r);
Json solve_result_to_json(const SolveResult& r);
Json inequality_report_to_json(const InequalityReport& r);
Json chord_to_json(const Chord& c);
std::string chord_csv(const Chord& c);
std::string inequality_csv_row(const InequalityReport& r);

/// Executes a job; writes artifacts; returns the process exit status:
/// 0 success, 2 schema error, 3 domain error, 4 convergence failure
/// (best upper bound still emitted).
int run_job(const JobSpec& job);

}  // namespace cochord
