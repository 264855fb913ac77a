#include <doctest.h>

#include "cochord/json_io.hpp"
#include "cochord/solver.hpp"

using namespace cochord;

namespace {

std::string canon(const std::string& text) {
  const Json doc = Json::parse(text);
  return body_to_json(*body_from_json(doc)).dump();
}

}  // namespace

TEST_CASE("canonicalized bodies round-trip byte-identically") {
  for (const char* text : {
           R"({"ellipsoid":{"radii":[1,2]}})",
           R"({"psum":{"p":2,"left":{"ball":{"dim":4,"radius":1}},"right":{"ellipsoid":{"radii":[1,2]}}}})",
           R"({"ball":{"center":[0,0,0,0.5],"radius":1}})",
           R"({"box":{"intervals":[[0,2,1,3]]}})",
           R"({"polydisc":{"radii":[1,1.5]}})",
           R"({"polytope":{"vertices":[[1,0],[-1,0],[0,1],[0,-1]],"centrally_symmetric":true}})",
           R"({"product":{"left":{"ball":{"dim":2,"radius":1}},"right":{"ball":{"dim":2,"radius":2}}}})",
           R"({"lagrangian_product":{"q":{"elliptic_ball":{"axes":[1,2]}},"p":{"ball":{"dim":2,"radius":1}}}})",
           R"({"scale":{"factor":2,"of":{"ellipsoid":{"radii":[1]}}}})",
           R"({"translate":{"shift":[0.5,0],"of":{"ball":{"dim":2,"radius":1}}}})",
           R"({"symm_diff":{"of":{"psum":{"p":1,"left":{"ball":{"dim":2,"radius":1}},"right":{"ball":{"dim":2,"radius":1}}}}}})",
       }) {
    const std::string once = canon(text);
    CHECK(canon(once) == once);
  }
}

TEST_CASE("ball shorthand expands to the last-coordinate center") {
  auto b = body_from_json(Json::parse(R"({"ball":{"a":0.5,"dim":4,"radius":1}})"));
  const Json out = body_to_json(*b);
  CHECK(out.at("ball").at("center")[3].get<std::string>() == "0.5");
  CHECK(out.at("ball").at("center")[0].get<std::string>() == "0");
}

TEST_CASE("reals parse from numbers and decimal strings") {
  auto a = body_from_json(Json::parse(R"({"ball":{"dim":2,"radius":1.25}})"));
  auto b = body_from_json(Json::parse(R"({"ball":{"dim":2,"radius":"1.25"}})"));
  CHECK(body_to_json(*a) == body_to_json(*b));
  CHECK_THROWS_AS(
      body_from_json(Json::parse(R"({"ball":{"dim":2,"radius":"1.2x"}})")),
      SchemaError);
}

TEST_CASE("unknown fields are rejected with pointer paths") {
  try {
    body_from_json(Json::parse(R"({"ellipsoid":{"radii":[1],"extra":3}})"));
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("/ellipsoid/extra") != std::string::npos);
  }
  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"blob":{}})")), SchemaError);
  CHECK_THROWS_AS(body_from_json(Json::parse(R"([1,2])")), SchemaError);
}

TEST_CASE("job documents parse with overrides and reject junk") {
  const Json doc = Json::parse(R"({
    "command": "capacity",
    "body": {"ellipsoid": {"radii": [1, 1]}},
    "frame": {"n": 2, "k": 1},
    "method": "closed_form",
    "solver": {"N": 128, "seed": 7, "restarts": 3, "tol_rel": 1e-3}
  })");
  const JobSpec job = job_from_json(doc);
  CHECK(job.command == "capacity");
  CHECK(job.frame.n == 2);
  CHECK(job.frame.k == 1);
  CHECK(job.solver.N == 128);
  CHECK(job.solver.seed == 7);
  CHECK(job.method == "closed_form");

  Json bad = doc;
  bad["surprise"] = 1;
  CHECK_THROWS_AS(job_from_json(bad), SchemaError);
  Json badcmd = doc;
  badcmd["command"] = "explode";
  CHECK_THROWS_AS(job_from_json(badcmd), SchemaError);
  Json badtol = doc;
  badtol["solver"]["tol_rel"] = 0.5;
  CHECK_THROWS_AS(job_from_json(badtol), SchemaError);
}

TEST_CASE("malformed documents throw, never crash") {
  const std::string base =
      R"({"psum":{"p":2,"left":{"ball":{"dim":4,"radius":1}},)"
      R"("right":{"ellipsoid":{"radii":[1,2]}}}})";
  // Structural mutations: truncations and field drops must raise a typed
  // error (schema or json), never anything else.
  for (size_t cut = 10; cut < base.size(); cut += 7) {
    const std::string text = base.substr(0, cut);
    try {
      body_from_json(Json::parse(text));
    } catch (const SchemaError&) {
    } catch (const Json::exception&) {
    }
  }
  CHECK_THROWS(body_from_json(Json::parse(R"({"ellipsoid":{}})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"ball":{"radius":[1]}})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"polytope":{"vertices":[]}})")));
  CHECK_THROWS(job_from_json(Json::parse(R"({})")));
}

TEST_CASE("result serialization uses decimal strings") {
  CapacityResult r;
  r.value = 1.5707963267948966;
  r.method = "closed-form";
  r.formula_id = "ellipsoid";
  r.lower = r.upper = r.value;
  const Json out = capacity_result_to_json(r);
  CHECK(out.at("value").get<std::string>() == "1.5707963267948966");
  CHECK(out.at("bracket")[0].get<std::string>() ==
        out.at("bracket")[1].get<std::string>());
}

TEST_CASE("solve results serialize with carrier samples and diagnostics") {
  SolveConfig cfg;
  cfg.N = 32;
  cfg.max_iters = 800;
  cfg.restarts = 2;
  SolveResult r;
  try {
    r = solve(make_ball(2, 1.0), Frame(1, 0), cfg);
  } catch (const ConvergenceError& e) {
    r = e.best;
  }
  const Json out = solve_result_to_json(r);
  CHECK(out.at("carrier").at("samples").size() == 33);
  CHECK(out.at("carrier").at("samples")[0].size() == 2);
  CHECK(out.at("diagnostics").contains("stationarity"));
  CHECK(out.at("multiplier_a0").size() == 2);
  // Decimal-string reals throughout.
  CHECK(out.at("capacity").is_string());
  CHECK(out.at("carrier").at("samples")[0][0].is_string());
}

TEST_CASE("inequality CSV row") {
  InequalityReport rep;
  rep.formula_id = "sandwich";
  rep.lhs = 1.0;
  rep.rhs = 2.0;
  rep.slack = 1.0;
  rep.holds = true;
  const std::string row = inequality_csv_row(rep);
  CHECK(row == "sandwich,1,2,1,true\n");
}
