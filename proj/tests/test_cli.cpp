#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "nkv/cli.hpp"
#include "nkv/model_io.hpp"

using namespace nkv;

namespace {

struct Outcome {
  int code;
  Json json;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  Json j = out.str().empty() ? Json() : Json::parse(out.str());
  return {code, j, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NKV_DATA_DIR) + "/" + name; }

const Json* find_check(const Json& j, const std::string& name) {
  for (const Json& s : j["reports"])
    for (const Json& c : s["checks"])
      if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("verify s6") {
  Outcome o = run({"verify", "s6"});
  CHECK(o.code == 0);
  CHECK(o.json["passed"] == true);
  CHECK(o.json["exit_code"] == 0);
  CHECK(o.json["tool_version"] == kToolVersion);
  CHECK(o.json["summary"]["alpha_type"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(o.json["summary"]["scalar_curvature"].get<double>() == doctest::Approx(30.0).epsilon(1e-12));
  REQUIRE(o.json["summary"]["spectrum"].size() == 1);
  CHECK(o.json["summary"]["spectrum"][0]["multiplicity"] == 6);
  CHECK(find_check(o.json, "anchors") != nullptr);
  CHECK(o.err.find("nk1") != std::string::npos);
}

TEST_CASE("verify a flat model") {
  Outcome o = run({"verify", "flat-kahler:3"});
  CHECK(o.code == 0);
  CHECK(o.json["summary"]["kernel_dim"] == 6);
  CHECK(o.json["summary"]["is_strict"] == false);
}

TEST_CASE("verify a broken model file") {
  Outcome o = run({"verify", data("broken.json")});
  CHECK(o.code == 1);
  CHECK(o.json["passed"] == false);
  const Json* nk1 = find_check(o.json, "nk1");
  REQUIRE(nk1 != nullptr);
  CHECK((*nk1)["status"] == "fail");
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"verify", data("odd_dim.json")}).code == 2);
  CHECK(run({"verify", data("ragged.json")}).code == 2);
  CHECK(run({"verify", "nosuch"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classify-su2", "--samples", "10"}).code == 2);
  Outcome o = run({"verify", data("odd_dim.json")});
  CHECK(o.json.contains("error"));
}

TEST_CASE("lagrangian runs") {
  Outcome good = run({"lagrangian", "--basis", data("s6_lagrangian.json")});
  CHECK(good.code == 0);
  Outcome bad = run({"lagrangian", "--basis", data("not_lagrangian.json")});
  CHECK(bad.code == 1);
  CHECK(bad.json["error"].dump().find("omega(x_0, x_1)") != std::string::npos);
  Outcome rnd = run({"lagrangian", "product:c1,s6", "--random", "20", "--seed", "3"});
  CHECK(rnd.code == 0);
  CHECK(rnd.json["seed"] == 3);
}

TEST_CASE("twistor runs") {
  Outcome n1 = run({"twistor", "-n", "1"});
  CHECK(n1.code == 0);
  const Json* tb = find_check(n1.json, "theorem-b");
  REQUIRE(tb != nullptr);
  CHECK((*tb)["status"] == "skipped");
  Outcome n2 = run({"twistor", "-n", "2", "-k", "0.5"});
  CHECK(n2.code == 0);
  const Json& sp = n2.json["summary"]["spectrum"];
  REQUIRE(sp.size() == 2);
  CHECK(sp[0]["eigenvalue"].get<double>() == doctest::Approx(1.0));
  CHECK(sp[0]["multiplicity"] == 8);
  CHECK(sp[1]["eigenvalue"].get<double>() == doctest::Approx(2.0));
  CHECK(sp[1]["multiplicity"] == 2);
  CHECK(n2.json["summary"]["theorem_b"]["constrained_dimensions"][0] == 8);
}

TEST_CASE("classify-su2 surfaces discrepancies") {
  Outcome o = run({"classify-su2", "--seed", "4"});
  CHECK(o.code == 0);
  CHECK(o.json["summary"]["listed_classes"].size() == 4);
  CHECK(o.json["summary"]["discrepancies"].size() == 2);
}

TEST_CASE("deform on S3xS3 and S6") {
  Outcome o = run({"deform", "s3s3"});
  CHECK(o.code == 0);
  const Json& rows = o.json["summary"]["lagrangians"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["lambda_over_s"].get<double>() == 0.3);
  CHECK(rows[0]["solution_dimension"] == 0);
  CHECK(rows[1]["solution_dimension"] == 3);
  CHECK(run({"deform", "s6", "--lagrangian", data("s6_lagrangian.json")}).code == 0);
  CHECK(run({"deform", "flat-kahler:3"}).code == 2);
  CHECK(run({"deform", "s3s3", "--lagrangian", "nosuch"}).code == 2);
}

TEST_CASE("same seed, same bytes") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"lagrangian", "s3s3", "--random", "10", "--seed", "11"},
        std::vector<std::string>{"classify-su2", "--seed", "2"},
        std::vector<std::string>{"twistor", "-n", "2", "--seed", "5"}}) {
    CHECK(run(args).out == run(args).out);
  }
  CHECK(run({"lagrangian", "s6", "--random", "5", "--seed", "1"}).out !=
        run({"lagrangian", "s6", "--random", "5", "--seed", "2"}).out);
}
