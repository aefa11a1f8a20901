#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kkbounds::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  const Result r = call(std::move(args));
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("quad prints the rule") {
  const json j = call_json({"quad", "--n", "3", "--k", "1", "--kind", "beta"});
  CHECK(j["nodes"] == json::array({-1.0, 0.0, 1.0}));
  CHECK(j["weights"][0].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(j["weights"][1].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(j["config"]["kind"] == "beta");
  CHECK(j["config"]["seed"] == 0);
  const json l = call_json({"quad", "--n", "3", "--k", "1", "--kind", "lambda", "--s", "0.8"});
  CHECK(l["s"].get<double>() == 0.8);
  CHECK(l["nodes"][2].get<double>() == 0.8);
}

TEST_CASE("the configuration leads every document") {
  const Result r = call({"verify", "--code", "catalog:cube_half", "--k", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"config\"") < r.out.find("\"is_design\""));
}

TEST_CASE("verify and bounds") {
  CHECK(call_json({"verify", "--code", "catalog:cube_half", "--k", "1"})["is_design"] == true);
  CHECK(call_json({"verify", "--code", "catalog:cube_half", "--k", "2"})["is_design"] == false);
  const json b = call_json({"bounds", "--n", "3", "--k", "1", "--N", "4", "--pot", "pframe:p=2"});
  CHECK(b["lower"]["bound_value"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(b["upper"]["bound_value"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(b["upper"]["kind"] == "UUB_BETA");
  const json s = call_json({"bounds", "--k", "1", "--pot", "riesz:m=2", "--s", "0.7", "--code", "catalog:cube_half"});
  CHECK(s["upper"]["kind"] == "UUB_LAMBDA");
  CHECK(s["code_r"].get<double>() == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(s["config"]["N"] == 4);
}

TEST_CASE("exit statuses") {
  CHECK(call({"bounds", "--n", "3", "--k", "1", "--N", "4", "--pot", "riesz:m=2"}).code == 2);
  CHECK(call({"bounds", "--n", "3", "--k", "1", "--N", "4", "--pot", "riesz:m=2", "--s", "0.5"}).code == 2);
  CHECK(call({"quad", "--n", "3", "--k", "2", "--kind", "lambda", "--s", "0.6"}).code == 2);
  CHECK(call({"bounds", "--n", "3", "--k", "1", "--N", "3", "--pot", "riesz:m=2", "--s", "0.7", "--code",
              "catalog:onb:3"})
            .code == 0);
  CHECK(call({"bounds", "--n", "3", "--k", "1", "--N", "4", "--pot", "riesz:m=2", "--s", "0.7", "--code",
              "catalog:onb:3"})
            .code == 1);
  CHECK(call({"bounds", "--k", "1", "--pot", "riesz:m=2", "--s", "0.58", "--code", "catalog:onb:2"}).code == 2);
  CHECK(call({"bounds", "--n", "3", "--k", "1", "--N", "4", "--pot", "bogus"}).code == 1);
  CHECK(call({"verify", "--code", "/nonexistent/code.json", "--k", "1"}).code == 1);
  CHECK(call({"verify", "--code", "catalog:cube_half", "--k", "1", "--frobnicate"}).code == 1);
  CHECK(call({"quad", "--n", "3", "--k", "1", "--kind", "gamma"}).code == 1);
  CHECK(call({}).code == 1);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"catalog"}).code == 1);
}

TEST_CASE("polarize and certify") {
  const json p = call_json({"polarize", "--code", "catalog:cube_half", "--pot", "pframe:p=4"});
  CHECK(p["min"]["value"].get<double>() == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
  CHECK(p["max"]["value"].get<double>() >= p["min"]["value"].get<double>());
  const json inf = call_json({"polarize", "--code", "catalog:cube_half", "--pot", "riesz:m=2", "--direction", "max"});
  CHECK(inf["max"]["value"] == "inf");
  CHECK_FALSE(inf.contains("min"));
  const json c = call_json({"certify", "--code", "catalog:cell24_half", "--k", "2", "--pot", "monomial:k=2"});
  CHECK(c["all_passed"] == true);
  CHECK(c["design"]["is_design"] == true);
}

TEST_CASE("catalog list and dump round trip") {
  const json names = call_json({"catalog", "--list"});
  CHECK(names["names"].size() == 7);
  const auto path = std::filesystem::temp_directory_path() / "kkbounds_cli_cell24.json";
  {
    std::ofstream f(path);
    f << call({"catalog", "--dump", "cell24_half"}).out;
  }
  json from_file = call_json({"verify", "--code", path.string(), "--k", "2"});
  json from_catalog = call_json({"verify", "--code", "catalog:cell24_half", "--k", "2"});
  from_file.erase("config");
  from_catalog.erase("config");
  CHECK(from_file == from_catalog);
  std::filesystem::remove(path);
}

TEST_CASE("determinism with a fixed seed") {
  const std::vector<std::string> args{"--seed", "5", "certify", "--code", "catalog:cell24_half", "--k", "1",
                                      "--pot", "cosh"};
  CHECK(call(args).out == call(args).out);
  const std::vector<std::string> trailing{"polarize", "--code", "catalog:cell24_half", "--pot", "cosh", "--seed", "5"};
  CHECK(call(trailing).code == 0);
  CHECK(call(trailing).out == call(trailing).out);
}

TEST_CASE("csv report") {
  const Result r = call({"report", "--csv", "--n", "3,4", "--k", "1,2", "--pot", "pframe:p=4", "--pot", "riesz:m=2",
                         "--N", "4", "--s", "0.9"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# config", 0) == 0);
  std::getline(in, line);
  CHECK(line == "n,k,N,pot,sign,lower_kind,lower,upper_finite,s,upper_s");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  CHECK(r.out.find("3,1,4,\"pframe:p=4\",NONNEGATIVE,ULB_ALPHA,0.44444444444444") != std::string::npos);
  CHECK(call({"report", "--n", "3", "--k", "1", "--pot", "cosh"}).code == 1);
}
