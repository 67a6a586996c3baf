#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "siegel/cli.hpp"
#include "siegel/error.hpp"
#include "siegel/serialize.hpp"

using namespace siegel;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json last_json(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return Json::parse(text.substr(start == std::string::npos ? 0 : start + 1));
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("volume examples") {
  const auto q = run_cli({"volume", "--object", "quotient", "--n", "2"});
  REQUIRE(q.code == 0);
  const Json jq = Json::parse(q.out);
  CHECK(jq["expression"] == "sqrt(2) * zeta(2)");
  CHECK(jq["value"].get<double>() == doctest::Approx(2.3262880653));
  CHECK(jq["check"]["exact_match"] == false);
  CHECK(jq["meta"]["tool_version"] == kToolVersion);
  CHECK(jq["meta"].contains("tolerances"));

  const auto so = run_cli({"volume", "--object", "so", "--n", "2"});
  REQUIRE(so.code == 0);
  const Json js = Json::parse(so.out);
  CHECK(js["expression"] == "2^(3/2) * pi");
  CHECK(js["value"].get<double>() == doctest::Approx(8.8857659));

  const auto pretty = run_cli({"volume", "--object", "so", "--n", "2", "--format", "pretty"});
  CHECK(pretty.out.find("2^(3/2) * pi") == 0);
}

TEST_CASE("growth table as CSV") {
  const auto r = run_cli({"growth-table", "--n-max", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# tool_version=", 0) == 0);
  std::getline(in, line);
  CHECK(line == "n,log_vol_siegel,log_vol_quotient,log_C,log_height_bound");
  std::vector<double> log_c;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 5);
    log_c.push_back(std::stod(cells[3]));
  }
  REQUIRE(log_c.size() == 4);
  for (std::size_t i = 2; i < log_c.size(); ++i) CHECK(log_c[i] > log_c[i - 1]);
}

TEST_CASE("decompose and reduce read matrices") {
  const std::string m = R"({"n": 2, "entries": [2, 0, 0, 0.5]})";
  const auto d = run_cli({"decompose", "--matrix", m});
  REQUIRE(d.code == 0);
  const Json jd = Json::parse(d.out);
  CHECK(jd["membership"] == "outside");
  CHECK(jd["b"][0].get<double>() == doctest::Approx(4.0));

  const std::string path = temp_file("siegel_cli_matrix.json", m);
  const auto r = run_cli({"reduce", "--input", path});
  REQUIRE(r.code == 0);
  const Json jr = Json::parse(r.out);
  CHECK(jr["status"] == "reduced");
  CHECK(jr["membership"] != "outside");
  CHECK(jr["b"][0].get<double>() == doctest::Approx(0.25));
  CHECK(jr.contains("u_max"));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"volume", "--object", "nope", "--n", "2"}).code == 2);
  const auto usage = run_cli({"volume", "--n", "2"});
  CHECK(usage.code == 2);
  CHECK(usage.err.find("--object") != std::string::npos);
  CHECK(run_cli({"volume", "--help"}).code == 0);

  const auto singular = run_cli({"decompose", "--matrix", R"({"n": 2, "entries": [1, 1, 1, 1]})"});
  CHECK(singular.code == 1);
  CHECK(singular.err.find("NonInvertible") != std::string::npos);
  const auto big = run_cli({"enumerate-intersections", "--n", "4"});
  CHECK(big.code == 1);
  CHECK(big.err.find("DimensionTooLarge") != std::string::npos);
  const auto bad = run_cli({"reduce", "--matrix", "[1, 2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("MalformedInput") != std::string::npos);
}

TEST_CASE("config loading") {
  CHECK(load_config(std::nullopt).seed == 0);
  CHECK(parse_config(R"({"seed": 42})").seed == 42);
  CHECK(parse_config(R"({"seed": 42})").witness_budget == 2000);
  try {
    parse_config(R"({"unknown_key": 1})");
    FAIL("expected MalformedConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedConfig);
  }
  try {
    parse_config("{\n  \"seed\": 1,\n  oops\n}");
    FAIL("expected MalformedConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedConfig);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"witness_budget": 0})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"threads": -2})"), Error);

  const std::string path = temp_file("siegel_cli_bad.json", R"({"bogus": true})");
  const auto r = run_cli({"bounds", "--n", "3", "--config", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("MalformedConfig") != std::string::npos);
}

TEST_CASE("seed precedence: config, then SIEGEL_SEED, then --seed") {
  const std::string path = temp_file("siegel_cli_seed.json", R"({"seed": 5})");
  const std::vector<std::string> base{"sample", "--n", "2", "--points", "1", "--config", path};
  unsetenv("SIEGEL_SEED");
  CHECK(last_json(run_cli(base).out)["meta"]["seed"] == 5);
  setenv("SIEGEL_SEED", "17", 1);
  CHECK(last_json(run_cli(base).out)["meta"]["seed"] == 17);
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--seed", "99"});
  CHECK(last_json(run_cli(with_flag).out)["meta"]["seed"] == 99);
  setenv("SIEGEL_SEED", "abc", 1);
  CHECK(run_cli(base).code == 1);
  unsetenv("SIEGEL_SEED");
}

TEST_CASE("identical arguments give byte-identical output") {
  const std::vector<std::string> mc{"sample", "--n", "3", "--samples", "20000", "--seed", "3"};
  const auto a = run_cli(mc), b = run_cli(mc);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = mc;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run_cli(threaded).out == a.out);

  const std::vector<std::string> en{"enumerate-intersections", "--n", "2", "--budget", "200"};
  const auto e1 = run_cli(en), e2 = run_cli(en);
  REQUIRE(e1.code == 0);
  CHECK(e1.out == e2.out);
  const Json summary = last_json(e1.out)["summary"];
  CHECK(summary["candidates"] == 52);
  CHECK(summary["lower_bound"] == 3);
}

TEST_CASE("bounds report") {
  const auto r = run_cli({"bounds", "--n", "3"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["height_bound"].get<double>() == doctest::Approx(81.0));
  CHECK(j["variants"].size() == 4);
  CHECK(j["count_bounds"]["log_lower"].get<double>() < j["count_bounds"]["log_upper"].get<double>());
}
