#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "lipext/core/error.hpp"
#include "lipext/io/json_io.hpp"

namespace fs = std::filesystem;
using lipext::Rational;
using lipext::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = lipext::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LIPEXT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "lipext_test_cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("rational parsing") {
  using lipext::io::parse_rational;
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-1.25e-2") == Rational(-1, 80));
  CHECK(parse_rational("2E3") == Rational(2000));
  CHECK(parse_rational(".5") == Rational(1, 2));
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "1e", "--1", "1/x", "3/"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), lipext::Error);
  }
  CHECK(lipext::io::rational_from_json(Json(0.1)) == Rational(1, 10));
  CHECK(lipext::io::rational_from_json(Json(7)) == Rational(7));
  CHECK(lipext::io::double_from_json(Json("1/4")) == 0.25);
}

TEST_CASE("metric and graph JSON round-trip byte-stably") {
  const auto doc = lipext::io::read_json_file(data("c4.json"));
  const auto m = lipext::io::metric_from_json<double>(doc);
  const std::string once = lipext::io::metric_to_json(m).dump();
  const auto again = lipext::io::metric_from_json<double>(Json::parse(once));
  CHECK(lipext::io::metric_to_json(again).dump() == once);
  CHECK(m(0, 2) == 2.0);
  CHECK(m.label(3) == "d");

  const auto mq = lipext::io::metric_from_json<Rational>(Json::parse(R"({"dist": [[0, "1/3"], [0.5, 0]]})"));
  CHECK(mq(0, 1) == Rational(1, 3));
  CHECK(mq(1, 0) == Rational(1, 2));
  CHECK(lipext::io::metric_to_json(mq)["dist"][0][1] == "1/3");

  const auto g = lipext::io::graph_from_json<double>(Json::parse(R"({"n": 3, "edges": [[1, 0, 2.5], [1, 2]]})"));
  CHECK(g.num_edges() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].weight == 2.5);
  const std::string gs = lipext::io::graph_to_json(g).dump();
  CHECK(lipext::io::graph_to_json(lipext::io::graph_from_json<double>(Json::parse(gs))).dump() == gs);

  CHECK_THROWS_AS(lipext::io::graph_from_json<double>(Json::parse(R"({"n": 2, "edges": [[0, 2]]})")),
                  lipext::Error);
  CHECK_THROWS_AS(lipext::io::metric_from_json<double>(Json::parse(R"({"points": ["a"], "dist": [[0, 1], [1, 0]]})")),
                  lipext::Error);
  CHECK_THROWS_AS(lipext::io::measure_from_json<double>(Json::parse(R"({"values": {"zz": 1}})"), m),
                  lipext::Error);
}

TEST_CASE("zext solve on the bundled star") {
  const auto r = cli({"zext", "solve", "--instance", data("star.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("(MET, EMD, OPT) = (1.5, 2, 2)") != std::string::npos);
  CHECK(r.out.find("exact: (3/2, 2, 2)") != std::string::npos);

  const auto j = cli({"lipext", "zext", "solve", "--instance", data("star.json"), "--format", "json"});
  CHECK(j.code == 0);
  const auto doc = Json::parse(j.out);
  CHECK(doc["MET"] == "3/2");
  CHECK(doc["EMD"] == "2");
  CHECK(doc["OPT"] == "2");
}

TEST_CASE("metric validate reports the violating triple") {
  const auto bad = cli({"metric", "validate", "--file", data("bad_metric.json")});
  CHECK(bad.code == lipext::cli::kExitDomain);
  CHECK(bad.out.find("triangle (x, y, z)") != std::string::npos);
  const auto good = cli({"metric", "validate", "--file", data("c4.json")});
  CHECK(good.code == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli({"metric", "twist", "--n", "9", "--alpha", "1"}).code == lipext::cli::kExitCapacity);
  CHECK(cli({"metric", "twist", "--n", "2", "--alpha", "0.4"}).code == lipext::cli::kExitDomain);
  CHECK(cli({"zext", "solve", "--instance", data("star.json"), "--bogus"}).code == lipext::cli::kExitUsage);
  CHECK(cli({"nonsense"}).code == lipext::cli::kExitUsage);
  CHECK(cli({}).code == lipext::cli::kExitUsage);
  CHECK(cli({"zext", "solve", "--instance", "/nonexistent.json"}).code == lipext::cli::kExitDomain);
  const auto help = cli({"ext", "solve", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--target") != std::string::npos);
  CHECK(cli({"expander", "--n", "9", "--d", "3"}).code == lipext::cli::kExitDomain);
}

TEST_CASE("w1 norm writes plan and potential") {
  const auto out = scratch() / "w1.json";
  const auto r = cli({"w1", "norm", "--metric", data("c4.json"), "--f", data("c4_measure.json"),
                      "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("||f||_W1 = 2") != std::string::npos);
  const auto doc = Json::parse(slurp(out));
  CHECK(doc["value"] == "2");
  CHECK(doc["plan"].size() == 2);
  CHECK(doc["potential"].size() == 4);
  CHECK(fs::exists(out.string() + ".manifest.json"));
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));
}

TEST_CASE("ext solve on the bundled path problem") {
  const auto r = cli({"ext", "solve", "--problem", data("path_problem.json"), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["optimal"] == true);
  CHECK(doc["constant_exact"] == "1");
  const auto l1 = cli({"ext", "solve", "--problem", data("path_problem.json"), "--target", "l1"});
  CHECK(l1.code == 0);
  CHECK(l1.out.find("= 2") != std::string::npos);
}

TEST_CASE("experiment reports replay byte-identically") {
  const auto dir = scratch();
  const auto a = dir / "expander.csv";
  const auto b = dir / "expander_replay.csv";
  REQUIRE(cli({"expander", "--n", "16", "--d", "4", "--seed", "7", "--out", a.string()}).code == 0);
  REQUIRE(cli({"replay", a.string() + ".manifest.json", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto manifest = Json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["log_base"] == "natural");
  CHECK(manifest["rows"][0]["status"] == "ok");

  const auto h1 = cli({"holder", "--n", "2", "--alpha", "0.8,1.0", "--format", "json"});
  const auto h2 = cli({"holder", "--n", "2", "--alpha", "0.8,1.0", "--format", "json"});
  CHECK(h1.code == 0);
  CHECK(h1.out == h2.out);
  CHECK(Json::parse(h1.out)["rows"].size() == 2);
}
