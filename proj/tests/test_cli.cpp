#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfister/cli.hpp"
#include "pfister/json_io.hpp"

using namespace pfister;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pfister");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pfister_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"split", "--field", "F2(t)"}).code == kExitUsage);
  CHECK(cli({"descend", "triple"}).code == kExitUsage);
  CHECK(cli({"fixtures", "--kind", "nope"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("malformed elements report a position") {
  const Result r = cli({"split", "--field", "F2(t)", "--a", "t +* 1", "--b", "t"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("position 3") != std::string::npos);
  CHECK(cli({"split", "--field", "F2(t", "--a", "t", "--b", "t"}).code == kExitUsage);
  CHECK(cli({"split", "--field", "F2(t)", "--a", "u", "--b", "t"}).code == kExitUsage);
}

TEST_CASE("split reports a division certificate that replays") {
  const Result r = cli({"split", "--field", "F2(t1,t2)", "--a", "t1", "--b", "t2"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["verdict"] == "division");
  const AnisoCert cert = aniso_cert_from_json(j["certificate"]);
  CHECK(replay(cert));

  const Json s = Json::parse(cli({"split", "--field", "F2^2", "--a", "g", "--b", "1"}).out);
  CHECK(s["verdict"] == "split");
  CHECK(s.contains("witness"));
}

TEST_CASE("symbol and form subcommands") {
  const Json n = Json::parse(cli({"norm-form", "--field", "F2(t)", "--a", "t", "--b", "t+1"}).out);
  CHECK(n["pfister"]["as_slot"] == "t");
  CHECK(n["form"]["blocks"].size() == 2);

  const Json h = Json::parse(cli({"hyperbolic", "--field", "F2(t)", "--a", "t", "--b", "t", "--a", "t", "--b", "t"}).out);
  CHECK(h["verdict"] == "true");
  const Json w = Json::parse(cli({"witt", "--field", "F2(t1,t2)", "--a", "t1", "--b", "t2"}).out);
  CHECK(w["index"] == 0);
  CHECK(w["status"] == "exact");

  const Json c = Json::parse(
      cli({"common-slot", "--field", "F2(t1,t2)", "--a", "t1", "--b", "t2", "--a", "t1+t2", "--b", "t2"}).out);
  REQUIRE(c["verdict"] == "found");
  for (const auto& cert : c["certificates"]) CHECK(verify_certificate(certificate_from_json(cert)));

  const Json i = Json::parse(cli({"isomorphic", "--field", "F2(t)", "--a", "t", "--b", "t+1", "--a", "t^2", "--b",
                                  "t+1"}).out);
  CHECK(i["verdict"] == "true");
  CHECK(cli({"isomorphic", "--field", "F2(t)", "--a", "t", "--b", "t"}).code == kExitUsage);
}

TEST_CASE("fixtures, descent and verification through files") {
  const std::string inst = temp_path("triple.json"), report = temp_path("report.json");
  REQUIRE(cli({"fixtures", "--kind", "generic_triple", "--n", "2", "--out", inst}).code == kExitOk);
  REQUIRE(cli({"descend", "triple", "--in", inst, "--out", report}).code == kExitOk);
  const Json r = Json::parse(read_file(report));
  CHECK(r["case"] == "anisotropic");
  CHECK(r["generators"].size() == 3);
  CHECK(cli({"verify", "--report", report, "--in", inst}).code == kExitOk);

  Json bad = r;
  bad["generators"].erase(bad["generators"].size() - 1);
  const std::string tampered = temp_path("tampered.json");
  write_file(tampered, dump(bad));
  CHECK(cli({"verify", "--report", tampered, "--in", inst}).code == kExitVerifyFailed);

  CHECK(cli({"descend", "quad", "--in", inst}).code == kExitUsage);
  CHECK(cli({"verify", "--report", temp_path("missing.json"), "--in", inst}).code == kExitUsage);
}

TEST_CASE("quad reports are byte-identical across runs and re-verify") {
  const std::string inst = temp_path("quad.json");
  REQUIRE(cli({"fixtures", "--kind", "case_a", "--seed", "2", "--out", inst}).code == kExitOk);
  const Result a = cli({"descend", "quad", "--in", inst, "--seed", "5"});
  const Result b = cli({"descend", "quad", "--in", inst, "--seed", "5"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const std::string report = temp_path("quad_report.json");
  write_file(report, a.out);
  CHECK(cli({"verify", "--report", report, "--in", inst}).code == kExitOk);
}

TEST_CASE("PFISTER_SEED is the default seed") {
  const std::string explicit_seed = cli({"fixtures", "--kind", "hyperbolic_triple", "--variant", "norm", "--seed", "7"}).out;
  setenv("PFISTER_SEED", "7", 1);
  const std::string from_env = cli({"fixtures", "--kind", "hyperbolic_triple", "--variant", "norm"}).out;
  setenv("PFISTER_SEED", "not a number", 1);
  CHECK(cli({"fixtures", "--kind", "hyperbolic_triple"}).code == kExitUsage);
  unsetenv("PFISTER_SEED");
  CHECK(explicit_seed == from_env);
  CHECK(explicit_seed != cli({"fixtures", "--kind", "hyperbolic_triple", "--variant", "norm"}).out);
}

TEST_CASE("instance files are validated") {
  const std::string path = temp_path("bad_instance.json");
  write_file(path, R"j({"schema_version": 1, "field": "F2(t)", "kind": "symbol", "payload": {"a": "t", "b": "t"}, "x": 0})j");
  CHECK(cli({"split", "--in", path}).code == kExitUsage);
  write_file(path, R"j({"schema_version": 1, "field": "F2(t)", "kind": "symbol", "payload": {"a": "t", "b": "t"}})j");
  CHECK(Json::parse(cli({"split", "--in", path}).out)["verdict"] == "split");
  write_file(path, "{not json");
  CHECK(cli({"split", "--in", path}).code == kExitUsage);
}

TEST_CASE("selftest runs a chosen criterion") {
  const Result r = cli({"selftest", "--only", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("PASS  [3]", 0) == 0);
}
