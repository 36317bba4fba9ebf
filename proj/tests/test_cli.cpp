#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "minihyper/cli.hpp"
#include "minihyper/families.hpp"
#include "minihyper/report.hpp"

using namespace minihyper;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "minihyper");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("minihyper_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("analyze reports the spectrum of a plane") {
  TempDir tmp;
  REQUIRE(run({"construct", "plane", "-o", tmp.file("plane.txt")}).code == exit_ok);
  const Run r = run({"analyze", tmp.file("plane.txt"), "--format", "json"});
  REQUIRE(r.code == exit_ok);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "analyze");
  CHECK(j["spectrum"]["a"].size() == 2);
  CHECK(j["spectrum"]["a"]["13"] == 1);
  CHECK(j["spectrum"]["a"]["4"] == 39);
  CHECK(j["parameters"]["minihyper"]["n"] == 13);
  CHECK(j["parameters"]["minihyper"]["w"] == 4);

  const Run t = run({"analyze", tmp.file("plane.txt")});
  CHECK(t.code == exit_ok);
  CHECK(t.out.find("(13,4)") != std::string::npos);
}

TEST_CASE("construct writes every family and reads back") {
  TempDir tmp;
  const Run list = run({"construct", "--list"});
  REQUIRE(list.code == exit_ok);
  for (const auto& f : family_catalog()) {
    CHECK(list.out.find(f.name) != std::string::npos);
    const std::string path = tmp.file(f.name + ".txt");
    REQUIRE(run({"construct", f.name, "-o", path}).code == exit_ok);
    CHECK(read_multiset_file(path) == construct_family(f.name));
  }
  CHECK(run({"construct", "no-such-family"}).code == exit_usage);
  CHECK(run({"construct"}).code == exit_usage);
}

TEST_CASE("check main-reduction names the line and the residual") {
  TempDir tmp;
  REQUIRE(run({"construct", "plane-plus-line", "-o", tmp.file("f.txt")}).code == exit_ok);
  const Run r = run({"check", "main-reduction", tmp.file("f.txt"), "--format", "json"});
  REQUIRE(r.code == exit_ok);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["applicable"] == true);
  CHECK(j["falsified"] == false);
  CHECK(j["conclusion"]["kind"] == "line-split");
  CHECK(j["conclusion"]["line_points"].size() == 4);
  CHECK(j["conclusion"]["residual"]["n"] == 13);
  CHECK(j["conclusion"]["residual"]["w"] == 4);
}

TEST_CASE("check exits 1 on a falsified statement") {
  // three times a line of PG(2,3): a (12,3)-minihyper outside the stated conclusion
  TempDir tmp;
  std::ofstream(tmp.file("3l.txt")) << "PG 2 3\n0 0 1 3\n0 1 0 3\n0 1 1 3\n0 1 2 3\n";
  const Run r = run({"check", "kanda", tmp.file("3l.txt")});
  CHECK(r.code == exit_verification_failed);
  CHECK(r.out.find("FALSIFIED") != std::string::npos);
}

TEST_CASE("classify writes a catalog") {
  TempDir tmp;
  Run r = run({"classify", "2", "3", "11", "3", "--cap", "3", "-o", tmp.file("empty.cat")});
  CHECK(r.code == exit_ok);
  Catalog c = read_catalog_file(tmp.file("empty.cat"));
  CHECK(c.complete);
  CHECK(c.representatives.empty());

  r = run({"classify", "2", "3", "9", "2", "--cap", "1", "--format", "json"});
  REQUIRE(r.code == exit_ok);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["complete"] == true);
  REQUIRE(j["representatives"].size() == 1);
  CHECK(j["representatives"][0]["automorphism_order"] == 24);
}

TEST_CASE("classify exits 3 on budget exhaustion and resumes") {
  TempDir tmp;
  const std::string frontier = tmp.file("frontier.json");
  const Run partial = run({"classify", "3", "3", "17", "5", "--budget", "50", "--resume", frontier});
  CHECK(partial.code == exit_incomplete);
  CHECK(fs::exists(frontier));
  const Run rest = run({"classify", "3", "3", "17", "5", "--resume", frontier, "-o", tmp.file("c.cat")});
  CHECK(rest.code == exit_ok);
  CHECK_FALSE(fs::exists(frontier));
  CHECK(read_catalog_file(tmp.file("c.cat")).representatives.size() == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == exit_usage);
  CHECK(run({"frobnicate"}).code == exit_usage);
  CHECK(run({"classify", "2", "3", "5"}).code == exit_usage);
  CHECK(run({"classify", "2", "4", "5", "1"}).code == exit_usage);  // q not prime
  CHECK(run({"classify", "2", "3", "5", "1", "--cap", "0"}).code == exit_usage);
  CHECK(run({"classify", "2", "3", "5", "1", "--budget", "-1"}).code == exit_usage);
  CHECK(run({"classify", "2", "3", "5", "1", "--mode", "blob"}).code == exit_usage);
  CHECK(run({"classify", "2", "3", "5", "1", "-o", "/nonexistent/dir/x.cat"}).code == exit_usage);
  CHECK(run({"analyze", "/nonexistent/file"}).code == exit_usage);
  CHECK(run({"check", "pythagoras", "/nonexistent/file"}).code == exit_usage);
  CHECK(run({"verify-paper", "--only", "13"}).code == exit_usage);
  CHECK(run({"analyze", "x", "--format", "yaml"}).code == exit_usage);
  CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("verify-paper runs a subset") {
  const Run r = run({"verify-paper", "--only", "1", "--only", "9", "--format", "json"});
  CHECK(r.code == exit_ok);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  REQUIRE(j["results"].size() == 2);
  CHECK(j["results"][0]["id"] == 1);
  CHECK(j["results"][0]["status"] == "PASS");
  CHECK(j["results"][1]["id"] == 9);
  CHECK(j["results"][1]["status"] == "PASS");
}
