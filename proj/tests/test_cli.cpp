#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quatpick/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using quatpick::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("quatpick_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kCentral = R"({"nodes": [[0,0,0,0]], "targets": [[0.5,0,0,0]]})";

}  // namespace

TEST_CASE("solve: single node central solution") {
  TempDir d;
  const Result r = call({"solve", d.write("p.json", kCentral), "--samples", "50"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["solvable"] == true);
  CHECK(j["determinate"] == false);
  CHECK(j["rank"] == 1);
  const auto v = j["node_residuals"][0]["value"];
  CHECK(v[0].get<double>() == doctest::Approx(0.5));
  CHECK(j["solution"]["provenance"] == "lft");
  CHECK(j["schwarz_pick"]["max_violation"].get<double>() <= 1e-10);
  CHECK_FALSE(j.contains("timing_ms"));
}

TEST_CASE("solve: exit codes") {
  TempDir d;
  CHECK(call({"solve", d.write("u.json", R"({"nodes": [[0,0,0,0]], "targets": [[1.5,0,0,0]]})")}).code == 2);
  const std::string triple =
      R"({"nodes": [[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]], "targets": [[0,0.5,0,0],[0,0,0.5,0],[0.1,0,0,0.5]]})";
  const Result inc = call({"solve", d.write("t.json", triple)});
  CHECK(inc.code == 3);
  CHECK(json::parse(inc.out)["reduction"]["status"] == "inconsistent");
  CHECK(call({"solve", (d.path / "missing.json").string()}).code == 1);
  CHECK(call({"solve"}).code == 1);
  CHECK(call({"bogus"}).code == 1);
}

TEST_CASE("solve: schema errors name the line or field") {
  TempDir d;
  const Result syn = call({"solve", d.write("a.json", "{\"nodes\": [[0,0,0,0]],\n \"targets\": [[1.2.3,0,0,0]]}")});
  CHECK(syn.code == 1);
  CHECK(syn.err.find("line 2") != std::string::npos);
  const Result fld = call({"solve", d.write("b.json", R"({"nodes": [[0,0,"x",0]], "targets": [[0,0,0,0]]})")});
  CHECK(fld.code == 1);
  CHECK(fld.err.find("nodes[0][2]") != std::string::npos);
  const Result out = call({"solve", d.write("c.json", R"({"nodes": [[1,0,0,0]], "targets": [[0,0,0,0]]})")});
  CHECK(out.code == 1);
  CHECK(call({"solve", d.write("e.json", kCentral), "--psd-tol", "abc"}).code == 1);
}

TEST_CASE("solve: reports are deterministic and honour --out and --timing") {
  TempDir d;
  const std::string in = d.write("p.json", R"({"nodes": [[0.1,0.2,0,0],[-0.3,0,0.4,0]], "targets": [[0.2,0,0,0.1],[0,0.3,0,0]]})");
  const Result a = call({"solve", in, "--seed", "5", "--samples", "100"});
  const Result b = call({"solve", in, "--seed", "5", "--samples", "100"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::string out = (d.path / "r.json").string();
  CHECK(call({"solve", in, "--seed", "5", "--samples", "100", "--out", out}).code == 0);
  std::ifstream f(out);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == a.out);
  const Result t = call({"solve", in, "--timing", "--samples", "10"});
  CHECK(json::parse(t.out).contains("timing_ms"));
}

TEST_CASE("solve: determinate problem and grid output") {
  TempDir d;
  const std::string in = d.write("p.json", R"({"nodes": [[0,0,0,0],[0.5,0,0,0]], "targets": [[0,0,0,0],[0.5,0,0,0]]})");
  const std::string grid = (d.path / "g.csv").string();
  const Result r = call({"solve", in, "--samples", "20", "--grid=" + grid});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["determinate"] == true);
  CHECK(j["solution"]["provenance"] == "determinate");
  CHECK(j["solution"]["cross_check"]["max_difference"].get<double>() <= 1e-8);
  std::ifstream g(grid);
  std::string header;
  std::getline(g, header);
  CHECK(header == "p_w,p_x,p_y,p_z,lhs,rhs,slack");
  int rows = 0;
  for (std::string line; std::getline(g, line);) ++rows;
  CHECK(rows == 20);
}

TEST_CASE("schur command") {
  TempDir d;
  CHECK(call({"schur", d.write("a.json", R"({"coefficients": [[0,0,0,0],[1,0,0,0]]})")}).code == 0);
  CHECK(call({"schur", d.write("b.json", R"({"coefficients": [[1,0,0,0]]})")}).code == 0);
  const Result bad = call({"schur", d.write("c.json", R"({"coefficients": [[1.2,0,0,0]]})")});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.out)["first_failure"] == 0);
  CHECK(call({"schur", (d.path / "none.json").string()}).code == 1);
}

TEST_CASE("theta command") {
  TempDir d;
  const Result r = call({"theta", d.write("p.json", kCentral), "--samples", "30"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["theta_at_1"][0][0][0].get<double>() == 1.0);
  CHECK(j["j_check"]["psd"] == true);
  const std::string sing = R"({"nodes": [[0,0,0,0],[0.5,0,0,0]], "targets": [[0,0,0,0],[0.5,0,0,0]]})";
  CHECK(call({"theta", d.write("s.json", sing)}).code == 2);
}

TEST_CASE("verify: bundled fixtures, empty sampling and the corrupted control") {
  const Result ok = call({"verify", "--samples", "100"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["pass"] == true);

  const Result empty = call({"verify", "--samples", "0"});
  CHECK(empty.code == 0);
  const json e = json::parse(empty.out);
  CHECK(e["suites"]["schwarz_pick"]["count"] == 0);
  CHECK(e["suites"]["sylvester_vs_series"]["count"] == 0);

  const Result bad = call({"verify", QUATPICK_TEST_DATA "/corrupted", "--samples", "10"});
  CHECK(bad.code == 2);
  CHECK(call({"verify", "/nonexistent/quatpick"}).code == 1);
}
