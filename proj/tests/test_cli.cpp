#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = credal::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "credal_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

bool has(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

const std::string kP = write("p.json", R"({"space": {"labels": ["a","b"], "metric": [[0,1],[1,0]]},
  "vertices": [[0.9,0.1]]})");
const std::string kQ = write("q.json", R"({"space": {"labels": ["a","b"], "metric": [[0,1],[1,0]]},
  "vertices": [[0.5,0.5]]})");
const std::string kA = write("a.json", R"({"space": {"labels": ["a","b"], "metric": [[0,1],[1,0]]},
  "vertices": [[0.9,0.1],[0.3,0.7]]})");
const std::string kPoint = write("point.json", R"({"space": {"labels": ["a","b"], "metric": [[0,1],[1,0]]},
  "vertices": [[1,0]]})");
const std::string kOther = write("other.json", R"({"space": {"labels": ["x","y"]},
  "vertices": [[0.5,0.5]]})");
const std::string kBad = write("bad.json", R"({"space": {"labels": ["a","b"], "metric": [[0,1],[1,0]]},
  "vertices": [[0.9,0.1],[0.3,0.8]]})");

}  // namespace

TEST_CASE("div") {
  const Run self = run({"div", "--p", kA, "--q", kA, "--metric-p", "1", "--format", "csv"});
  CHECK(self.code == 0);
  std::istringstream rows(self.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "quantity,value,gap,status");
  while (std::getline(rows, line)) {
    const std::string value = line.substr(line.find(',') + 1, line.find(',', line.find(',') + 1) - line.find(',') - 1);
    CHECK(std::stod(value) <= 2e-9);
  }

  const Run json = run({"div", "--p", kP, "--q", kQ, "--format", "json"});
  CHECK(json.code == 0);
  CHECK(has(json.out, "\"gkl_pq\": {\n    \"value\": 0.36806420716849708"));
  CHECK(has(json.out, "\"gwasserstein\""));

  const Run text = run({"div", "--p", kP, "--q", kQ});
  CHECK(text.code == 0);
  CHECK(has(text.out, "gtv = 0.4"));

  const Run inf = run({"div", "--p", kPoint, "--q", kQ, "--format", "json"});
  CHECK(inf.code == 0);
  CHECK(has(inf.out, "\"kl_bar\": \"+inf\""));
}

TEST_CASE("div errors") {
  const Run bad = run({"div", "--p", kBad, "--q", kQ});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "bad.json"));
  CHECK(has(bad.err, "vertices[1]"));
  CHECK(run({"div", "--p", kP}).code == 2);
  CHECK(run({"div", "--p", kP, "--q", kOther}).code == 2);
  CHECK(run({"div", "--p", kP, "--q", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({"div", "--p", kP, "--q", kQ, "--tol", "-1"}).code == 2);
  CHECK(run({"div", "--p", kP, "--q", kQ, "--format", "xml"}).code == 2);
  CHECK(run({"div", "--p", kP, "--q", kQ, "--metric-p", "0.5"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dual") {
  const Run r = run({"dual", "--p", kA, "--q", kQ, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "\"status\": \"certified\""));
  CHECK(run({"dual", "--p", kA, "--q", kA}).code == 0);
  const Run inf = run({"dual", "--p", kPoint, "--q", kQ, "--format", "json"});
  CHECK(inf.code == 0);
  CHECK(run({"dual", "--p", kQ, "--q", kPoint, "--format", "csv"}).out.find("infinite_primal") !=
        std::string::npos);
  CHECK(run({"dual", "--p", kBad, "--q", kQ}).code == 2);
}

TEST_CASE("check") {
  const Run r = run({"check", "--trials", "5", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "all properties hold"));
  const Run csv = run({"check", "--trials", "3", "--seed", "1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("property,cases,failures,worst_margin,result\n", 0) == 0);
  CHECK(run({"check", "--trials", "0"}).code == 2);
  CHECK(run({"check", "--seed", "abc"}).code == 2);
}

TEST_CASE("converge") {
  const Run r = run({"converge"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("step,kl_bar,gjs,gtv,gw1,weak_gap,pinsker_slack,js_quarter_slack,"
                    "weak_lipschitz_slack,w1_diameter_slack\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);
  const Run files = run({"converge", "--p", kA, "--q", kQ, "--steps", "4", "--format", "json"});
  CHECK(files.code == 0);
  CHECK(has(files.out, "\"residuals_hold\": true"));
  const Run self = run({"converge", "--p", kQ, "--q", kQ, "--steps", "2"});
  CHECK(self.code == 0);
  CHECK(has(self.out, "\n2,0,0,0,0,0,0,0,0,0\n"));
  CHECK(run({"converge", "--steps", "0"}).code == 2);
  CHECK(run({"converge", "--p", kA}).code == 2);
}

TEST_CASE("gen and --out") {
  const std::string out = (scratch() / "gen.json").string();
  CHECK(run({"gen", "--seed", "42", "--n", "3", "--k", "2", "--min-weight", "0.05", "--out", out}).code == 0);
  const Run self = run({"div", "--p", out, "--q", out});
  CHECK(self.code == 0);
  CHECK(run({"gen", "--n", "3", "--min-weight", "0.5"}).code == 2);
  const Run a = run({"gen", "--seed", "3"});
  const Run b = run({"gen", "--seed", "3"});
  CHECK(a.out == b.out);
  CHECK(has(a.out, "\"vertices\""));
}

TEST_CASE("identical invocations of the binary are byte identical") {
  auto capture = [](const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    CHECK(pclose(pipe) == 0);
    return out;
  };
  const std::string bin = CREDAL_DIV_BIN;
  for (const std::string& args : {" div --format json --p " + kA + " --q " + kQ,
                                 std::string(" check --trials 4 --seed 9 --format json"),
                                 std::string(" converge --format csv")}) {
    const std::string first = capture(bin + args);
    CHECK_FALSE(first.empty());
    CHECK(capture("CREDAL_DIV_THREADS=1 " + bin + args) == first);
    CHECK(capture("CREDAL_DIV_THREADS=3 " + bin + args) == first);
  }
}
