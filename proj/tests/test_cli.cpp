#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int status;
  std::string out;
};

// stdout only; stderr is discarded unless `merge` is set
Run run(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(PDEM_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (const std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string field; std::getline(in, field, ',');) out.push_back(field);
  return out;
}

const std::string fixtures = PDEM_FIXTURES;

}  // namespace

TEST_CASE("spectrum rows") {
  const auto r = run("spectrum --potential kratzer -D 3 --l 0 --lambda 0 --n 0,1");
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "D,l,lambda,n,potential,m0,Ve,re,Lambda,energy_analytic");
  CHECK(rows[1] == "3,0,0,0,kratzer,1,1,1,0,0.5");
  CHECK(rows[2] == "3,0,0,1,kratzer,1,1,1,0,0.77777777777777779");
  // byte-stable across runs
  CHECK(run("spectrum --potential kratzer -D 3 --l 0 --lambda 0 --n 0,1").out == r.out);
}

TEST_CASE("spectrum from a config file and ranges") {
  const auto a = run("spectrum --config " + fixtures + "/kratzer_d3.json");
  REQUIRE(a.status == 0);
  CHECK(lines(a.out).size() == 3);
  const auto b = run("spectrum -D 2,3 --l 0 --n 0:3");
  REQUIRE(b.status == 0);
  CHECK(lines(b.out).size() == 1 + 2 * 2 * 3 * 4);
  const auto j = run("spectrum -D 3 --l 1 --n 0 --json");
  REQUIRE(j.status == 0);
  // both potentials, lambda = 0, 1, 2
  CHECK(nlohmann::json::parse(j.out).size() == 6);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("spectrum --n ''").status == 2);
  CHECK(run("spectrum --n 3:1").status == 2);
  CHECK(run("spectrum --m0 -1").status == 2);
  CHECK(run("spectrum --config " + fixtures + "/invalid_m0.json").status == 2);
  CHECK(run("spectrum --config " + fixtures + "/empty_n.json").status == 2);
  CHECK(run("spectrum --config " + fixtures + "/malformed.json").status == 2);
  CHECK(run("spectrum --config /nonexistent.json").status == 2);
  CHECK(run("spectrum --bogus").status == 2);
  CHECK(run("verify --grid-N 100,200").status == 2);
  const auto msg = run("spectrum --m0 -1 --lambda -3", true);
  CHECK(msg.out.find("m0") != std::string::npos);
  CHECK(msg.out.find("lambda") != std::string::npos);
}

TEST_CASE("numerical failures exit with 3") {
  // the outer turning point of a very high Kratzer state lies beyond any usable box
  const auto r = run("degeneracy --numeric --potential kratzer --lambda 0 -D 3 --l 1 --n 250", true);
  CHECK(r.status == 3);
  CHECK(r.out.find("numerical failure") != std::string::npos);
}

TEST_CASE("wavefunction samples") {
  const auto r = run("wavefunction --potential pseudoharmonic -D 3 --l 0 --lambda 1 --n 0");
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  std::size_t first = 0;
  while (first < rows.size() && rows[first].rfind('#', 0) == 0) ++first;
  REQUIRE(first < rows.size());
  CHECK(rows[first] == "r,R");
  double sum = 0.0, prev_r = 0.0;
  for (std::size_t i = first + 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    const double rr = std::stod(f[0]), R = std::stod(f[1]);
    CHECK(R >= 0.0);
    sum += R * R * (rr - prev_r);
    prev_r = rr;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-3);

  const auto two = run("wavefunction --potential kratzer -D 3 --l 1 --lambda 2 --n 2 --points 3000");
  REQUIRE(two.status == 0);
  int changes = 0;
  double last = 0.0;
  for (const auto& line : lines(two.out)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    const double R = std::stod(split(line)[1]);
    if (last != 0.0 && R != 0.0 && (R > 0) != (last > 0)) ++changes;
    if (R != 0.0) last = R;
  }
  CHECK(changes == 2);
  CHECK(run("wavefunction -D 3 --l 0 --n 0,1").status == 2);
}

TEST_CASE("verify text and JSON agree") {
  const std::string args = "verify -D 3 --l 1 --lambda 1 --n 0:1 --grid-N 2000,4000,8000";
  const auto text = run(args);
  const auto js = run(args + " --json");
  REQUIRE(text.status == 0);
  REQUIRE(js.status == 0);
  const auto j = nlohmann::json::parse(js.out);
  const auto rows = lines(text.out);
  const auto total = j.at("summary").at("checks").get<std::size_t>();
  CHECK(rows.back() == "PASS: " + std::to_string(total) + "/" + std::to_string(total) +
                           " checks passed");
  CHECK(rows.size() == 1 + 2);
  CHECK(rows[0].rfind("PASS pseudoharmonic/m0=1/Ve=1/re=1/lambda=1/D=3/l=1", 0) == 0);
}

TEST_CASE("fault injection fails verify and names the case") {
  const auto r = run("verify --potential kratzer -D 3 --l 1 --lambda 1 --n 0 "
                     "--grid-N 2000,4000,8000 --perturb-Lambda 1e-3");
  CHECK(r.status == 1);
  CHECK(r.out.find("FAIL kratzer/m0=1/Ve=1/re=1/lambda=1/D=3/l=1") != std::string::npos);
  CHECK(r.out.find("/n=0/numeric") != std::string::npos);
}

TEST_CASE("degeneracy table") {
  const auto r = run("degeneracy --lambda 0 -D 3 --l 1,2 --n 0:1");
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 2 * 2 * 2);
  const auto header = split(rows[0]);
  std::size_t col = 0;
  while (col < header.size() && header[col] != "degenerate") ++col;
  REQUIRE(col < header.size());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i])[col] == "true");
}
