#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("GSK_CLI");
  REQUIRE_MESSAGE(p != nullptr, "GSK_CLI not set");
  return p;
}

Run run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "gsk_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string lattice_net() {
  static const std::string p =
      write("lattice.json", {{"kind", "lattice"}, {"m", 1}, {"r", 1.0}, {"epsilon", 1e-3}});
  return p;
}

}  // namespace

TEST_CASE("compile: identity target gives a single token") {
  const std::string target = write("id.json", {{"m", 1}, {"rows", {{1.0, 0.0}, {0.0, 1.0}}}});
  const Run r = run("compile --target " + target + " --net " + lattice_net() + " --delta 1e-6");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("result").at("word").size() == 1);
  CHECK(j.at("version") == "gsk 1.0.0");
  CHECK(j.at("config").contains("seed"));
  CHECK(j.at("config").contains("tolerances"));
}

TEST_CASE("compile: target outside the radius exits 2") {
  const std::string target = write("far.json", {{"m", 1}, {"rows", {{20.0, 0.0}, {0.0, 0.05}}}});
  CHECK(run("compile --target " + target + " --net " + lattice_net() + " --delta 1e-6").code == 2);
}

TEST_CASE("compile: random target reaches delta with a per-level log") {
  const double a = 1.2, b = 0.3, c = 0.1;
  const std::string target = write("rnd.json", {{"m", 1}, {"rows", {{a, b}, {c, (1 + b * c) / a}}}});
  const std::string out = (scratch() / "rnd_out.json").string();
  const Run r = run("compile --target " + target + " --net " + lattice_net() + " --delta 1e-6 --out " + out);
  CHECK(r.code == 0);
  const json j = json::parse(slurp(out)).at("result");
  CHECK(j.at("achieved_error").get<double>() <= 1e-6);
  CHECK(j.at("per_level_errors").size() >= 2);
}

TEST_CASE("compile: malformed input exits 1") {
  const std::string target = write("bad.json", {{"m", 1}, {"rows", {{2.0, 0.0}, {0.0, 2.0}}}});
  CHECK(run("compile --target " + target + " --net " + lattice_net()).code == 1);
  CHECK(run("compile --target /nonexistent.json --net " + lattice_net()).code == 1);
}

TEST_CASE("bound sk prints an upper value and formula") {
  const Run r = run("bound sk --m 1 --r 1 --E 1 --delta 1e-4");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out).at("result");
  CHECK(j.at("upper").get<double>() > 0);
  CHECK(j.at("scale") == "diamond");
  CHECK_FALSE(j.at("formula_ref").get<std::string>().empty());
}

TEST_CASE("bound displacement at z = w is zero") {
  const Run r = run("bound displacement --z 0,0 --w 0,0 --E 1");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out).at("result");
  CHECK(j.at("lower").get<double>() == 0.0);
  CHECK(j.at("upper").get<double>() == 0.0);
}

TEST_CASE("bound multicopy on the qubit pair at pi/2") {
  const json I = {{"re", {{1, 0}, {0, 1}}}, {"im", {{0, 0}, {0, 0}}}};
  const json S = {{"re", {{1, 0}, {0, 0}}}, {"im", {{0, 0}, {0, 1}}}};
  const Run r = run("bound multicopy --U " + write("U.json", I) + " --V " + write("V.json", S));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("extra").at("n") == 3);
  const Run r2 = run("bound multicopy --theta 1.5707963267948966");
  CHECK(json::parse(r2.out).at("result").at("extra").at("n") == 3);
}

TEST_CASE("every bound subcommand runs") {
  const json X = {{"re", {{1.1}}}, {"im", {{0.0}}}};
  const json Y = {{"re", {{0.0}}}, {"im", {{0.05}}}};
  const std::string xf = write("X.json", X), yf = write("Y.json", Y);
  const std::string sq = write("sq.json", {{"m", 1}, {"rows", {{1.1, 0.0}, {0.0, 1 / 1.1}}}});
  const std::string id = write("id2.json", {{"m", 1}, {"rows", {{1.0, 0.0}, {0.0, 1.0}}}});
  for (const std::string& args :
       {"bound symplectic --S " + sq + " --S-prime " + id + " --E 1",
        std::string("bound drift --alpha 1 --beta 0 --E 1 --t 0.1"),
        std::string("bound speed-limit --alpha 1 --beta 0.5 --E 1 --d 0.5"),
        std::string("bound open --alpha 0.1 --beta 0.2 --E 1 --t 0.5 --d 1"),
        std::string("bound pfeifer --gamma 1 --delta 0 --E 1 --dt 0.1"), std::string("bound variance --E 1"),
        std::string("bound phi --s 0.1"), std::string("bound qubit-lower --theta 0.5"),
        std::string("bound lindblad-diff --pair 1,0.5,1,1 --pair 0.1,0.1,0.2,0.2 --t 0.3"),
        std::string("bound brownian --gamma1 0.1,0.1 --delta1 0.2 --gamma2 0.1 --delta2 0 --E 1 --t 0.1"),
        "bound quadratic-ab --d 1 --X " + xf + " --Y " + yf + " --E 1 --t 0.1"}) {
    CAPTURE(args);
    const Run r = run(args);
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("result").contains("scale"));
  }
  const json v = json::parse(run("bound variance --E 1").out).at("result");
  CHECK(v.at("upper").get<double>() == doctest::Approx(0.5 * std::pow(1 + std::sqrt(2.0), 2)));
}

TEST_CASE("vanishing drift reports no finite bound") {
  const Run r = run("bound speed-limit --alpha 0 --beta 0 --E 1 --d 1");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("extra").at("no_finite_bound") == true);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("frobnicate").code == 1);
  CHECK(run("bound nonsense").code == 1);
  CHECK(run("bound sk --m 1").code == 1);
  CHECK(run("bound qubit-lower --theta 4").code == 1);
}

TEST_CASE("net build is deterministic per seed") {
  const std::string a = (scratch() / "net_a.json").string(), b = (scratch() / "net_b.json").string();
  const std::string args = "net build --m 1 --r 1 --epsilon 0.25 --seed 7 --out ";
  REQUIRE(run(args + a).code == 0);
  REQUIRE(run(args + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  const Run info = run("net info --net " + a);
  CHECK(info.code == 0);
  CHECK(json::parse(info.out).at("result").at("size").get<int>() > 0);
}

TEST_CASE("verify commutator-lemmas passes") {
  const Run r = run("verify commutator-lemmas");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("pass") == true);
}

TEST_CASE("verify displacement-sandwich at E = 1 passes") {
  const Run r = run("verify displacement-sandwich --E 1");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("pass") == true);
}

TEST_CASE("verify output is byte-identical across runs") {
  CHECK(run("verify speed-limit-roundtrip --seed 5").out == run("verify speed-limit-roundtrip --seed 5").out);
}

TEST_CASE("unknown suite exits 1") { CHECK(run("verify no-such-suite").code == 1); }
