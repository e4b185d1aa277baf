#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QPVI_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
  std::vector<nlohmann::json> v;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

}  // namespace

TEST_CASE("Lebesgue weight gives zero Verblunsky coefficients") {
  const Run r = run("verblunsky --a 0 --b 0 --q 0.5 --N 10");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["N"] == 10);
  CHECK(j.contains("qpvi_version"));
  const auto& alpha = j["verblunsky"]["alpha"];
  REQUIRE(alpha.size() == 11);
  for (size_t n = 1; n < alpha.size(); ++n) {
    CHECK(std::abs(alpha[n][0].get<double>()) < 1e-30);
    CHECK(std::abs(alpha[n][1].get<double>()) < 1e-30);
  }
}

TEST_CASE("orbit emits one record per step with kappa1 flowing by q") {
  const Run r = run("orbit --preset reference --n-start 1 --steps 10");
  REQUIRE(r.code == 0);
  const auto recs = json_lines(r.out);
  REQUIRE(recs.size() == 10);
  double prev = 0;
  for (size_t k = 0; k < recs.size(); ++k) {
    CHECK(recs[k]["n"] == static_cast<int>(k) + 2);
    CHECK(recs[k]["config"]["preset"] == "reference");
    const double kappa1 = recs[k]["params"]["kappa1"][0].get<double>();
    if (k > 0) CHECK(kappa1 == doctest::Approx(prev * 0.5).epsilon(1e-14));
    prev = kappa1;
  }
  CHECK(recs[0]["coordinate_vs_chain"].get<double>() < 1e-40);
  CHECK(recs[0]["matrix_vs_chain"].get<double>() < 1e-40);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("moments --a 1.2").code == 2);
  CHECK(run("moments --q 1.5").code == 2);
  CHECK(run("moments --b 0.1,0.2,0.3").code == 2);
  CHECK(run("moments --format xml").code == 2);
  CHECK(run("moments --preset other").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("numerical failures exit with 3") {
  // a = b makes every Verblunsky coefficient vanish, so the Lax fit is degenerate.
  CHECK(run("lax --a 0.3 --b 0.3 --N 5").code == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string args = "weyl --seed 7 --points 5";
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = run("weyl --seed 8 --points 5");
  CHECK(c.out != a.out);
}

TEST_CASE("precision comes from QPVI_PREC unless --prec is given") {
  auto prec = [](const Run& r) { return nlohmann::json::parse(r.out)["config"]["prec"].get<int>(); };
  CHECK(prec(run("moments --N 4 --K 4", "QPVI_PREC=160")) == 160);
  CHECK(prec(run("moments --N 4 --K 4 --prec 96", "QPVI_PREC=160")) == 96);
  CHECK(prec(run("moments --N 4 --K 4", "env -u QPVI_PREC")) == 128);
  CHECK(prec(run("moments --N 4 --K 4 --preset reference")) == 192);
}

TEST_CASE("csv output and --out") {
  const std::string path = "qpvi_cli_test_out.csv";
  const Run r = run("verblunsky --preset reference --N 4 --format csv --out " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,re_alpha,im_alpha,sigma");
  std::remove(path.c_str());
}

TEST_CASE("ode emits a trajectory and the limit report") {
  const Run r = run("ode --samples 2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["trajectory"].size() == 4);
  CHECK(j["limit_check"]["eps"].size() == 3);
  CHECK(j["limit_check"].contains("order_vs_difference_field"));
}

TEST_CASE("lax chain csv lists every fitted index") {
  const Run r = run("lax --preset reference --N 8 --format csv");
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 8);
}
