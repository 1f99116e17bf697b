#include <doctest.h>

#include <functional>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

const std::filesystem::path kScratch = PT_SCRATCH_DIR;

std::string at(const std::string& name) { return (kScratch / name).string(); }

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run cli(const std::string& args) {
  std::filesystem::create_directories(kScratch);
  const std::string o = at("stdout.txt"), e = at("stderr.txt");
  const std::string cmd = std::string("\"") + PT_CLI_PATH + "\" " + args + " >\"" + o + "\" 2>\"" + e + "\"";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

json load(const std::string& path) { return json::parse(slurp(path)); }

std::vector<double> data_of(const json& doc) { return doc["data"].get<std::vector<double>>(); }

}  // namespace

TEST_CASE("state and transform") {
  REQUIRE(cli("state coherent 1,0.5 --out " + at("coh.json")).code == 0);
  const Run w = cli("transform --in " + at("coh.json") + " --rep wigner --out " + at("coh_w.json"));
  CHECK(w.code == 0);
  const auto rep = json::parse(w.out);
  CHECK(rep["representation"] == "wigner");
  CHECK(rep["config"]["rep"] == "wigner");

  const Run h = cli("transform --in " + at("coh.json") + " --rep husimi --out " + at("coh_h.json"));
  CHECK(h.code == 0);
  CHECK(json::parse(h.out)["min_value"].get<double>() >= -1e-10);

  const Run bad = cli("transform --in " + at("coh.json") + " --rep fourier --out " + at("x.json"));
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown representation") != std::string::npos);

  CHECK(cli("transform --in " + at("coh.json") + " --rep symplectic --munu 1:0,0.5:0.5 --out " + at("coh_s.json")).code ==
        0);
  CHECK(cli("transform --in " + at("coh.json") + " --rep optical --theta 0,pi/4 --out " + at("coh_o.json")).code == 0);
  CHECK(load(at("coh_o.json"))["meta"]["angles"].size() == 2);
}

TEST_CASE("parse errors and missing input") {
  CHECK(cli("transform --bogus").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("transform --in " + at("nowhere.json") + " --rep wigner --out " + at("x.json")).code == 2);
  CHECK(cli("state fock 1 --spin sideways --out " + at("x.json")).code == 2);
}

TEST_CASE("evolution") {
  REQUIRE(cli("state coherent 0,0.7 --grid -10,10,256 --out " + at("g.json")).code == 0);
  REQUIRE(cli("transform --in " + at("g.json") + " --rep wigner --out " + at("g_w.json")).code == 0);

  SUBCASE("free flow moves the peak by p t") {
    REQUIRE(cli("evolve --in " + at("g_w.json") + " --flow free --t 2 --out " + at("g_w2.json")).code == 0);
    const auto doc = load(at("g_w2.json"));
    const auto d = data_of(doc);
    const auto ax = doc["grid"]["axes"];
    const std::size_t nq = ax[0]["count"], np = ax[1]["count"];
    // Spin-up component, stored component-major.
    std::size_t best = 0;
    for (std::size_t i = 0; i < nq * np; ++i)
      if (d[2 * nq * np + i] > d[2 * nq * np + best]) best = i;
    const double h = (ax[0]["max"].get<double>() - ax[0]["min"].get<double>()) / static_cast<double>(nq);
    const double q = ax[0]["min"].get<double>() + h * static_cast<double>(best / np);
    const double p = ax[1]["min"].get<double>() + h * static_cast<double>(best % np);
    CHECK(std::abs(q - std::sqrt(2.0) * 0.7 * 2.0) < h);
    CHECK(std::abs(p - std::sqrt(2.0) * 0.7) < h);
  }
  SUBCASE("t = 0 keeps the data") {
    REQUIRE(cli("evolve --in " + at("g_w.json") + " --flow oscillator --omega0 -2 --t 0 --out " + at("g_w0.json")).code == 0);
    CHECK(load(at("g_w0.json"))["data"].dump() == load(at("g_w.json"))["data"].dump());
  }
  SUBCASE("a full period of the oscillator returns the tomogram") {
    REQUIRE(cli("state scenario oscillator --out " + at("osc.json")).code == 0);
    REQUIRE(cli("transform --in " + at("osc.json") + " --rep optical --out " + at("osc_o.json")).code == 0);
    REQUIRE(cli("evolve --in " + at("osc_o.json") + " --flow oscillator --omega0 -2 --t 2pi --out " + at("osc_o2.json"))
                .code == 0);
    const auto a = data_of(load(at("osc_o.json"))), b = data_of(load(at("osc_o2.json")));
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    CHECK(m < 1e-8);
  }
  SUBCASE("leaving the grid is a numeric error") {
    CHECK(cli("evolve --in " + at("g_w.json") + " --flow free --t 40 --out " + at("x.json")).code == 3);
  }
  SUBCASE("state evolution then transform") {
    const Run r = cli("evolve --in " + at("g.json") + " --flow oscillator --omega0 -2 --t 1 --rep optical --out " +
                      at("g_o.json"));
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["trace_drift"].get<double>() < 1e-12);
  }
}

TEST_CASE("verify exit codes") {
  const Run osc = cli("verify --scenario oscillator --times 0,1");
  CHECK(osc.code == 0);
  CHECK(json::parse(osc.out)["pass"] == true);
  CHECK(cli("verify --scenario landau --times 0,0.5").code == 0);
  CHECK(cli("verify --scenario landau --times 0,0.5 --tol 1e-12").code == 1);
  CHECK(cli("verify --scenario hydrogen").code == 2);
}

TEST_CASE("config file precedence") {
  {
    std::ofstream f(at("cfg.json"));
    f << R"({"scenario":"landau","times":[0,0.5],"tol":1e-12})";
  }
  const Run from_file = cli("verify --config " + at("cfg.json"));
  CHECK(from_file.code == 1);
  CHECK(json::parse(from_file.out)["config"]["tol"] == "1e-12");
  const Run overridden = cli("verify --config " + at("cfg.json") + " --tol 1e-3");
  CHECK(overridden.code == 0);
  CHECK(json::parse(overridden.out)["config"]["tol"] == "1e-3");
  {
    std::ofstream f(at("cfg_bad.json"));
    f << R"({"scenario":"landau","speed":3})";
  }
  CHECK(cli("verify --config " + at("cfg_bad.json")).code == 2);
}

TEST_CASE("export") {
  REQUIRE(cli("state fock 1 --grid -8,8,64 --out " + at("f.json")).code == 0);
  REQUIRE(cli("transform --in " + at("f.json") + " --rep optical --theta 0 --out " + at("f_o.json")).code == 0);
  REQUIRE(cli("export --in " + at("f_o.json") + " --out " + at("f_o.csv")).code == 0);
  const auto csv = slurp(at("f_o.csv"));
  CHECK(csv.substr(0, csv.find('\n')) == "X,theta,w1,w2,w3,w4");
}
