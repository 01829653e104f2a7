#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbr/cli/cli.hpp"
#include "pbr/cli/json_writer.hpp"

using namespace pbr::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("pbr_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

RunConfig parse(std::vector<std::string> args) {
  std::ostringstream help;
  return parse_config(args, help);
}

}  // namespace

TEST_CASE("flags map onto the normalized config") {
  const RunConfig c = parse({"bch", "--which", "commutator", "-T", "5"});
  CHECK(c.command == "bch");
  CHECK(c.options.at("T") == 5);
  CHECK(c.options.at("which") == "commutator");
  CHECK(c.options.at("seed") == 0);
  const RunConfig r = parse({"lemma-r"});
  CHECK(r.options.at("alpha").get<double>() == 1.1);
  CHECK(r.options.at("gamma").get<double>() == 1.63);
  const RunConfig w = parse({"witness-verify", "--N", "1000"});
  CHECK(w.options.at("N") == json::array({1000}));
  CHECK(w.normalized().at("command") == "witness-verify");
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli({"frobnicate"}).code == kUsage);
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"bch", "--bogus", "1"}).code == kUsage);
  CHECK(run_cli({"bch", "-T", "five"}).code == kUsage);
  CHECK(run_cli({"bch", "-T", "2.5"}).code == kUsage);
  CHECK(run_cli({"lh-check", "--fields", "zero,zero", "--out", "/dev/null"}).code == kUsage);
  CHECK(run_cli({"lh-check", "--fields", "sin-p", "--out", "/dev/null"}).code == kUsage);
  CHECK(run_cli({"bch", "-T", "9", "--out", "/dev/null"}).code == kUsage);
  CHECK(run_cli({"bch", "--which", "3.4", "--out", "/dev/null"}).code == kUsage);
}

TEST_CASE("config files: unknown keys rejected, flags win, missing files distinct") {
  const Sandbox sb;
  std::ofstream(sb.path("c.json")) << R"({"command": "lemma-r", "alpha": 1.2, "bound": 0.995})";
  const RunConfig c = parse({"lemma-r", "--config", sb.path("c.json"), "--alpha", "1.1"});
  CHECK(c.options.at("alpha").get<double>() == 1.1);
  CHECK(c.options.at("bound").get<double>() == 0.995);

  std::ofstream(sb.path("bad.json")) << R"({"alpha": 1.2, "colour": "red"})";
  CHECK(run_cli({"lemma-r", "--config", sb.path("bad.json")}).code == kUsage);
  std::ofstream(sb.path("typed.json")) << R"({"T": 2.5})";
  CHECK(run_cli({"bch", "--config", sb.path("typed.json")}).code == kUsage);
  std::ofstream(sb.path("other.json")) << R"({"command": "bch"})";
  CHECK(run_cli({"lemma-r", "--config", sb.path("other.json")}).code == kUsage);
  CHECK(run_cli({"lemma-r", "--config", sb.path("missing.json")}).code == kIoError);
  CHECK(run_cli({"lh-check", "--fields", sb.path("missing.csv") + ",sin-q"}).code == kIoError);
}

TEST_CASE("bch writes a matching expansion that round-trips through a JSON parser") {
  const Sandbox sb;
  const Run r = run_cli({"bch", "--which", "commutator", "-T", "5", "--out", sb.path("bch.json")});
  CHECK(r.code == kPass);
  const std::string text = slurp(sb.path("bch.json"));
  const json j = json::parse(text);
  CHECK(j.at("match") == true);
  CHECK(j.at("version") == version());
  CHECK(j.at("config").at("T") == 5);
  CHECK(dump_json(j) == text);
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("identical runs give byte-identical artifacts for any thread cap") {
  const Sandbox sb;
  for (const std::string cmd : {"lemma-r", "symmetry", "bracket-eval"}) {
    std::vector<std::string> base{cmd};
    if (cmd != "lemma-r") base.insert(base.end(), {"--fields", "random:3,random:4", "--n", "48"});
    auto a = base, b = base, c = base;
    a.insert(a.end(), {"--out", sb.path("a")});
    b.insert(b.end(), {"--out", sb.path("b")});
    c.insert(c.end(), {"--out", sb.path("c"), "--threads", "3"});
    CHECK(run_cli(a).code == kPass);
    CHECK(run_cli(b).code == kPass);
    CHECK(slurp(sb.path("a")) == slurp(sb.path("b")));
    CHECK(run_cli(c).code == kPass);
    // the thread cap is echoed in the config line; the data must agree
    auto la = lines(slurp(sb.path("a"))), lc = lines(slurp(sb.path("c")));
    REQUIRE(la.size() == lc.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
      if (la[i].find("threads") != std::string::npos) continue;
      CHECK(la[i] == lc[i]);
    }
  }
}

TEST_CASE("CSV artifacts carry provenance and the documented headers") {
  const Sandbox sb;
  CHECK(run_cli({"bracket-eval", "--n", "16", "--out", sb.path("b.csv")}).code == kPass);
  auto l = lines(slurp(sb.path("b.csv")));
  CHECK(l[0].rfind("# pbr " + version() + " config={", 0) == 0);
  CHECK(l[1] == "n,h,kind");
  // the bracket file reads back as a field
  CHECK(run_cli({"lh-check", "--fields", sb.path("b.csv") + ",sin-q", "--out", sb.path("lh.json")}).code == kPass);

  CHECK(run_cli({"rate-scan", "--points", "3", "--eps_min", "1e-3", "--budget", "4", "--n", "32", "--search_n", "16",
                 "--families", "oscillatory", "--out", sb.path("r.csv")})
            .code == kPass);
  l = lines(slurp(sb.path("r.csv")));
  CHECK(l[1] == "eps,best_phi,decrease,family,params");
  CHECK(l.size() == 5);
  const json s = json::parse(slurp(sb.path("r.json")));
  CHECK(s.at("reference_exponents").size() == 3);
  CHECK(s.contains("C"));
  CHECK(s.contains("exponent"));
  CHECK(s.contains("residual"));
}

TEST_CASE("witness-verify at N = 1000") {
  const Sandbox sb;
  const Run r = run_cli({"witness-verify", "--N", "1000", "--out", sb.path("w.csv")});
  CHECK(r.code == kPass);
  const auto l = lines(slurp(sb.path("w.csv")));
  REQUIRE(l.size() == 3);
  CHECK(l[1] == "N,ratio_max,ratio_min,residual,maxR");
  std::stringstream row(l[2]);
  std::string cell;
  std::vector<double> v;
  while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
  CHECK(v[0] == 1000);
  CHECK(v[1] <= 0.995);
  CHECK(v[2] <= 0.995);
  CHECK(v[4] <= 0.99);
}

TEST_CASE("failed checks exit 1") {
  const Sandbox sb;
  CHECK(run_cli({"lemma-r", "--bound", "0.987", "--out", sb.path("l.json")}).code == kCheckFailed);
  CHECK(json::parse(slurp(sb.path("l.json"))).at("kappa").is_null());
  CHECK(run_cli({"y-bound", "--tol", "-1", "--out", sb.path("y.json")}).code == kCheckFailed);
}

TEST_CASE("output locations and partial artifacts") {
  const Sandbox sb;
  CHECK(run_cli({"lemma-r", "--out", sb.path("no/such/dir/l.json")}).code == kIoError);
  // the JSON half of rate-scan cannot be written: the CSV half is removed
  fs::create_directories(sb.path("r.json"));
  CHECK(run_cli({"rate-scan", "--points", "3", "--eps_min", "1e-3", "--budget", "2", "--n", "32", "--search_n", "16",
                 "--families", "oscillatory", "--out", sb.path("r.csv")})
            .code == kIoError);
  CHECK_FALSE(fs::exists(sb.path("r.csv")));
  CHECK_FALSE(fs::exists(sb.path("r.csv.tmp")));

  ::setenv("PBR_OUT_DIR", sb.dir.c_str(), 1);
  CHECK(run_cli({"lemma-r"}).code == kPass);
  ::unsetenv("PBR_OUT_DIR");
  CHECK(fs::exists(sb.path("lemma-r.json")));
}

TEST_CASE("help documents the CSV schema") {
  const Run r = run_cli({"witness-verify", "--help"});
  CHECK(r.code == kPass);
  CHECK(r.out.find("N,ratio_max,ratio_min,residual,maxR") != std::string::npos);
  CHECK(run_cli({"rate-scan", "--help"}).out.find("eps,best_phi,decrease,family,params") != std::string::npos);
}

TEST_CASE("JSON writer") {
  json j{{"b", 0.1}, {"a", {1, 2.5, nullptr}}, {"c", "\xc3\xa9"}, {"d", std::nan("")}};
  CHECK(dump_json(j, -1) == "{\"a\":[1,2.5,null],\"b\":0.10000000000000001,\"c\":\"\xc3\xa9\",\"d\":null}");
  CHECK(dump_json(json::object()) == "{}\n");
  const json back = json::parse(dump_json(j));
  CHECK(back.at("b").get<double>() == 0.1);
}
