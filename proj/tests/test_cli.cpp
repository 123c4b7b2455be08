#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lpnorm/report.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lpnorm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json json_of(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cartlidge certificate on constant weights") {
  const auto r = run({"certify", "--method", "cartlidge", "--weights", "constant", "--p", "2", "--N", "100000"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["method"] == "cartlidge");
  CHECK(j["L"].get<double>() == 1.0);
  CHECK(j["bound"].get<double>() == 2.0);
  CHECK(j["pass"] == true);
}

TEST_CASE("hlp certification at 0.35") {
  const auto r = run({"hlp", "certify", "--p", "0.35", "--nmax", "100000"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["method"] == "thm114");
  CHECK(j["n0"] == 4);
  CHECK(j["certified"] == true);
  CHECK(j["margins"]["threshold"].get<double>() > 0.0);
}

TEST_CASE("c_p root at p = 2") {
  const auto r = run({"copson", "cp-root", "--p", "2"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["c_p"].get<double>() == doctest::Approx(-0.2360679775).epsilon(1e-10));
  CHECK(j["threshold"].get<double>() == doctest::Approx(2.2360679775).epsilon(1e-10));
}

TEST_CASE("exit codes") {
  CHECK(run({"certify", "--method", "cor12", "--weights", "constant", "--p", "2", "--L", "0.5", "--N", "100"}).code == 1);
  CHECK(run({"copson", "admissible", "--p", "2", "--c", "2.3"}).code == 1);
  CHECK(run({"hlp", "certify", "--p", "0.45", "--nmax", "1000"}).code == 1);
  const auto bogus = run({"certify", "--method", "bogus", "--weights", "constant", "--p", "2", "--N", "10"});
  CHECK(bogus.code == 2);
  CHECK(bogus.err.find("cartlidge") != std::string::npos);
  CHECK(run({"certify", "--method", "cor12", "--weights", "triangle", "--p", "2", "--N", "10"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"certify", "--method", "cor12", "--weights", "constant", "--p", "0.5", "--N", "10"}).code == 2);
  CHECK(run({"certify", "--bad-flag"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("malformed weight file") {
  const auto path = std::filesystem::temp_directory_path() / "lpnorm_cli_bad_weights.txt";
  {
    std::ofstream f(path);
    f << "1\n2\nx\n";
  }
  const auto r = run({"certify", "--method", "cor12", "--weights", "file:" + path.string(), "--p", "2"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  std::filesystem::remove(path);
}

TEST_CASE("csv output and report file") {
  const auto r = run({"certify", "--method", "cor12", "--weights", "constant", "--p", "2", "--L", "0.5", "--N", "1000",
                      "--format", "csv"});
  CHECK(r.code == 1);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == lpnorm::csv_header());
  CHECK(row.rfind("cor12,2,0.5,,,1000,false,1,", 0) == 0);

  const auto path = std::filesystem::temp_directory_path() / "lpnorm_cli_report.json";
  const auto f = run({"certify", "--method", "thm11", "--weights", "power:1", "--p", "2", "--L", "0.5", "--N", "100",
                      "--out", path.string()});
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream file(path);
  const auto j = nlohmann::ordered_json::parse(file);
  CHECK(j["method"] == "thm11");
  CHECK(j["worst_index"] == 99);
  std::filesystem::remove(path);
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::string> args{"copson", "numeric", "--branch", "1.1'", "--weights", "power:1", "--p", "2",
                                      "--c", "1.5", "--N", "300", "--trials", "200", "--seed", "4"};
  const auto a = run(args);
  const auto b = run(args);
  auto serial = args;
  serial.push_back("--serial");
  const auto c = run(serial);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("method comparison") {
  const auto r = run({"compare", "--methods", "cor18,cor12", "--N", "200", "--count", "44"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  const auto& m = j["matrix"];
  CHECK(m["pass_fail"].get<int>() > 0);
  CHECK(m["fail_pass"].get<int>() > 0);
  CHECK(m["pass_pass"].get<int>() + m["pass_fail"].get<int>() + m["fail_pass"].get<int>() +
            m["fail_fail"].get<int>() ==
        j["instances_checked"].get<int>());
  CHECK(j["differing"].size() == static_cast<std::size_t>(m["pass_fail"].get<int>() + m["fail_pass"].get<int>()));

  for (const char* p : {"2", "3"}) {
    const auto imp = json_of(run({"compare", "--methods", "cor12,thm11", "--p", p, "--N", "200", "--count", "44"}));
    CHECK(imp["matrix"]["pass_fail"] == 0);
  }
  const auto same = json_of(run({"compare", "--methods", "thm17,cor18", "--N", "200", "--count", "44"}));
  CHECK(same["matrix"]["pass_fail"] == 0);
  CHECK(same["matrix"]["fail_pass"] == 0);
  const auto self = json_of(run({"compare", "--methods", "cor12,cor12", "--N", "100", "--count", "10"}));
  CHECK(self["differing"].empty());
  CHECK(run({"compare", "--methods", "cor12", "--N", "100"}).code == 2);
}

TEST_CASE("every subcommand runs") {
  const std::vector<std::vector<std::string>> cmds{
      {"norm", "--matrix", "weighted_mean", "--weights", "constant", "--p", "2", "--N", "256"},
      {"copson", "ineq36", "--p", "2", "--c", "2.2"},
      {"copson", "mu-dual", "--weights", "constant", "--p", "2", "--c", "2", "--N", "100"},
      {"copson", "probe", "--weights", "constant", "--p", "2", "--c", "2", "--N", "4096", "--start", "256"},
      {"bge", "trials", "--weights", "constant", "--p", "2", "--alpha", "1", "--N", "100", "--trials", "50"},
      {"bge", "mu", "--route", "primal", "--weights", "constant", "--p", "2", "--alpha", "1", "--N", "100"},
      {"bge", "admissible", "--p", "2", "--alpha", "0.75"},
      {"strengthened", "check", "--case", "1.40", "--weights", "constant", "--p", "2", "--N", "200"},
      {"strengthened", "mu-choice", "--choice", "copson_1.8", "--weights", "power:1", "--p", "2", "--c", "1.5",
       "--N", "200"},
      {"hlp", "check146", "--p", "0.34"},
      {"hlp", "search-c", "--p", "0.35"},
      {"hlp", "feasible", "--p", "0.35", "--n0", "5", "--c", "-1.33542621"},
      {"hlp", "probe", "--p", "0.3"},
      {"hlp", "dual-trials", "--p", "0.35", "--N", "200", "--trials", "100"},
      {"hlp", "trace", "--kind", "dual", "--p", "0.35", "--N", "100"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    CAPTURE(c[0] + " " + c[1]);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK_NOTHROW(json_of(r));
  }
}

}  // TEST_SUITE
