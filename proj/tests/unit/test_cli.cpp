#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
  [[nodiscard]] nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mahlercf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

using namespace mahlercf::cli;

TEST_CASE("recurrence") {
  auto r = call({"recurrence", "-u", "2", "-v", "3", "-n", "3"});
  CHECK(r.code == kOk);
  auto j = r.json();
  CHECK(j["alpha"] == nlohmann::json({"-2", "-2", "4"}));
  CHECK(j["beta"] == nlohmann::json({"1", "1", "11"}));
  CHECK(j["status"]["state"] == "Ok");

  r = call({"recurrence", "-u", "2", "-v", "1", "-n", "20"});
  CHECK(r.code == kMathFailure);
  j = r.json();
  CHECK(j["status"]["state"] == "FailedAt");
  CHECK(j["status"]["index"] == 6);
  CHECK(j["status"]["cause"] == "BetaZero");

  r = call({"recurrence", "-u", "-2", "-v", "1", "-n", "20", "--format", "text"});
  CHECK(r.code == kMathFailure);
  CHECK(r.out.find("status: FailedAt(6, BetaZero)") != std::string::npos);

  r = call({"recurrence", "-u", "0", "-v", "1", "-p", "5", "-n", "30"});
  CHECK(r.code == kMathFailure);
  CHECK(r.json()["status"]["index"] == 20);

  // rationals reduce mod p: 1/2 = 4 mod 7
  r = call({"recurrence", "-u", "1/2", "-v", "2", "-p", "7", "-n", "3"});
  CHECK(r.json()["u"] == 4);
}

TEST_CASE("usage errors") {
  CHECK(call({"recurrence", "-u", "1", "-v", "1", "-n", "2"}).code == kUsage);
  CHECK(call({"recurrence", "-u", "x", "-v", "1"}).code == kUsage);
  CHECK(call({"recurrence", "-v", "1"}).code == kUsage);
  CHECK(call({"recurrence", "-u", "1", "-v", "1", "-p", "9"}).code == kUsage);
  CHECK(call({"check", "-u", "1", "-v", "1", "-p", "7", "--primes-max", "10"}).code == kUsage);
  CHECK(call({"nonsense"}).code == kUsage);
  CHECK(call({}).code == kUsage);
  CHECK(call({"verify-lemma", "-p", "7", "--lemma", "3", "--phi", "3"}).code == kUsage);
  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("cf") {
  auto r = call({"cf", "-u", "2", "-v", "3", "-n", "12"});
  CHECK(r.code == kOk);
  auto j = r.json();
  CHECK(j["verdict"] == "AGREE");
  CHECK(j["recurrence_cf"] == j["oracle_cf"]);

  r = call({"cf", "-u", "2", "-v", "1", "-n", "8"});
  CHECK(r.code == kMathFailure);
  j = r.json();
  CHECK(j["nonlinear_index"] == 6);

  r = call({"cf", "-u", "1", "-v", "1", "-n", "4"});
  CHECK(r.code == kMathFailure);
  CHECK(r.json()["oracle_terminated"] == true);

  r = call({"cf", "-u", "2", "-v", "3", "-n", "30", "--max-depth", "20"});
  CHECK(r.code == kPrecision);
}

TEST_CASE("check") {
  auto r = call({"check", "-u", "2", "-v", "-2", "--primes-max", "1000"});
  CHECK(r.code == kNegative);
  CHECK(r.json()["witness"].is_null());

  r = call({"check", "-u", "2", "-v", "0"});
  CHECK(r.code == kOk);
  CHECK(r.json()["witness"]["p"] == 3);
  CHECK(r.json()["witness"]["case"] == "C3");

  r = call({"check", "-u", "1", "-v", "2", "-p", "7"});
  CHECK(r.code == kOk);
}

TEST_CASE("scan") {
  auto r = call({"scan", "--p-min", "3", "--p-max", "13", "-N", "2000", "--workers", "2"});
  CHECK(r.code == kOk);
  auto j = r.json();
  CHECK(j["primes_scanned"] == 5);
  CHECK(j["total_extra_survivors"] == 0);
  CHECK(j["total_missing"] == 0);
  CHECK(j["results"][2]["p"] == 7);
  CHECK(j["results"][2]["survivors"].size() == 14);

  const auto path = std::filesystem::temp_directory_path() / "mahlercf_scan_test.csv";
  r = call({"scan", "--p-min", "3", "--p-max", "5", "--format", "csv", "--out", path.string()});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string header, first;
  std::getline(f, header);
  std::getline(f, first);
  CHECK(header == "p,u,v,first_zero_index");
  CHECK(first == "3,0,0,2");
  std::filesystem::remove(path);
}

TEST_CASE("density") {
  const auto r = call({"density", "-B", "0"});
  CHECK(r.code == kOk);
  CHECK(r.json()["fraction"] == "0");
  CHECK(call({"density", "-B", "-3"}).code == kUsage);
}

TEST_CASE("verify-lemma") {
  auto r = call({"verify-lemma", "--lemma", "L7", "-p", "7", "--delta", "2", "-K", "20"});
  CHECK(r.code == kOk);
  CHECK(r.json()["pass"] == true);
  CHECK(r.json()["beta_catalog"] == nlohmann::json({1, 2, 4}));

  r = call({"verify-lemma", "--lemma", "6", "-p", "13", "--delta", "3", "--sign", "-1"});
  CHECK(r.code == kOk);
  CHECK(r.json()["params"]["v"] == 10);

  r = call({"verify-lemma", "--all", "-p", "31", "-K", "10"});
  CHECK(r.code == kOk);
  CHECK(r.json()["reports"].size() >= 14);
}

TEST_CASE("mu") {
  auto r = call({"mu", "-u", "2", "-v", "3", "-n", "50", "--window-begin", "25"});
  CHECK(r.code == kOk);
  auto j = r.json();
  CHECK(j["estimate"] == "51/25");
  CHECK(j["source"] == "recurrence");
  CHECK(j["label"] == "estimate at depth 50");

  r = call({"mu", "-u", "2", "-v", "1", "-n", "12"});
  CHECK(r.code == kMathFailure);
  CHECK(r.json()["source"] == "series");
}

TEST_CASE("config file") {
  const auto path = std::filesystem::temp_directory_path() / "mahlercf_test.ini";
  {
    std::ofstream f(path);
    f << "[recurrence]\nu=2\nv=3\nn=4\n";
  }
  const auto r = call({"--config", path.string(), "recurrence"});
  CHECK(r.code == kOk);
  CHECK(r.json()["beta"].size() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("worked examples") {
  CHECK(call({"recurrence", "-u", "1", "-v", "1", "-n", "10"}).code == kMathFailure);
  auto r = call({"recurrence", "-u", "5", "-v", "1", "-p", "11", "-n", "9", "--format", "text"});
  CHECK(r.out.find("beta: 1 2 1 1 1 1 1 1 1\n") != std::string::npos);
  r = call({"recurrence", "-u", "2", "-v", "3", "-n", "3", "--format", "text"});
  CHECK(r.out.find("alpha: -2 -2 4\nbeta: 1 1 11\n") == 0);

  r = call({"cf", "-u", "2", "-v", "3", "-n", "20", "--format", "text"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("AGREE\n") != std::string::npos);
  r = call({"cf", "-u", "0", "-v", "0", "-n", "1"});
  CHECK(r.code == kOk);
  CHECK(r.json()["oracle_cf"]["terms"][0]["beta"] == "1");
  CHECK(r.json()["oracle_cf"]["terms"][0]["a"] == nlohmann::json({"0", "1"}));

  CHECK(call({"check", "-u", "5", "-v", "1", "--primes-max", "1000"}).code == kOk);
  r = call({"check", "-u", "2", "-v", "0", "-p", "7"});
  CHECK(r.json()["witnesses"][0]["case"] == "C3");
  CHECK(r.json()["witnesses"][0]["phi"] == 2);
  CHECK(call({"verify-lemma", "--lemma", "7", "-p", "7", "--delta", "2", "-K", "100"}).code == kOk);
}
