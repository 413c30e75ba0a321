#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = seqlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const std::vector<std::string>& args) {
  const auto r = call(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("seqlab_test_" + name)).string();
}

}  // namespace

TEST_CASE("report envelope") {
  const auto j = report({"gen", "--seq", "example-s-not-chat", "--len", "5"});
  CHECK(j["tool"] == "seqlab");
  CHECK(j["command"] == "gen");
  CHECK(j["config"]["len"] == "5");
  CHECK(j["result"]["values"] == json::array({0, 1, 1, 0, 0}));
  CHECK(j["run"].contains("threads"));
  CHECK_FALSE(j.contains("seed"));
}

TEST_CASE("exit codes") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"gen", "--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"gen", "--seq", "nope", "--len", "4"}).code == 2);
  CHECK(call({"gen", "--seq", "alt-sign", "--len", "abc"}).code == 2);
  CHECK(call({"gen", "--seq", "z-linf-minus-s", "--len-blocks", "14"}).code == 2);
  CHECK(call({"porosity", "--pair", "c_in_chat", "--seq", "alt-sign", "--r", "1", "--alpha", "0.5"}).code == 1);
  CHECK(call({"algebra-witness", "--seq", "constant", "--value", "0", "--len", "2048", "--betas", "1", "--degree",
              "1"})
            .code == 1);
  CHECK(call({"algebra-witness", "--seq", "z-chat-minus-c", "--len", "100", "--betas", "1,2", "--degree", "2"}).code ==
        2);
}

TEST_CASE("--len-blocks resolves m_j") {
  const auto j = report({"gen", "--seq", "example-s-not-chat", "--len-blocks", "3"});
  CHECK(j["result"]["N"] == 20);
}

TEST_CASE("gen output feeds back as a custom sequence") {
  const std::string path = temp_path("gen.json");
  CHECK(call({"gen", "--seq", "z-chat-minus-c", "--len", "40", "--explike", "1:1,-0.5:-2", "--out", path}).code == 0);
  const auto again = report({"gen", "--input", path, "--len", "40"});
  std::ifstream in(path);
  const json first = json::parse(in);
  CHECK(again["result"]["values"] == first["result"]["values"]);
  CHECK(first["result"]["transforms"].size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("csv and lines output") {
  const auto csv = call({"gen", "--seq", "alt-sign", "--len", "3", "--format", "csv"});
  CHECK(csv.out == "n,value\n1,-1\n2,1\n3,-1\n");
  const auto lines = call({"gen", "--seq", "alt-sign", "--len", "2", "--format", "lines"});
  CHECK(lines.out == "-1\n1\n");
}

TEST_CASE("config file, with command-line flags taking precedence") {
  const std::string path = temp_path("cfg.txt");
  {
    std::ofstream f(path);
    f << "# classify settings\nseq = z-chat-minus-c\nlen = 5000\ntol = 0.05\n";
  }
  auto j = report({"classify", "--config", path});
  CHECK(j["config"]["tol"] == "0.05");
  CHECK(j["config"]["len"] == "5000");
  j = report({"classify", "--config", path, "--len", "6000"});
  CHECK(j["config"]["len"] == "6000");
  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  CHECK(call({"classify", "--config", path, "--seq", "alt-sign", "--len", "100"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("porosity certificate round-trips through verify-cert") {
  const std::string path = temp_path("cert.json");
  CHECK(call({"porosity", "--pair", "chat_in_S", "--seq", "constant", "--value", "0", "--r", "1", "--alpha", "0.5",
              "--out", path})
            .code == 0);
  const auto v = report({"verify-cert", "--cert", path, "--len", "5000", "--samples", "16", "--seed", "3"});
  CHECK(v["seed"] == 3);
  CHECK(v["result"]["verdict"]["passed"] == true);
  CHECK(call({"verify-cert", "--cert", path, "--len", "2"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("reports do not depend on the thread count") {
  const std::vector<std::vector<std::string>> commands = {
      {"mc-lln", "--len", "512", "--trials", "64", "--seed", "9"},
      {"mc-blocks", "--block-size", "2", "--m-max", "6", "--trials", "2000", "--seed", "9"},
      {"classify", "--seq", "z-s-minus-chat", "--len", "20000"},
  };
  for (const auto& cmd : commands) {
    json base;
    for (const char* threads : {"1", "2", "4"}) {
      auto args = cmd;
      args.push_back("--threads");
      args.push_back(threads);
      auto j = report(args);
      j.erase("run");
      if (base.is_null())
        base = j;
      else
        CHECK_MESSAGE(j.dump() == base.dump(), cmd.front() << " threads " << threads);
    }
  }
}
