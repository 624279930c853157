#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "strahler/commands.hpp"

using namespace strahler;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "strahler");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("1,5,9") == std::vector<int>{1, 5, 9});
  CHECK_THROWS(parse_grid("5,5"));
  CHECK_THROWS(parse_grid("3,2"));
  CHECK_THROWS(parse_grid("0,2"));
  CHECK_THROWS(parse_grid("1,,2"));
  CHECK_THROWS(parse_grid("1,x"));
  CHECK_THROWS(parse_grid(""));
}

TEST_CASE("expect") {
  Run r = run({"expect", "--n", "12", "--r", "2", "--f", "S1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"n,r,f,mode,exact,decimal,rel_error_bound",
                                                 "12,2,S1,exact,22/7,3.14285714286,0"});
  r = run({"expect", "--n", "5", "--r", "1", "--f", "S1"});
  CHECK(lines(r.out).at(1) == "5,1,S1,exact,5,5,0");
  r = run({"expect", "--n", "5", "--r", "2", "--f", "S1^2"});
  CHECK(lines(r.out).at(1).find(",16/7,") != std::string::npos);
}

TEST_CASE("grid rows are ascending") {
  const Run r = run({"expect", "--n-grid", "3,10,40", "--r", "2"});
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("3,", 0) == 0);
  CHECK(rows[3].rfind("40,", 0) == 0);
}

TEST_CASE("ratio") {
  Run r = run({"ratio", "--n", "100", "--r", "1", "--f", "S1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).find(",394/99,") != std::string::npos);
  CHECK(lines(r.out).at(1).find(",199/50,") != std::string::npos);
  r = run({"ratio", "--n", "1000", "--r", "1", "--f", "S1^2", "--mode", "float"});
  CHECK(lines(r.out).at(1).find(",1996/125,15.968,16,") != std::string::npos);
  r = run({"ratio", "--n-grid", "10,20", "--r", "2", "--f", "3"});
  CHECK(lines(r.out).at(1).find(",exact,1,1,1,1,1,0") != std::string::npos);
}

TEST_CASE("dist") {
  Run r = run({"dist", "--n", "5", "--r", "2"});
  CHECK(lines(r.out) == std::vector<std::string>{"n,r,s,mode,probability,decimal", "5,2,1,exact,4/7,0.571428571429",
                                                 "5,2,2,exact,3/7,0.428571428571"});
  r = run({"dist", "--n", "4", "--r", "3"});
  CHECK(lines(r.out).at(1) == "4,3,0,exact,4/5,0.8");
  CHECK(lines(r.out).at(2) == "4,3,1,exact,1/5,0.2");
}

TEST_CASE("sample") {
  const Run a = run({"sample", "--n", "50", "--r", "2", "--trials", "500", "--seed", "9"});
  const Run b = run({"sample", "--n", "50", "--r", "2", "--trials", "500", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run leaf = run({"sample", "--n", "1", "--f", "S1^2+1", "--trials", "4"});
  CHECK(lines(leaf.out).at(1) == "1,1,S1^2+1,4,0,2,0,2,2");
  const Run single = run({"sample", "--n", "10", "--trials", "1", "--format", "json"});
  CHECK(nlohmann::json::parse(single.out)[0]["stderr"].is_null());
}

TEST_CASE("enumerate") {
  const Run r = run({"enumerate", "--n", "3"});
  CHECK(lines(r.out) == std::vector<std::string>{"n,rank,tree,order,profile,f,value", "3,0,(* (* *)),2,3 1,S1,3",
                                                 "3,1,((* *) *),2,3 1,S1,3"});
  CHECK(run({"enumerate", "--n", "15"}).code == 3);
  CHECK(run({"enumerate", "--n", "6", "--max-n", "5"}).code == 3);
}

TEST_CASE("asympt") {
  const Run r = run({"asympt", "--n-grid", "50,100,200", "--r", "2", "--f", "S1"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].substr(rows[1].size() - 4) == "true");
  const Run q = run({"asympt", "--n-grid", "50,100", "--quantity", "ratio", "--f", "S1^2"});
  CHECK(q.code == 0);
  CHECK(run({"asympt", "--n-grid", "50,100", "--quantity", "variance"}).code == 2);
}

TEST_CASE("csv and json carry the same content") {
  for (const std::vector<std::string> base : {std::vector<std::string>{"expect", "--n-grid", "7,30", "--r", "2"},
                                              std::vector<std::string>{"dist", "--n", "9", "--r", "2"},
                                              std::vector<std::string>{"ratio", "--n", "40", "--f", "S1^2"}}) {
    const Run csv = run(base);
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto json = nlohmann::ordered_json::parse(run(json_args).out);
    const auto rows = lines(csv.out);
    REQUIRE(json.size() + 1 == rows.size());
    std::vector<std::string> header;
    for (const auto& [key, value] : json[0].items()) header.push_back(key);
    std::string joined;
    for (const auto& h : header) joined += (joined.empty() ? "" : ",") + h;
    CHECK(joined == rows[0]);
    for (std::size_t i = 0; i < json.size(); ++i) {
      std::string row;
      bool first = true;
      for (const auto& [key, value] : json[i].items()) {
        row += first ? "" : ",";
        first = false;
        if (value.is_string()) {
          row += value.get<std::string>();
        } else if (!value.is_null()) {
          std::ostringstream s;
          s << value;
          row += s.str();
        }
      }
      CHECK(row == rows[i + 1]);
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"expect", "--r", "2"}).code == 2);
  CHECK(run({"expect", "--n", "5", "--n-grid", "1,2"}).code == 2);
  CHECK(run({"expect", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(run({"expect", "--n", "0"}).code == 2);
  CHECK(run({"expect", "--n-grid", "5,3"}).code == 2);
  const Run bad = run({"expect", "--n", "5", "--f", "S1 +"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("offset 4") != std::string::npos);
  CHECK(bad.out.empty());
  CHECK(run({"expect", "--n", "5", "--f", "S1/(S1-S1)"}).code == 2);
  CHECK(run({"ratio", "--n", "4", "--r", "3"}).code == 2);
  const Run limit = run({"expect", "--n", "400", "--r", "2", "--mode", "exact"});
  CHECK(limit.code == 3);
  CHECK_FALSE(limit.err.empty());
  CHECK(run({"expect", "--n", "60", "--r", "2", "--mode", "exact", "--max-n", "50"}).code == 3);
  const Run fallback = run({"expect", "--n", "400", "--r", "2"});
  CHECK(fallback.code == 0);
  CHECK(fallback.err.find("warning") != std::string::npos);
  CHECK(lines(fallback.out).at(1).find(",float,,") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify with a corrupted check") {
  const Run r = run({"verify", "--max-n", "8", "--corrupt", "C3"});
  CHECK(r.code == 1);
  const auto report = nlohmann::json::parse(r.out);
  REQUIRE(report.size() == 10);
  for (const auto& check : report) {
    const std::string id = check["id"];
    if (id == "C3") CHECK(check["status"] == "fail");
    if (id == "C1" || id == "C2" || id == "C6" || id == "C10") CHECK(check["status"] == "pass");
  }
}
