#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/experiments.hpp"
#include "spectral_walks/walks.hpp"

using namespace spectral_walks;
using nlohmann::json;

namespace {

std::string csv(const ResultRecord& r) {
  std::ostringstream out;
  emit_csv(out, r);
  return out.str();
}

ResultRecord run_doc(const std::string& text, int threads = 1) {
  ExperimentConfig config = parse_config(json::parse(text), std::nullopt, std::nullopt);
  config.threads = threads;
  return run(config);
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min()}) {
    const std::string text = format_double(x);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv layout") {
  ResultRecord empty;
  empty.columns = {"a", "b"};
  CHECK(csv(empty) == "a,b\n");

  ResultRecord one;
  one.columns = {"n", "x", "label"};
  one.rows.push_back({std::int64_t{3}, 0.25, std::string("say \"hi\", twice")});
  one.summary.emplace_back("total", 1.5);
  one.experiment = "tail";
  one.seed = 18446744073709551615ULL;
  one.parameters.emplace_back("k", "8");
  CHECK(csv(one) ==
        "n,x,label\n"
        "3,0.25,\"say \"\"hi\"\", twice\"\n"
        "#summary,total,1.5\n"
        "#param,experiment,tail\n"
        "#param,seed,18446744073709551615\n"
        "#param,k,8\n");
}

TEST_CASE("json round trip") {
  const ResultRecord r = run_doc(R"({"experiment": "tail", "seed": 3,
      "parameters": {"n": 40, "trials": 4, "k": 4}})");
  const auto text = to_json(r).dump();
  CHECK(record_from_json(nlohmann::ordered_json::parse(text)) == r);
  CHECK_THROWS_AS(record_from_json(nlohmann::ordered_json::parse(R"({"experiment": 1})")), ValidationError);

  std::ostringstream out;
  emit(out, r, OutputFormat::Json);
  CHECK(json::parse(out.str())["rows"].size() == 4);
}

TEST_CASE("configuration errors") {
  const auto doc = json::parse(R"({"experiment": "walk-census", "parameters": {"n": 4}})");
  CHECK_THROWS_AS(parse_config(doc, std::nullopt, std::nullopt), ConfigError);
  CHECK(parse_config(doc, std::nullopt, 5).seed == 5);
  CHECK(parse_config(json::parse(R"({"seed": 2})"), ExperimentId::Tail, std::nullopt).id == ExperimentId::Tail);
  CHECK_THROWS_AS(parse_config(doc, ExperimentId::Tail, 1), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"seed": 1})"), std::nullopt, std::nullopt), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"seed": -1, "experiment": "tail"})"), std::nullopt, std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"seed": 1, "experiment": "tail", "extra": 0})"), std::nullopt,
                               std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse("[1]"), std::nullopt, 1), ConfigError);
  CHECK_THROWS_AS(parse_experiment("nope"), ConfigError);
  for (auto id : {ExperimentId::WignerConvergence, ExperimentId::MpConvergence, ExperimentId::MckayConvergence,
                  ExperimentId::Tail, ExperimentId::WalkCensus, ExperimentId::Certify}) {
    CHECK(parse_experiment(experiment_name(id)) == id);
  }

  CHECK_THROWS_AS(run_doc(R"({"experiment": "tail", "seed": 1, "parameters": {"k": 3}})"), ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "tail", "seed": 1, "parameters": {"ensemble": "gue"}})"), ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "tail", "seed": 1, "parameters": {"trials": "ten"}})"), ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "tail", "seed": 1, "parameters": {"bogus": 1}})"), ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "walk-census", "seed": 1, "parameters": {"max_k": 8}})"), ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "mckay-convergence", "seed": 1, "parameters": {"sizes": [51]}})"),
                  ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "certify", "seed": 1, "parameters": {"source": "cycle"}})"),
                  ConfigError);
  CHECK_THROWS_AS(run_doc(R"({"experiment": "certify", "seed": 1,
      "parameters": {"source": "edge-list", "path": "/nonexistent"}})"),
                  ValidationError);
}

TEST_CASE("walk census matches the graph module") {
  const ResultRecord r = run_doc(R"({"experiment": "walk-census", "seed": 0, "parameters": {"n": 5, "max_k": 4}})");
  const auto table = even_walk_census(CensusFamily::Complete, 5, 0, 4);
  REQUIRE(r.rows.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(std::get<std::int64_t>(r.rows[i][0]) == table[i].length);
    CHECK(std::get<std::int64_t>(r.rows[i][1]) == table[i].count);
  }
  CHECK(r.columns == std::vector<std::string>{"length", "count", "ratio"});
  CHECK(r.parameters.front() == std::pair<std::string, std::string>{"family", "\"complete\""});
}

TEST_CASE("records are deterministic in the seed") {
  const std::string docs[] = {
      R"({"experiment": "wigner-convergence", "seed": 7, "parameters": {"sizes": [20, 40], "trials": 5}})",
      R"({"experiment": "mp-convergence", "seed": 7, "parameters": {"n": 30, "N": 60, "trials": 5}})",
      R"({"experiment": "mckay-convergence", "seed": 7, "parameters": {"sizes": [20, 30], "trials": 4}})",
      R"({"experiment": "tail", "seed": 7, "parameters": {"ensemble": "covariance", "n": 20, "N": 50, "trials": 6}})",
      R"({"experiment": "certify", "seed": 7, "parameters": {"source": "random-regular", "n": 30, "trials": 4}})",
  };
  for (const auto& doc : docs) {
    const std::string a = csv(run_doc(doc, 1));
    CHECK(a == csv(run_doc(doc, 1)));
    CHECK(a == csv(run_doc(doc, 4)));
  }
  const auto seven = csv(run_doc(docs[0]));
  auto other = json::parse(docs[0]);
  other["seed"] = 8;
  CHECK(seven != csv(run(parse_config(other, std::nullopt, std::nullopt))));
}

TEST_CASE("certify on the Petersen graph") {
  const ResultRecord r = run_doc(R"({"experiment": "certify", "seed": 1, "parameters": {"source": "petersen"}})");
  REQUIRE(r.rows.size() == 1);
  CHECK(std::get<std::int64_t>(r.rows[0].back()) == 1);
  const double bound = std::get<double>(r.rows[0][3]);
  const double b_prev = std::get<double>(r.rows[0][5]);
  CHECK(bound == doctest::Approx(2.0 * b_prev).epsilon(1e-9));
}
