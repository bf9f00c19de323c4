#include <doctest.h>

#include <json.hpp>

#include "treepot/config.hpp"
#include "treepot/errors.hpp"
#include "treepot/suites.hpp"

using namespace treepot;
using nlohmann::json;

namespace {

ExperimentConfig small_lemmas(Execution exec) {
  ExperimentConfig c;
  c.execution = exec;
  c.simulation.n_paths = 2000;
  c.simulation.seed = 5;
  c.solver.deep_depth = 120;
  c.experiments = std::vector<std::string>{"conditioned-hitting", "occupation", "martingale"};
  return c;
}

}  // namespace

TEST_SUITE("suites") {
  TEST_CASE("configs are strict") {
    CHECK_NOTHROW(parse_config(json::object()));
    CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"solver", {{"depht", 3}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"simulation", {{"n_paths", "many"}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"simulation", {{"n_paths", -3}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"execution", "gpu"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"experiments", {"no-such-thing"}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"tree", {{"epsilon", 0.45}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"simulate", {{"conditioned", 1}}}}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("configs round-trip through JSON") {
    ExperimentConfig c;
    c.tree.kind = TreeKind::seeded_random;
    c.tree.kernel = KernelRule::seeded_random;
    c.tree.d_min = 3;
    c.tree.d_max = 5;
    c.tree.epsilon = 0.1;
    c.tree.eta = 0.1;
    c.tree.seed = 42;
    c.ray = {1, 2, 0};
    c.execution = Execution::serial;
    c.experiments = std::vector<std::string>{"occupation"};
    c.lemmas.occupation_vertices = {"/", "/1/0"};
    c.fatou.functions = {"martin"};
    c.simulate.conditioned = true;
    const auto j = to_json(c);
    const ExperimentConfig back = parse_config(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.tree == c.tree);
    CHECK(parse_tree_spec(json::parse(to_json(c.tree).dump())) == c.tree);
    CHECK(back.selected("occupation"));
    CHECK_FALSE(back.selected("martingale"));
  }

  TEST_CASE("every suite lists its experiments") {
    for (const char* suite : {"identities", "lemmas", "fatou", "simulate"}) CHECK_FALSE(experiment_names(suite).empty());
    CHECK_THROWS_AS(run_suite("nope", ExperimentConfig{}), ConfigError);
  }

  TEST_CASE("an empty selection runs nothing") {
    ExperimentConfig c;
    c.experiments = std::vector<std::string>{};
    const SuiteOutput out = cmd_lemmas(c);
    CHECK(out.report.checks().empty());
    CHECK(out.report.to_json()["suite"] == "lemmas");
  }

  TEST_CASE("runs are reproducible and independent of the thread count") {
    const SuiteOutput a = cmd_lemmas(small_lemmas(Execution::parallel));
    const SuiteOutput b = cmd_lemmas(small_lemmas(Execution::parallel));
    const SuiteOutput s = cmd_lemmas(small_lemmas(Execution::serial));
    CHECK(a.report_text() == b.report_text());
    CHECK(a.files == b.files);
    CHECK(a.report.checks().size() == s.report.checks().size());
    for (std::size_t i = 0; i < a.report.checks().size(); ++i) {
      CHECK(a.report.checks()[i].values == s.report.checks()[i].values);
      CHECK(a.report.checks()[i].status == s.report.checks()[i].status);
    }
    CHECK(a.files == s.files);
    CHECK(a.report.find("occupation-identity") != nullptr);
  }

  TEST_CASE("experiment failures become failed checks") {
    ExperimentConfig c;
    c.experiments = std::vector<std::string>{"occupation"};
    c.lemmas.occupation_vertices = {"/9/9"};
    const SuiteOutput out = cmd_lemmas(c);
    REQUIRE(out.report.checks().size() == 1);
    const Check& check = out.report.checks()[0];
    CHECK(check.status == Status::fail);
    CHECK(check.note.find("experiment aborted") == 0);
    CHECK(out.report.failed());
  }

  TEST_CASE("identities pass on the default tree") {
    ExperimentConfig c;
    c.identities.triples = 200;
    const SuiteOutput out = cmd_identities(c);
    CHECK(out.report.count(Status::fail) == 0);
    CHECK(out.files.count("geodesic_triples.csv") == 1);
    CHECK(out.files.count("potential.csv") == 1);
  }
}
