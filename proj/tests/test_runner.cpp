#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "usc/runner.hpp"

using namespace usc;
using runner::RunConfig;

namespace {

const char* kProtocols[] = {"adaptor",          "aurora",
                            "lfkn-adaptor",     "lfkn-adaptor-aurora",
                            "dgm",              "dgm-gemini",
                            "dgm-gemini-aurora", "direct-gemini",
                            "direct-kappa"};

RunConfig base(const std::string& proto, const std::string& field, unsigned m,
               const std::string& g) {
  RunConfig cfg;
  cfg.protocol = proto;
  cfg.field = field;
  cfg.m = m;
  cfg.g = g;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("frozen example: direct-gemini m=4 identity over f64") {
  auto j = runner::execute(base("direct-gemini", "f64", 4, "identity"));
  CHECK(j["transcript"]["verdict"] == "accept");
  CHECK(j["transcript"]["metrics"]["rounds"] == 5);
  CHECK(j["transcript"]["metrics"]["field_elements"] == 9);
  CHECK(j["transcript"]["metrics"]["oracles"] == 3);
  CHECK(j["transcript"]["metrics"]["queries"] == 9);
  CHECK(j["metrics_match"] == true);
}

TEST_CASE("frozen example: lfkn-adaptor m=3 square over f64") {
  auto j = runner::execute(base("lfkn-adaptor", "f64", 3, "square"));
  CHECK(j["transcript"]["verdict"] == "accept");
  CHECK(j["transcript"]["metrics"]["rounds"] == 4);
  CHECK(j["transcript"]["metrics"]["field_elements"] == 10);
  CHECK(j["transcript"]["metrics"]["oracles"] == 6);
  CHECK(j["metrics_match"] == true);
}

TEST_CASE("every protocol accepts honest runs with matching costs") {
  for (const char* proto : kProtocols) {
    for (const char* g : {"identity", "square", "product2"}) {
      auto j = runner::execute(base(proto, "f64", 4, g));
      INFO(proto << "/" << g);
      CHECK(j["transcript"]["verdict"] == "accept");
      CHECK(j["metrics_match"] == true);
      auto j17 = runner::execute(base(proto, "f17", 2, g));
      INFO(proto << "/" << g << " on f17");
      CHECK(j17["transcript"]["verdict"] == "accept");
      CHECK(j17["metrics_match"] == true);
    }
  }
}

TEST_CASE("reports are byte-identical across replays") {
  for (const char* proto : {"lfkn-adaptor", "dgm-gemini", "direct-kappa"}) {
    auto a = runner::execute(base(proto, "f64", 4, "square"));
    auto b = runner::execute(base(proto, "f64", 4, "square"));
    CHECK(a.dump() == b.dump());
    auto cfg = base(proto, "f64", 4, "square");
    cfg.seed = 43;
    auto c = runner::execute(cfg);
    CHECK(a.dump() != c.dump());
  }
}

TEST_CASE("attacks are rejected on f64") {
  for (const char* proto : kProtocols) {
    for (const char* attack : {"tamper-sum", "tamper-oracle",
                               "tamper-message"}) {
      auto cfg = base(proto, "f64", 4, "square");
      cfg.attack = attack;
      auto j = runner::execute(cfg);
      INFO(proto << "/" << attack);
      CHECK(j["transcript"]["verdict"] == "reject");
    }
  }
}

TEST_CASE("trial sweeps: honest rate one, attack rate within envelope") {
  auto cfg = base("lfkn-adaptor", "f17", 3, "square");
  cfg.trials = 400;
  auto j = runner::execute(cfg);
  CHECK(j["trials"] == 400);
  CHECK(j["acceptance_rate"] == 1.0);

  cfg.attack = "tamper-sum";
  auto a = runner::execute(cfg);
  double rate = a["acceptance_rate"];
  double env = a["soundness_envelope"];
  CHECK(rate <= std::min(1.0, 5.0 * env));
}

TEST_CASE("flaw report pins the broken recombination") {
  RunConfig cfg = base("dgm", "f17", 2, "square");
  cfg.flaw_demo = true;
  cfg.trials = 100;
  auto j = runner::execute(cfg);
  CHECK(j["pinned"]["naive"] == "14");
  CHECK(j["pinned"]["corrected"] == "16");
  CHECK(j["pinned"]["h"] == "16");
  CHECK(j["samples"]["corrected_match"] == j["samples"]["trials"]);
  CHECK(j["samples"]["naive_mismatch"].get<unsigned>() * 2 >
        j["samples"]["trials"].get<unsigned>());
}

TEST_CASE("expected cost formulas") {
  using runner::expected_metrics;
  std::vector<unsigned> none;
  auto e = expected_metrics("lfkn-adaptor", 5, 2, 1, none);
  CHECK(e["rounds"] == 6);
  CHECK(e["field_elements"] == 16);
  CHECK(e["oracles"] == 10);
  e = expected_metrics("dgm-gemini", 4, 2, 1, none);
  CHECK(e["rounds"] == 5);
  CHECK(e["oracles"] == 15);
  e = expected_metrics("direct-gemini", 6, 3, 2, none);
  CHECK(e["rounds"] == 7);
  CHECK(e["field_elements"] == 4 * 6 + 2);
  CHECK(e["oracles"] == 5);
  e = expected_metrics("direct-kappa", 6, 1, 1, {2, 2, 1, 1});
  CHECK(e["rounds"] == 5);
  CHECK(e["oracles"] == 3);
  CHECK(e["field_elements"] == (3 + 1) * 2 + (1 + 1) * 2 + 1);
  e = expected_metrics("aurora", 8, 2, 1, none);
  CHECK(e["rounds"] == 1);
  CHECK(e["field_elements"] == 0);
  CHECK(e["oracles"] == 2);
}

TEST_CASE("unit-radix schedule replays the binary protocol round for round") {
  auto a = runner::execute(base("direct-gemini", "f64", 4, "square"));
  auto cfg = base("direct-kappa", "f64", 4, "square");
  cfg.schedule = {1, 1, 1, 1};
  auto b = runner::execute(cfg);
  CHECK(a["transcript"]["rounds"].dump() == b["transcript"]["rounds"].dump());
  CHECK(a["transcript"]["verdict"] == b["transcript"]["verdict"]);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((void)runner::execute(base("nope", "f64", 4, "square")),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)runner::execute(base("aurora", "f99", 4, "square")),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)runner::execute(base("aurora", "f64", 4, "gg")),
                  std::invalid_argument);
  auto cfg = base("direct-kappa", "f64", 4, "square");
  cfg.schedule = {2, 3};  // sums to 5, not 4
  CHECK_THROWS_AS((void)runner::execute(cfg), std::invalid_argument);
}

TEST_CASE("config json roundtrip") {
  auto cfg = base("direct-kappa", "f17", 3, "cube");
  cfg.schedule = {2, 1};
  cfg.trials = 7;
  cfg.attack = "tamper-sum";
  auto back = RunConfig::from_json(cfg.to_json());
  CHECK(back.protocol == cfg.protocol);
  CHECK(back.field == cfg.field);
  CHECK(back.m == cfg.m);
  CHECK(back.g == cfg.g);
  CHECK(back.schedule == cfg.schedule);
  CHECK(back.trials == cfg.trials);
  CHECK(back.attack == cfg.attack);
}

TEST_CASE("timings appear only when requested") {
  auto cfg = base("aurora", "f64", 4, "square");
  auto j = runner::execute(cfg);
  CHECK(!j.contains("timings_ms"));
  cfg.timings = true;
  auto t = runner::execute(cfg);
  CHECK(t.contains("timings_ms"));
}

TEST_CASE("bench rows carry ratios") {
  auto cfg = base("direct-gemini", "f64", 0, "square");
  auto j = runner::bench(cfg, 8, 10);
  REQUIRE(j["bench"].size() == 3);
  CHECK(!j["bench"][0].contains("ratio"));
  CHECK(j["bench"][1].contains("ratio"));
  for (const auto& row : j["bench"]) CHECK(row["accepted"] == true);
}
