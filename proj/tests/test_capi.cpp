#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "usumcheck.h"

namespace {

std::string cfg(const char* proto, unsigned m) {
  nlohmann::json j;
  j["protocol"] = proto;
  j["field"] = "f64";
  j["m"] = m;
  j["g"] = "square";
  j["seed"] = 9;
  return j.dump();
}

}  // namespace

TEST_CASE("run roundtrip through the C interface") {
  usc_ctx* ctx = usc_ctx_new();
  REQUIRE(ctx != nullptr);
  int rc = usc_ctx_run(ctx, cfg("direct-gemini", 4).c_str());
  CHECK(rc == USC_OK);
  const char* res = usc_ctx_result(ctx);
  REQUIRE(res != nullptr);
  CHECK(usc_ctx_error(ctx) == nullptr);
  auto j = nlohmann::json::parse(res);
  CHECK(j["transcript"]["verdict"] == "accept");
  CHECK(j["metrics_match"] == true);
  usc_ctx_free(ctx);
}

TEST_CASE("context is reusable and clears previous state") {
  usc_ctx* ctx = usc_ctx_new();
  CHECK(usc_ctx_run(ctx, cfg("aurora", 4).c_str()) == USC_OK);
  std::string first = usc_ctx_result(ctx);
  CHECK(usc_ctx_run(ctx, "not json") == USC_ERR_ARG);
  CHECK(usc_ctx_result(ctx) == nullptr);
  const char* err = usc_ctx_error(ctx);
  REQUIRE(err != nullptr);
  CHECK(std::strstr(err, "parse") != nullptr);
  CHECK(usc_ctx_run(ctx, cfg("aurora", 4).c_str()) == USC_OK);
  CHECK(usc_ctx_result(ctx) == first);
  usc_ctx_free(ctx);
}

TEST_CASE("argument errors") {
  usc_ctx* ctx = usc_ctx_new();
  CHECK(usc_ctx_run(nullptr, cfg("aurora", 4).c_str()) == USC_ERR_ARG);
  CHECK(usc_ctx_run(ctx, nullptr) == USC_ERR_ARG);
  CHECK(usc_ctx_run(ctx, "{\"protocol\":\"nope\"}") == USC_ERR_ARG);
  REQUIRE(usc_ctx_error(ctx) != nullptr);
  CHECK(std::strstr(usc_ctx_error(ctx), "unknown protocol") != nullptr);
  // f17 cannot hold the extended aurora domain at m = 4 with degree 2
  std::string small = cfg("aurora", 4);
  small.replace(small.find("f64"), 3, "f17");
  CHECK(usc_ctx_run(ctx, small.c_str()) == USC_ERR_ARG);
  usc_ctx_free(ctx);
}

TEST_CASE("bench through the C interface") {
  usc_ctx* ctx = usc_ctx_new();
  CHECK(usc_ctx_bench(ctx, cfg("direct-gemini", 0).c_str(), 8, 10) == USC_OK);
  auto j = nlohmann::json::parse(usc_ctx_result(ctx));
  CHECK(j["bench"].size() == 3);
  CHECK(usc_ctx_bench(ctx, cfg("direct-gemini", 0).c_str(), 10, 8) ==
        USC_ERR_ARG);
  CHECK(usc_ctx_bench(ctx, cfg("direct-gemini", 0).c_str(), 0, 4) ==
        USC_ERR_ARG);
  usc_ctx_free(ctx);
}

TEST_CASE("free on null is a no-op") { usc_ctx_free(nullptr); }
