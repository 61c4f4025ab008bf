#include "usumcheck.h"

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "usc/runner.hpp"

struct usc_ctx {
  std::string result;
  std::string error;
  bool ok = false;
};

extern "C" {

usc_ctx* usc_ctx_new(void) { return new usc_ctx(); }

void usc_ctx_free(usc_ctx* ctx) { delete ctx; }

static int guarded(usc_ctx* ctx, const char* config_json,
                   nlohmann::json (*fn)(const usc::runner::RunConfig&,
                                        unsigned, unsigned),
                   unsigned a, unsigned b) {
  if (!ctx) return USC_ERR_ARG;
  ctx->result.clear();
  ctx->error.clear();
  ctx->ok = false;
  if (!config_json) {
    ctx->error = "null config";
    return USC_ERR_ARG;
  }
  try {
    auto cfg = usc::runner::RunConfig::from_json(
        nlohmann::json::parse(config_json));
    ctx->result = fn(cfg, a, b).dump(2);
    ctx->ok = true;
    return USC_OK;
  } catch (const nlohmann::json::exception& e) {
    ctx->error = std::string("config parse error: ") + e.what();
    return USC_ERR_ARG;
  } catch (const std::invalid_argument& e) {
    ctx->error = e.what();
    return USC_ERR_ARG;
  } catch (const std::domain_error& e) {
    ctx->error = e.what();
    return USC_ERR_ARG;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return USC_ERR_RUN;
  }
}

int usc_ctx_run(usc_ctx* ctx, const char* config_json) {
  return guarded(
      ctx, config_json,
      [](const usc::runner::RunConfig& cfg, unsigned, unsigned) {
        return usc::runner::execute(cfg);
      },
      0, 0);
}

int usc_ctx_bench(usc_ctx* ctx, const char* config_json, unsigned m_lo,
                  unsigned m_hi) {
  if (m_lo == 0 || m_hi < m_lo) {
    if (ctx) ctx->error = "invalid m range";
    return USC_ERR_ARG;
  }
  return guarded(
      ctx, config_json,
      [](const usc::runner::RunConfig& cfg, unsigned lo, unsigned hi) {
        return usc::runner::bench(cfg, lo, hi);
      },
      m_lo, m_hi);
}

const char* usc_ctx_result(const usc_ctx* ctx) {
  return ctx && ctx->ok ? ctx->result.c_str() : nullptr;
}

const char* usc_ctx_error(const usc_ctx* ctx) {
  return ctx && !ctx->error.empty() ? ctx->error.c_str() : nullptr;
}

}  // extern "C"
