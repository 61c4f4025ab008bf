#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "usc/piop.hpp"

namespace usc::runner {

struct RunConfig {
  std::string protocol = "direct-gemini";
  std::string field = "f64";
  unsigned m = 4;
  std::string g = "square";
  std::uint64_t seed = 1;
  unsigned trials = 1;
  std::string attack;              // "", tamper-sum, tamper-oracle, tamper-message
  std::vector<unsigned> schedule;  // direct-kappa only; empty = sqrt schedule
  std::vector<fe> z;               // adaptor claim point; empty = random
  bool flaw_demo = false;
  bool timings = false;  // wall-clock fields break byte-exact reports

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct Outcome {
  bool accepted = false;
  Metrics metrics;
  nlohmann::json transcript;
};

/// One protocol execution with a specific seed (no report envelope).
Outcome run_single(const RunConfig& cfg, std::uint64_t seed);

/// Cost formulas per protocol for comparison against a run's metrics.
/// Fields: rounds, field_elements, oracles (and queries where pinned).
nlohmann::json expected_metrics(const std::string& protocol, unsigned m,
                                unsigned d, unsigned q,
                                const std::vector<unsigned>& schedule);

/// Full report: single run, statistical trials, or the flaw demo,
/// depending on the config.
nlohmann::json execute(const RunConfig& cfg);

/// Prover scaling over m in [m_lo, m_hi]: field ops, wall time, ratios.
nlohmann::json bench(RunConfig cfg, unsigned m_lo, unsigned m_hi);

}  // namespace usc::runner
