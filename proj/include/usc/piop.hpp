#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "usc/field.hpp"
#include "usc/polynomial.hpp"

namespace usc {

/// Degree-bounded query handle. A real oracle backs one or more polynomials
/// (coefficient or value form); grouped same-degree polynomials sent together
/// form one oracle of width > 1 and count once. A virtual oracle answers
/// queries as a weighted combination of other oracles' components plus an
/// optional shift polynomial; its queries are attributed to the real
/// components.
struct Oracle {
  enum class Kind { Real, Virtual };

  struct Backing {
    std::optional<Poly> poly;
    std::optional<EvalTable> table;
  };
  struct Term {
    fe weight;
    int src;
    unsigned comp;
  };

  int id = -1;
  Kind kind = Kind::Real;
  unsigned width = 1;
  long degree_bound = 0;
  bool is_input = false;

  std::vector<Backing> backings;             // real
  std::vector<std::vector<Term>> terms;      // virtual, per component
  std::vector<Poly> shift;                   // virtual, per component
};

/// Reference to one component of a (possibly vector) oracle.
struct OracleRef {
  int id;
  unsigned comp = 0;
};

struct Metrics {
  std::uint64_t rounds = 0;
  std::uint64_t field_elements_sent = 0;
  std::uint64_t oracles_sent = 0;
  std::uint64_t queries = 0;
  std::uint64_t prover_field_ops = 0;
};

struct RoundRecord {
  std::vector<fe> scalars;
  std::vector<int> oracle_ids;
  std::vector<fe> challenges;
};

/// Single-owner simulation transcript: ordered prover messages, seeded
/// verifier challenges, oracle registry and exact cost counters. Challenges
/// are a deterministic function of (seed, draw index) so any run replays
/// bit-exactly.
class Transcript {
 public:
  Transcript(Field field, std::uint64_t seed)
      : F(std::move(field)), seed_(seed) {}

  Field F;

  // --- prover side ---
  void begin_round();
  /// Record a scalar message. Returns the message as recorded (checks must
  /// read that copy, so wire tampering is visible to the verifier path).
  std::vector<fe> send_scalars(std::vector<fe> xs);
  /// Register and count a sent oracle (real). Returns its id.
  int send_oracle(Oracle o);
  /// Register an input oracle (part of the instance; not counted as sent).
  int add_input(Oracle o);
  /// Register a virtual oracle (not counted; answers via components).
  int add_virtual(Oracle o);

  // --- verifier side ---
  fe challenge(bool nonzero = false);
  /// Query component `comp` of oracle `id` at x; charges the query ledger.
  fe query(int id, fe x, unsigned comp = 0);
  std::vector<fe> query_all(int id, fe x);

  // --- uncounted evaluation (prover internal / tests) ---
  fe peek(int id, fe x, unsigned comp = 0) const;

  const Oracle& oracle(int id) const { return oracles_.at(id); }
  Metrics& metrics() { return metrics_; }
  const Metrics& metrics() const { return metrics_; }

  void set_verdict(bool accept, std::string reason = "");
  bool accepted() const { return verdict_.value_or(false); }
  const std::string& reject_reason() const { return reason_; }
  std::uint64_t seed() const { return seed_; }

  nlohmann::json to_json(const std::string& protocol, unsigned m, unsigned d,
                         unsigned q) const;

  /// Tamper hook: direct mutable access for adversarial experiments.
  Oracle& oracle_mut(int id) { return oracles_.at(id); }
  std::vector<RoundRecord>& rounds_mut() { return rounds_; }

  /// Wire-tamper hooks: each fires once, on the first nonempty scalar
  /// message / first sent oracle, then disarms.
  std::function<void(std::vector<fe>&)> scalar_tamper;
  std::function<void(Oracle&)> oracle_tamper;

 private:
  fe eval_backing(const Oracle::Backing& b, fe x) const;
  void charge(int id, fe x);

  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  Metrics metrics_;
  std::vector<Oracle> oracles_;
  std::vector<RoundRecord> rounds_;
  std::set<std::tuple<std::uint64_t, int, fe>> ledger_;
  std::optional<bool> verdict_;
  std::string reason_;
};

}  // namespace usc
