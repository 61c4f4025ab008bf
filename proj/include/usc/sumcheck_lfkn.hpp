#pragma once

#include <string>
#include <vector>

#include "usc/constraint.hpp"
#include "usc/piop.hpp"

namespace usc::lfkn {

/// Claim: sum over {0,1}^m of g(mlex[v_1](x), ..., mlex[v_q](x)) = s, with
/// the tables stored in index order (least significant bit = first variable).
struct Instance {
  std::vector<std::vector<fe>> tables;
  fe claim = 0;
};

struct RunResult {
  bool ok = true;
  std::string reason;
  std::vector<fe> challenges;
  Instance reduced;  // folded tables and the verifier-side claim after k rounds
  fe lie = 0;        // residual gap between that claim and the true sum
};

/// Round polynomial as d+1 evaluations at t = 0..d.
std::vector<fe> round_poly(const Field& F,
                           const std::vector<std::vector<fe>>& tables,
                           const Constraint& g);

/// Fold every table to half length with (1-r) * even + r * odd entries.
void fold(const Field& F, std::vector<std::vector<fe>>& tables, fe r);

/// Drive k reduction rounds through the transcript. A nonzero `lie` makes the
/// prover defend the false claim s + lie by adding a correction polynomial
/// with d roots to each round message (the strongest sum-tampering strategy:
/// the discrepancy escapes to zero whenever a challenge hits a root).
RunResult run(Transcript& tr, Instance inst, const Constraint& g, unsigned k,
              fe lie = 0);

}  // namespace usc::lfkn
