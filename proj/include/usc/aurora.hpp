#pragma once

#include <string>
#include <vector>

#include "usc/constraint.hpp"
#include "usc/piop.hpp"
#include "usc/polynomial.hpp"

namespace usc::aurora {

/// Honest witness for the single-round tail: with P = g(f_1, ..., f_q),
/// P = quot * (x^n - 1) + s/n + x * gprime.
struct Proof {
  Poly quot;
  Poly gprime;
  fe s_over_n = 0;
};

Proof prove(const Field& F, const std::vector<EvalTable>& tables,
            const Constraint& g, fe s);

struct Tail {
  bool ok = true;
  std::string reason;
};

/// One round: send quot and gprime, check the decomposition at a random
/// point. Claim: the sum of g(f_1, ..., f_q) over the tables' domain is
/// s + lie; a nonzero lie makes the prover shift quot by the constant that
/// maximizes the acceptance region (rho with rho^n hitting a fixed value).
Tail run(Transcript& tr, const std::vector<OracleRef>& inputs,
         const std::vector<EvalTable>& tables, const Constraint& g, fe s,
         fe lie = 0, bool own_round = true);

}  // namespace usc::aurora
