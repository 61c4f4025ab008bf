#pragma once

#include <string>
#include <vector>

#include "usc/constraint.hpp"
#include "usc/piop.hpp"
#include "usc/polynomial.hpp"

namespace usc::direct {

/// Radix schedule t_j = j (clipped so the total is m): variable j of the
/// mixed-radix reshaping absorbs 2^(t_j) hypercube dimensions at once.
std::vector<unsigned> sqrt_schedule(unsigned m);

/// Lagrange weights at x over the nodes eta^0, ..., eta^(count-1).
std::vector<fe> lagrange_weights(const Field& F, fe eta, std::size_t count,
                                 fe x);

/// Round polynomial for radix 2^t over the current domain (generator `gen`):
/// D+1 evaluations at 0..D with D = d(2^t - 1).
std::vector<fe> round_poly(const Field& F,
                           const std::vector<std::vector<fe>>& tables, fe gen,
                           unsigned t, const Constraint& g);

/// Fold all tables by one radix-2^t round with challenge r.
void fold(const Field& F, std::vector<std::vector<fe>>& tables, fe gen,
          unsigned t, fe r);

struct RunResult {
  bool ok = true;
  std::string reason;
  std::vector<fe> challenges;
  std::vector<fe> finals;  // fully folded constants e_k per input
  fe claim = 0;            // running claim after the last round
};

/// Reduction rounds over the whole schedule (must sum to the table log
/// size). `lie` enables the root-escape sum-tampering prover as in lfkn.
RunResult run(Transcript& tr, std::vector<std::vector<fe>> tables, fe gen,
              const Constraint& g, const std::vector<unsigned>& schedule, fe s,
              fe lie = 0);

/// What the folds actually compute: sum_i v[i] * prod_j w_j(digit_j(i)),
/// with w_j the round-j Lagrange weights at r_j and digit_j the block of
/// t_j bits of i below the top T_j = t_1 + ... + t_j.
fe twist_value(const Field& F, const std::vector<fe>& v,
               const std::vector<unsigned>& schedule,
               const std::vector<fe>& challenges);

struct Tail {
  bool ok = true;
  std::string reason;
  std::vector<fe> claimed;
};

/// Final round authenticating the claimed constants against the inputs via
/// the rotation chain G_j(x) = sum_d w_j(d) G_(j-1)(gamma_j^d x) with
/// gamma_j = w^(2^(m - T_j)); sends the c-1 intermediate stacked oracles and
/// checks the chain at a random point, ending in G_c(1) = claimed.
Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables,
          const std::vector<unsigned>& schedule,
          const std::vector<fe>& challenges, const std::vector<fe>& claimed);

/// Quotient decomposition f = value + sum_j q_j (x^(b_j) - z_j) with
/// b_j = 2^(t_1 + ... + t_(j-1)), dividing by the largest block first.
struct Quotients {
  std::vector<Poly> q;  // q[j] for variable j+1
  fe value = 0;
};
Quotients quotient_decompose(const Field& F, const Poly& f,
                             const std::vector<unsigned>& schedule,
                             const std::vector<fe>& z);

/// Standalone single-round evaluation protocol for kappa[f](z) = s.
void quotient_run(Transcript& tr, const Poly& f,
                  const std::vector<unsigned>& schedule,
                  const std::vector<fe>& z, fe s);

}  // namespace usc::direct
