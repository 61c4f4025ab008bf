#pragma once

#include <string>
#include <vector>

#include "usc/constraint.hpp"
#include "usc/piop.hpp"
#include "usc/polynomial.hpp"

namespace usc::dgm {

/// Coefficient-domain reference decomposition for one reduction round on
/// inputs of degree < 2^m. With a = (f_ev) and b = (f_od) componentwise and
/// g(a + t b) = sum_j t^j g_j(a, b):
///   hprime[j] = g_j mod (x^half - 1)
///   h[j]      = x^floor(j/2) g_j mod (x^half - 1)
///   c[j]      = x^(half-1) h[j](1/x)
///   q[j]      = the floor(j/2) mod half lowest coefficients of h[j]
struct Decomp {
  std::vector<Poly> hprime, h, c, q;
};
Decomp decompose(const Field& F, const std::vector<Poly>& fs,
                 const Constraint& g, unsigned m);

/// The same data computed pointwise over the half domain (no NTT): value
/// tables for hprime/h/c plus the clear q coefficients.
struct RoundData {
  std::vector<EvalTable> hprime, h, c;
  std::vector<std::vector<fe>> q;
};
RoundData round_data(const Field& F, const std::vector<std::vector<fe>>& tables,
                     fe gen, const Constraint& g);

/// The uncorrected recombination sum_j rho^j hprime[j](rho^2) against the
/// true h(rho) and the corrected parity-aware recombination.
struct FlawDemo {
  fe naive = 0;
  fe corrected = 0;
  fe truth = 0;
};
FlawDemo flaw_demo(const Field& F, const std::vector<Poly>& fs,
                   const Constraint& g, unsigned m, fe rho);

/// g composed over polynomial inputs (via an extended evaluation domain).
Poly compose(const Field& F, const std::vector<Poly>& fs, const Constraint& g);

struct RunResult {
  bool ok = true;
  std::string reason;
  std::vector<fe> challenges;
  std::vector<std::vector<fe>> tables;  // folded inputs after k rounds
  fe gen = 1;                           // generator of their domain
  int h_id = -1;                        // oracle carrying the residual h claim
  std::vector<int> hprime_vecs;         // per-round hprime vector oracle ids
  std::vector<EvalTable> last_hprime;   // final round's hprime tables
  fe last_r = 0;                        // final fold challenge
};

/// k reduction rounds. h_input >= 0 runs against that real h oracle
/// (domain-identity claim); h_input < 0 runs the sumcheck variant where the
/// round-1 recombination check is replaced by the anchor
/// sum_j h_{2j}(0) = s / 2^m. With realize_h, each later round re-sends the
/// previous round's combined hprime as a real oracle and authenticates it
/// (the early-stop shape). `alpha` is an adversarial constant pollution
/// applied to the j = 0 components every round; it rides through every
/// internal check and is only caught by the caller's final claim.
RunResult run(Transcript& tr, std::vector<std::vector<fe>> tables, fe gen,
              const Constraint& g, unsigned k, int h_input, fe s,
              bool realize_h = false, fe alpha = 0);

}  // namespace usc::dgm
