#pragma once

#include <string>
#include <vector>

#include "usc/piop.hpp"
#include "usc/polynomial.hpp"

namespace usc::gemini {

/// One tensor fold step in coefficient form: f_ev + z * f_od.
Poly fold_coeff(const Field& F, const Poly& f, fe z);

/// The same step on a value table over an order-2^k subgroup; the result
/// lives on the subgroup of squares.
EvalTable fold_table(const Field& F, const EvalTable& t, fe z);

struct Tail {
  bool ok = true;
  std::string reason;
  std::vector<fe> claimed;  // the claimed constants as recorded on the wire
};

/// Final round of the fold-based compositions. Sends the q claimed constants
/// and m-1 stacked fold oracles, then checks the whole chain against the
/// input oracles at a random point (claims batched by a scalar t when q > 1).
/// The caller still owns the surrounding claim (e.g. g(claimed) = s).
Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables, const std::vector<fe>& z,
          const std::vector<fe>& claimed);

/// Verifier-side early-stop evaluation: the value at tau^(2^k) of the k-fold
/// of `ref` under challenges z, reconstructed from 2^k queries f(tau * omega)
/// with omega ranging over the 2^k-th roots of unity.
fe fold_query(Transcript& tr, OracleRef ref, const std::vector<fe>& z, fe tau);

}  // namespace usc::gemini
