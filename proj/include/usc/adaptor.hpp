#pragma once

#include <string>
#include <vector>

#include "usc/piop.hpp"
#include "usc/polynomial.hpp"

namespace usc::adaptor {

/// Square/non-square fold levels of a value table: level j holds the even-
/// and odd-index halves of the level-j combination table, both interpolated
/// over the subgroup of squares of the previous domain.
struct Levels {
  std::vector<EvalTable> sq, no;
};

Levels make_levels(const Field& F, const EvalTable& v, const std::vector<fe>& z,
                   unsigned count);

/// Standalone adaptor: claim mlex[v](z) = s for a single table. One round,
/// no scalar messages, 2m width-1 oracles. Sets the transcript verdict.
void run(Transcript& tr, const std::vector<fe>& v, const std::vector<fe>& z,
         fe s);

struct Tail {
  bool ok = true;
  std::string reason;
  std::vector<fe> claimed;
};

/// Composition tail: sends the q claimed evaluations and 2m stacked level
/// oracles, then checks the full chain at one random point (claims batched
/// by t when q > 1).
Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables, const std::vector<fe>& z,
          const std::vector<fe>& claimed);

/// Early-stop tail: only k fold levels, ending in a handoff check against
/// caller-provided real oracles u_i (the k-fold of each input). Sends 2k
/// stacked oracles; the caller sends the u_i oracles beforehand.
struct Early {
  bool ok = true;
  std::string reason;
};
Early early(Transcript& tr, const std::vector<OracleRef>& inputs,
            const std::vector<EvalTable>& tables, const std::vector<fe>& z,
            const std::vector<OracleRef>& u);

}  // namespace usc::adaptor
