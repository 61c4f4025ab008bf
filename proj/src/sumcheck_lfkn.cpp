#include "usc/sumcheck_lfkn.hpp"

#include <stdexcept>

namespace usc::lfkn {

std::vector<fe> round_poly(const Field& F,
                           const std::vector<std::vector<fe>>& tables,
                           const Constraint& g) {
  std::size_t half = tables.front().size() / 2;
  std::vector<fe> evals(g.degree + 1, 0);
  std::vector<fe> args(tables.size());
  for (fe t = 0; t <= g.degree; ++t) {
    fe one_minus_t = F.sub(1, t % F.p);
    fe acc = 0;
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t k = 0; k < tables.size(); ++k)
        args[k] = F.add(F.mul(one_minus_t, tables[k][2 * i]),
                        F.mul(t % F.p, tables[k][2 * i + 1]));
      acc = F.add(acc, g.eval(F, args));
    }
    evals[t] = acc;
  }
  return evals;
}

void fold(const Field& F, std::vector<std::vector<fe>>& tables, fe r) {
  fe one_minus_r = F.sub(1, r);
  for (auto& t : tables) {
    std::size_t half = t.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
      t[i] = F.add(F.mul(one_minus_r, t[2 * i]), F.mul(r, t[2 * i + 1]));
    t.resize(half);
  }
}

namespace {

// Correction polynomial mu of degree d with mu(0) + mu(1) = 1 and d distinct
// roots off {0, 1}, as d+1 evaluations at 0..d. A lying prover adds
// lie * mu(t) to each round message; the residual lie after challenge r is
// lie * mu(r), zero exactly when r hits a root.
std::vector<fe> escape_poly(const Field& F, unsigned d) {
  for (fe shift = 2;; ++shift) {
    Poly mu{{1}};
    for (unsigned l = 0; l < d; ++l) {
      fe root = (shift + l) % F.p;
      mu = Poly::mul(F, mu, Poly({F.neg(root), 1}));
    }
    fe norm = F.add(mu.eval(F, 0), mu.eval(F, 1));
    if (norm == 0) continue;
    fe c = F.inv(norm);
    std::vector<fe> out(d + 1);
    for (fe t = 0; t <= d; ++t) out[t] = F.mul(c, mu.eval(F, t));
    return out;
  }
}

}  // namespace

RunResult run(Transcript& tr, Instance inst, const Constraint& g, unsigned k,
              fe lie) {
  const Field& F = tr.F;
  RunResult res;
  if (inst.tables.size() != g.arity)
    throw std::invalid_argument("lfkn: table count does not match arity");
  std::vector<fe> mu;
  fe claimed = F.add(inst.claim, lie);  // what the verifier holds
  for (unsigned round = 0; round < k; ++round) {
    if (lie != 0 && mu.empty()) mu = escape_poly(F, g.degree);
    tr.begin_round();
    std::vector<fe> evals;
    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      evals = round_poly(F, inst.tables, g);
      if (lie != 0)
        for (std::size_t t = 0; t < evals.size(); ++t)
          evals[t] = F.add(evals[t], F.mul(lie, mu[t]));
    }
    std::vector<fe> honest = evals;
    if (lie != 0)
      for (std::size_t t = 0; t < honest.size(); ++t)
        honest[t] = F.sub(honest[t], F.mul(lie, mu[t]));
    std::vector<fe> msg = tr.send_scalars(evals);
    if (F.add(msg[0], msg[1]) != claimed) {
      res.ok = false;
      res.reason = "lfkn: round " + std::to_string(round + 1) +
                   " sum mismatch";
      res.reduced = std::move(inst);
      res.reduced.claim = claimed;
      return res;
    }
    fe r = tr.challenge();
    res.challenges.push_back(r);
    claimed = interpolate_at(F, msg, r);
    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      fold(F, inst.tables, r);
    }
    inst.claim = interpolate_at(F, honest, r);
    lie = F.sub(claimed, inst.claim);
  }
  res.reduced = std::move(inst);
  res.reduced.claim = claimed;
  res.lie = lie;
  return res;
}

}  // namespace usc::lfkn
