#include "usc/aurora.hpp"

#include <stdexcept>

namespace usc::aurora {

Proof prove(const Field& F, const std::vector<EvalTable>& tables,
            const Constraint& g, fe s) {
  const std::size_t n = tables.front().size();
  const unsigned logn = tables.front().log_size;
  long comp_deg = long(g.degree) * long(n - 1);
  unsigned big = logn;
  while ((long(1) << big) < comp_deg + 1) ++big;
  if (big > F.two_adicity)
    throw std::domain_error("aurora: composition degree needs a 2^" +
                            std::to_string(big) + " domain");
  fe bgen = F.root_of_unity(big);
  const std::size_t N = std::size_t(1) << big;

  // lift to the extended domain, compose pointwise, return to coefficients
  std::vector<std::vector<fe>> lifted;
  for (const auto& t : tables) {
    Poly c = ntt_inverse(F, t);
    lifted.push_back(ntt_forward(F, c, big, bgen).values);
  }
  std::vector<fe> pv(N);
  std::vector<fe> args(tables.size());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < tables.size(); ++k) args[k] = lifted[k][i];
    pv[i] = g.eval(F, args);
  }
  Poly P = ntt_inverse(F, EvalTable{std::move(pv), bgen, big});

  auto [quot, rem] = Poly::divmod_binomial(F, P, n, 1);
  Proof pr;
  pr.s_over_n = F.mul(s, F.inv(n % F.p));
  if (rem.at(0) != pr.s_over_n)
    throw std::logic_error("aurora: claim does not match the table sum");
  std::vector<fe> gp(rem.coeffs.begin() + (rem.is_zero() ? 0 : 1),
                     rem.coeffs.end());
  pr.quot = std::move(quot);
  pr.gprime = Poly(std::move(gp));
  return pr;
}

Tail run(Transcript& tr, const std::vector<OracleRef>& inputs,
         const std::vector<EvalTable>& tables, const Constraint& g, fe s,
         fe lie, bool own_round) {
  const Field& F = tr.F;
  const std::size_t n = tables.front().size();
  Tail res;

  if (own_round) tr.begin_round();
  Proof pr;
  {
    OpSection sec(F, tr.metrics().prover_field_ops);
    pr = prove(F, tables, g, s);
    if (lie != 0) {
      // Defend s + lie: shift quot by the constant c with c(xi - 1) =
      // -lie/n for an n-th power xi, so the check survives exactly when
      // rho^n lands on xi.
      fe xi = 1;
      for (fe base = 3; xi == 1; ++base) xi = F.pow(base, n);
      fe c = F.neg(F.mul(F.mul(lie, F.inv(n % F.p)), F.inv(F.sub(xi, 1))));
      pr.quot = Poly::add(F, pr.quot, Poly({c}));
      pr.s_over_n = F.mul(F.add(s, lie), F.inv(n % F.p));
    }
  }

  Oracle oq;
  oq.degree_bound = long(g.degree) * long(n - 1) - long(n);
  if (oq.degree_bound < 0) oq.degree_bound = 0;
  oq.backings.push_back({pr.quot, std::nullopt});
  int quot_id = tr.send_oracle(std::move(oq));

  Oracle og;
  og.degree_bound = long(n) - 2;
  og.backings.push_back({pr.gprime, std::nullopt});
  int gp_id = tr.send_oracle(std::move(og));

  fe rho = tr.challenge();
  std::vector<fe> vals(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k)
    vals[k] = tr.query(inputs[k].id, rho, inputs[k].comp);
  fe lhs = g.eval(F, vals);
  fe rn = F.pow(rho, n);
  fe rhs = F.mul(tr.query(quot_id, rho), F.sub(rn, 1));
  rhs = F.add(rhs, F.mul(rho, tr.query(gp_id, rho)));
  rhs = F.add(rhs, pr.s_over_n);
  if (lhs != rhs) {
    res.ok = false;
    res.reason = "aurora: decomposition check failed";
  }
  return res;
}

}  // namespace usc::aurora
