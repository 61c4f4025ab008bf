#include "usc/direct.hpp"

#include <stdexcept>

namespace usc::direct {

std::vector<unsigned> sqrt_schedule(unsigned m) {
  std::vector<unsigned> out;
  unsigned left = m;
  for (unsigned j = 1; left > 0; ++j) {
    unsigned t = std::min(j, left);
    out.push_back(t);
    left -= t;
  }
  return out;
}

std::vector<fe> lagrange_weights(const Field& F, fe eta, std::size_t count,
                                 fe x) {
  std::vector<fe> nodes(count);
  fe e = 1;
  for (std::size_t i = 0; i < count; ++i) {
    nodes[i] = e;
    e = F.mul(e, eta);
  }
  std::vector<fe> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    fe num = 1, den = 1;
    for (std::size_t k = 0; k < count; ++k) {
      if (k == j) continue;
      num = F.mul(num, F.sub(x, nodes[k]));
      den = F.mul(den, F.sub(nodes[j], nodes[k]));
    }
    out[j] = F.mul(num, F.inv(den));
  }
  return out;
}

std::vector<fe> round_poly(const Field& F,
                           const std::vector<std::vector<fe>>& tables, fe gen,
                           unsigned t, const Constraint& g) {
  const std::size_t n = tables.front().size();
  const std::size_t radix = std::size_t(1) << t;
  const std::size_t stride = n / radix;
  const std::size_t D = std::size_t(g.degree) * (radix - 1);
  if (D >= F.p)
    throw std::domain_error("direct: round degree needs abscissae beyond p");
  fe eta = F.pow(gen, stride);
  std::vector<fe> evals(D + 1);
  std::vector<fe> args(tables.size());
  for (fe y = 0; y <= D; ++y) {
    std::vector<fe> wts = lagrange_weights(F, eta, radix, y);
    fe acc = 0;
    for (std::size_t i = 0; i < stride; ++i) {
      for (std::size_t k = 0; k < tables.size(); ++k) {
        fe v = 0;
        for (std::size_t d = 0; d < radix; ++d)
          v = F.add(v, F.mul(wts[d], tables[k][i + stride * d]));
        args[k] = v;
      }
      acc = F.add(acc, g.eval(F, args));
    }
    evals[y] = acc;
  }
  return evals;
}

void fold(const Field& F, std::vector<std::vector<fe>>& tables, fe gen,
          unsigned t, fe r) {
  const std::size_t n = tables.front().size();
  const std::size_t radix = std::size_t(1) << t;
  const std::size_t stride = n / radix;
  std::vector<fe> wts = lagrange_weights(F, F.pow(gen, stride), radix, r);
  for (auto& tab : tables) {
    std::vector<fe> next(stride);
    for (std::size_t i = 0; i < stride; ++i) {
      fe v = 0;
      for (std::size_t d = 0; d < radix; ++d)
        v = F.add(v, F.mul(wts[d], tab[i + stride * d]));
      next[i] = v;
    }
    tab = std::move(next);
  }
}

namespace {

// Correction with sum 1 over the check nodes and D roots elsewhere, as
// evaluations at 0..D (the round message abscissae).
std::vector<fe> escape_evals(const Field& F, std::size_t D, fe eta,
                             std::size_t count) {
  for (fe shift = 2;; ++shift) {
    Poly mu{{1}};
    for (std::size_t l = 0; l < D; ++l)
      mu = Poly::mul(F, mu, Poly({F.neg((shift + l) % F.p), 1}));
    fe norm = 0, node = 1;
    for (std::size_t j = 0; j < count; ++j) {
      norm = F.add(norm, mu.eval(F, node));
      node = F.mul(node, eta);
    }
    if (norm == 0) continue;
    fe c = F.inv(norm);
    std::vector<fe> out(D + 1);
    for (fe y = 0; y <= D; ++y) out[y] = F.mul(c, mu.eval(F, y));
    return out;
  }
}

}  // namespace

RunResult run(Transcript& tr, std::vector<std::vector<fe>> tables, fe gen,
              const Constraint& g, const std::vector<unsigned>& schedule, fe s,
              fe lie) {
  const Field& F = tr.F;
  RunResult res;
  unsigned total = 0;
  for (unsigned t : schedule) total += t;
  if ((std::size_t(1) << total) != tables.front().size())
    throw std::invalid_argument("direct: schedule does not cover the table");

  fe claimed = F.add(s, lie);
  for (unsigned t : schedule) {
    const std::size_t n = tables.front().size();
    const std::size_t radix = std::size_t(1) << t;
    const std::size_t D = std::size_t(g.degree) * (radix - 1);
    fe eta = F.pow(gen, n / radix);
    tr.begin_round();
    std::vector<fe> evals, mu;
    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      evals = round_poly(F, tables, gen, t, g);
      if (lie != 0) {
        mu = escape_evals(F, D, eta, radix);
        for (std::size_t y = 0; y <= D; ++y)
          evals[y] = F.add(evals[y], F.mul(lie, mu[y]));
      }
    }
    std::vector<fe> honest = evals;
    if (lie != 0)
      for (std::size_t y = 0; y <= D; ++y)
        honest[y] = F.sub(honest[y], F.mul(lie, mu[y]));
    std::vector<fe> msg = tr.send_scalars(evals);

    fe sum = 0, node = 1;
    for (std::size_t j = 0; j < radix; ++j) {
      sum = F.add(sum, interpolate_at(F, msg, node));
      node = F.mul(node, eta);
    }
    if (sum != claimed) {
      res.ok = false;
      res.reason = "direct: round sum mismatch";
      res.claim = claimed;
      return res;
    }
    fe r = tr.challenge();
    res.challenges.push_back(r);
    claimed = interpolate_at(F, msg, r);
    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      fold(F, tables, gen, t, r);
    }
    fe truth = interpolate_at(F, honest, r);
    lie = F.sub(claimed, truth);
    gen = F.pow(gen, radix);
  }
  res.claim = claimed;
  for (const auto& tab : tables) res.finals.push_back(tab[0]);
  return res;
}

fe twist_value(const Field& F, const std::vector<fe>& v,
               const std::vector<unsigned>& schedule,
               const std::vector<fe>& challenges) {
  unsigned m = 0;
  for (unsigned t : schedule) m += t;
  if (v.size() != (std::size_t(1) << m))
    throw std::invalid_argument("twist_value: size mismatch");
  fe w = F.root_of_unity(m);
  std::vector<std::vector<fe>> wts;
  std::vector<unsigned> T;  // prefix sums
  unsigned acc = 0;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    fe eta = F.pow(w, std::uint64_t(1) << (m - schedule[j]));
    wts.push_back(lagrange_weights(F, eta, std::size_t(1) << schedule[j],
                                   challenges[j]));
    acc += schedule[j];
    T.push_back(acc);
  }
  fe out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    fe term = v[i];
    for (std::size_t j = 0; j < schedule.size(); ++j) {
      std::size_t digit = (i >> (m - T[j])) & ((std::size_t(1) << schedule[j]) - 1);
      term = F.mul(term, wts[j][digit]);
    }
    out = F.add(out, term);
  }
  return out;
}

Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables,
          const std::vector<unsigned>& schedule,
          const std::vector<fe>& challenges, const std::vector<fe>& claimed) {
  const Field& F = tr.F;
  Tail res;
  const std::size_t q = inputs.size();
  const std::size_t c = schedule.size();
  const unsigned m = tables.front().log_size;
  const std::size_t n = tables.front().size();
  fe w = tables.front().generator;

  std::vector<unsigned> T;
  unsigned acc = 0;
  for (unsigned t : schedule) {
    acc += t;
    T.push_back(acc);
  }
  auto weights = [&](std::size_t j) {  // 1-based round index
    fe eta = F.pow(w, std::uint64_t(1) << (m - schedule[j - 1]));
    return lagrange_weights(F, eta, std::size_t(1) << schedule[j - 1],
                            challenges[j - 1]);
  };

  tr.begin_round();
  res.claimed = tr.send_scalars(claimed);

  std::vector<int> chain_ids;
  {
    OpSection sec(F, tr.metrics().prover_field_ops);
    std::vector<std::vector<fe>> cur;
    for (const auto& t : tables) cur.push_back(t.values);
    for (std::size_t j = 1; j + 1 <= c; ++j) {
      std::vector<fe> wts = weights(j);
      std::size_t rot = n >> T[j - 1];
      Oracle o;
      o.width = static_cast<unsigned>(q);
      o.degree_bound = long(n) - 1;
      std::vector<std::vector<fe>> next(q, std::vector<fe>(n));
      for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          fe v = 0;
          for (std::size_t d = 0; d < wts.size(); ++d)
            v = F.add(v, F.mul(wts[d], cur[k][(i + d * rot) % n]));
          next[k][i] = v;
        }
        o.backings.push_back({std::nullopt, EvalTable{next[k], w, m}});
      }
      cur = std::move(next);
      chain_ids.push_back(tr.send_oracle(std::move(o)));
    }
  }

  fe t = q > 1 ? tr.challenge() : 1;
  fe rho = tr.challenge();

  auto bat = [&](std::size_t lvl, fe x) {  // lvl 0 = inputs
    fe a = 0, tw = 1;
    for (std::size_t k = 0; k < q; ++k) {
      fe v = lvl == 0
                 ? tr.query(inputs[k].id, x, inputs[k].comp)
                 : tr.query(chain_ids[lvl - 1], x, static_cast<unsigned>(k));
      a = F.add(a, F.mul(tw, v));
      tw = F.mul(tw, t);
    }
    return a;
  };
  fe bat_claim = 0, tw = 1;
  for (fe e : res.claimed) {
    bat_claim = F.add(bat_claim, F.mul(tw, e));
    tw = F.mul(tw, t);
  }

  for (std::size_t j = 1; j <= c; ++j) {
    std::vector<fe> wts = weights(j);
    fe gamma = F.pow(w, std::uint64_t(n >> T[j - 1]));
    fe x = j == c ? 1 : rho;
    fe rhs = 0, gp = 1;
    for (std::size_t d = 0; d < wts.size(); ++d) {
      rhs = F.add(rhs, F.mul(wts[d], bat(j - 1, F.mul(gp, x))));
      gp = F.mul(gp, gamma);
    }
    fe lhs = j == c ? bat_claim : bat(j, rho);
    if (lhs != rhs) {
      res.ok = false;
      res.reason = "direct: chain check failed at level " + std::to_string(j);
      return res;
    }
  }
  return res;
}

Quotients quotient_decompose(const Field& F, const Poly& f,
                             const std::vector<unsigned>& schedule,
                             const std::vector<fe>& z) {
  Quotients out;
  out.q.resize(schedule.size());
  std::vector<std::size_t> b(schedule.size());
  std::size_t cur = 1;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    b[j] = cur;
    cur <<= schedule[j];
  }
  Poly rem = f;
  for (std::size_t j = schedule.size(); j-- > 0;) {
    auto [qj, rj] = Poly::divmod_binomial(F, rem, b[j], z[j]);
    out.q[j] = std::move(qj);
    rem = std::move(rj);
  }
  out.value = rem.at(0);
  return out;
}

void quotient_run(Transcript& tr, const Poly& f,
                  const std::vector<unsigned>& schedule,
                  const std::vector<fe>& z, fe s) {
  const Field& F = tr.F;
  Oracle in;
  in.degree_bound = std::max(f.degree(), 0l);
  in.backings.push_back({f, std::nullopt});
  int f_id = tr.add_input(std::move(in));

  tr.begin_round();
  Quotients qs;
  {
    OpSection sec(F, tr.metrics().prover_field_ops);
    qs = quotient_decompose(F, f, schedule, z);
  }
  std::vector<int> ids;
  std::vector<std::size_t> b(schedule.size());
  std::size_t cur = 1;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    b[j] = cur;
    cur <<= schedule[j];
  }
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    Oracle o;
    o.degree_bound = std::max(qs.q[j].degree(), 0l);
    o.backings.push_back({qs.q[j], std::nullopt});
    ids.push_back(tr.send_oracle(std::move(o)));
  }
  fe rho = tr.challenge();
  fe rhs = s;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    fe factor = F.sub(F.pow(rho, b[j]), z[j]);
    rhs = F.add(rhs, F.mul(tr.query(ids[j], rho), factor));
  }
  if (tr.query(f_id, rho) != rhs) {
    tr.set_verdict(false, "quotient: evaluation check failed");
    return;
  }
  tr.set_verdict(true);
}

}  // namespace usc::direct
