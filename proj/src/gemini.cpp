#include "usc/gemini.hpp"

#include <stdexcept>

namespace usc::gemini {

Poly fold_coeff(const Field& F, const Poly& f, fe z) {
  auto [ev, od] = even_odd_split(f);
  return Poly::add(F, ev, Poly::scale(F, od, z));
}

EvalTable fold_table(const Field& F, const EvalTable& t, fe z) {
  if (t.log_size == 0) throw std::invalid_argument("fold_table: size-1 table");
  std::size_t half = t.size() / 2;
  EvalTable out;
  out.generator = F.mul(t.generator, t.generator);
  out.log_size = t.log_size - 1;
  out.values.resize(half);
  fe h = F.half();
  fe ginv = F.inv(t.generator);
  fe gp = 1;  // generator^-i
  for (std::size_t i = 0; i < half; ++i) {
    fe ev = F.mul(h, F.add(t.values[i], t.values[i + half]));
    fe od = F.mul(F.mul(h, gp), F.sub(t.values[i], t.values[i + half]));
    out.values[i] = F.add(ev, F.mul(z, od));
    gp = F.mul(gp, ginv);
  }
  return out;
}

Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables, const std::vector<fe>& z,
          const std::vector<fe>& claimed) {
  const Field& F = tr.F;
  std::size_t q = inputs.size();
  std::size_t m = z.size();
  Tail res;

  tr.begin_round();
  res.claimed = tr.send_scalars(claimed);

  // fold chains and the m-1 intermediate oracles
  std::vector<int> fold_ids;
  {
    OpSection sec(F, tr.metrics().prover_field_ops);
    std::vector<EvalTable> cur = tables;
    for (std::size_t lvl = 1; lvl + 1 <= m; ++lvl) {
      for (std::size_t k = 0; k < q; ++k)
        cur[k] = fold_table(F, cur[k], z[lvl - 1]);
      if (lvl == m) break;
      Oracle o;
      o.width = static_cast<unsigned>(q);
      o.degree_bound = (long(1) << (m - lvl)) - 1;
      for (std::size_t k = 0; k < q; ++k)
        o.backings.push_back({std::nullopt, cur[k]});
      fold_ids.push_back(tr.send_oracle(std::move(o)));
    }
  }

  fe t = q > 1 ? tr.challenge() : 1;
  fe r = tr.challenge(true);
  fe r2 = F.mul(r, r);
  fe nr = F.neg(r);
  fe h = F.half();
  fe inv2r = F.inv(F.add(r, r));

  auto bat = [&](std::size_t lvl, fe x) {
    fe acc = 0, tw = 1;
    for (std::size_t k = 0; k < q; ++k) {
      fe v = lvl == 0 ? tr.query(inputs[k].id, x, inputs[k].comp)
                      : tr.query(fold_ids[lvl - 1], x, static_cast<unsigned>(k));
      acc = F.add(acc, F.mul(tw, v));
      tw = F.mul(tw, t);
    }
    return acc;
  };
  fe bat_claim = 0, tw = 1;
  for (std::size_t k = 0; k < q; ++k) {
    bat_claim = F.add(bat_claim, F.mul(tw, res.claimed[k]));
    tw = F.mul(tw, t);
  }

  for (std::size_t lvl = 1; lvl <= m; ++lvl) {
    fe prev_p = bat(lvl - 1, r);
    fe prev_n = bat(lvl - 1, nr);
    fe rhs = F.add(F.mul(h, F.add(prev_p, prev_n)),
                   F.mul(z[lvl - 1], F.mul(inv2r, F.sub(prev_p, prev_n))));
    fe lhs = lvl == m ? bat_claim : bat(lvl, r2);
    if (lhs != rhs) {
      res.ok = false;
      res.reason = "gemini: fold check failed at level " + std::to_string(lvl);
      return res;
    }
  }
  return res;
}

fe fold_query(Transcript& tr, OracleRef ref, const std::vector<fe>& z,
              fe tau) {
  const Field& F = tr.F;
  std::size_t k = z.size();
  fe omega = F.root_of_unity(static_cast<unsigned>(k));
  std::size_t n = std::size_t(1) << k;
  std::vector<fe> pts(n), vals(n);
  fe x = tau;
  for (std::size_t l = 0; l < n; ++l) {
    pts[l] = x;
    vals[l] = tr.query(ref.id, x, ref.comp);
    x = F.mul(x, omega);
  }
  fe h = F.half();
  for (std::size_t lvl = 0; lvl < k; ++lvl) {
    std::size_t half = (n >> (lvl + 1));
    for (std::size_t l = 0; l < half; ++l) {
      fe a = vals[l], b = vals[l + half];
      fe ev = F.mul(h, F.add(a, b));
      fe od = F.mul(h, F.mul(F.sub(a, b), F.inv(pts[l])));
      vals[l] = F.add(ev, F.mul(z[lvl], od));
      pts[l] = F.mul(pts[l], pts[l]);
    }
  }
  return vals[0];
}

}  // namespace usc::gemini
