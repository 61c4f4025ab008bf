#include "usc/dgm.hpp"

#include <stdexcept>

#include "usc/gemini.hpp"

namespace usc::dgm {

namespace {

std::size_t shift_amount(unsigned j, std::size_t half) {
  return (std::size_t(j) / 2) % half;
}

}  // namespace

Poly compose(const Field& F, const std::vector<Poly>& fs, const Constraint& g) {
  long maxd = 0;
  for (const auto& f : fs) maxd = std::max(maxd, std::max(f.degree(), 0l));
  long comp_deg = long(g.degree) * maxd;
  unsigned K = 0;
  while ((long(1) << K) < comp_deg + 1) ++K;
  fe gen = F.root_of_unity(K);
  std::size_t N = std::size_t(1) << K;
  std::vector<std::vector<fe>> vals;
  for (const auto& f : fs) vals.push_back(ntt_forward(F, f, K, gen).values);
  std::vector<fe> pv(N);
  std::vector<fe> args(fs.size());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < fs.size(); ++k) args[k] = vals[k][i];
    pv[i] = g.eval(F, args);
  }
  return ntt_inverse(F, EvalTable{std::move(pv), gen, K});
}

Decomp decompose(const Field& F, const std::vector<Poly>& fs,
                 const Constraint& g, unsigned m) {
  if (m == 0) throw std::invalid_argument("decompose: need m >= 1");
  const std::size_t half = std::size_t(1) << (m - 1);
  std::vector<Poly> a, b;
  for (const auto& f : fs) {
    auto [ev, od] = even_odd_split(f);
    a.push_back(std::move(ev));
    b.push_back(std::move(od));
  }
  long comp_deg = long(g.degree) * long(half - 1);
  unsigned K = 0;
  while ((long(1) << K) < comp_deg + 1) ++K;
  fe gen = F.root_of_unity(K);
  std::size_t N = std::size_t(1) << K;
  std::vector<std::vector<fe>> av, bv;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    av.push_back(ntt_forward(F, a[k], K, gen).values);
    bv.push_back(ntt_forward(F, b[k], K, gen).values);
  }
  std::vector<std::vector<fe>> gj(g.degree + 1, std::vector<fe>(N));
  std::vector<fe> ai(fs.size()), bi(fs.size());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < fs.size(); ++k) {
      ai[k] = av[k][i];
      bi[k] = bv[k][i];
    }
    std::vector<fe> comps = g.line_components(F, ai, bi);
    for (unsigned j = 0; j <= g.degree; ++j) gj[j][i] = comps[j];
  }
  Decomp out;
  for (unsigned j = 0; j <= g.degree; ++j) {
    Poly gp = ntt_inverse(F, EvalTable{std::move(gj[j]), gen, K});
    Poly hp = rem_cyclic(F, gp, half, +1);
    std::size_t e = shift_amount(j, half);
    std::vector<fe> shifted(gp.coeffs.size() + e, 0);
    for (std::size_t i = 0; i < gp.coeffs.size(); ++i)
      shifted[i + e] = gp.coeffs[i];
    Poly hj = rem_cyclic(F, Poly(std::move(shifted)), half, +1);
    out.q.emplace_back(
        std::vector<fe>(hj.coeffs.begin(),
                        hj.coeffs.begin() +
                            std::min(e, hj.coeffs.size())));
    out.c.push_back(reverse_coefficients(hj, half - 1));
    out.hprime.push_back(std::move(hp));
    out.h.push_back(std::move(hj));
  }
  return out;
}

RoundData round_data(const Field& F,
                     const std::vector<std::vector<fe>>& tables, fe gen,
                     const Constraint& g) {
  const std::size_t n = tables.front().size();
  const std::size_t half = n / 2;
  fe gen_sq = F.mul(gen, gen);
  unsigned log_half = 0;
  while ((std::size_t(1) << (log_half + 1)) < n) ++log_half;

  fe h2 = F.half();
  fe ginv = F.inv(gen);
  std::vector<fe> ev(tables.size()), od(tables.size());
  RoundData rd;
  rd.hprime.assign(g.degree + 1,
                   EvalTable{std::vector<fe>(half), gen_sq, log_half});
  rd.h = rd.hprime;
  rd.c = rd.hprime;
  fe gp = 1;  // gen^-i
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t k = 0; k < tables.size(); ++k) {
      ev[k] = F.mul(h2, F.add(tables[k][i], tables[k][i + half]));
      od[k] = F.mul(F.mul(h2, gp), F.sub(tables[k][i], tables[k][i + half]));
    }
    std::vector<fe> comps = g.line_components(F, ev, od);
    for (unsigned j = 0; j <= g.degree; ++j) rd.hprime[j].values[i] = comps[j];
    gp = F.mul(gp, ginv);
  }
  // h_j(x) = x^e_j hprime_j(x) on the half domain; c_j mirrors h_j.
  for (unsigned j = 0; j <= g.degree; ++j) {
    std::size_t e = shift_amount(j, half);
    fe step = F.pow(gen_sq, e);
    fe acc = 1;
    for (std::size_t i = 0; i < half; ++i) {
      rd.h[j].values[i] = F.mul(acc, rd.hprime[j].values[i]);
      acc = F.mul(acc, step);
    }
    fe rev = F.pow(gen_sq, half - 1);
    acc = 1;
    for (std::size_t i = 0; i < half; ++i) {
      rd.c[j].values[i] = F.mul(acc, rd.h[j].values[(half - i) % half]);
      acc = F.mul(acc, rev);
    }
    // q_j: the e lowest coefficients of h_j by direct inverse DFT sums
    std::vector<fe> qj(e);
    fe ninv = F.inv(half % F.p);
    fe winv = F.inv(gen_sq);
    for (std::size_t l = 0; l < e; ++l) {
      fe sum = 0, pwl = 1, wl = F.pow(winv, l);
      for (std::size_t i = 0; i < half; ++i) {
        sum = F.add(sum, F.mul(pwl, rd.h[j].values[i]));
        pwl = F.mul(pwl, wl);
      }
      qj[l] = F.mul(ninv, sum);
    }
    rd.q.push_back(std::move(qj));
  }
  return rd;
}

FlawDemo flaw_demo(const Field& F, const std::vector<Poly>& fs,
                   const Constraint& g, unsigned m, fe rho) {
  FlawDemo out;
  Decomp d = decompose(F, fs, g, m);
  Poly P = compose(F, fs, g);
  Poly h = rem_cyclic(F, P, std::size_t(1) << m, +1);
  out.truth = h.eval(F, rho);
  fe rho2 = F.mul(rho, rho);
  fe pw = 1;
  for (std::size_t j = 0; j < d.hprime.size(); ++j) {
    out.naive = F.add(out.naive, F.mul(pw, d.hprime[j].eval(F, rho2)));
    pw = F.mul(pw, rho);
  }
  for (std::size_t j = 0; j < d.h.size(); ++j) {
    fe v = d.h[j].eval(F, rho2);
    if (j % 2 == 1) v = F.mul(rho, v);
    out.corrected = F.add(out.corrected, v);
  }
  return out;
}

RunResult run(Transcript& tr, std::vector<std::vector<fe>> tables, fe gen,
              const Constraint& g, unsigned k, int h_input, fe s,
              bool realize_h, fe alpha) {
  const Field& F = tr.F;
  RunResult res;
  const std::size_t n0 = tables.front().size();
  int h_id = h_input;

  // carried over from the previous round for realize_h and authentication
  std::vector<EvalTable> prev_hprime;
  int prev_hprime_vec = -1;
  fe prev_r = 0;

  for (unsigned t = 1; t <= k; ++t) {
    const std::size_t n = tables.front().size();
    const std::size_t half = n / 2;
    fe gen_sq = F.mul(gen, gen);
    tr.begin_round();

    int h_real = -1;
    if (realize_h && t >= 2) {
      Oracle oh;
      oh.degree_bound = long(n) - 1;
      EvalTable ht{std::vector<fe>(n), gen, prev_hprime.front().log_size};
      {
        OpSection sec(F, tr.metrics().prover_field_ops);
        fe pw = 1;
        for (unsigned j = 0; j < prev_hprime.size(); ++j) {
          for (std::size_t i = 0; i < n; ++i)
            ht.values[i] =
                F.add(ht.values[i], F.mul(pw, prev_hprime[j].values[i]));
          pw = F.mul(pw, prev_r);
        }
      }
      oh.backings.push_back({std::nullopt, ht});
      h_real = tr.send_oracle(std::move(oh));
    }

    RoundData rd;
    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      rd = round_data(F, tables, gen, g);
      if (alpha != 0) {
        fe rev = F.pow(gen_sq, half - 1);
        fe acc = 1;
        for (std::size_t i = 0; i < half; ++i) {
          rd.hprime[0].values[i] = F.add(rd.hprime[0].values[i], alpha);
          rd.h[0].values[i] = F.add(rd.h[0].values[i], alpha);
          rd.c[0].values[i] = F.add(rd.c[0].values[i], F.mul(acc, alpha));
          acc = F.mul(acc, rev);
        }
      }
    }

    std::vector<fe> flat;
    for (const auto& qj : rd.q) flat.insert(flat.end(), qj.begin(), qj.end());
    std::vector<fe> msg = tr.send_scalars(flat);

    auto send_vec = [&](std::vector<EvalTable>& ts) {
      Oracle o;
      o.width = g.degree + 1;
      o.degree_bound = long(half) - 1;
      for (auto& e : ts) o.backings.push_back({std::nullopt, e});
      return tr.send_oracle(std::move(o));
    };
    int hp_vec = send_vec(rd.hprime);
    int h_vec = send_vec(rd.h);
    int c_vec = send_vec(rd.c);
    res.hprime_vecs.push_back(hp_vec);

    fe rho = tr.challenge(true);
    fe rho_inv = F.inv(rho);
    fe rho2 = F.mul(rho, rho);
    fe rho_rev = F.pow(rho, half - 1);
    fe rho_half = F.pow(rho, half);

    auto fail = [&](const std::string& why) {
      res.ok = false;
      res.reason = "dgm: round " + std::to_string(t) + " " + why;
    };

    // (a) reversal consistency
    for (unsigned j = 0; j <= g.degree; ++j)
      if (tr.query(c_vec, rho, j) !=
          F.mul(rho_rev, tr.query(h_vec, rho_inv, j))) {
        fail("reversal check failed at component " + std::to_string(j));
        return res;
      }

    // authenticate the re-sent h against the previous round's combination
    if (h_real >= 0) {
      fe expect = 0, pw = 1;
      for (unsigned j = 0; j <= g.degree; ++j) {
        expect = F.add(expect, F.mul(pw, tr.query(prev_hprime_vec, rho, j)));
        pw = F.mul(pw, prev_r);
      }
      if (tr.query(h_real, rho) != expect) {
        fail("h re-send mismatch");
        return res;
      }
      h_id = h_real;
    }

    // (b) recombination, or the sum anchor in round 1 of the sumcheck form
    if (t == 1 && h_input < 0) {
      fe anchor = 0;
      for (unsigned j = 0; j <= g.degree; j += 2)
        anchor = F.add(anchor, tr.query(h_vec, 0, j));
      if (anchor != F.mul(s, F.inv(n0 % F.p))) {
        fail("sum anchor failed");
        return res;
      }
    } else {
      fe rhs = 0;
      for (unsigned j = 0; j <= g.degree; ++j) {
        fe v = tr.query(h_vec, rho2, j);
        if (j % 2 == 1) v = F.mul(rho, v);
        rhs = F.add(rhs, v);
      }
      if (tr.query(h_id, rho) != rhs) {
        fail("recombination check failed");
        return res;
      }
    }

    // (c) shift consistency with the clear low coefficients
    std::size_t off = 0;
    for (unsigned j = 0; j <= g.degree; ++j) {
      std::size_t e = shift_amount(j, half);
      fe qv = 0;
      for (std::size_t l = e; l-- > 0;)
        qv = F.add(F.mul(qv, rho), msg[off + l]);
      off += e;
      fe lhs = F.mul(F.pow(rho, e), tr.query(hp_vec, rho, j));
      fe rhs = F.add(tr.query(h_vec, rho, j),
                     F.mul(qv, F.sub(rho_half, 1)));
      if (lhs != rhs) {
        fail("shift check failed at component " + std::to_string(j));
        return res;
      }
    }

    fe r = tr.challenge();
    res.challenges.push_back(r);

    // next h: the r-combination of this round's hprime components
    Oracle vh;
    vh.degree_bound = long(half) - 1;
    vh.terms.resize(1);
    fe pw = 1;
    for (unsigned j = 0; j <= g.degree; ++j) {
      vh.terms[0].push_back({pw, hp_vec, j});
      pw = F.mul(pw, r);
    }
    h_id = tr.add_virtual(std::move(vh));

    {
      OpSection sec(F, tr.metrics().prover_field_ops);
      for (auto& tab : tables) {
        EvalTable cur{std::move(tab), gen, rd.hprime.front().log_size + 1};
        tab = gemini::fold_table(F, cur, r).values;
      }
    }
    prev_hprime = std::move(rd.hprime);
    prev_hprime_vec = hp_vec;
    prev_r = r;
    gen = gen_sq;
  }

  res.tables = std::move(tables);
  res.gen = gen;
  res.h_id = h_id;
  res.last_hprime = std::move(prev_hprime);
  res.last_r = prev_r;
  return res;
}

}  // namespace usc::dgm
