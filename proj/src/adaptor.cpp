#include "usc/adaptor.hpp"

#include <stdexcept>

namespace usc::adaptor {

Levels make_levels(const Field& F, const EvalTable& v, const std::vector<fe>& z,
                   unsigned count) {
  if (count > v.log_size)
    throw std::invalid_argument("make_levels: more levels than variables");
  Levels out;
  std::vector<fe> cur = v.values;
  fe gen = v.generator;
  unsigned logn = v.log_size;
  for (unsigned j = 0; j < count; ++j) {
    std::size_t half = cur.size() / 2;
    fe gen2 = F.mul(gen, gen);
    EvalTable sq{std::vector<fe>(half), gen2, logn - 1};
    EvalTable no{std::vector<fe>(half), gen2, logn - 1};
    for (std::size_t i = 0; i < half; ++i) {
      sq.values[i] = cur[2 * i];
      no.values[i] = cur[2 * i + 1];
    }
    fe zc = F.sub(1, z[j]);
    std::vector<fe> next(half);
    for (std::size_t i = 0; i < half; ++i)
      next[i] = F.add(F.mul(zc, sq.values[i]), F.mul(z[j], no.values[i]));
    out.sq.push_back(std::move(sq));
    out.no.push_back(std::move(no));
    cur = std::move(next);
    gen = gen2;
    --logn;
  }
  return out;
}

namespace {

struct Chain {
  std::vector<int> sq_ids, no_ids;
  unsigned m = 0;  // log size of the input domain
  fe w = 1;        // input domain generator
};

Chain send_levels(Transcript& tr, const std::vector<EvalTable>& tables,
                  const std::vector<fe>& z, unsigned L) {
  const Field& F = tr.F;
  Chain ch;
  ch.m = tables.front().log_size;
  ch.w = tables.front().generator;
  std::vector<Levels> per;
  {
    OpSection sec(F, tr.metrics().prover_field_ops);
    for (const auto& t : tables) per.push_back(make_levels(F, t, z, L));
  }
  for (unsigned j = 0; j < L; ++j) {
    Oracle sq, no;
    sq.width = no.width = static_cast<unsigned>(tables.size());
    sq.degree_bound = no.degree_bound = (long(1) << (ch.m - j - 1)) - 1;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      sq.backings.push_back({std::nullopt, per[k].sq[j]});
      no.backings.push_back({std::nullopt, per[k].no[j]});
    }
    ch.sq_ids.push_back(tr.send_oracle(std::move(sq)));
    ch.no_ids.push_back(tr.send_oracle(std::move(no)));
  }
  return ch;
}

struct CheckResult {
  bool ok = true;
  std::string reason;
  fe final_lhs = 0;
};

// Verify the level identities at r; on success final_lhs carries the level-L
// combination value the caller compares against its own claim.
CheckResult check_chain(Transcript& tr, const std::vector<OracleRef>& inputs,
                        const Chain& ch, const std::vector<fe>& z, fe t, fe r) {
  const Field& F = tr.F;
  CheckResult res;
  std::size_t L = ch.sq_ids.size();
  fe h = F.half();
  fe winv = F.inv(ch.w);

  auto bat = [&](int id, fe x) {
    fe acc = 0, tw = 1;
    const Oracle& o = tr.oracle(id);
    for (unsigned c = 0; c < o.width; ++c) {
      acc = F.add(acc, F.mul(tw, tr.query(id, x, c)));
      tw = F.mul(tw, t);
    }
    return acc;
  };
  auto bat_refs = [&](fe x) {
    fe acc = 0, tw = 1;
    for (const auto& ref : inputs) {
      acc = F.add(acc, F.mul(tw, tr.query(ref.id, x, ref.comp)));
      tw = F.mul(tw, t);
    }
    return acc;
  };

  fe shift = winv;  // w^(-2^j)
  for (std::size_t j = 0; j < L; ++j) {
    fe lhs;
    if (j == 0) {
      lhs = bat_refs(r);
    } else {
      fe zc = F.sub(1, z[j - 1]);
      lhs = F.add(F.mul(zc, bat(ch.sq_ids[j - 1], r)),
                  F.mul(z[j - 1], bat(ch.no_ids[j - 1], r)));
    }
    fe re = F.pow(r, std::uint64_t(1) << (ch.m - j - 1));
    fe rhs = F.add(
        F.mul(F.mul(h, F.add(1, re)), bat(ch.sq_ids[j], r)),
        F.mul(F.mul(h, F.sub(1, re)), bat(ch.no_ids[j], F.mul(shift, r))));
    if (lhs != rhs) {
      res.ok = false;
      res.reason = "adaptor: level " + std::to_string(j) + " check failed";
      return res;
    }
    shift = F.mul(shift, shift);
  }
  fe zc = F.sub(1, z[L - 1]);
  res.final_lhs = F.add(F.mul(zc, bat(ch.sq_ids[L - 1], r)),
                        F.mul(z[L - 1], bat(ch.no_ids[L - 1], r)));
  return res;
}

}  // namespace

void run(Transcript& tr, const std::vector<fe>& v, const std::vector<fe>& z,
         fe s) {
  const Field& F = tr.F;
  unsigned m = static_cast<unsigned>(z.size());
  if (v.size() != (std::size_t(1) << m))
    throw std::invalid_argument("adaptor: table size is not 2^m");
  EvalTable t{v, F.root_of_unity(m), m};
  Oracle in;
  in.degree_bound = long(v.size()) - 1;
  in.backings.push_back({std::nullopt, t});
  int f0 = tr.add_input(std::move(in));

  tr.begin_round();
  Chain ch = send_levels(tr, {t}, z, m);
  fe r = tr.challenge(true);
  CheckResult res = check_chain(tr, {{f0, 0}}, ch, z, 1, r);
  if (!res.ok) {
    tr.set_verdict(false, res.reason);
    return;
  }
  if (res.final_lhs != s) {
    tr.set_verdict(false, "adaptor: final evaluation mismatch");
    return;
  }
  tr.set_verdict(true);
}

Tail tail(Transcript& tr, const std::vector<OracleRef>& inputs,
          const std::vector<EvalTable>& tables, const std::vector<fe>& z,
          const std::vector<fe>& claimed) {
  const Field& F = tr.F;
  Tail res;
  tr.begin_round();
  res.claimed = tr.send_scalars(claimed);
  Chain ch = send_levels(tr, tables, z, static_cast<unsigned>(z.size()));
  fe t = inputs.size() > 1 ? tr.challenge() : 1;
  fe r = tr.challenge(true);
  CheckResult cr = check_chain(tr, inputs, ch, z, t, r);
  if (!cr.ok) {
    res.ok = false;
    res.reason = cr.reason;
    return res;
  }
  fe bat_claim = 0, tw = 1;
  for (fe e : res.claimed) {
    bat_claim = F.add(bat_claim, F.mul(tw, e));
    tw = F.mul(tw, t);
  }
  if (cr.final_lhs != bat_claim) {
    res.ok = false;
    res.reason = "adaptor: claimed evaluations mismatch";
  }
  return res;
}

Early early(Transcript& tr, const std::vector<OracleRef>& inputs,
            const std::vector<EvalTable>& tables, const std::vector<fe>& z,
            const std::vector<OracleRef>& u) {
  const Field& F = tr.F;
  Early res;
  Chain ch = send_levels(tr, tables, z, static_cast<unsigned>(z.size()));
  fe t = inputs.size() > 1 ? tr.challenge() : 1;
  fe r = tr.challenge(true);
  CheckResult cr = check_chain(tr, inputs, ch, z, t, r);
  if (!cr.ok) {
    res.ok = false;
    res.reason = cr.reason;
    return res;
  }
  fe ubat = 0, tw = 1;
  for (const auto& ref : u) {
    ubat = F.add(ubat, F.mul(tw, tr.query(ref.id, r, ref.comp)));
    tw = F.mul(tw, t);
  }
  if (cr.final_lhs != ubat) {
    res.ok = false;
    res.reason = "adaptor: handoff check failed";
  }
  return res;
}

}  // namespace usc::adaptor
