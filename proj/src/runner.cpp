#include "usc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "usc/adaptor.hpp"
#include "usc/aurora.hpp"
#include "usc/constraint.hpp"
#include "usc/dgm.hpp"
#include "usc/direct.hpp"
#include "usc/gemini.hpp"
#include "usc/sumcheck_lfkn.hpp"

namespace usc::runner {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Instance sampler, independent of the transcript's challenge stream.
struct Rng {
  std::uint64_t ctr;
  explicit Rng(std::uint64_t seed) : ctr(splitmix64(seed ^ 0xa5a5a5a55a5a5a5aull)) {}
  std::uint64_t next() { return splitmix64(ctr++); }
  fe field(const Field& F) {
    for (;;) {
      std::uint64_t raw = next();
      std::uint64_t bound = UINT64_MAX - UINT64_MAX % F.p;
      if (raw >= bound) continue;
      return raw % F.p;
    }
  }
};

unsigned ceil_log2(unsigned m) {
  unsigned k = 0;
  while ((1u << k) < m) ++k;
  return k;
}

unsigned reduced_rounds(unsigned m) { return std::max(1u, ceil_log2(m)); }

std::string canonical(const RunConfig& cfg) {
  if (cfg.protocol == "direct")
    return cfg.schedule.empty() ? "direct-gemini" : "direct-kappa";
  return cfg.protocol;
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("protocol")) c.protocol = j["protocol"];
  if (j.contains("field")) c.field = j["field"];
  if (j.contains("m")) c.m = j["m"];
  if (j.contains("g")) c.g = j["g"];
  if (j.contains("seed")) c.seed = j["seed"];
  if (j.contains("trials")) c.trials = j["trials"];
  if (j.contains("attack") && !j["attack"].is_null()) c.attack = j["attack"];
  if (j.contains("schedule"))
    c.schedule = j["schedule"].get<std::vector<unsigned>>();
  if (j.contains("z"))
    for (const auto& v : j["z"])
      c.z.push_back(v.is_string() ? std::stoull(v.get<std::string>())
                                  : v.get<fe>());
  if (j.contains("flaw_demo")) c.flaw_demo = j["flaw_demo"];
  if (j.contains("timings")) c.timings = j["timings"];
  return c;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["protocol"] = protocol;
  j["field"] = field;
  j["m"] = m;
  j["g"] = g;
  j["seed"] = seed;
  j["trials"] = trials;
  if (!attack.empty()) j["attack"] = attack;
  if (!schedule.empty()) j["schedule"] = schedule;
  if (flaw_demo) j["flaw_demo"] = true;
  return j;
}

Outcome run_single(const RunConfig& cfg, std::uint64_t seed) {
  Field F = Field::from_name(cfg.field);
  if (cfg.m == 0 || cfg.m > F.two_adicity)
    throw std::invalid_argument("m must be in [1, " +
                                std::to_string(F.two_adicity) + "] for " +
                                cfg.field);
  Constraint g = Constraint::named(cfg.g);
  const unsigned m = cfg.m;
  const unsigned q = g.arity;
  const std::size_t n = std::size_t(1) << m;
  const std::string proto = canonical(cfg);

  Transcript tr(F, seed);
  Rng rng(seed);
  fe w = F.root_of_unity(m);

  fe lie = cfg.attack == "tamper-sum" ? 1 : 0;
  bool scalarless = proto == "aurora" || proto == "adaptor";
  if (cfg.attack == "tamper-oracle" ||
      (cfg.attack == "tamper-message" && scalarless)) {
    Field Fc = F;
    std::uint64_t pseed = splitmix64(seed ^ 0x0c0ffee0ull);
    tr.oracle_tamper = [Fc, pseed](Oracle& o) {
      Rng r(pseed);
      auto& b = o.backings.front();
      if (b.table)
        for (fe& v : b.table->values) v = Fc.add(v, r.field(Fc));
      else
        for (fe& v : b.poly->coeffs) v = Fc.add(v, r.field(Fc));
      if (b.poly) b.poly->trim();
    };
  } else if (cfg.attack == "tamper-message") {
    Field Fc = F;
    tr.scalar_tamper = [Fc](std::vector<fe>& xs) {
      xs[0] = Fc.add(xs[0], 1);
    };
  }

  if (proto == "adaptor") {
    std::vector<fe> v(n);
    for (auto& x : v) x = rng.field(F);
    std::vector<fe> z = cfg.z;
    if (z.size() != m) {
      z.resize(m);
      for (auto& x : z) x = rng.field(F);
    }
    fe s = F.add(mlex_eval(F, v, z), lie);
    adaptor::run(tr, v, z, s);
  } else {
    // shared instance: q random tables, their sum claim, input oracles
    std::vector<std::vector<fe>> tables(q, std::vector<fe>(n));
    for (auto& t : tables)
      for (auto& x : t) x = rng.field(F);
    std::vector<EvalTable> etabs;
    std::vector<OracleRef> refs;
    for (unsigned k = 0; k < q; ++k) {
      etabs.push_back(EvalTable{tables[k], w, m});
      Oracle o;
      o.degree_bound = long(n) - 1;
      o.backings.push_back({std::nullopt, etabs.back()});
      refs.push_back({tr.add_input(std::move(o)), 0});
    }
    fe s = 0;
    {
      std::vector<fe> args(q);
      for (std::size_t i = 0; i < n; ++i) {
        for (unsigned k = 0; k < q; ++k) args[k] = tables[k][i];
        s = F.add(s, g.eval(F, args));
      }
    }

    if (proto == "aurora") {
      auto res = aurora::run(tr, refs, etabs, g, s, lie);
      tr.set_verdict(res.ok, res.reason);
    } else if (proto == "lfkn-adaptor") {
      auto lr = lfkn::run(tr, {tables, s}, g, m, lie);
      if (!lr.ok) {
        tr.set_verdict(false, lr.reason);
      } else {
        std::vector<fe> finals;
        for (const auto& t : lr.reduced.tables) finals.push_back(t[0]);
        auto at = adaptor::tail(tr, refs, etabs, lr.challenges, finals);
        bool ok = at.ok && g.eval(F, at.claimed) == lr.reduced.claim;
        tr.set_verdict(ok, ok ? "" : (at.ok ? "composition: final claim mismatch"
                                            : at.reason));
      }
    } else if (proto == "lfkn-adaptor-aurora") {
      unsigned k = std::min(m, reduced_rounds(m));
      auto lr = lfkn::run(tr, {tables, s}, g, k, lie);
      if (!lr.ok) {
        tr.set_verdict(false, lr.reason);
      } else {
        tr.begin_round();
        fe wu = F.root_of_unity(m - k);
        std::vector<EvalTable> utabs;
        std::vector<OracleRef> urefs;
        for (unsigned i = 0; i < q; ++i) {
          utabs.push_back(EvalTable{lr.reduced.tables[i], wu, m - k});
          Oracle o;
          o.degree_bound = (long(1) << (m - k)) - 1;
          o.backings.push_back({std::nullopt, utabs.back()});
          urefs.push_back({tr.send_oracle(std::move(o)), 0});
        }
        auto ae = adaptor::early(tr, refs, etabs, lr.challenges, urefs);
        fe true_sk = F.sub(lr.reduced.claim, lr.lie);
        auto ar = aurora::run(tr, urefs, utabs, g, true_sk, lr.lie, false);
        bool ok = ae.ok && ar.ok;
        tr.set_verdict(ok, ok ? "" : (ae.ok ? ar.reason : ae.reason));
      }
    } else if (proto == "dgm" || proto == "dgm-gemini") {
      int h_id = -1;
      fe alpha = 0;
      if (proto == "dgm") {
        std::vector<fe> hv(n);
        std::vector<fe> args(q);
        for (std::size_t i = 0; i < n; ++i) {
          for (unsigned k = 0; k < q; ++k) args[k] = tables[k][i];
          hv[i] = g.eval(F, args);
          if (lie != 0) hv[i] = F.add(hv[i], lie);
        }
        Oracle oh;
        oh.degree_bound = long(n) - 1;
        oh.backings.push_back({std::nullopt, EvalTable{hv, w, m}});
        h_id = tr.add_input(std::move(oh));
        alpha = lie;
      } else {
        alpha = lie == 0 ? 0 : F.mul(lie, F.inv(n % F.p));
      }
      auto dr = dgm::run(tr, tables, w, g, m, h_id, F.add(s, lie), false,
                         alpha);
      if (!dr.ok) {
        tr.set_verdict(false, dr.reason);
      } else {
        std::vector<fe> finals;
        for (const auto& t : dr.tables) finals.push_back(t[0]);
        auto gt = gemini::tail(tr, refs, etabs, dr.challenges, finals);
        bool ok = gt.ok && g.eval(F, gt.claimed) == tr.query(dr.h_id, 1);
        tr.set_verdict(ok, ok ? "" : (gt.ok ? "composition: final claim mismatch"
                                            : gt.reason));
      }
    } else if (proto == "dgm-gemini-aurora") {
      unsigned k = std::min(m, reduced_rounds(m));
      fe alpha = lie == 0 ? 0 : F.mul(lie, F.inv(n % F.p));
      auto dr = dgm::run(tr, tables, w, g, k, -1, F.add(s, lie), true, alpha);
      if (!dr.ok) {
        tr.set_verdict(false, dr.reason);
      } else {
        const std::size_t np = std::size_t(1) << (m - k);
        tr.begin_round();
        // residual h as a real oracle
        EvalTable ht{std::vector<fe>(np), dr.gen, m - k};
        {
          OpSection sec(F, tr.metrics().prover_field_ops);
          fe pw = 1;
          for (unsigned j = 0; j < dr.last_hprime.size(); ++j) {
            for (std::size_t i = 0; i < np; ++i)
              ht.values[i] = F.add(ht.values[i],
                                   F.mul(pw, dr.last_hprime[j].values[i]));
            pw = F.mul(pw, dr.last_r);
          }
        }
        Oracle oh;
        oh.degree_bound = long(np) - 1;
        oh.backings.push_back({std::nullopt, ht});
        int h_real = tr.send_oracle(std::move(oh));

        std::vector<EvalTable> utabs;
        std::vector<OracleRef> urefs;
        for (unsigned i = 0; i < q; ++i) {
          utabs.push_back(EvalTable{dr.tables[i], dr.gen, m - k});
          Oracle o;
          o.degree_bound = long(np) - 1;
          o.backings.push_back({std::nullopt, utabs.back()});
          urefs.push_back({tr.send_oracle(std::move(o)), 0});
        }
        // quotient for g(u) = Q (x^np - 1) + h
        Poly Q;
        {
          OpSection sec(F, tr.metrics().prover_field_ops);
          std::vector<Poly> ups;
          for (const auto& t : utabs) ups.push_back(ntt_inverse(F, t));
          Poly P = dgm::compose(F, ups, g);
          P = Poly::sub(F, P, ntt_inverse(F, ht));
          Q = Poly::divmod_binomial(F, P, np, 1).first;
        }
        Oracle oq;
        oq.degree_bound =
            std::max(long(g.degree) * (long(np) - 1) - long(np), 0l);
        oq.backings.push_back({Q, std::nullopt});
        int q_id = tr.send_oracle(std::move(oq));

        fe rho = tr.challenge(true);
        bool ok = true;
        std::string why;
        // authenticate the re-sent residual h
        fe expect = 0, pw = 1;
        for (unsigned j = 0; j <= g.degree; ++j) {
          expect = F.add(expect,
                         F.mul(pw, tr.query(dr.hprime_vecs.back(), rho, j)));
          pw = F.mul(pw, dr.last_r);
        }
        if (tr.query(h_real, rho) != expect) {
          ok = false;
          why = "composition: residual h mismatch";
        }
        // authenticate each u against its input's fold chain
        if (ok) {
          fe rho_k = F.pow(rho, std::uint64_t(1) << k);
          for (unsigned i = 0; i < q && ok; ++i) {
            fe folded = gemini::fold_query(tr, refs[i], dr.challenges, rho);
            if (tr.query(urefs[i].id, rho_k) != folded) {
              ok = false;
              why = "composition: u authentication failed";
            }
          }
        }
        // single-round domain identity at rho
        if (ok) {
          std::vector<fe> uv(q);
          for (unsigned i = 0; i < q; ++i) uv[i] = tr.query(urefs[i].id, rho);
          fe lhs = g.eval(F, uv);
          fe rhs = F.add(F.mul(tr.query(q_id, rho),
                               F.sub(F.pow(rho, np), 1)),
                         tr.query(h_real, rho));
          if (lhs != rhs) {
            ok = false;
            why = "composition: residual identity failed";
          }
        }
        tr.set_verdict(ok, why);
      }
    } else if (proto == "direct-gemini" || proto == "direct-kappa") {
      std::vector<unsigned> sched;
      if (proto == "direct-gemini") {
        sched.assign(m, 1);
      } else {
        sched = cfg.schedule.empty() ? direct::sqrt_schedule(m) : cfg.schedule;
        unsigned total = 0;
        for (unsigned t : sched) total += t;
        if (total != m)
          throw std::invalid_argument("schedule does not sum to m");
      }
      auto drr = direct::run(tr, tables, w, g, sched, s, lie);
      if (!drr.ok) {
        tr.set_verdict(false, drr.reason);
      } else {
        auto dt = direct::tail(tr, refs, etabs, sched, drr.challenges,
                               drr.finals);
        bool ok = dt.ok && g.eval(F, dt.claimed) == drr.claim;
        tr.set_verdict(ok, ok ? "" : (dt.ok ? "composition: final claim mismatch"
                                            : dt.reason));
      }
    } else {
      throw std::invalid_argument("unknown protocol: " + cfg.protocol);
    }
  }

  Outcome out;
  out.accepted = tr.accepted();
  out.metrics = tr.metrics();
  out.transcript = tr.to_json(proto, m, g.degree, q);
  return out;
}

nlohmann::json expected_metrics(const std::string& protocol, unsigned m,
                                unsigned d, unsigned q,
                                const std::vector<unsigned>& schedule) {
  nlohmann::json j;
  auto dgm_scalars = [&](unsigned rounds) {
    std::uint64_t total = 0;
    for (unsigned t = 1; t <= rounds; ++t) {
      std::uint64_t half = std::uint64_t(1) << (m - t);
      for (unsigned jj = 0; jj <= d; ++jj) total += (jj / 2) % half;
    }
    return total;
  };
  unsigned k = std::max(1u, ceil_log2(m));
  if (protocol == "adaptor") {
    j["rounds"] = 1;
    j["field_elements"] = 0;
    j["oracles"] = 2 * m;
    j["queries"] = 3 * m + 1;
  } else if (protocol == "aurora") {
    j["rounds"] = 1;
    j["field_elements"] = 0;
    j["oracles"] = 2;
  } else if (protocol == "lfkn-adaptor") {
    j["rounds"] = m + 1;
    j["field_elements"] = (d + 1) * m + q;
    j["oracles"] = 2 * m;
  } else if (protocol == "lfkn-adaptor-aurora") {
    j["rounds"] = k + 1;
    j["field_elements"] = (d + 1) * k;
    j["oracles"] = 2 * k + q + 2;
  } else if (protocol == "dgm" || protocol == "dgm-gemini") {
    j["rounds"] = m + 1;
    j["field_elements"] = dgm_scalars(m) + q;
    j["oracles"] = 4 * m - 1;
  } else if (protocol == "dgm-gemini-aurora") {
    j["rounds"] = k + 1;
    j["field_elements"] = dgm_scalars(k);
    j["oracles"] = 4 * k + q + 1;
  } else if (protocol == "direct-gemini") {
    j["rounds"] = m + 1;
    j["field_elements"] = (d + 1) * m + q;
    j["oracles"] = m - 1;
  } else if (protocol == "direct-kappa") {
    std::vector<unsigned> sched =
        schedule.empty() ? direct::sqrt_schedule(m) : schedule;
    std::uint64_t fes = q;
    for (unsigned t : sched) fes += std::uint64_t(d) * ((1u << t) - 1) + 1;
    j["rounds"] = sched.size() + 1;
    j["field_elements"] = fes;
    j["oracles"] = sched.size() - 1;
  }
  return j;
}

namespace {

double soundness_envelope(const std::string& proto, const Field& F, unsigned m,
                          unsigned d) {
  double p = double(F.p);
  double n = double(std::uint64_t(1) << m);
  double raw;
  if (proto == "aurora")
    raw = d * (n - 1) / p;
  else if (proto == "adaptor")
    raw = (n + m) / p;
  else if (proto == "dgm" || proto == "dgm-gemini" ||
           proto == "dgm-gemini-aurora")
    raw = m * (d + (2.0 * d + 3) * (n / 2)) / (p - 1);
  else
    raw = (d * m + n) / p;  // reduction rounds plus tail identities
  return std::min(1.0, raw);
}

nlohmann::json flaw_report(const RunConfig& cfg) {
  Field F = Field::from_name(cfg.field);
  Constraint g = Constraint::named(cfg.g);
  nlohmann::json j;
  j["flaw_demo"] = true;
  j["protocol"] = "dgm";

  // pinned regression instance
  {
    Field F17 = Field::f17();
    Constraint sq = Constraint::named("square");
    Poly f({11, 10, 8, 6});
    auto d = dgm::flaw_demo(F17, {f}, sq, 2, 2);
    j["pinned"] = {{"rho", 2},
                   {"naive", std::to_string(d.naive)},
                   {"corrected", std::to_string(d.corrected)},
                   {"h", std::to_string(d.truth)}};
  }

  // sampled behaviour on the configured field/constraint
  Rng rng(cfg.seed);
  unsigned trials = std::max(64u, cfg.trials);
  unsigned naive_mismatch = 0, corrected_match = 0;
  const std::size_t n = std::size_t(1) << cfg.m;
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<Poly> fs;
    for (unsigned kk = 0; kk < g.arity; ++kk) {
      std::vector<fe> c(n);
      for (auto& x : c) x = rng.field(F);
      fs.emplace_back(std::move(c));
    }
    fe rho = rng.field(F);
    auto dm = dgm::flaw_demo(F, fs, g, cfg.m, rho);
    if (dm.naive != dm.truth) ++naive_mismatch;
    if (dm.corrected == dm.truth) ++corrected_match;
  }
  j["samples"] = {{"trials", trials},
                  {"naive_mismatch", naive_mismatch},
                  {"corrected_match", corrected_match}};
  return j;
}

}  // namespace

nlohmann::json execute(const RunConfig& cfg) {
  if (cfg.flaw_demo) return flaw_report(cfg);

  if (cfg.trials > 1) {
    const unsigned T = cfg.trials;
    std::atomic<std::uint64_t> accepted{0};
    unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    std::atomic<unsigned> next{0};
    for (unsigned wi = 0; wi < workers; ++wi)
      pool.emplace_back([&] {
        for (unsigned i = next.fetch_add(1); i < T; i = next.fetch_add(1))
          if (run_single(cfg, cfg.seed + i).accepted) ++accepted;
      });
    for (auto& th : pool) th.join();
    Field F = Field::from_name(cfg.field);
    Constraint g = Constraint::named(cfg.g);
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["trials"] = T;
    j["accepted"] = std::uint64_t(accepted);
    j["acceptance_rate"] = double(accepted) / T;
    j["soundness_envelope"] =
        soundness_envelope(canonical(cfg), F, cfg.m, g.degree);
    return j;
  }

  auto t0 = std::chrono::steady_clock::now();
  Outcome out = run_single(cfg, cfg.seed);
  auto t1 = std::chrono::steady_clock::now();

  Constraint g = Constraint::named(cfg.g);
  nlohmann::json j;
  j["config"] = cfg.to_json();
  j["transcript"] = out.transcript;
  nlohmann::json exp = expected_metrics(canonical(cfg), cfg.m, g.degree,
                                        g.arity, cfg.schedule);
  j["expected"] = exp;
  bool match = true;
  for (auto it = exp.begin(); it != exp.end(); ++it) {
    std::string key = it.key();
    if (out.transcript["metrics"].contains(key) &&
        out.transcript["metrics"][key] != it.value())
      match = false;
  }
  j["metrics_match"] = match;
  if (cfg.timings)
    j["timings_ms"] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
  return j;
}

nlohmann::json bench(RunConfig cfg, unsigned m_lo, unsigned m_hi) {
  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> ops;
  for (unsigned m = m_lo; m <= m_hi; ++m) {
    cfg.m = m;
    cfg.attack.clear();
    auto t0 = std::chrono::steady_clock::now();
    Outcome out = run_single(cfg, cfg.seed);
    auto t1 = std::chrono::steady_clock::now();
    double o = double(out.metrics.prover_field_ops);
    nlohmann::json row;
    row["m"] = m;
    row["prover_field_ops"] = out.metrics.prover_field_ops;
    row["wall_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row["accepted"] = out.accepted;
    if (!ops.empty()) row["ratio"] = o / ops.back();
    ops.push_back(o);
    rows.push_back(row);
  }
  nlohmann::json j;
  j["config"] = cfg.to_json();
  j["bench"] = rows;
  return j;
}

}  // namespace usc::runner
