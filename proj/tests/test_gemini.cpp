#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "usc/gemini.hpp"

using namespace usc;

namespace {

std::mt19937_64 rng(13);
fe rnd(const Field& F) { return rng() % F.p; }

Poly rnd_poly(const Field& F, std::size_t len) {
  std::vector<fe> c(len);
  for (auto& x : c) x = rnd(F);
  return Poly(std::move(c));
}

EvalTable table_of(const Field& F, const Poly& f, unsigned m) {
  return ntt_forward(F, f, m, F.root_of_unity(m));
}

}  // namespace

TEST_CASE("fold_coeff, pinned chain") {
  Field F = Field::f17();
  Poly f({11, 10, 8, 6});
  Poly f1 = gemini::fold_coeff(F, f, 2);
  CHECK(f1 == Poly({14, 3}));
  Poly f2 = gemini::fold_coeff(F, f1, 3);
  CHECK(f2 == Poly({6}));
  CHECK(mlin_eval(F, f, {2, 3}) == 6);
}

TEST_CASE("fold_table agrees with fold_coeff on the halved domain") {
  for (Field F : {Field::f17(), Field::goldilocks()}) {
    unsigned top = std::min(F.two_adicity, 6u);
    for (unsigned m = 1; m <= top; ++m) {
      Poly f = rnd_poly(F, std::size_t(1) << m);
      fe z = rnd(F);
      EvalTable t = table_of(F, f, m);
      EvalTable folded = gemini::fold_table(F, t, z);
      Poly fc = gemini::fold_coeff(F, f, z);
      CHECK(folded.log_size == m - 1);
      CHECK(folded.generator == F.mul(t.generator, t.generator));
      fe x = 1;
      for (std::size_t i = 0; i < folded.size(); ++i) {
        CHECK(folded.values[i] == fc.eval(F, x));
        x = F.mul(x, folded.generator);
      }
    }
  }
}

TEST_CASE("iterated fold collapses to the multilinear evaluation") {
  Field F = Field::goldilocks();
  for (unsigned m = 1; m <= 8; ++m) {
    Poly f = rnd_poly(F, std::size_t(1) << m);
    std::vector<fe> z(m);
    for (auto& zi : z) zi = rnd(F);
    EvalTable t = table_of(F, f, m);
    Poly fc = f;
    for (unsigned lvl = 0; lvl < m; ++lvl) {
      t = lvl + 1 < m ? gemini::fold_table(F, t, z[lvl]) : t;
      fc = gemini::fold_coeff(F, fc, z[lvl]);
    }
    CHECK(fc.degree() <= 0);
    CHECK(fc.at(0) == mlin_eval(F, f, z));
  }
}

TEST_CASE("tail accepts honest claims and counts m-1 oracles") {
  for (Field F : {Field::f17(), Field::goldilocks()}) {
    unsigned top = std::min(F.two_adicity, 5u);
    for (unsigned m = 2; m <= top; ++m) {
      for (unsigned q : {1u, 2u}) {
        std::vector<Poly> fs;
        std::vector<EvalTable> tables;
        std::vector<fe> z(m), claimed;
        for (auto& zi : z) zi = rnd(F);
        Transcript tr(F, rng());
        std::vector<OracleRef> inputs;
        for (unsigned k = 0; k < q; ++k) {
          fs.push_back(rnd_poly(F, std::size_t(1) << m));
          tables.push_back(table_of(F, fs.back(), m));
          Oracle o;
          o.degree_bound = (long(1) << m) - 1;
          o.backings.push_back({std::nullopt, tables.back()});
          inputs.push_back({tr.add_input(std::move(o)), 0});
          claimed.push_back(mlin_eval(F, fs.back(), z));
        }
        auto res = gemini::tail(tr, inputs, tables, z, claimed);
        CHECK(res.ok);
        CHECK(tr.metrics().rounds == 1);
        CHECK(tr.metrics().oracles_sent == m - 1);
        CHECK(tr.metrics().field_elements_sent == q);
      }
    }
  }
}

TEST_CASE("tail rejects a wrong claimed constant") {
  Field F = Field::goldilocks();
  unsigned m = 4;
  Poly f = rnd_poly(F, 16);
  EvalTable t = table_of(F, f, m);
  std::vector<fe> z = {rnd(F), rnd(F), rnd(F), rnd(F)};
  Transcript tr(F, 3);
  Oracle o;
  o.degree_bound = 15;
  o.backings.push_back({std::nullopt, t});
  std::vector<OracleRef> inputs = {{tr.add_input(std::move(o)), 0}};
  fe truth = mlin_eval(F, f, z);
  auto res = gemini::tail(tr, inputs, {t}, z, {F.add(truth, 1)});
  CHECK(!res.ok);
}

TEST_CASE("tail rejects a tampered intermediate oracle") {
  Field F = Field::goldilocks();
  unsigned m = 4;
  Poly f = rnd_poly(F, 16);
  EvalTable t = table_of(F, f, m);
  std::vector<fe> z = {rnd(F), rnd(F), rnd(F), rnd(F)};
  Transcript tr(F, 3);
  tr.oracle_tamper = [&](Oracle& o) {
    o.backings[0].table->values[0] = F.add(o.backings[0].table->values[0], 1);
  };
  Oracle o;
  o.degree_bound = 15;
  o.backings.push_back({std::nullopt, t});
  std::vector<OracleRef> inputs = {{tr.add_input(std::move(o)), 0}};
  auto res = gemini::tail(tr, inputs, {t}, z, {mlin_eval(F, f, z)});
  CHECK(!res.ok);
}

TEST_CASE("fold_query reconstructs the k-fold value from shifted queries") {
  Field F = Field::goldilocks();
  unsigned m = 6;
  Poly f = rnd_poly(F, std::size_t(1) << m);
  EvalTable t = table_of(F, f, m);
  for (unsigned k = 1; k <= m; ++k) {
    std::vector<fe> z(k);
    for (auto& zi : z) zi = rnd(F);
    Transcript tr(F, 9);
    Oracle o;
    o.degree_bound = (long(1) << m) - 1;
    o.backings.push_back({std::nullopt, t});
    OracleRef ref{tr.add_input(std::move(o)), 0};
    fe tau = tr.challenge(true);
    Poly fc = f;
    for (fe zi : z) fc = gemini::fold_coeff(F, fc, zi);
    fe want = fc.eval(F, F.pow(tau, std::uint64_t(1) << k));
    CHECK(gemini::fold_query(tr, ref, z, tau) == want);
    CHECK(tr.metrics().queries == (std::uint64_t(1) << k));
  }
}
