#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "usc/polynomial.hpp"

using namespace usc;

namespace {

std::mt19937_64 rng(42);

fe rnd(const Field& F) { return rng() % F.p; }

Poly rnd_poly(const Field& F, std::size_t len) {
  std::vector<fe> c(len);
  for (auto& x : c) x = rnd(F);
  return Poly(std::move(c));
}

fe eval_naive(const Field& F, const Poly& p, fe x) {
  fe acc = 0, xp = 1;
  for (fe c : p.coeffs) {
    acc = F.add(acc, F.mul(c, xp));
    xp = F.mul(xp, x);
  }
  return acc;
}

}  // namespace

TEST_CASE("poly arithmetic against pointwise evaluation") {
  Field F = Field::goldilocks();
  for (int t = 0; t < 20; ++t) {
    Poly a = rnd_poly(F, 1 + rng() % 8);
    Poly b = rnd_poly(F, 1 + rng() % 8);
    fe x = rnd(F);
    CHECK(Poly::add(F, a, b).eval(F, x) == F.add(a.eval(F, x), b.eval(F, x)));
    CHECK(Poly::sub(F, a, b).eval(F, x) == F.sub(a.eval(F, x), b.eval(F, x)));
    CHECK(Poly::mul(F, a, b).eval(F, x) == F.mul(a.eval(F, x), b.eval(F, x)));
    fe c = rnd(F);
    CHECK(Poly::scale(F, a, c).eval(F, x) == F.mul(c, a.eval(F, x)));
    CHECK(a.eval(F, x) == eval_naive(F, a, x));
  }
}

TEST_CASE("divmod_binomial reconstructs the dividend") {
  Field F = Field::goldilocks();
  for (int t = 0; t < 20; ++t) {
    Poly a = rnd_poly(F, 2 + rng() % 14);
    std::size_t n = 1 + rng() % 6;
    fe c = rnd(F);
    auto [q, r] = Poly::divmod_binomial(F, a, n, c);
    CHECK(r.degree() < long(n));
    // q * (x^n - c) + r == a
    std::vector<fe> bin(n + 1, 0);
    bin[0] = F.neg(c);
    bin[n] = 1;
    Poly back = Poly::add(F, Poly::mul(F, q, Poly(bin)), r);
    CHECK(back == a);
  }
}

TEST_CASE("ntt roundtrip and forward values") {
  for (Field F : {Field::f17(), Field::goldilocks()}) {
    unsigned top = std::min(F.two_adicity, 8u);
    for (unsigned k = 0; k <= top; ++k) {
      fe w = F.root_of_unity(k);
      Poly p = rnd_poly(F, std::size_t(1) << k);
      EvalTable t = ntt_forward(F, p, k, w);
      CHECK(t.size() == (std::size_t(1) << k));
      fe x = 1;
      for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t.values[i] == p.eval(F, x));
        x = F.mul(x, w);
      }
      CHECK(ntt_inverse(F, t) == p);
    }
  }
}

TEST_CASE("eval_table barycentric matches the interpolant") {
  Field F = Field::f17();
  fe w = F.root_of_unity(3);
  Poly p = rnd_poly(F, 8);
  EvalTable t = ntt_forward(F, p, 3, w);
  for (fe x = 0; x < 17; ++x) CHECK(t.eval_at(F, x) == p.eval(F, x));
}

TEST_CASE("even_odd_split identity") {
  Field F = Field::goldilocks();
  for (int t = 0; t < 20; ++t) {
    Poly p = rnd_poly(F, 1 + rng() % 16);
    auto [ev, od] = even_odd_split(p);
    fe x = rnd(F);
    fe x2 = F.mul(x, x);
    CHECK(p.eval(F, x) ==
          F.add(ev.eval(F, x2), F.mul(x, od.eval(F, x2))));
  }
}

TEST_CASE("rem_cyclic folds against divmod") {
  Field F = Field::goldilocks();
  for (int sign : {1, -1}) {
    for (int t = 0; t < 10; ++t) {
      Poly p = rnd_poly(F, 3 + rng() % 20);
      std::size_t n = 2 + rng() % 5;
      Poly r = rem_cyclic(F, p, n, sign);
      fe c = sign == 1 ? 1 : F.neg(1);
      auto [q, rr] = Poly::divmod_binomial(F, p, n, c);
      CHECK(r == rr);
    }
  }
}

TEST_CASE("square/nonsquare split, pinned instance") {
  Field F = Field::f17();
  fe w = F.root_of_unity(2);
  Poly f({11, 10, 8, 6});
  auto [fsq, fno] = square_nonsquare_split(F, f, 2, w);
  CHECK(fsq == Poly({2, 16}));
  CHECK(fno == Poly({3, 16}));
  // defining property: fsq hits f on even powers, fno on odd, shifted down
  for (std::size_t i = 0; i < 2; ++i) {
    fe even = F.pow(w, 2 * i);
    CHECK(fsq.eval(F, even) == f.eval(F, even));
    CHECK(fno.eval(F, even) == f.eval(F, F.pow(w, 2 * i + 1)));
  }
}

TEST_CASE("square/nonsquare split, random instances") {
  Field F = Field::goldilocks();
  for (unsigned m = 1; m <= 6; ++m) {
    fe w = F.root_of_unity(m);
    Poly f = rnd_poly(F, std::size_t(1) << m);
    auto [fsq, fno] = square_nonsquare_split(F, f, m, w);
    std::size_t half = std::size_t(1) << (m - 1);
    CHECK(fsq.degree() < long(half));
    CHECK(fno.degree() < long(half));
    for (std::size_t i = 0; i < half; ++i) {
      fe even = F.pow(w, 2 * i);
      CHECK(fsq.eval(F, even) == f.eval(F, even));
      CHECK(fno.eval(F, even) == f.eval(F, F.pow(w, 2 * i + 1)));
    }
  }
}

TEST_CASE("crt recombination reproduces f everywhere") {
  Field F = Field::f17();
  for (unsigned m = 1; m <= 4; ++m) {
    fe w = F.root_of_unity(m);
    Poly f = rnd_poly(F, std::size_t(1) << m);
    auto [fsq, fno] = square_nonsquare_split(F, f, m, w);
    for (fe x = 0; x < 17; ++x)
      CHECK(crt_recombine(F, fsq, fno, m, w, x) == f.eval(F, x));
  }
}

TEST_CASE("mlin_eval against the naive monomial sum") {
  Field F = Field::f17();
  for (unsigned m = 1; m <= 4; ++m) {
    std::size_t n = std::size_t(1) << m;
    Poly f = rnd_poly(F, n);
    std::vector<fe> z(m);
    for (auto& zi : z) zi = rnd(F);
    fe want = 0;
    for (std::size_t i = 0; i < n; ++i) {
      fe mono = 1;
      for (unsigned j = 0; j < m; ++j)
        if (i >> j & 1) mono = F.mul(mono, z[j]);
      want = F.add(want, F.mul(f.at(i), mono));
    }
    CHECK(mlin_eval(F, f, z) == want);
  }
}

TEST_CASE("mlex_eval against the naive Lagrange sum") {
  Field F = Field::f17();
  for (unsigned m = 1; m <= 4; ++m) {
    std::size_t n = std::size_t(1) << m;
    std::vector<fe> v(n);
    for (auto& x : v) x = rnd(F);
    std::vector<fe> z(m);
    for (auto& zi : z) zi = rnd(F);
    fe want = 0;
    for (std::size_t i = 0; i < n; ++i) {
      fe lag = 1;
      for (unsigned j = 0; j < m; ++j) {
        fe bit = i >> j & 1;
        lag = F.mul(lag, bit ? z[j] : F.sub(1, z[j]));
      }
      want = F.add(want, F.mul(v[i], lag));
    }
    CHECK(mlex_eval(F, v, z) == want);
  }
}

TEST_CASE("univariate agrees with its multilinear view on the domain") {
  // f(w^i) = mlin[f](w^i, w^(2i), ..., w^(2^(m-1) i))
  for (Field F : {Field::f17(), Field::goldilocks()}) {
    unsigned top = std::min(F.two_adicity, 6u);
    for (unsigned m = 1; m <= top; ++m) {
      fe w = F.root_of_unity(m);
      Poly f = rnd_poly(F, std::size_t(1) << m);
      for (std::size_t i = 0; i < (std::size_t(1) << m); ++i) {
        std::vector<fe> z(m);
        fe cur = F.pow(w, i);
        for (unsigned j = 0; j < m; ++j) {
          z[j] = cur;
          cur = F.mul(cur, cur);
        }
        CHECK(f.eval(F, F.pow(w, i)) == mlin_eval(F, f, z));
      }
    }
  }
}

TEST_CASE("reverse_coefficients is x^bound p(1/x)") {
  Field F = Field::f17();
  for (int t = 0; t < 20; ++t) {
    Poly p = rnd_poly(F, 1 + rng() % 6);
    std::size_t bound = p.coeffs.size() - 1 + rng() % 3;
    Poly q = reverse_coefficients(p, bound);
    for (fe x = 1; x < 17; ++x)
      CHECK(q.eval(F, x) ==
            F.mul(F.pow(x, bound), p.eval(F, F.inv(x))));
  }
}

TEST_CASE("kappa_eval: all-ones schedule is mlin_eval") {
  Field F = Field::f17();
  for (unsigned m = 1; m <= 4; ++m) {
    Poly f = rnd_poly(F, std::size_t(1) << m);
    std::vector<unsigned> sched(m, 1);
    std::vector<fe> z(m);
    for (auto& zi : z) zi = rnd(F);
    CHECK(kappa_eval(F, f, sched, z) == mlin_eval(F, f, z));
  }
}

TEST_CASE("kappa_eval against the naive radix expansion") {
  Field F = Field::f17();
  std::vector<std::vector<unsigned>> schedules = {
      {2}, {1, 2}, {2, 1}, {2, 2}, {1, 1, 2}, {3, 1}};
  for (const auto& sched : schedules) {
    unsigned m = 0;
    for (unsigned t : sched) m += t;
    std::size_t n = std::size_t(1) << m;
    Poly f = rnd_poly(F, n);
    std::vector<fe> z(sched.size());
    for (auto& zi : z) zi = rnd(F);
    fe want = 0;
    for (std::size_t i = 0; i < n; ++i) {
      fe mono = 1;
      std::size_t rest = i;
      for (std::size_t j = 0; j < sched.size(); ++j) {
        unsigned digit = rest & ((1u << sched[j]) - 1);
        rest >>= sched[j];
        mono = F.mul(mono, F.pow(z[j], digit));
      }
      want = F.add(want, F.mul(f.at(i), mono));
    }
    CHECK(kappa_eval(F, f, sched, z) == want);
  }
}
