#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "usc/field.hpp"

using namespace usc;

TEST_CASE("root_of_unity on f17") {
  Field F = Field::f17();
  CHECK(F.root_of_unity(0) == 1);
  // exhaustive order search over F17 pins the m=2 root to 4
  fe w = F.root_of_unity(2);
  CHECK(w == 4);
  CHECK(F.pow(w, 2) == 16);
  CHECK(F.pow(w, 4) == 1);
  CHECK_THROWS_AS((void)F.root_of_unity(5), std::domain_error);
}

TEST_CASE("root orders and nesting chain") {
  for (Field F : {Field::f17(), Field::goldilocks()}) {
    unsigned top = std::min(F.two_adicity, 12u);
    for (unsigned m = 1; m <= top; ++m) {
      fe w = F.root_of_unity(m);
      CHECK(F.pow(w, std::uint64_t(1) << m) == 1);
      CHECK(F.pow(w, std::uint64_t(1) << (m - 1)) != 1);
      if (m < top) {
        fe wn = F.root_of_unity(m + 1);
        CHECK(F.mul(wn, wn) == w);
      }
    }
  }
}

TEST_CASE("subgroup elements are distinct") {
  Field F = Field::f17();
  for (unsigned m = 0; m <= 4; ++m) {
    fe w = F.root_of_unity(m);
    std::vector<fe> seen;
    fe x = 1;
    for (std::size_t i = 0; i < (std::size_t(1) << m); ++i) {
      seen.push_back(x);
      x = F.mul(x, w);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
  }
}

TEST_CASE("batch_inverse") {
  Field F = Field::f17();
  CHECK(F.batch_inverse({1}) == std::vector<fe>{1});
  CHECK(F.batch_inverse({4}) == std::vector<fe>{13});
  CHECK(F.batch_inverse({2, 3}) == std::vector<fe>({9, 6}));
  CHECK_THROWS_AS((void)F.batch_inverse({5, 0, 3}), std::domain_error);

  Field G = Field::goldilocks();
  std::vector<fe> xs;
  for (fe i = 1; i <= 50; ++i) xs.push_back(G.mul(i, 0x123456789abcdefull));
  auto inv = G.batch_inverse(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(G.mul(xs[i], inv[i]) == 1);
}

TEST_CASE("fermat and arithmetic closure") {
  Field F = Field::goldilocks();
  fe a = 0xdeadbeefcafef00dull % F.p;
  CHECK(F.pow(a, F.p - 1) == 1);
  CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK(F.add(a, F.neg(a)) == 0);
  CHECK(F.sub(0, 1) == F.p - 1);
}
