#pragma once

#include <cstddef>
#include <vector>

#include "usc/field.hpp"

namespace usc {

/// Univariate polynomial in coefficient form. coeffs[i] is the coefficient
/// of x^i; trailing zeros are trimmed so equality is list equality. The zero
/// polynomial is the empty list (degree() returns -1 as sentinel).
struct Poly {
  std::vector<fe> coeffs;

  Poly() = default;
  explicit Poly(std::vector<fe> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  fe at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }

  bool operator==(const Poly& o) const { return coeffs == o.coeffs; }

  fe eval(const Field& F, fe x) const;

  static Poly add(const Field& F, const Poly& a, const Poly& b);
  static Poly sub(const Field& F, const Poly& a, const Poly& b);
  static Poly scale(const Field& F, const Poly& a, fe c);
  static Poly mul(const Field& F, const Poly& a, const Poly& b);  // schoolbook
  /// Quotient and remainder for division by the binomial x^n - c.
  static std::pair<Poly, Poly> divmod_binomial(const Field& F, const Poly& a,
                                               std::size_t n, fe c);
};

/// Values of a degree < 2^k polynomial over the subgroup generated by
/// `generator` (order exactly 2^k), values[i] = f(generator^i).
struct EvalTable {
  std::vector<fe> values;
  fe generator = 1;
  unsigned log_size = 0;

  std::size_t size() const { return values.size(); }

  /// Evaluate the interpolant at an arbitrary point (barycentric form;
  /// exact table lookup when x lies on the domain).
  fe eval_at(const Field& F, fe x) const;
};

// Basis changes. Only used in tests, coefficient extraction and the Aurora
// tail; the reduction provers stay in the value domain.
EvalTable ntt_forward(const Field& F, const Poly& p, unsigned k, fe generator);
Poly ntt_inverse(const Field& F, const EvalTable& t);

/// f(x) = f_ev(x^2) + x * f_od(x^2), splitting coefficients by parity.
std::pair<Poly, Poly> even_odd_split(const Poly& f);

/// Remainder of f modulo x^n - sign (sign = +1 or -1), by folding
/// coefficient blocks.
Poly rem_cyclic(const Field& F, const Poly& f, std::size_t n, int sign);

/// Square/non-square decomposition: f_sq agrees with f on even powers of w,
/// f_no(w^(2i)) = f(w^(2i+1)). Requires deg(f) <= 2^m - 1.
std::pair<Poly, Poly> square_nonsquare_split(const Field& F, const Poly& f,
                                             unsigned m, fe w);

/// ((1+x^(2^(m-1)))/2) f_sq(x) + ((1-x^(2^(m-1)))/2) f_no(w^-1 x).
fe crt_recombine(const Field& F, const Poly& f_sq, const Poly& f_no,
                 unsigned m, fe w, fe x);

/// Multilinear polynomial with f's coefficient vector, evaluated at z
/// (least significant bit is the first variable). O(2^m) folding.
fe mlin_eval(const Field& F, const Poly& f, const std::vector<fe>& z);

/// Multilinear extension of the value vector v over {0,1}^m at z.
fe mlex_eval(const Field& F, std::vector<fe> v, const std::vector<fe>& z);

/// q(x) = x^bound * p(1/x): coefficient reversal against `bound`.
Poly reverse_coefficients(const Poly& p, std::size_t bound);

/// Mixed-radix inverse Kronecker evaluation: variable i has degree
/// 2^(t_i) - 1, coefficients placed by radix offsets b_1 = 1,
/// b_(i+1) = b_i * 2^(t_i).
fe kappa_eval(const Field& F, const Poly& f,
              const std::vector<unsigned>& schedule,
              const std::vector<fe>& point);

}  // namespace usc
