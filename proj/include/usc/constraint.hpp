#pragma once

#include <functional>
#include <string>
#include <vector>

#include "usc/field.hpp"

namespace usc {

/// Black-box constraint polynomial g with declared arity q and total degree
/// d. The evaluator must be a pure polynomial function of degree <= d.
struct Constraint {
  std::string name;
  unsigned arity;   // q
  unsigned degree;  // d
  std::function<fe(const Field&, const std::vector<fe>&)> evaluator;

  fe eval(const Field& F, const std::vector<fe>& args) const;

  /// Values (g_0(a,b), ..., g_d(a,b)) with g(a + t*b) = sum_j t^j g_j(a,b),
  /// obtained by evaluating on the line at t = 0..d and applying the cached
  /// inverse Vandermonde for those abscissae.
  std::vector<fe> line_components(const Field& F, const std::vector<fe>& a,
                                  const std::vector<fe>& b) const;

  /// Built-ins: identity, square, cube, product2, r1cs-row, sum2, cube2.
  static Constraint named(const std::string& name);
  static std::vector<std::string> builtin_names();
};

/// Inverse Vandermonde for abscissae 0..d over F, cached per (p, d).
/// Multiplying a value vector (g(0),...,g(d)) by it yields coefficients.
const std::vector<std::vector<fe>>& inverse_vandermonde(const Field& F,
                                                        unsigned d);

/// Interpolate the value at `x` of the degree-d polynomial with values
/// `vals` at abscissae 0..d.
fe interpolate_at(const Field& F, const std::vector<fe>& vals, fe x);

}  // namespace usc
