#include "usc/constraint.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace usc {

fe Constraint::eval(const Field& F, const std::vector<fe>& args) const {
  if (args.size() != arity)
    throw std::invalid_argument("constraint " + name + ": arity mismatch");
  return evaluator(F, args);
}

const std::vector<std::vector<fe>>& inverse_vandermonde(const Field& F,
                                                        unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<fe, unsigned>, std::vector<std::vector<fe>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(F.p, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (F.p <= d)
    throw std::domain_error("field too small for degree-" + std::to_string(d) +
                            " line interpolation");
  const unsigned n = d + 1;
  // Gaussian elimination on [V | I] with V[i][j] = i^j.
  std::vector<std::vector<fe>> aug(n, std::vector<fe>(2 * n, 0));
  for (unsigned i = 0; i < n; ++i) {
    fe x = 1;
    for (unsigned j = 0; j < n; ++j) {
      aug[i][j] = x;
      x = F.mul(x, i);
    }
    aug[i][n + i] = 1;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (aug[piv][col] == 0) ++piv;
    std::swap(aug[col], aug[piv]);
    fe pinv = F.inv(aug[col][col]);
    for (auto& v : aug[col]) v = F.mul(v, pinv);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      fe factor = aug[r][col];
      for (unsigned c = 0; c < 2 * n; ++c)
        aug[r][c] = F.sub(aug[r][c], F.mul(factor, aug[col][c]));
    }
  }
  std::vector<std::vector<fe>> inv(n, std::vector<fe>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return cache.emplace(key, std::move(inv)).first->second;
}

std::vector<fe> Constraint::line_components(const Field& F,
                                            const std::vector<fe>& a,
                                            const std::vector<fe>& b) const {
  const unsigned d = degree;
  const auto& vinv = inverse_vandermonde(F, d);
  std::vector<fe> vals(d + 1);
  std::vector<fe> pt(arity);
  for (unsigned t = 0; t <= d; ++t) {
    for (unsigned k = 0; k < arity; ++k)
      pt[k] = F.add(a[k], F.mul(t, b[k]));
    vals[t] = eval(F, pt);
  }
  std::vector<fe> comps(d + 1, 0);
  for (unsigned i = 0; i <= d; ++i)
    for (unsigned t = 0; t <= d; ++t)
      comps[i] = F.add(comps[i], F.mul(vinv[i][t], vals[t]));
  return comps;
}

fe interpolate_at(const Field& F, const std::vector<fe>& vals, fe x) {
  const std::size_t n = vals.size();
  if (F.p < n)
    throw std::domain_error("field too small for interpolation nodes 0..n-1");
  if (x < n) return vals[static_cast<std::size_t>(x)];
  // Lagrange over consecutive nodes 0..n-1 with prefix/suffix products.
  std::vector<fe> prefix(n + 1, 1), suffix(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i)
    prefix[i + 1] = F.mul(prefix[i], F.sub(x, i));
  for (std::size_t i = n; i-- > 0;)
    suffix[i] = F.mul(suffix[i + 1], F.sub(x, i));
  std::vector<fe> fact(n, 1);
  for (std::size_t i = 1; i < n; ++i) fact[i] = F.mul(fact[i - 1], i);
  fe acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fe num = F.mul(prefix[i], suffix[i + 1]);
    fe den = F.mul(fact[i], fact[n - 1 - i]);
    fe term = F.mul(vals[i], F.mul(num, F.inv(den)));
    if ((n - 1 - i) % 2 == 1) term = F.neg(term);
    acc = F.add(acc, term);
  }
  return acc;
}

Constraint Constraint::named(const std::string& name) {
  auto make = [&](unsigned q, unsigned d, auto fn) {
    return Constraint{name, q, d, fn};
  };
  if (name == "identity")
    return make(1, 1, [](const Field&, const std::vector<fe>& a) {
      return a[0];
    });
  if (name == "square")
    return make(1, 2, [](const Field& F, const std::vector<fe>& a) {
      return F.mul(a[0], a[0]);
    });
  if (name == "cube")
    return make(1, 3, [](const Field& F, const std::vector<fe>& a) {
      return F.mul(a[0], F.mul(a[0], a[0]));
    });
  if (name == "product2")
    return make(2, 2, [](const Field& F, const std::vector<fe>& a) {
      return F.mul(a[0], a[1]);
    });
  if (name == "r1cs-row")
    return make(3, 2, [](const Field& F, const std::vector<fe>& a) {
      return F.sub(F.mul(a[0], a[1]), a[2]);
    });
  if (name == "sum2")
    return make(2, 1, [](const Field& F, const std::vector<fe>& a) {
      return F.add(a[0], a[1]);
    });
  if (name == "cube2")  // x^2 * y, degree 3 in two variables
    return make(2, 3, [](const Field& F, const std::vector<fe>& a) {
      return F.mul(F.mul(a[0], a[0]), a[1]);
    });
  throw std::invalid_argument("unknown constraint: " + name);
}

std::vector<std::string> Constraint::builtin_names() {
  return {"identity", "square",  "cube", "product2",
          "r1cs-row", "sum2",    "cube2"};
}

}  // namespace usc
