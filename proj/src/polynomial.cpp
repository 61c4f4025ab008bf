#include "usc/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace usc {

fe Poly::eval(const Field& F, fe x) const {
  fe acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = F.add(F.mul(acc, x), coeffs[i]);
  return acc;
}

Poly Poly::add(const Field& F, const Poly& a, const Poly& b) {
  std::vector<fe> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.at(i), b.at(i));
  return Poly(std::move(c));
}

Poly Poly::sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<fe> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.at(i), b.at(i));
  return Poly(std::move(c));
}

Poly Poly::scale(const Field& F, const Poly& a, fe c) {
  std::vector<fe> out(a.coeffs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(a.coeffs[i], c);
  return Poly(std::move(out));
}

Poly Poly::mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<fe> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
  return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod_binomial(const Field& F, const Poly& a,
                                            std::size_t n, fe c) {
  // a = q * (x^n - c) + r with deg(r) < n; work top-down on a copy.
  std::vector<fe> work = a.coeffs;
  std::vector<fe> q;
  if (work.size() > n) q.assign(work.size() - n, 0);
  for (std::size_t i = work.size(); i-- > n;) {
    fe coef = work[i];
    if (coef == 0) continue;
    q[i - n] = F.add(q[i - n], coef);
    work[i] = 0;
    work[i - n] = F.add(work[i - n], F.mul(coef, c));
  }
  work.resize(std::min(work.size(), n));
  return {Poly(std::move(q)), Poly(std::move(work))};
}

fe EvalTable::eval_at(const Field& F, fe x) const {
  const std::size_t n = values.size();
  // Domain hit: exact lookup (also keeps r landing on the domain harmless).
  std::vector<fe> pts(n);
  fe g = 1;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = g;
    if (g == x) return values[i];
    g = F.mul(g, generator);
  }
  // f(x) = (x^n - 1)/n * sum_i v_i * g^i / (x - g^i)
  std::vector<fe> diffs(n);
  for (std::size_t i = 0; i < n; ++i) diffs[i] = F.sub(x, pts[i]);
  std::vector<fe> inv = F.batch_inverse(diffs);
  fe acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    acc = F.add(acc, F.mul(F.mul(values[i], pts[i]), inv[i]));
  fe xn = F.pow(x, n);
  fe front = F.mul(F.sub(xn, 1), F.inv(n % F.p));
  return F.mul(front, acc);
}

namespace {

void ntt_in_place(const Field& F, std::vector<fe>& a, fe root) {
  const std::size_t n = a.size();
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    fe wlen = F.pow(root, n / len);
    for (std::size_t i = 0; i < n; i += len) {
      fe w = 1;
      for (std::size_t k = 0; k < len / 2; ++k) {
        fe u = a[i + k];
        fe v = F.mul(a[i + k + len / 2], w);
        a[i + k] = F.add(u, v);
        a[i + k + len / 2] = F.sub(u, v);
        w = F.mul(w, wlen);
      }
    }
  }
}

}  // namespace

EvalTable ntt_forward(const Field& F, const Poly& p, unsigned k, fe generator) {
  const std::size_t n = std::size_t(1) << k;
  if (p.coeffs.size() > n)
    throw std::invalid_argument("ntt_forward: degree exceeds 2^k - 1");
  if (F.pow(generator, n) != 1 || (k >= 1 && F.pow(generator, n / 2) == 1))
    throw std::invalid_argument("ntt_forward: generator order mismatch");
  std::vector<fe> a = p.coeffs;
  a.resize(n, 0);
  ntt_in_place(F, a, generator);
  return EvalTable{std::move(a), generator, k};
}

Poly ntt_inverse(const Field& F, const EvalTable& t) {
  const std::size_t n = t.values.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("ntt_inverse: malformed table");
  std::vector<fe> a = t.values;
  ntt_in_place(F, a, F.inv(t.generator));
  fe ninv = F.inv(n % F.p);
  for (fe& v : a) v = F.mul(v, ninv);
  return Poly(std::move(a));
}

std::pair<Poly, Poly> even_odd_split(const Poly& f) {
  std::vector<fe> ev, od;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    (i % 2 == 0 ? ev : od).push_back(f.coeffs[i]);
  return {Poly(std::move(ev)), Poly(std::move(od))};
}

Poly rem_cyclic(const Field& F, const Poly& f, std::size_t n, int sign) {
  if (n == 0) throw std::invalid_argument("rem_cyclic: n must be >= 1");
  std::vector<fe> out(n, 0);
  fe weight = 1;  // sign^block
  for (std::size_t base = 0; base < f.coeffs.size(); base += n) {
    for (std::size_t i = 0; i < n && base + i < f.coeffs.size(); ++i) {
      fe term = F.mul(f.coeffs[base + i], weight);
      out[i] = F.add(out[i], term);
    }
    if (sign < 0) weight = F.neg(weight);
  }
  return Poly(std::move(out));
}

std::pair<Poly, Poly> square_nonsquare_split(const Field& F, const Poly& f,
                                             unsigned m, fe w) {
  const std::size_t half = std::size_t(1) << (m - 1);
  if (f.coeffs.size() > (std::size_t(1) << m))
    throw std::invalid_argument("square_nonsquare_split: degree too large");
  Poly f_sq = rem_cyclic(F, f, half, +1);
  Poly r = rem_cyclic(F, f, half, -1);
  // f_no(x) = r(w x): coefficient i scaled by w^i
  std::vector<fe> no(r.coeffs.size());
  fe wi = 1;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    no[i] = F.mul(r.coeffs[i], wi);
    wi = F.mul(wi, w);
  }
  return {std::move(f_sq), Poly(std::move(no))};
}

fe crt_recombine(const Field& F, const Poly& f_sq, const Poly& f_no,
                 unsigned m, fe w, fe x) {
  fe xh = F.pow(x, std::size_t(1) << (m - 1));
  fe h = F.half();
  fe a = F.mul(F.add(1, xh), h);
  fe b = F.mul(F.sub(1, xh), h);
  fe lhs = F.mul(a, f_sq.eval(F, x));
  fe rhs = F.mul(b, f_no.eval(F, F.mul(F.inv(w), x)));
  return F.add(lhs, rhs);
}

fe mlin_eval(const Field& F, const Poly& f, const std::vector<fe>& z) {
  std::vector<fe> c = f.coeffs;
  c.resize(std::size_t(1) << z.size(), 0);
  if (f.coeffs.size() > c.size())
    throw std::invalid_argument("mlin_eval: degree exceeds 2^m - 1");
  for (fe zj : z) {
    for (std::size_t i = 0; i < c.size() / 2; ++i)
      c[i] = F.add(c[2 * i], F.mul(zj, c[2 * i + 1]));
    c.resize(c.size() / 2);
  }
  return c.empty() ? 0 : c[0];
}

fe mlex_eval(const Field& F, std::vector<fe> v, const std::vector<fe>& z) {
  if (v.size() != (std::size_t(1) << z.size()))
    throw std::invalid_argument("mlex_eval: length mismatch");
  for (fe zj : z) {
    fe one_minus = F.sub(1, zj);
    for (std::size_t i = 0; i < v.size() / 2; ++i)
      v[i] = F.add(F.mul(one_minus, v[2 * i]), F.mul(zj, v[2 * i + 1]));
    v.resize(v.size() / 2);
  }
  return v.empty() ? 0 : v[0];
}

Poly reverse_coefficients(const Poly& p, std::size_t bound) {
  if (p.coeffs.size() > bound + 1)
    throw std::invalid_argument("reverse_coefficients: degree exceeds bound");
  std::vector<fe> out(bound + 1, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    out[bound - i] = p.coeffs[i];
  return Poly(std::move(out));
}

fe kappa_eval(const Field& F, const Poly& f,
              const std::vector<unsigned>& schedule,
              const std::vector<fe>& point) {
  unsigned total = 0;
  for (unsigned t : schedule) total += t;
  if (point.size() != schedule.size())
    throw std::invalid_argument("kappa_eval: point/schedule length mismatch");
  if ((std::size_t(1) << total) < f.coeffs.size())
    throw std::invalid_argument("kappa_eval: schedule too short");
  std::vector<fe> c = f.coeffs;
  c.resize(std::size_t(1) << total, 0);
  for (std::size_t v = 0; v < schedule.size(); ++v) {
    const std::size_t radix = std::size_t(1) << schedule[v];
    std::vector<fe> next(c.size() / radix);
    for (std::size_t k = 0; k < next.size(); ++k) {
      // Horner over the radix digits of variable v.
      fe acc = 0;
      for (std::size_t j = radix; j-- > 0;)
        acc = F.add(F.mul(acc, point[v]), c[k * radix + j]);
      next[k] = acc;
    }
    c = std::move(next);
  }
  return c[0];
}

}  // namespace usc
