#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace usc {

using fe = std::uint64_t;

/// Odd-prime field with a 2-power subgroup chain. All arithmetic is done
/// through this context; `ops` counts multiplicative/additive operations so
/// prover work can be measured (see Metrics::prover_field_ops).
struct Field {
  fe p;                  // odd prime modulus
  unsigned two_adicity;  // largest nu with 2^nu | p-1
  fe gen2;               // element of multiplicative order exactly 2^nu

  mutable std::uint64_t ops = 0;

  fe add(fe a, fe b) const {
    ++ops;
    fe s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
  }

  fe sub(fe a, fe b) const {
    ++ops;
    return a >= b ? a - b : a + p - b;
  }

  fe neg(fe a) const { return a == 0 ? 0 : p - a; }

  fe mul(fe a, fe b) const {
    ++ops;
    return static_cast<fe>((static_cast<unsigned __int128>(a) * b) % p);
  }

  fe pow(fe base, std::uint64_t e) const {
    fe acc = 1;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  fe inv(fe a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return pow(a, p - 2);
  }

  fe half() const { return inv(2); }

  /// Deterministic primitive 2^m-th root of unity: gen2^(2^(nu-m)).
  fe root_of_unity(unsigned m) const {
    if (m > two_adicity)
      throw std::domain_error("subgroup of size 2^" + std::to_string(m) +
                              " unsupported: field 2-adicity is " +
                              std::to_string(two_adicity));
    return pow(gen2, std::uint64_t(1) << (two_adicity - m));
  }

  /// Elementwise inverses with a single field inversion (Montgomery trick).
  std::vector<fe> batch_inverse(const std::vector<fe>& xs) const {
    std::vector<fe> out(xs.size());
    fe acc = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] == 0)
        throw std::domain_error("batch_inverse: zero element at index " +
                                std::to_string(i));
      out[i] = acc;
      acc = mul(acc, xs[i]);
    }
    acc = inv(acc);
    for (std::size_t i = xs.size(); i-- > 0;) {
      out[i] = mul(out[i], acc);
      acc = mul(acc, xs[i]);
    }
    return out;
  }

  bool operator==(const Field& o) const { return p == o.p; }

  // p = 17, nu = 4. 6 has order 16 mod 17, so root_of_unity(2) = 4.
  static Field f17() { return Field{17, 4, 6}; }

  // Goldilocks p = 2^64 - 2^32 + 1, nu = 32. 7 generates the full
  // multiplicative group; project it down to the order-2^32 subgroup.
  static Field goldilocks() {
    Field f{0xffffffff00000001ull, 32, 7};
    f.gen2 = f.pow(7, (f.p - 1) >> 32);
    f.ops = 0;
    return f;
  }

  static Field from_name(const std::string& name) {
    if (name == "f17") return f17();
    if (name == "f64") return goldilocks();
    throw std::invalid_argument("unknown field: " + name);
  }
};

/// Captures the field-op delta of a scope and adds it to a counter.
/// Protocol provers wrap their work in one of these; verifier work stays
/// outside so prover_field_ops reflects prover cost only.
class OpSection {
 public:
  OpSection(const Field& f, std::uint64_t& sink)
      : f_(f), sink_(sink), start_(f.ops) {}
  ~OpSection() { sink_ += f_.ops - start_; }
  OpSection(const OpSection&) = delete;
  OpSection& operator=(const OpSection&) = delete;

 private:
  const Field& f_;
  std::uint64_t& sink_;
  std::uint64_t start_;
};

}  // namespace usc
