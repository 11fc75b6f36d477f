#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "mcm/errors.hpp"

namespace mcm {

/// The prime field GF(p) with p < 2^31 fixed at runtime.
class PrimeField {
 public:
  using Element = std::uint32_t;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw InputError("field characteristic must be a prime below 2^31, got " +
                       std::to_string(p));
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return p_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  bool is_zero(Element a) const noexcept { return a == 0; }

  Element from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element add(Element a, Element b) const noexcept {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw UsageError("inverse of zero in GF(p)");
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return from_int(t);
  }
  Element pow(Element a, std::uint64_t e) const noexcept {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Representative in (-p/2, p/2].
  std::int64_t to_signed(Element a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  std::string to_string(Element a) const { return std::to_string(to_signed(a)); }

  /// A square root of -1 if one exists (p = 2 or p = 1 mod 4).
  bool sqrt_minus_one(Element& out) const noexcept {
    for (Element c = 1; c < p_ && c < 100000; ++c)
      if (mul(c, c) == neg(1)) {
        out = c;
        return true;
      }
    return false;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  static bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_ = 7;
};

/// The rational numbers with arbitrary precision.
class RationalField {
 public:
  using Element = boost::multiprecision::cpp_rational;

  std::uint32_t characteristic() const noexcept { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  bool is_zero(const Element& a) const { return a == 0; }
  Element from_int(std::int64_t v) const { return Element(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw UsageError("inverse of zero in Q");
    return Element(1) / a;
  }
  std::string to_string(const Element& a) const { return a.str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace mcm
