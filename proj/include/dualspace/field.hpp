#pragma once

// Exact scalars over a prime field GF(p) or the rationals.
//
// A Scalar carries its FieldSpec; arithmetic across fields raises
// FieldMismatch.
// GF(p) values are canonical residues in [0, p); rationals are kept in
// lowest terms with a positive denominator, so structural equality is
// value equality in both regimes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "dualspace/error.hpp"

namespace dualspace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldSpec {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  /// GF(p). Requires 2 <= p < 2^31 and p prime.
  static FieldSpec prime(std::uint64_t p) {
    if (p < 2 || p >= kMaxModulus) {
      fail(ErrorKind::InvalidArgument, "modulus " + std::to_string(p) + " outside [2, 2^31)");
    }
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    return FieldSpec(static_cast<std::uint32_t>(p));
  }

  static FieldSpec rationals() { return FieldSpec(0); }

  /// Accepts "GF(p)" or "QQ".
  static FieldSpec parse(std::string_view text) {
    if (text == "QQ") return rationals();
    if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
      auto digits = text.substr(3, text.size() - 4);
      if (digits.empty() || digits.size() > 10) fail(ErrorKind::InvalidArgument, "bad field: " + std::string(text));
      std::uint64_t p = 0;
      for (char c : digits) {
        if (c < '0' || c > '9') fail(ErrorKind::InvalidArgument, "bad field: " + std::string(text));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return prime(p);
    }
    fail(ErrorKind::InvalidArgument, "bad field: " + std::string(text));
  }

  bool is_prime_field() const noexcept { return modulus_ != 0; }
  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  std::string to_string() const {
    return is_rational() ? std::string("QQ") : "GF(" + std::to_string(modulus_) + ")";
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  static constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  explicit FieldSpec(std::uint32_t modulus) : modulus_(modulus) {}

  std::uint32_t modulus_;  // 0 encodes QQ
};

inline void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a != b) fail(ErrorKind::FieldMismatch, a.to_string() + " vs " + b.to_string());
}

class Scalar {
 public:
  static Scalar zero(FieldSpec spec) { return from_int(spec, 0); }
  static Scalar one(FieldSpec spec) { return from_int(spec, 1); }

  static Scalar from_int(FieldSpec spec, std::int64_t v) {
    if (spec.is_rational()) return Scalar(spec, Rational(v));
    const auto p = static_cast<std::int64_t>(spec.modulus());
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return Scalar(spec, static_cast<std::uint32_t>(r));
  }

  /// Rational n/d, reduced. Requires spec = QQ and d != 0.
  static Scalar rational(FieldSpec spec, const BigInt& num, const BigInt& den) {
    if (!spec.is_rational()) fail(ErrorKind::FieldMismatch, "rational value for " + spec.to_string());
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    return den < 0 ? Scalar(spec, Rational(BigInt(-num), BigInt(-den))) : Scalar(spec, Rational(num, den));
  }

  const FieldSpec& spec() const noexcept { return spec_; }

  bool is_zero() const {
    if (spec_.is_rational()) return boost::multiprecision::numerator(std::get<Rational>(value_)).is_zero();
    return std::get<std::uint32_t>(value_) == 0;
  }

  bool is_one() const {
    if (spec_.is_rational()) {
      const auto& q = std::get<Rational>(value_);
      return boost::multiprecision::numerator(q) == 1 && boost::multiprecision::denominator(q) == 1;
    }
    return std::get<std::uint32_t>(value_) == 1;
  }

  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  const Rational& rational_value() const { return std::get<Rational>(value_); }
  BigInt numerator() const {
    return spec_.is_rational() ? BigInt(boost::multiprecision::numerator(rational_value())) : BigInt(residue());
  }
  BigInt denominator() const {
    return spec_.is_rational() ? BigInt(boost::multiprecision::denominator(rational_value())) : BigInt(1);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_field(a.spec_, b.spec_);
    if (a.spec_.is_rational()) return Scalar(a.spec_, a.rational_value() + b.rational_value());
    const std::uint64_t s = std::uint64_t{a.residue()} + b.residue();
    const std::uint64_t p = a.spec_.modulus();
    return Scalar(a.spec_, static_cast<std::uint32_t>(s >= p ? s - p : s));
  }

  friend Scalar operator-(const Scalar& a) {
    if (a.spec_.is_rational()) return Scalar(a.spec_, Rational(-a.rational_value()));
    const std::uint32_t r = a.residue();
    return Scalar(a.spec_, r == 0 ? 0u : a.spec_.modulus() - r);
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_field(a.spec_, b.spec_);
    if (a.spec_.is_rational()) return Scalar(a.spec_, a.rational_value() * b.rational_value());
    const std::uint64_t prod = std::uint64_t{a.residue()} * b.residue();
    return Scalar(a.spec_, static_cast<std::uint32_t>(prod % a.spec_.modulus()));
  }

  Scalar inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in " + spec_.to_string());
    if (spec_.is_rational()) return Scalar(spec_, Rational(1) / rational_value());
    // Extended Euclid on (r, p); p prime so gcd = 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = spec_.modulus(), new_r = residue();
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += spec_.modulus();
    return Scalar(spec_, static_cast<std::uint32_t>(t));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Rationals are kept reduced, so equal values have equal parts. Comparing
  // the parts avoids the division-based ordering of cpp_rational.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.spec_ != b.spec_) return false;
    if (!a.spec_.is_rational()) return std::get<std::uint32_t>(a.value_) == std::get<std::uint32_t>(b.value_);
    const auto& x = a.rational_value();
    const auto& y = b.rational_value();
    return boost::multiprecision::numerator(x) == boost::multiprecision::numerator(y) &&
           boost::multiprecision::denominator(x) == boost::multiprecision::denominator(y);
  }

  /// Decimal residue for GF(p); "n" or "n/d" for QQ.
  std::string to_string() const {
    if (!spec_.is_rational()) return std::to_string(residue());
    const auto& q = rational_value();
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1) s += "/" + boost::multiprecision::denominator(q).str();
    return s;
  }

  /// Inverse of to_string. GF(p) input must already be a residue in [0, p);
  /// rational input is reduced to lowest terms.
  static Scalar parse(FieldSpec spec, std::string_view text) {
    auto bad = [&](const std::string& why) -> Scalar {
      fail(ErrorKind::InvalidArgument, "bad scalar '" + std::string(text) + "': " + why);
    };
    auto all_digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    };
    if (!spec.is_rational()) {
      if (!all_digits(text) || text.size() > 10) return bad("expected a decimal residue");
      const std::uint64_t v = std::stoull(std::string(text));
      if (v >= spec.modulus()) return bad("residue not below " + std::to_string(spec.modulus()));
      return Scalar(spec, static_cast<std::uint32_t>(v));
    }
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
      negative = true;
      text.remove_prefix(1);
    }
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    const auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num_text) || !all_digits(den_text)) return bad("expected n or n/d");
    BigInt num{std::string(num_text)};
    BigInt den{std::string(den_text)};
    if (den == 0) return bad("zero denominator");
    if (negative) num = -num;
    return Scalar(spec, Rational(num, den));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  Scalar(FieldSpec spec, std::uint32_t residue) : spec_(spec), value_(residue) {}
  Scalar(FieldSpec spec, Rational q) : spec_(spec), value_(std::move(q)) {}

  FieldSpec spec_;
  std::variant<std::uint32_t, Rational> value_;
};

inline Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar scalar_inv(const Scalar& a) { return a.inverse(); }

}  // namespace dualspace
