#pragma once

// Exact rationals and ultimately periodic base-r encodings of them.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realset/error.hpp"

namespace realset {

using BigInt = boost::multiprecision::cpp_int;
using Digit = std::uint32_t;

class Base {
 public:
  explicit Base(std::uint32_t value);

  std::uint32_t value() const noexcept { return value_; }
  const std::vector<std::uint32_t>& prime_factors() const noexcept { return primes_; }
  Digit max_digit() const noexcept { return value_ - 1; }

  bool same_prime_factors(const Base& other) const { return primes_ == other.primes_; }

  friend bool operator==(const Base& a, const Base& b) { return a.value_ == b.value_; }

 private:
  std::uint32_t value_;
  std::vector<std::uint32_t> primes_;
};

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
  Rational(BigInt num, BigInt den);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  /// Greatest integer not above the value.
  BigInt floor() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" for integers.
  std::string str() const;
  /// Accepts "p", "-p", "p/q"; q must be positive.
  static Rational parse(std::string_view text);

 private:
  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

Rational abs(const Rational& x);
Rational pow(const Rational& x, int exponent);
BigInt ipow(std::uint32_t base, unsigned exponent);

/// Ultimately periodic base-r word  int_digits ⋆ frac_prefix (frac_period)^ω.
/// int_digits[0] is the sign digit (0 or r-1).
struct UPWord {
  Base base{2};
  std::vector<Digit> int_digits;
  std::vector<Digit> frac_prefix;
  std::vector<Digit> frac_period;

  /// Checks digit ranges, sign digit and nonempty parts; throws on violation.
  void validate() const;
  /// Makes the period primitive and folds redundant prefix digits into it.
  UPWord& canonicalize();

  /// Text form, e.g. "05⋆5(0)ω" or "0.11⋆(3.4)ω" for bases above 10.
  std::string str() const;
  static UPWord parse(std::string_view text, Base base);

  friend bool operator==(const UPWord& a, const UPWord& b) {
    return a.base == b.base && a.int_digits == b.int_digits && a.frac_prefix == b.frac_prefix &&
           a.frac_period == b.frac_period;
  }
};

std::ostream& operator<<(std::ostream& os, const UPWord& w);

UPWord make_word(Base base, std::vector<Digit> int_digits, std::vector<Digit> frac_prefix,
                 std::vector<Digit> frac_period);

Rational decode_word(const UPWord& w);

/// Canonical low encoding: shortest legal integer part, tail (0)^ω preferred.
UPWord encode_rational(const Rational& x, Base base);

/// Integer part digits of n in r's complement, padded to at least `min_len` digits.
std::vector<Digit> integer_digits(const BigInt& n, Base base, std::size_t min_len = 1);

/// The other encoding of the same value with the same integer-part length, if any.
std::optional<UPWord> dual_of(const UPWord& w);

/// Least e >= 1 with a^e = 1 (mod m).
BigInt multiplicative_order(const BigInt& a, const BigInt& m);

struct PeriodLengths {
  std::uint64_t preperiod_len;
  std::uint64_t period_len;
  friend bool operator==(const PeriodLengths&, const PeriodLengths&) = default;
};

/// Smallest (v, u) such that s^k divides r^v (r^u - 1).
PeriodLengths period_lengths(Base r, Base s, unsigned k);

/// r^p == s^q for some 1 <= p, q <= max_exp.
bool multiplicatively_dependent(Base r, Base s, unsigned max_exp);

struct PowerRatio {
  unsigned i;
  unsigned j;
  friend bool operator==(const PowerRatio&, const PowerRatio&) = default;
};

/// Exponents 1 <= i, j <= max_exp with lo < r^i / s^j < hi; i is scanned first, then j.
std::optional<PowerRatio> find_power_ratio(Base r, Base s, const Rational& lo, const Rational& hi,
                                           unsigned max_exp);

}  // namespace realset
