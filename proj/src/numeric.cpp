#include "realset/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace realset {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::AlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::BlowUp: return "BLOW_UP";
    case ErrorCode::ValidationFailed: return "VALIDATION_FAILED";
    case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// Base

Base::Base(std::uint32_t value) : value_(value) {
  if (value < 2) throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
  std::uint32_t n = value;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes_.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes_.push_back(n);
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt l = a.num_ * b.den_;
  BigInt r = b.num_ * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'"); };
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  if (!all_digits(num_text)) throw fail();
  BigInt num{std::string(num_text)};
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    std::string_view den_text = body.substr(slash + 1);
    if (!all_digits(den_text)) throw fail();
    den = BigInt(std::string(den_text));
    if (den == 0) throw fail();
  }
  return Rational(negative ? BigInt(-num) : num, den);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

BigInt ipow(std::uint32_t base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Rational pow(const Rational& x, int exponent) {
  Rational result(1);
  Rational b = exponent >= 0 ? x : Rational(1) / x;
  unsigned e = static_cast<unsigned>(exponent >= 0 ? exponent : -exponent);
  while (e > 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------------------
// UPWord

void UPWord::validate() const {
  const Digit r = base.value();
  auto check = [&](const std::vector<Digit>& ds) {
    for (Digit d : ds)
      if (d >= r) throw Error(ErrorCode::InvalidArgument, "digit " + std::to_string(d) + " out of range");
  };
  check(int_digits);
  check(frac_prefix);
  check(frac_period);
  if (int_digits.empty()) throw Error(ErrorCode::InvalidArgument, "empty integer part");
  if (int_digits[0] != 0 && int_digits[0] != r - 1)
    throw Error(ErrorCode::InvalidArgument, "sign digit must be 0 or r-1");
  if (frac_period.empty()) throw Error(ErrorCode::InvalidArgument, "empty period");
}

UPWord& UPWord::canonicalize() {
  const std::size_t n = frac_period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = frac_period[i] == frac_period[i - d];
    if (repeats) {
      frac_period.resize(d);
      break;
    }
  }
  while (!frac_prefix.empty() && frac_prefix.back() == frac_period.back()) {
    frac_prefix.pop_back();
    std::rotate(frac_period.rbegin(), frac_period.rbegin() + 1, frac_period.rend());
  }
  return *this;
}

UPWord make_word(Base base, std::vector<Digit> int_digits, std::vector<Digit> frac_prefix,
                 std::vector<Digit> frac_period) {
  UPWord w{base, std::move(int_digits), std::move(frac_prefix), std::move(frac_period)};
  w.validate();
  w.canonicalize();
  return w;
}

namespace {

void append_digits(std::string& out, const std::vector<Digit>& ds, bool dotted) {
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (dotted && i > 0) out += '.';
    out += std::to_string(ds[i]);
  }
}

constexpr std::string_view kStar = "\xE2\x8B\x86";   // ⋆
constexpr std::string_view kOmega = "\xCF\x89";      // ω

std::vector<Digit> parse_digits(std::string_view s, Base base, bool dotted) {
  std::vector<Digit> out;
  if (s.empty()) return out;
  auto bad = [&] { return Error(ErrorCode::Parse, "malformed digits '" + std::string(s) + "'"); };
  if (!dotted) {
    for (char c : s) {
      if (c < '0' || c > '9') throw bad();
      out.push_back(static_cast<Digit>(c - '0'));
    }
  } else {
    std::size_t start = 0;
    while (true) {
      auto dot = s.find('.', start);
      std::string_view tok = s.substr(start, dot == std::string_view::npos ? s.npos : dot - start);
      Digit d = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) throw bad();
      out.push_back(d);
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  }
  for (Digit d : out)
    if (d >= base.value()) throw Error(ErrorCode::Parse, "digit " + std::to_string(d) + " out of range");
  return out;
}

}  // namespace

std::string UPWord::str() const {
  const bool dotted = base.value() > 10;
  std::string out;
  append_digits(out, int_digits, dotted);
  out += kStar;
  append_digits(out, frac_prefix, dotted);
  out += '(';
  append_digits(out, frac_period, dotted);
  out += ')';
  out += kOmega;
  return out;
}

std::ostream& operator<<(std::ostream& os, const UPWord& w) { return os << w.str(); }

UPWord UPWord::parse(std::string_view text, Base base) {
  auto fail = [&](const char* why) {
    return Error(ErrorCode::Parse, std::string(why) + " in word '" + std::string(text) + "'");
  };
  std::size_t star_len = 0;
  std::size_t star = text.find(kStar);
  if (star != std::string_view::npos) {
    star_len = kStar.size();
  } else {
    star = text.find('*');
    star_len = 1;
  }
  if (star == std::string_view::npos) throw fail("missing separator");
  std::string_view rest = text.substr(star + star_len);
  auto open = rest.find('(');
  auto close = rest.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw fail("missing period");
  std::string_view tail = rest.substr(close + 1);
  if (!tail.empty() && tail.front() == '^') tail.remove_prefix(1);
  if (tail != kOmega && tail != "w") throw fail("missing omega marker");
  const bool dotted = base.value() > 10;
  std::string_view prefix = rest.substr(0, open);
  if (dotted && !prefix.empty() && prefix.back() == '.') prefix.remove_suffix(1);
  UPWord w{base, parse_digits(text.substr(0, star), base, dotted), parse_digits(prefix, base, dotted),
           parse_digits(rest.substr(open + 1, close - open - 1), base, dotted)};
  w.validate();
  return w.canonicalize();
}

// ---------------------------------------------------------------------------
// Encoding and decoding

namespace {

/// Value of a digit string read as a natural number, most significant first.
BigInt natural_value(const std::vector<Digit>& ds, std::uint32_t r) {
  BigInt v = 0;
  for (Digit d : ds) v = v * r + d;
  return v;
}

/// r's complement value of a digit string whose first digit is the sign digit.
BigInt complement_value(const std::vector<Digit>& ds, std::uint32_t r) {
  BigInt v = natural_value(ds, r);
  if (ds.front() == r - 1) v -= ipow(r, static_cast<unsigned>(ds.size()));
  return v;
}

}  // namespace

Rational decode_word(const UPWord& w) {
  w.validate();
  const std::uint32_t r = w.base.value();
  // (r-1) followed by digits of n in r's complement is n - r^p.
  BigInt int_value = complement_value(w.int_digits, r);
  BigInt scale = ipow(r, static_cast<unsigned>(w.frac_prefix.size()));
  Rational prefix(natural_value(w.frac_prefix, r), scale);
  BigInt period_den = ipow(r, static_cast<unsigned>(w.frac_period.size())) - 1;
  Rational periodic(natural_value(w.frac_period, r), period_den * scale);
  return Rational(int_value, 1) + prefix + periodic;
}

std::vector<Digit> integer_digits(const BigInt& n, Base base, std::size_t min_len) {
  const std::uint32_t r = base.value();
  std::size_t p = std::max<std::size_t>(min_len, 1);
  // need -r^(p-1) <= n < r^(p-1)
  while (true) {
    BigInt bound = ipow(r, static_cast<unsigned>(p - 1));
    if (-bound <= n && n < bound) break;
    ++p;
  }
  BigInt m = n;
  if (m < 0) m += ipow(r, static_cast<unsigned>(p));
  std::vector<Digit> ds(p, 0);
  for (std::size_t i = p; i-- > 0;) {
    ds[i] = static_cast<Digit>(static_cast<std::uint32_t>(m % r));
    m /= r;
  }
  return ds;
}

UPWord encode_rational(const Rational& x, Base base) {
  const std::uint32_t r = base.value();
  BigInt n = x.floor();
  Rational frac = x - Rational(n, 1);
  UPWord w;
  w.base = base;
  w.int_digits = integer_digits(n, base);
  // long division of frac.num / frac.den; remainders determine the digit sequence
  const BigInt& den = frac.den();
  BigInt rem = frac.num();
  std::map<BigInt, std::size_t> seen;
  std::vector<Digit> digits;
  while (true) {
    auto [it, inserted] = seen.emplace(rem, digits.size());
    if (!inserted) {
      w.frac_prefix.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
      w.frac_period.assign(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
      break;
    }
    rem *= r;
    digits.push_back(static_cast<Digit>(static_cast<std::uint32_t>(rem / den)));
    rem %= den;
  }
  return w.canonicalize();
}

std::optional<UPWord> dual_of(const UPWord& w) {
  w.validate();
  const Digit top = w.base.max_digit();
  const bool zero_tail = w.frac_period.size() == 1 && w.frac_period[0] == 0;
  const bool top_tail = w.frac_period.size() == 1 && w.frac_period[0] == top;
  if (!zero_tail && !top_tail) return std::nullopt;
  if (zero_tail && top_tail) return std::nullopt;  // unreachable for r >= 2

  std::vector<Digit> all = w.int_digits;
  all.insert(all.end(), w.frac_prefix.begin(), w.frac_prefix.end());
  const std::size_t len = all.size();
  BigInt n = complement_value(all, w.base.value());
  BigInt bound = ipow(w.base.value(), static_cast<unsigned>(len - 1));
  BigInt m = zero_tail ? BigInt(n - 1) : BigInt(n + 1);
  if (m < -bound || m >= bound) return std::nullopt;
  std::vector<Digit> ds = integer_digits(m, w.base, len);
  UPWord out;
  out.base = w.base;
  out.int_digits.assign(ds.begin(), ds.begin() + static_cast<std::ptrdiff_t>(w.int_digits.size()));
  out.frac_prefix.assign(ds.begin() + static_cast<std::ptrdiff_t>(w.int_digits.size()), ds.end());
  out.frac_period = {zero_tail ? top : Digit{0}};
  return out.canonicalize();
}

// ---------------------------------------------------------------------------
// Number theory

BigInt multiplicative_order(const BigInt& a, const BigInt& m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  BigInt am = a % m;
  if (am < 0) am += m;
  if (boost::multiprecision::gcd(am, m) != 1 && m != 1)
    throw Error(ErrorCode::InvalidArgument, "gcd(a, m) != 1");
  if (m == 1) return 1;
  BigInt e = 1;
  BigInt x = am;
  while (x != 1) {
    x = (x * am) % m;
    ++e;
  }
  return e;
}

PeriodLengths period_lengths(Base r, Base s, unsigned k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const auto& rp = r.prime_factors();
  const bool has_foreign = std::any_of(s.prime_factors().begin(), s.prime_factors().end(), [&](auto p) {
    return std::find(rp.begin(), rp.end(), p) == rp.end();
  });
  if (!has_foreign)
    throw Error(ErrorCode::InvalidArgument, "s must have a prime factor not dividing r");
  BigInt n = ipow(s.value(), k);
  std::uint64_t v = 0;
  while (true) {
    BigInt g = boost::multiprecision::gcd(n, BigInt(r.value()));
    if (g == 1) break;
    n /= g;
    ++v;
  }
  BigInt u = multiplicative_order(BigInt(r.value()), n);
  return {v, static_cast<std::uint64_t>(u)};
}

bool multiplicatively_dependent(Base r, Base s, unsigned max_exp) {
  for (unsigned p = 1; p <= max_exp; ++p)
    for (unsigned q = 1; q <= max_exp; ++q)
      if (ipow(r.value(), p) == ipow(s.value(), q)) return true;
  return false;
}

std::optional<PowerRatio> find_power_ratio(Base r, Base s, const Rational& lo, const Rational& hi,
                                           unsigned max_exp) {
  if (!(Rational(0) < lo && lo < hi)) throw Error(ErrorCode::InvalidArgument, "need 0 < lo < hi");
  if (multiplicatively_dependent(r, s, max_exp))
    throw Error(ErrorCode::InvalidArgument, "bases are multiplicatively dependent");
  std::vector<BigInt> sp(max_exp + 1);
  for (unsigned j = 1; j <= max_exp; ++j) sp[j] = ipow(s.value(), j);
  for (unsigned i = 1; i <= max_exp; ++i) {
    BigInt ri = ipow(r.value(), i);
    for (unsigned j = 1; j <= max_exp; ++j) {
      // lo < ri / sj < hi with positive denominators
      if (ri * lo.den() > lo.num() * sp[j] && ri * hi.den() < hi.num() * sp[j]) return PowerRatio{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace realset
