#include <numeric>

#include "realset/arith.hpp"

namespace realset {

const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "=";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
  }
  return "?";
}

namespace {

constexpr long long kMaxBound = 5'000'000;

long long to_ll(const BigInt& v) {
  if (boost::multiprecision::abs(v) > kMaxBound) throw Error(ErrorCode::BlowUp, "atom coefficients too large");
  return static_cast<long long>(v);
}

}  // namespace

RNA atomic_linear(const std::vector<Rational>& coeffs, Cmp cmp, const Rational& c, Base base) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "atom needs at least one coefficient");
  const unsigned n = static_cast<unsigned>(coeffs.size());
  Alphabet al(base, n);
  // clear denominators so the partial remainders stay integral
  BigInt l = c.den();
  for (const auto& a : coeffs) l = boost::multiprecision::lcm(l, a.den());
  std::vector<long long> a(n);
  for (unsigned i = 0; i < n; ++i) a[i] = to_ll(coeffs[i].num() * (l / coeffs[i].den()));
  const long long cc = to_ll(c.num() * (l / c.den()));
  long long sum_abs = 0, lo_f = 0, hi_f = 0;
  for (long long x : a) {
    sum_abs += std::llabs(x);
    (x < 0 ? lo_f : hi_f) += x;
  }
  if (sum_abs == 0) {
    bool holds = cmp == Cmp::Lt ? 0 < cc : cmp == Cmp::Le ? 0 <= cc : cmp == Cmp::Eq ? cc == 0
                 : cmp == Cmp::Ge ? 0 >= cc : 0 > cc;
    auto v = validity_automaton(base, n);
    return holds ? v : complement_set(v);
  }
  const long long bound = std::llabs(cc) + sum_abs;
  if (bound > kMaxBound) throw Error(ErrorCode::BlowUp, "atom remainder range too large");
  const long long r = base.value();

  AutomatonBuilder b(al);
  const State init = b.add_state();
  const State int_base = static_cast<State>(b.num_states());
  for (long long g = -bound; g <= bound; ++g) b.add_state();
  const State gt_int = b.add_state(), lt_int = b.add_state();
  const State frac_base = static_cast<State>(b.num_states());
  for (long long d = lo_f; d <= hi_f; ++d) b.add_state();
  const State gt_frac = b.add_state(), lt_frac = b.add_state();
  b.set_initial(init);
  auto int_state = [&](long long g) {
    if (g > bound) return gt_int;
    if (g < -bound) return lt_int;
    return static_cast<State>(int_base + (g + bound));
  };
  // remaining difference c - value; above the fractional range the value is below c
  auto frac_state = [&](long long d) {
    if (d > hi_f) return lt_frac;
    if (d < lo_f) return gt_frac;
    return static_cast<State>(frac_base + (d - lo_f));
  };

  const Symbol digits = al.digit_symbols();
  std::vector<long long> weight(digits);
  std::vector<bool> sign_symbol(digits);
  for (Symbol s = 0; s < digits; ++s) {
    auto ds = al.decode(s);
    long long w = 0, sw = 0;
    bool sign_ok = true;
    for (unsigned i = 0; i < n; ++i) {
      w += a[i] * ds[i];
      if (ds[i] == base.max_digit()) sw -= a[i];
      else if (ds[i] != 0) sign_ok = false;
    }
    weight[s] = w;
    sign_symbol[s] = sign_ok;
    if (sign_ok) b.set_transition(init, s, int_state(sw));
  }
  for (long long g = -bound; g <= bound; ++g) {
    State q = int_state(g);
    for (Symbol s = 0; s < digits; ++s) b.set_transition(q, s, int_state(r * g + weight[s]));
    b.set_transition(q, al.separator(), frac_state(cc - g));
  }
  for (Symbol s = 0; s < digits; ++s) {
    b.set_transition(gt_int, s, gt_int);
    b.set_transition(lt_int, s, lt_int);
    b.set_transition(gt_frac, s, gt_frac);
    b.set_transition(lt_frac, s, lt_frac);
  }
  b.set_transition(gt_int, al.separator(), gt_frac);
  b.set_transition(lt_int, al.separator(), lt_frac);
  for (long long d = lo_f; d <= hi_f; ++d) {
    State q = frac_state(d);
    for (Symbol s = 0; s < digits; ++s) b.set_transition(q, s, frac_state(r * d - weight[s]));
  }
  const bool eq_ok = cmp == Cmp::Le || cmp == Cmp::Eq || cmp == Cmp::Ge;
  std::vector<bool> acc(b.num_states(), false);
  for (long long d = lo_f; d <= hi_f; ++d) acc[frac_state(d)] = eq_ok;
  acc[lt_frac] = cmp == Cmp::Lt || cmp == Cmp::Le;
  acc[gt_frac] = cmp == Cmp::Gt || cmp == Cmp::Ge;
  return {minimize_weak(b.build(Acceptance::weak(acc))), true};
}

RNA integrality(Base base) {
  Alphabet al(base, 1);
  AutomatonBuilder b(al);
  State init = b.add_state(), in_int = b.add_state(), frac = b.add_state(), zeros = b.add_state(),
        tops = b.add_state();
  b.set_initial(init);
  const Digit top = base.max_digit();
  for (Digit d = 0; d <= top; ++d) b.set_transition(in_int, al.uniform(d), in_int);
  b.set_transition(init, al.uniform(0), in_int);
  b.set_transition(init, al.uniform(top), in_int);
  b.set_transition(in_int, al.separator(), frac);
  b.set_transition(frac, al.uniform(0), zeros);
  b.set_transition(frac, al.uniform(top), tops);
  b.set_transition(zeros, al.uniform(0), zeros);
  b.set_transition(tops, al.uniform(top), tops);
  std::vector<bool> acc(b.num_states(), false);
  acc[zeros] = acc[tops] = true;
  return {minimize_weak(b.build(Acceptance::weak(acc))), true};
}

RNA project(const RNA& r, unsigned track) {
  if (track >= r.arity()) throw Error(ErrorCode::InvalidArgument, "track out of range");
  if (r.arity() < 2) throw Error(ErrorCode::InvalidArgument, "cannot project away the only track");
  std::vector<unsigned> keep;
  for (unsigned i = 0; i < r.arity(); ++i)
    if (i != track) keep.push_back(i);
  return project_tracks(r, keep);
}

}  // namespace realset
