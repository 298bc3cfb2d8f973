#pragma once

// Generators and hand-built automata shared by the test binaries.

#include <filesystem>
#include <random>
#include <unistd.h>

#include "graph.hpp"
#include "realset/automaton.hpp"

namespace testing_support {

using namespace realset;

inline Rational rat(long long p, long long q = 1) { return Rational(BigInt(p), BigInt(q)); }

/// Random complete automaton with `n` states over base^arity digits plus separator.
inline OmegaAutomaton random_automaton(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t n,
                                       AcceptanceKind kind) {
  std::vector<State> delta(n * alphabet.size());
  for (auto& t : delta) t = static_cast<State>(rng() % n);
  std::vector<bool> marked(n);
  for (std::size_t q = 0; q < n; ++q) marked[q] = rng() % 2 == 0;
  switch (kind) {
    case AcceptanceKind::Weak: {
      OmegaAutomaton shape(alphabet, n, 0, delta, Acceptance::weak(marked));
      auto sccs = detail::strongly_connected(detail::successor_lists(shape));
      for (auto& m : sccs.members) {
        bool v = rng() % 2 == 0;
        for (State q : m) marked[q] = v;
      }
      return shape.with_acceptance(Acceptance::weak(marked));
    }
    case AcceptanceKind::Buchi:
      return OmegaAutomaton(alphabet, n, 0, delta, Acceptance::buchi(marked));
    case AcceptanceKind::CoBuchi:
      return OmegaAutomaton(alphabet, n, 0, delta, Acceptance::cobuchi(marked));
    case AcceptanceKind::Muller: {
      OmegaAutomaton shape(alphabet, n, 0, delta, Acceptance::weak(marked));
      std::vector<StateSet> family;
      for (const auto& loop : detail::enumerate_all_loops(shape))
        if (rng() % 2 == 0) family.push_back(loop);
      return shape.with_acceptance(Acceptance::muller(n, family));
    }
  }
  throw std::logic_error("kind");
}

inline OmegaAutomaton universal(const Alphabet& alphabet) {
  AutomatonBuilder b(alphabet);
  State q = b.add_state();
  for (Symbol c = 0; c < alphabet.size(); ++c) b.set_transition(q, c, q);
  return b.build(Acceptance::weak({true}));
}

inline OmegaAutomaton empty_automaton(const Alphabet& alphabet) {
  AutomatonBuilder b(alphabet);
  State q = b.add_state();
  for (Symbol c = 0; c < alphabet.size(); ++c) b.set_transition(q, c, q);
  return b.build(Acceptance::weak({false}));
}

/// Valid single-track encodings whose fractional tail is 0^ω or (t−1)^ω, co-Buchi.
inline OmegaAutomaton tails_automaton(std::uint32_t t) {
  Alphabet al(Base(t), 1);
  AutomatonBuilder b(al);
  State init = b.add_state(), in_int = b.add_state(), frac = b.add_state(), other = b.add_state();
  State zero_new = b.add_state(), top_new = b.add_state(), zero = b.add_state(), top = b.add_state();
  b.set_initial(init);
  for (Digit d = 0; d < t; ++d) {
    Symbol s = al.uniform(d);
    if (d == 0 || d == t - 1) b.set_transition(init, s, in_int);
    b.set_transition(in_int, s, in_int);
    for (State q : {frac, other, zero_new, top_new, zero, top}) {
      State to = other;
      if (d == 0) to = (q == zero || q == zero_new) ? zero : zero_new;
      if (d == t - 1) to = (q == top || q == top_new) ? top : top_new;
      b.set_transition(q, s, to);
    }
  }
  b.set_transition(in_int, al.separator(), frac);
  std::vector<bool> rejecting(b.num_states(), true);
  rejecting[zero] = rejecting[top] = false;
  return b.build(Acceptance::cobuchi(rejecting));
}

/// Oracle: does the fractional tail of a single-track lasso consist of one digit repeated?
inline bool constant_tail(const Lasso& w, Symbol a) {
  for (Symbol c : w.cycle)
    if (c != a) return false;
  return true;
}

}  // namespace testing_support

namespace testing_support {

/// Exact membership oracle for finite unions of rational intervals.
struct IntervalUnion {
  struct Piece {
    Rational lo, hi;
    bool lo_closed, hi_closed;
  };
  std::vector<Piece> pieces;

  bool contains(const Rational& x) const {
    for (const auto& p : pieces) {
      bool above = p.lo_closed ? p.lo <= x : p.lo < x;
      bool below = p.hi_closed ? x <= p.hi : x < p.hi;
      if (above && below) return true;
    }
    return false;
  }

  std::string formula() const {
    if (pieces.empty()) return "x < x";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& p = pieces[i];
      out += (i ? " | (" : "(") + p.lo.str() + (p.lo_closed ? " <= x & x " : " < x & x ") +
             (p.hi_closed ? "<= " : "< ") + p.hi.str() + ")";
    }
    return out;
  }
};

inline Rational random_small_rational(std::mt19937_64& rng, long long span) {
  static const long long dens[] = {1, 2, 3, 4, 5, 6, 8, 9};
  long long den = dens[rng() % std::size(dens)];
  long long num = static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * span * den + 1)) - span * den;
  return rat(num, den);
}

inline IntervalUnion random_interval_union(std::mt19937_64& rng) {
  IntervalUnion u;
  for (auto k = 1 + rng() % 3; k > 0; --k) {
    Rational a = random_small_rational(rng, 3), b = random_small_rational(rng, 3);
    if (b < a) std::swap(a, b);
    bool lc = rng() % 2 == 0, hc = rng() % 2 == 0;
    if (a == b) lc = hc = true;
    u.pieces.push_back({a, b, lc, hc});
  }
  return u;
}

/// Probes: endpoints, their neighbours and random small rationals.
inline std::vector<Rational> probes(std::mt19937_64& rng, const IntervalUnion& u, std::size_t n) {
  std::vector<Rational> out;
  for (const auto& p : u.pieces)
    for (const auto& e : {p.lo, p.hi}) {
      out.push_back(e);
      out.push_back(e + rat(1, 97));
      out.push_back(e - rat(1, 101));
    }
  while (out.size() < n) out.push_back(random_small_rational(rng, 4) + rat(static_cast<long long>(rng() % 7), 7 * 13));
  return out;
}

/// Middle-thirds Cantor set in base 3: 0⋆{0,2}^ω and 01⋆0^ω with padded sign.
inline OmegaAutomaton cantor_automaton() {
  Alphabet al(Base(3), 1);
  AutomatonBuilder b(al);
  State init = b.add_state(), zeros = b.add_state(), one = b.add_state(), frac = b.add_state(),
        one_frac = b.add_state();
  b.set_initial(init);
  b.set_transition(init, al.uniform(0), zeros);
  b.set_transition(zeros, al.uniform(0), zeros);
  b.set_transition(zeros, al.uniform(1), one);
  b.set_transition(zeros, al.separator(), frac);
  b.set_transition(one, al.separator(), one_frac);
  b.set_transition(one_frac, al.uniform(0), one_frac);
  b.set_transition(frac, al.uniform(0), frac);
  b.set_transition(frac, al.uniform(2), frac);
  std::vector<bool> acc(b.num_states(), false);
  acc[frac] = acc[one_frac] = true;
  return b.build(Acceptance::weak(acc));
}

/// Oracle for Cantor membership of a rational in [0,1] by exact digit expansion:
/// x is in C iff some base-3 expansion avoids digit 1.
inline bool cantor_contains(Rational x) {
  if (x < rat(0) || x > rat(1)) return false;
  if (x == rat(1)) return true;
  // the expansion is eventually periodic: detect by remembering remainders
  std::vector<Rational> seen;
  while (true) {
    if (x.sign() == 0) return true;
    for (const auto& s : seen)
      if (s == x) return true;
    seen.push_back(x);
    x = x * rat(3);
    BigInt d = x.floor();
    x = x - Rational(d, 1);
    if (d == 1) return x.sign() == 0;  // 1 followed by zeros = 0 followed by twos
  }
}

/// Fresh path under the system temp directory; the file is not created.
inline std::string temp_path() {
  static int counter = 0;
  auto name = "realset-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace testing_support
