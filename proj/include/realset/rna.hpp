#pragma once

// Sets of real vectors given by automata reading their base-r encodings.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "realset/automaton.hpp"

namespace realset {

struct RNA {
  OmegaAutomaton automaton;
  bool saturated = false;

  const Base& base() const noexcept { return automaton.alphabet().base(); }
  unsigned arity() const noexcept { return automaton.alphabet().arity(); }
  bool weak() const { return automaton.acceptance().kind == AcceptanceKind::Weak; }
};

/// {0, r-1}Σ*⋆Σ^ω on every track with one shared separator.
RNA validity_automaton(Base base, unsigned arity);

RNA intersect(const RNA& a, const RNA& b);
RNA unite(const RNA& a, const RNA& b);
/// Complement relative to the valid encodings.
RNA complement_set(const RNA& a);
/// Minimizes weak automata; other kinds are only trimmed.
RNA normalize(const RNA& a);

// Nondeterministic plumbing shared with the formula compiler.
namespace nfa {
/// Accepts σ^j v whenever the input accepts σ^k v, j, k >= 1, σ a sign tuple.
NondetAutomaton pump_sign_prefix(const NondetAutomaton& n);
/// Keeps the listed tracks (in order) and forgets the others.
NondetAutomaton keep_tracks(const NondetAutomaton& n, const std::vector<unsigned>& tracks);
/// Product of two nondeterministic automata read as co-Buchi.
NondetAutomaton intersect(const NondetAutomaton& a, const NondetAutomaton& b);
/// Reads symbols over `target`; each maps to a symbol of n's alphabet.
NondetAutomaton relabel(const NondetAutomaton& n, const Alphabet& target, const std::function<Symbol(Symbol)>& map);
/// Weak result for weak-derived automata, co-Buchi otherwise.
OmegaAutomaton determinize(const NondetAutomaton& n, bool weak, const DeterminizeOptions& opts = {});
}  // namespace nfa

/// Keeps the listed tracks, existentially quantifying the rest.
RNA project_tracks(const RNA& r, const std::vector<unsigned>& keep);

RNA saturate(const RNA& r);

/// Membership of a rational vector; tries all encodings when unsaturated.
bool member(const RNA& r, const std::vector<Rational>& x);
bool member(const RNA& r, const Rational& x);

/// Integer-part words u such that u⋆ leads to one post-separator residual.
struct IntegerPart {
  OmegaAutomaton automaton;  // shares the structure of the decomposed automaton
  std::vector<bool> final;   // states p with p·⋆ landing in the class
  bool accepts(const std::vector<Digit>& digits) const;
  bool contains(const BigInt& n) const;
};

struct Decomposition {
  struct Part {
    IntegerPart integer;
    RNA fractional;  // subset of [0,1]
  };
  std::vector<Part> parts;
};

Decomposition decompose(const RNA& r);

/// {a·x + b : x in S}.
RNA affine(const RNA& r, const Rational& a, const Rational& b);

struct Domain {
  std::optional<Rational> lo, hi;  // nothing = unbounded
  bool lo_closed = true, hi_closed = true;
  static Domain closed(const Rational& lo, const Rational& hi) { return {lo, hi, true, true}; }
  bool contains(const Rational& x) const;
};

RNA clip(const RNA& r, const Rational& lo, const Rational& hi);
RNA clip(const RNA& r, const Domain& d);

RNA base_power_up(const RNA& r, unsigned l);
RNA base_power_down(const RNA& r, unsigned l);

RNA boundary(const RNA& r);

struct Interval {
  Rational lo, hi;
  bool lo_closed = true, hi_closed = true;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// a + k·b for k in ℕ; b = 0 is a single integer and b < 0 runs downwards.
struct Progression {
  BigInt a, b;
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct IntervalDecomposition {
  struct Line {
    Progression progression;
    std::vector<Interval> intervals;  // inside [0,1]
  };
  std::vector<Line> lines;
  std::string str() const;
  /// Formula over x describing the same set.
  std::string formula() const;
};

struct NotIntervalFinite {};

std::variant<IntervalDecomposition, NotIntervalFinite> interval_extract(const RNA& r);

/// Finite canonical point set of a boundary-like RNA, if finite.
std::optional<std::vector<Rational>> finite_points(const RNA& r);

bool product_stability(const RNA& r, const Rational& f, const Domain& d);
bool sum_stability(const RNA& r, const Rational& t, const Domain& d);

/// {r^k x : x in S, k in ℕ}.
RNA star_delay(const RNA& r);

struct StabilityReport {
  std::uint64_t p = 0, q = 0, p_prime = 0, q_prime = 0;
  Rational y;
  std::vector<Rational> y_k;
  bool from_above = true;  // y_k > y
  std::optional<RNA> s1_r, s1_s, s2, s3_r, s3_s, s4;
  bool r_stable = false, s_stable = false;
};

/// 0⋆0^ω run of the automaton: transient length and cycle length after "0⋆".
std::pair<std::uint64_t, std::uint64_t> zero_run_lengths(const OmegaAutomaton& a);

StabilityReport stability_pipeline(const RNA& r_base, const RNA& s_base, std::uint64_t seed = 1);

}  // namespace realset
