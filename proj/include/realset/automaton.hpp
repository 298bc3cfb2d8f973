#pragma once

// Deterministic ω-automata over digit-tuple alphabets with a separator symbol.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realset/numeric.hpp"

namespace realset {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using StateSet = std::vector<State>;  // sorted, duplicate free

/// All arity-tuples of base-r digits plus one separator. Track 0 is the most
/// significant position of a symbol index; the separator is the last index.
class Alphabet {
 public:
  Alphabet(Base base, unsigned arity);

  const Base& base() const noexcept { return base_; }
  unsigned arity() const noexcept { return arity_; }
  std::uint32_t size() const noexcept { return digit_symbols_ + 1; }
  std::uint32_t digit_symbols() const noexcept { return digit_symbols_; }
  Symbol separator() const noexcept { return digit_symbols_; }
  bool is_separator(Symbol s) const noexcept { return s == digit_symbols_; }

  Symbol encode(const std::vector<Digit>& tuple) const;
  std::vector<Digit> decode(Symbol s) const;
  Digit component(Symbol s, unsigned track) const;
  /// Symbol with the same digit on every track.
  Symbol uniform(Digit d) const;

  /// "d", "d,d,..." or "*".
  std::string symbol_str(Symbol s) const;
  Symbol parse_symbol(std::string_view text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.base_ == b.base_ && a.arity_ == b.arity_;
  }

 private:
  Base base_;
  unsigned arity_;
  std::uint32_t digit_symbols_;
};

enum class AcceptanceKind { Weak, Buchi, CoBuchi, Muller };

const char* to_string(AcceptanceKind kind);

/// For Weak and Buchi `marked` holds the accepting states; for CoBuchi the
/// rejecting ones. Muller acceptance lists the accepted infinity sets.
struct Acceptance {
  AcceptanceKind kind = AcceptanceKind::Weak;
  std::vector<bool> marked;
  std::vector<StateSet> family;

  static Acceptance weak(std::vector<bool> accepting) { return {AcceptanceKind::Weak, std::move(accepting), {}}; }
  static Acceptance buchi(std::vector<bool> accepting) { return {AcceptanceKind::Buchi, std::move(accepting), {}}; }
  static Acceptance cobuchi(std::vector<bool> rejecting) {
    return {AcceptanceKind::CoBuchi, std::move(rejecting), {}};
  }
  static Acceptance muller(std::size_t num_states, std::vector<StateSet> family);

  /// Decides a run whose set of infinitely visited states is `inf`.
  bool accepts_loop(const StateSet& inf) const;
};

/// Upper bound on explicitly enumerated Muller families.
inline std::size_t muller_family_bound = 4096;

/// Infinite word prefix · cycle^ω over symbol indices.
struct Lasso {
  std::vector<Symbol> prefix;
  std::vector<Symbol> cycle;
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

class OmegaAutomaton {
 public:
  /// `delta` is row-major: delta[q * alphabet.size() + a]. Must be total.
  OmegaAutomaton(Alphabet alphabet, std::size_t num_states, State initial, std::vector<State> delta,
                 Acceptance acceptance);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  const std::vector<State>& delta() const noexcept { return delta_; }
  const Acceptance& acceptance() const noexcept { return acceptance_; }

  State run(State from, const std::vector<Symbol>& word) const;

  /// Same structure with a different initial state.
  OmegaAutomaton with_initial(State q) const;
  OmegaAutomaton with_acceptance(Acceptance acc) const;

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<State> delta_;
  Acceptance acceptance_;
};

/// Collects possibly partial transitions and completes them with a rejecting
/// sink on build().
class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state();
  void set_initial(State q) { initial_ = q; }
  void set_transition(State from, Symbol a, State to);
  std::optional<State> transition(State from, Symbol a) const;
  std::size_t num_states() const noexcept { return num_states_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  /// Missing transitions go to an added sink; acceptance vectors are
  /// extended with "not accepting" (Weak, Buchi) or "rejecting" (CoBuchi).
  OmegaAutomaton build(Acceptance acceptance) const;

 private:
  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  State initial_ = 0;
  std::vector<std::int64_t> delta_;  // -1 = missing
};

enum class RunCondition { Buchi, CoBuchi };

/// Nondeterministic automaton with a state-based run condition: Buchi runs
/// visit `good` infinitely often; CoBuchi runs eventually stay in `good`.
struct NondetAutomaton {
  Alphabet alphabet;
  std::size_t num_states = 0;
  StateSet initial;
  std::vector<std::vector<State>> succ;  // succ[q * alphabet.size() + a]
  std::vector<bool> good;
  RunCondition condition = RunCondition::Buchi;

  NondetAutomaton(Alphabet a, std::size_t n)
      : alphabet(std::move(a)), num_states(n), succ(n * alphabet.size()), good(n, false) {}

  State add_state();
  void add_transition(State from, Symbol a, State to) { succ[from * alphabet.size() + a].push_back(to); }
  const std::vector<State>& successors(State q, Symbol a) const { return succ[q * alphabet.size() + a]; }
};

NondetAutomaton as_nondet(const OmegaAutomaton& a);

// ---------------------------------------------------------------------------
// Operations

enum class BoolOp { And, Or };

OmegaAutomaton product(const OmegaAutomaton& a, const OmegaAutomaton& b, BoolOp op);
OmegaAutomaton complement(const OmegaAutomaton& a);

/// An accepted lasso, or nothing when the language is empty.
std::optional<Lasso> emptiness(const OmegaAutomaton& a);
std::optional<Lasso> find_lasso_from(const OmegaAutomaton& a, State from);

struct Equivalence {
  bool equivalent = true;
  std::optional<Lasso> counterexample;  // in exactly one of the languages
};
Equivalence equivalent(const OmegaAutomaton& a, const OmegaAutomaton& b);
/// L(a) ⊆ L(b); a counterexample lies in L(a) \ L(b).
Equivalence included(const OmegaAutomaton& a, const OmegaAutomaton& b);

bool member_up(const OmegaAutomaton& a, const Lasso& word);

/// Removes unreachable states, numbering the rest in breadth-first order.
OmegaAutomaton trim(const OmegaAutomaton& a);

/// Weak acceptance whose SCCs are uniformly accepting or rejecting.
bool is_scc_uniform(const OmegaAutomaton& a);

OmegaAutomaton minimize_weak(const OmegaAutomaton& a);
/// Quotient by the coarsest bisimulation respecting live states and the marks
/// that matter (marks off cycles are ignored). Weak input is minimized.
OmegaAutomaton reduce(const OmegaAutomaton& a);

/// Structural equality after breadth-first renumbering from the initial state.
bool isomorphic(const OmegaAutomaton& a, const OmegaAutomaton& b);

enum class TopClassKind { Weak, DetBuchiOnly, DetCoBuchiOnly, Beyond };
const char* to_string(TopClassKind kind);

struct LoopWitness {
  StateSet inner;  // inner ⊆ outer, both strongly connected
  StateSet outer;
  bool inner_accepting;
};

struct TopClass {
  TopClassKind kind = TopClassKind::Weak;
  std::optional<LoopWitness> witness;  // present iff kind != Weak
};

TopClass classify(const OmegaAutomaton& a);

OmegaAutomaton safety_closure(const OmegaAutomaton& a);

/// States with nonempty residual language.
std::vector<bool> live_states(const OmegaAutomaton& a);

/// Deterministic automaton reading symbol s over `target` as a reads map(s).
OmegaAutomaton inverse_homomorphism(const OmegaAutomaton& a, const Alphabet& target,
                                    const std::function<Symbol(Symbol)>& map);

// ---------------------------------------------------------------------------
// Determinization

struct DeterminizeOptions {
  std::size_t max_states = 200000;
  std::size_t battery_words = 200;
  std::uint64_t seed = 0x5eedULL;
};

struct ValidationStats {
  std::uint64_t calls = 0;
  std::uint64_t words = 0;
  std::uint64_t disagreements = 0;
};
ValidationStats validation_stats();

/// Breakpoint construction read as co-Buchi: rejecting states are those
/// whose obligation set is empty. Validated against `n` on a lasso battery.
OmegaAutomaton determinize_cobuchi(const NondetAutomaton& n, const DeterminizeOptions& opts = {});

/// As determinize_cobuchi, then each SCC is made accepting iff it holds an
/// accepting co-Buchi loop. Valid when L(n) is weak; the battery checks it.
OmegaAutomaton determinize_to_weak(const NondetAutomaton& n, const DeterminizeOptions& opts = {});

/// Same automaton read as co-Buchi; a Buchi condition must be uniform on SCCs.
NondetAutomaton as_cobuchi(const NondetAutomaton& n);

/// Nondeterministic membership of a lasso under the automaton's run condition.
bool member_nondet(const NondetAutomaton& n, const Lasso& word);

/// Synchronous lasso reading one encoding per track: integer parts padded
/// with their sign digit to a common length, fractional parts unrolled to a
/// common preperiod and period.
Lasso lasso_of(const Alphabet& alphabet, const std::vector<UPWord>& tracks);

/// Deterministic battery of lassos over an alphabet: encodings of random
/// rationals plus unconstrained random words.
std::vector<Lasso> lasso_battery(const Alphabet& alphabet, std::size_t count, std::uint64_t seed);

}  // namespace realset
