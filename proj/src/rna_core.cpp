#include <algorithm>
#include <unordered_map>

#include "graph.hpp"
#include "realset/arith.hpp"
#include "realset/rna.hpp"

namespace realset {

RNA validity_automaton(Base base, unsigned arity) {
  Alphabet al(base, arity);
  AutomatonBuilder b(al);
  State init = b.add_state(), in_int = b.add_state(), frac = b.add_state();
  b.set_initial(init);
  const Digit top = base.max_digit();
  for (Symbol s = 0; s < al.digit_symbols(); ++s) {
    auto ds = al.decode(s);
    bool sign = std::all_of(ds.begin(), ds.end(), [&](Digit d) { return d == 0 || d == top; });
    if (sign) b.set_transition(init, s, in_int);
    b.set_transition(in_int, s, in_int);
    b.set_transition(frac, s, frac);
  }
  b.set_transition(in_int, al.separator(), frac);
  return {b.build(Acceptance::weak({false, false, true})), true};
}

RNA normalize(const RNA& a) {
  return {reduce(a.automaton), a.saturated};
}

RNA intersect(const RNA& a, const RNA& b) {
  return normalize({product(a.automaton, b.automaton, BoolOp::And), a.saturated && b.saturated});
}

RNA unite(const RNA& a, const RNA& b) {
  return normalize({product(a.automaton, b.automaton, BoolOp::Or), a.saturated && b.saturated});
}

RNA complement_set(const RNA& a) {
  auto v = validity_automaton(a.base(), a.arity());
  return normalize({product(complement(a.automaton), v.automaton, BoolOp::And), a.saturated});
}

namespace nfa {

namespace {

StateSet post(const NondetAutomaton& n, const StateSet& from, Symbol c) {
  StateSet out;
  for (State q : from)
    for (State t : n.successors(q, c)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void dedupe(NondetAutomaton& n) {
  for (auto& s : n.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

}  // namespace

NondetAutomaton pump_sign_prefix(const NondetAutomaton& n) {
  const Alphabet& al = n.alphabet;
  const Digit top = al.base().max_digit();
  NondetAutomaton out = n;
  const State start = out.add_state();
  for (Symbol s = 0; s < al.digit_symbols(); ++s) {
    auto ds = al.decode(s);
    if (!std::all_of(ds.begin(), ds.end(), [&](Digit d) { return d == 0 || d == top; })) continue;
    // states reached after σ^j, j >= 1
    StateSet reached, frontier = post(n, n.initial, s);
    while (true) {
      StateSet merged;
      std::set_union(reached.begin(), reached.end(), frontier.begin(), frontier.end(), std::back_inserter(merged));
      if (merged == reached) break;
      reached = std::move(merged);
      frontier = post(n, frontier, s);
    }
    const State block = out.add_state();
    out.add_transition(start, s, block);
    out.add_transition(block, s, block);
    for (Symbol c = 0; c < al.size(); ++c)
      for (State t : post(n, reached, c)) out.add_transition(block, c, t);
  }
  out.initial = {start};
  dedupe(out);
  return out;
}

NondetAutomaton relabel(const NondetAutomaton& n, const Alphabet& target, const std::function<Symbol(Symbol)>& map) {
  NondetAutomaton out(target, n.num_states);
  out.initial = n.initial;
  out.good = n.good;
  out.condition = n.condition;
  for (Symbol c = 0; c < target.size(); ++c) {
    Symbol img = map(c);
    for (State q = 0; q < n.num_states; ++q)
      for (State t : n.successors(q, img)) out.add_transition(q, c, t);
  }
  return out;
}

NondetAutomaton keep_tracks(const NondetAutomaton& n, const std::vector<unsigned>& tracks) {
  const Alphabet& src = n.alphabet;
  Alphabet target(src.base(), static_cast<unsigned>(tracks.size()));
  NondetAutomaton out(target, n.num_states);
  out.initial = n.initial;
  out.good = n.good;
  out.condition = n.condition;
  std::vector<Digit> tuple(tracks.size());
  for (Symbol c = 0; c < src.size(); ++c) {
    Symbol img = target.separator();
    if (!src.is_separator(c)) {
      for (std::size_t i = 0; i < tracks.size(); ++i) tuple[i] = src.component(c, tracks[i]);
      img = target.encode(tuple);
    }
    for (State q = 0; q < n.num_states; ++q)
      for (State t : n.successors(q, c)) out.add_transition(q, img, t);
  }
  dedupe(out);
  return out;
}

NondetAutomaton intersect(const NondetAutomaton& x, const NondetAutomaton& y) {
  if (!(x.alphabet == y.alphabet)) throw Error(ErrorCode::AlphabetMismatch, "product over different alphabets");
  auto a = as_cobuchi(x), b = as_cobuchi(y);
  NondetAutomaton out(a.alphabet, 0);
  out.condition = RunCondition::CoBuchi;
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    auto key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    State id = out.add_state();
    out.good[id] = a.good[p] && b.good[q];
    index.emplace(key, id);
    pairs.emplace_back(p, q);
    return id;
  };
  for (State p : a.initial)
    for (State q : b.initial) out.initial.push_back(intern(p, q));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (Symbol c = 0; c < a.alphabet.size(); ++c) {
      auto [p, q] = pairs[i];
      for (State s : a.successors(p, c))
        for (State t : b.successors(q, c)) {
          State id = intern(s, t);
          out.add_transition(static_cast<State>(i), c, id);
        }
    }
  }
  return out;
}

OmegaAutomaton determinize(const NondetAutomaton& n, bool weak, const DeterminizeOptions& opts) {
  return weak ? determinize_to_weak(n, opts) : determinize_cobuchi(n, opts);
}

}  // namespace nfa

RNA project_tracks(const RNA& input, const std::vector<unsigned>& keep) {
  if (keep.empty()) throw Error(ErrorCode::InvalidArgument, "projection must keep a track");
  for (unsigned t : keep)
    if (t >= input.arity()) throw Error(ErrorCode::InvalidArgument, "track out of range");
  RNA r = input.saturated ? input : saturate(input);
  auto n = nfa::pump_sign_prefix(nfa::keep_tracks(as_nondet(r.automaton), keep));
  return normalize({nfa::determinize(n, r.weak()), true});
}

RNA saturate(const RNA& r) {
  if (r.saturated) return r;
  const unsigned n = r.arity();
  const Base base = r.base();
  Alphabet wide(base, 2 * n);
  // x_i = y_i on every track, x on tracks 0..n-1
  std::optional<OmegaAutomaton> eq;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Rational> coeffs(2 * n, Rational(0));
    coeffs[i] = 1;
    coeffs[n + i] = -1;
    auto atom = atomic_linear(coeffs, Cmp::Eq, 0, base).automaton;
    eq = eq ? product(*eq, atom, BoolOp::And) : atom;
  }
  auto source = nfa::pump_sign_prefix(as_nondet(r.automaton));
  std::vector<Digit> tuple(n);
  auto lifted = nfa::relabel(source, wide, [&](Symbol c) {
    if (wide.is_separator(c)) return source.alphabet.separator();
    for (unsigned i = 0; i < n; ++i) tuple[i] = wide.component(c, n + i);
    return source.alphabet.encode(tuple);
  });
  auto joint = nfa::intersect(as_nondet(minimize_weak(*eq)), lifted);
  std::vector<unsigned> xs(n);
  for (unsigned i = 0; i < n; ++i) xs[i] = i;
  auto projected = nfa::pump_sign_prefix(nfa::keep_tracks(joint, xs));
  RNA out{nfa::determinize(projected, r.weak()), true};
  return intersect(out, validity_automaton(base, n));
}

bool member(const RNA& r, const std::vector<Rational>& x) {
  if (x.size() != r.arity()) throw Error(ErrorCode::InvalidArgument, "point dimension differs from arity");
  std::vector<std::vector<UPWord>> options(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    options[i].push_back(encode_rational(x[i], r.base()));
    if (!r.saturated)
      if (auto d = dual_of(options[i][0])) options[i].push_back(*d);
  }
  std::vector<std::size_t> pick(x.size(), 0);
  while (true) {
    std::vector<UPWord> words;
    for (std::size_t i = 0; i < x.size(); ++i) words.push_back(options[i][pick[i]]);
    if (member_up(r.automaton, lasso_of(r.automaton.alphabet(), words))) return true;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

bool member(const RNA& r, const Rational& x) { return member(r, std::vector<Rational>{x}); }

bool IntegerPart::accepts(const std::vector<Digit>& digits) const {
  const auto& al = automaton.alphabet();
  State q = automaton.initial();
  for (Digit d : digits) {
    if (d >= al.base().value()) return false;
    q = automaton.next(q, al.uniform(d));
  }
  return final[q];
}

bool IntegerPart::contains(const BigInt& n) const {
  return accepts(integer_digits(n, automaton.alphabet().base()));
}

Decomposition decompose(const RNA& input) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "decompose needs arity 1");
  RNA r = normalize(saturate(input));
  const auto& a = r.automaton;
  const auto& al = a.alphabet();
  // states reachable by digit-only words (the integer phase)
  std::vector<bool> int_phase(a.num_states(), false);
  std::vector<State> todo{a.initial()};
  int_phase[a.initial()] = true;
  while (!todo.empty()) {
    State q = todo.back();
    todo.pop_back();
    for (Symbol c = 0; c < al.digit_symbols(); ++c) {
      State t = a.next(q, c);
      if (!int_phase[t]) {
        int_phase[t] = true;
        todo.push_back(t);
      }
    }
  }
  auto live = live_states(a);
  // group post-separator states by residual language
  std::vector<State> reps;
  std::vector<std::int64_t> cls(a.num_states(), -1);
  for (State p = 0; p < a.num_states(); ++p) {
    if (!int_phase[p] || p == a.initial()) continue;
    State q = a.next(p, al.separator());
    if (!live[q] || cls[q] >= 0) continue;
    for (std::size_t i = 0; i < reps.size() && cls[q] < 0; ++i)
      if (reps[i] == q || (!r.weak() && equivalent(a.with_initial(reps[i]), a.with_initial(q)).equivalent))
        cls[q] = static_cast<std::int64_t>(i);
    if (cls[q] < 0) {
      cls[q] = static_cast<std::int64_t>(reps.size());
      reps.push_back(q);
    }
  }
  Decomposition out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    IntegerPart ip{a, std::vector<bool>(a.num_states(), false)};
    for (State p = 0; p < a.num_states(); ++p)
      if (int_phase[p] && p != a.initial()) ip.final[p] = cls[a.next(p, al.separator())] == static_cast<std::int64_t>(i);
    // 0^+ ⋆ L_q
    const std::uint32_t k = al.size();
    const std::size_t n = a.num_states();
    std::vector<State> delta(a.delta());
    const State sink = static_cast<State>(n + 2), start = static_cast<State>(n), zeros = static_cast<State>(n + 1);
    delta.resize((n + 3) * k, sink);
    delta[start * k + al.uniform(0)] = zeros;
    delta[zeros * k + al.uniform(0)] = zeros;
    delta[zeros * k + al.separator()] = reps[i];
    Acceptance acc = a.acceptance();
    if (acc.kind != AcceptanceKind::Muller) acc.marked.resize(n + 3, acc.kind == AcceptanceKind::CoBuchi);
    else acc.marked.resize(n + 3, false);
    OmegaAutomaton frac(al, n + 3, start, std::move(delta), std::move(acc));
    out.parts.push_back({std::move(ip), normalize(saturate(RNA{frac, false}))});
  }
  return out;
}

}  // namespace realset
