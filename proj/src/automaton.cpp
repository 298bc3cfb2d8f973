#include "realset/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <unordered_map>

#include "graph.hpp"

namespace realset {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(Base base, unsigned arity) : base_(base), arity_(arity), digit_symbols_(1) {
  if (arity < 1) throw Error(ErrorCode::InvalidArgument, "arity must be >= 1");
  for (unsigned i = 0; i < arity; ++i) {
    std::uint64_t next = static_cast<std::uint64_t>(digit_symbols_) * base.value();
    if (next > (1ULL << 24)) throw Error(ErrorCode::BlowUp, "alphabet too large");
    digit_symbols_ = static_cast<std::uint32_t>(next);
  }
}

Symbol Alphabet::encode(const std::vector<Digit>& tuple) const {
  if (tuple.size() != arity_) throw Error(ErrorCode::InvalidArgument, "tuple arity mismatch");
  Symbol s = 0;
  for (Digit d : tuple) {
    if (d >= base_.value()) throw Error(ErrorCode::InvalidArgument, "digit out of range");
    s = s * base_.value() + d;
  }
  return s;
}

std::vector<Digit> Alphabet::decode(Symbol s) const {
  std::vector<Digit> out(arity_);
  for (unsigned i = arity_; i-- > 0;) {
    out[i] = s % base_.value();
    s /= base_.value();
  }
  return out;
}

Digit Alphabet::component(Symbol s, unsigned track) const {
  for (unsigned i = arity_ - 1; i > track; --i) s /= base_.value();
  return s % base_.value();
}

Symbol Alphabet::uniform(Digit d) const { return encode(std::vector<Digit>(arity_, d)); }

std::string Alphabet::symbol_str(Symbol s) const {
  if (is_separator(s)) return "*";
  std::string out;
  auto ds = decode(s);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ds[i]);
  }
  return out;
}

Symbol Alphabet::parse_symbol(std::string_view text) const {
  if (text == "*") return separator();
  std::vector<Digit> ds;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    Digit d = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || d >= base_.value())
      throw Error(ErrorCode::Parse, "bad symbol '" + std::string(text) + "'");
    ds.push_back(d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (ds.size() != arity_) throw Error(ErrorCode::Parse, "symbol arity mismatch '" + std::string(text) + "'");
  return encode(ds);
}

// ---------------------------------------------------------------------------
// Acceptance

const char* to_string(AcceptanceKind kind) {
  switch (kind) {
    case AcceptanceKind::Weak: return "weak";
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::CoBuchi: return "cobuchi";
    case AcceptanceKind::Muller: return "muller";
  }
  return "?";
}

Acceptance Acceptance::muller(std::size_t num_states, std::vector<StateSet> family) {
  for (auto& m : family) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    for (State q : m)
      if (q >= num_states) throw Error(ErrorCode::InvalidArgument, "Muller set mentions unknown state");
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (family.size() > muller_family_bound) throw Error(ErrorCode::BlowUp, "Muller family too large");
  return {AcceptanceKind::Muller, std::vector<bool>(num_states, false), std::move(family)};
}

bool Acceptance::accepts_loop(const StateSet& inf) const {
  switch (kind) {
    case AcceptanceKind::Weak:
    case AcceptanceKind::Buchi:
      return std::any_of(inf.begin(), inf.end(), [&](State q) { return marked[q]; });
    case AcceptanceKind::CoBuchi:
      return std::none_of(inf.begin(), inf.end(), [&](State q) { return marked[q]; });
    case AcceptanceKind::Muller:
      return std::binary_search(family.begin(), family.end(), inf);
  }
  return false;
}

// ---------------------------------------------------------------------------
// OmegaAutomaton

OmegaAutomaton::OmegaAutomaton(Alphabet alphabet, std::size_t num_states, State initial,
                               std::vector<State> delta, Acceptance acceptance)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      acceptance_(std::move(acceptance)) {
  if (num_states_ == 0) throw Error(ErrorCode::InvalidArgument, "automaton needs a state");
  if (initial_ >= num_states_) throw Error(ErrorCode::InvalidArgument, "initial state out of range");
  if (delta_.size() != num_states_ * alphabet_.size())
    throw Error(ErrorCode::InvalidArgument, "transition table is not total");
  for (State t : delta_)
    if (t >= num_states_) throw Error(ErrorCode::InvalidArgument, "transition target out of range");
  if (acceptance_.kind != AcceptanceKind::Muller && acceptance_.marked.size() != num_states_)
    throw Error(ErrorCode::InvalidArgument, "acceptance vector size mismatch");
  if (acceptance_.kind == AcceptanceKind::Muller) acceptance_.marked.assign(num_states_, false);
}

State OmegaAutomaton::run(State from, const std::vector<Symbol>& word) const {
  for (Symbol a : word) from = next(from, a);
  return from;
}

OmegaAutomaton OmegaAutomaton::with_initial(State q) const {
  return OmegaAutomaton(alphabet_, num_states_, q, delta_, acceptance_);
}

OmegaAutomaton OmegaAutomaton::with_acceptance(Acceptance acc) const {
  return OmegaAutomaton(alphabet_, num_states_, initial_, delta_, std::move(acc));
}

// ---------------------------------------------------------------------------
// Builder

State AutomatonBuilder::add_state() {
  delta_.resize(delta_.size() + alphabet_.size(), -1);
  return static_cast<State>(num_states_++);
}

void AutomatonBuilder::set_transition(State from, Symbol a, State to) {
  delta_.at(from * alphabet_.size() + a) = to;
}

std::optional<State> AutomatonBuilder::transition(State from, Symbol a) const {
  auto t = delta_.at(from * alphabet_.size() + a);
  if (t < 0) return std::nullopt;
  return static_cast<State>(t);
}

OmegaAutomaton AutomatonBuilder::build(Acceptance acceptance) const {
  std::size_t n = num_states_;
  if (n == 0) n = 1;  // empty builder: a single rejecting state
  const bool missing = num_states_ == 0 || std::any_of(delta_.begin(), delta_.end(), [](auto t) { return t < 0; });
  const State sink = static_cast<State>(n);
  const std::size_t total = missing ? n + 1 : n;
  std::vector<State> delta(total * alphabet_.size(), sink);
  for (std::size_t i = 0; i < delta_.size(); ++i)
    if (delta_[i] >= 0) delta[i] = static_cast<State>(delta_[i]);
  if (acceptance.kind != AcceptanceKind::Muller) {
    acceptance.marked.resize(total, acceptance.kind == AcceptanceKind::CoBuchi);
    if (num_states_ == 0) acceptance.marked.assign(total, acceptance.kind == AcceptanceKind::CoBuchi);
  } else {
    acceptance.marked.assign(total, false);
  }
  return OmegaAutomaton(alphabet_, total, initial_, std::move(delta), std::move(acceptance));
}

// ---------------------------------------------------------------------------
// Nondeterministic automata

State NondetAutomaton::add_state() {
  succ.resize(succ.size() + alphabet.size());
  good.push_back(false);
  return static_cast<State>(num_states++);
}

NondetAutomaton as_nondet(const OmegaAutomaton& a) {
  const auto kind = a.acceptance().kind;
  if (kind == AcceptanceKind::Muller)
    throw Error(ErrorCode::Unsupported, "Muller automata have no state-based nondeterministic reading");
  NondetAutomaton n(a.alphabet(), a.num_states());
  n.initial = {a.initial()};
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol c = 0; c < a.alphabet().size(); ++c) n.add_transition(q, c, a.next(q, c));
  if (kind == AcceptanceKind::CoBuchi) {
    n.condition = RunCondition::CoBuchi;
    for (State q = 0; q < a.num_states(); ++q) n.good[q] = !a.acceptance().marked[q];
  } else {
    n.condition = RunCondition::Buchi;
    n.good = a.acceptance().marked;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Loop machinery

namespace detail {

std::vector<StateSet> enumerate_loops(const std::vector<std::vector<State>>& succ, const StateSet& scc) {
  const std::size_t k = scc.size();
  if (k > 20) throw Error(ErrorCode::BlowUp, "SCC too large for loop enumeration");
  std::unordered_map<State, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos[scc[i]] = i;
  // adjacency as bitmasks within the SCC
  std::vector<std::uint32_t> adj(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (State t : succ[scc[i]]) {
      auto it = pos.find(t);
      if (it != pos.end()) adj[i] |= 1U << it->second;
    }
  std::vector<StateSet> loops;
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    // strongly connected iff every member reaches all others forward and backward inside mask
    std::uint32_t first = mask & (~mask + 1);
    std::size_t f = static_cast<std::size_t>(__builtin_ctz(first));
    auto closure = [&](bool forward) {
      std::uint32_t seen = 1U << f, frontier = seen;
      while (frontier) {
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (!(frontier >> i & 1U)) continue;
          if (forward) {
            next |= adj[i] & mask;
          } else {
            for (std::size_t j = 0; j < k; ++j)
              if ((mask >> j & 1U) && (adj[j] >> i & 1U)) next |= 1U << j;
          }
        }
        frontier = next & ~seen;
        seen |= next;
      }
      return seen & mask;
    };
    if (closure(true) != mask || closure(false) != mask) continue;
    if (__builtin_popcount(mask) == 1 && !(adj[f] >> f & 1U)) continue;
    StateSet loop;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) loop.push_back(scc[i]);
    loops.push_back(std::move(loop));
    if (loops.size() > muller_family_bound) throw Error(ErrorCode::BlowUp, "too many loops");
  }
  return loops;
}

std::vector<StateSet> enumerate_all_loops(const OmegaAutomaton& a) {
  auto succ = successor_lists(a);
  auto reach = reachable_from(succ, a.initial());
  auto sccs = strongly_connected(succ, reach);
  std::vector<StateSet> all;
  for (std::size_t i = 0; i < sccs.members.size(); ++i) {
    if (!sccs.nontrivial[i]) continue;
    auto loops = enumerate_loops(succ, sccs.members[i]);
    all.insert(all.end(), loops.begin(), loops.end());
    if (all.size() > muller_family_bound) throw Error(ErrorCode::BlowUp, "too many loops");
  }
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

Clause exactly(std::size_t n, const StateSet& loop) {
  Clause c{std::vector<bool>(n, false), {}};
  for (State q : loop) {
    c.allowed[q] = true;
    std::vector<bool> v(n, false);
    v[q] = true;
    c.visits.push_back(std::move(v));
  }
  return c;
}

std::vector<bool> negate(const std::vector<bool>& v) {
  std::vector<bool> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = !v[i];
  return out;
}

}  // namespace

std::vector<Clause> positive_clauses(const OmegaAutomaton& a) {
  const std::size_t n = a.num_states();
  const auto& acc = a.acceptance();
  switch (acc.kind) {
    case AcceptanceKind::Weak:
    case AcceptanceKind::Buchi:
      return {Clause{std::vector<bool>(n, true), {acc.marked}}};
    case AcceptanceKind::CoBuchi:
      return {Clause{negate(acc.marked), {}}};
    case AcceptanceKind::Muller: {
      std::vector<Clause> out;
      for (const auto& m : acc.family) out.push_back(exactly(n, m));
      return out;
    }
  }
  return {};
}

std::vector<Clause> negative_clauses(const OmegaAutomaton& a) {
  const std::size_t n = a.num_states();
  const auto& acc = a.acceptance();
  switch (acc.kind) {
    case AcceptanceKind::Weak:
    case AcceptanceKind::Buchi:
      return {Clause{negate(acc.marked), {}}};
    case AcceptanceKind::CoBuchi:
      return {Clause{std::vector<bool>(n, true), {acc.marked}}};
    case AcceptanceKind::Muller: {
      std::vector<Clause> out;
      for (const auto& loop : enumerate_all_loops(a))
        if (!acc.accepts_loop(loop)) out.push_back(exactly(n, loop));
      return out;
    }
  }
  return {};
}

std::optional<StateSet> find_loop(const std::vector<std::vector<State>>& succ, const Clause& clause,
                                  const std::vector<bool>& reachable) {
  std::vector<bool> allowed(succ.size());
  for (std::size_t i = 0; i < succ.size(); ++i) allowed[i] = reachable[i] && clause.allowed[i];
  auto sccs = strongly_connected(succ, allowed);
  // sinks come first; scanning in reverse yields SCCs closer to the source first
  for (std::size_t i = sccs.members.size(); i-- > 0;) {
    if (!sccs.nontrivial[i]) continue;
    const auto& m = sccs.members[i];
    bool ok = std::all_of(clause.visits.begin(), clause.visits.end(), [&](const std::vector<bool>& v) {
      return std::any_of(m.begin(), m.end(), [&](State q) { return v[q]; });
    });
    if (ok) return m;
  }
  return std::nullopt;
}

namespace {

/// Shortest symbol path from `from` to `to` using only states with inside[q].
/// With `nonempty` at least one symbol is read, so from == to gives a cycle.
std::vector<Symbol> path_within(const OmegaAutomaton& a, State from, State to, const std::vector<bool>& inside,
                                bool nonempty) {
  if (!nonempty && from == to) return {};
  const std::uint32_t k = a.alphabet().size();
  const std::size_t n = a.num_states();
  std::vector<State> parent(n, 0);
  std::vector<Symbol> via(n, 0);
  std::vector<bool> seen(n, false), first_layer(n, false);
  std::deque<State> queue;
  for (Symbol c = 0; c < k; ++c) {
    State t = a.next(from, c);
    if (!inside[t] || seen[t]) continue;
    seen[t] = true;
    first_layer[t] = true;
    via[t] = c;
    queue.push_back(t);
  }
  while (!queue.empty() && !seen[to]) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol c = 0; c < k; ++c) {
      State t = a.next(q, c);
      if (!inside[t] || seen[t]) continue;
      seen[t] = true;
      parent[t] = q;
      via[t] = c;
      queue.push_back(t);
    }
  }
  if (!seen[to]) throw Error(ErrorCode::InvalidArgument, "internal: no path inside loop");
  std::vector<Symbol> path;
  for (State cur = to;; cur = parent[cur]) {
    path.push_back(via[cur]);
    if (first_layer[cur]) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Lasso lasso_through(const OmegaAutomaton& a, State from, const StateSet& loop) {
  std::vector<bool> everywhere(a.num_states(), true);
  std::vector<bool> inside(a.num_states(), false);
  for (State q : loop) inside[q] = true;
  // entry: the loop state nearest to `from`
  State entry = from;
  Lasso out;
  if (!inside[from]) {
    State best = loop.front();
    std::size_t best_len = SIZE_MAX;
    for (State q : loop) {
      try {
        auto p = path_within(a, from, q, everywhere, false);
        if (p.size() < best_len) {
          best_len = p.size();
          best = q;
          out.prefix = std::move(p);
        }
      } catch (const Error&) {
      }
    }
    if (best_len == SIZE_MAX) throw Error(ErrorCode::InvalidArgument, "internal: loop unreachable");
    entry = best;
  }
  State cur = entry;
  for (State target : loop) {
    if (target == cur) continue;
    auto p = path_within(a, cur, target, inside, false);
    out.cycle.insert(out.cycle.end(), p.begin(), p.end());
    cur = target;
  }
  auto back = path_within(a, cur, entry, inside, cur == entry);
  out.cycle.insert(out.cycle.end(), back.begin(), back.end());
  return out;
}

PairStructure pair_structure(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "product over different alphabets");
  const std::uint32_t k = a.alphabet().size();
  PairStructure ps;
  std::unordered_map<std::uint64_t, State> index;
  auto key = [](State p, State q) { return (static_cast<std::uint64_t>(p) << 32) | q; };
  auto intern = [&](State p, State q) {
    auto [it, inserted] = index.emplace(key(p, q), static_cast<State>(ps.pairs.size()));
    if (inserted) ps.pairs.emplace_back(p, q);
    return it->second;
  };
  ps.initial = intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < ps.pairs.size(); ++i) {
    auto [p, q] = ps.pairs[i];
    for (Symbol c = 0; c < k; ++c) {
      State t = intern(a.next(p, c), b.next(q, c));
      ps.delta.push_back(t);
    }
  }
  return ps;
}

}  // namespace detail
}  // namespace realset
