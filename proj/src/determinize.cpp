#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "graph.hpp"
#include "realset/automaton.hpp"

namespace realset {

namespace {

std::atomic<std::uint64_t> g_calls{0}, g_words{0}, g_disagreements{0};

std::string key_of(const StateSet& s, const StateSet& o) {
  std::string key;
  key.reserve((s.size() + o.size() + 1) * sizeof(State));
  auto put = [&](State q) { key.append(reinterpret_cast<const char*>(&q), sizeof q); };
  for (State q : s) put(q);
  put(~State{0});
  for (State q : o) put(q);
  return key;
}

OmegaAutomaton breakpoint(const NondetAutomaton& n, const DeterminizeOptions& opts) {
  const std::uint32_t k = n.alphabet.size();
  std::vector<std::pair<StateSet, StateSet>> states;
  std::unordered_map<std::string, State> index;
  auto intern = [&](StateSet s, StateSet o) {
    auto key = key_of(s, o);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (states.size() >= opts.max_states) throw Error(ErrorCode::BlowUp, "determinization exceeds state bound");
    State id = static_cast<State>(states.size());
    index.emplace(std::move(key), id);
    states.emplace_back(std::move(s), std::move(o));
    return id;
  };
  StateSet init = n.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  intern(init, {});

  std::vector<State> delta;
  std::vector<char> mark(n.num_states, 0);
  auto post = [&](const StateSet& from, Symbol c, bool only_good) {
    StateSet out;
    for (State q : from)
      for (State t : n.successors(q, c))
        if (!mark[t] && (!only_good || n.good[t])) {
          mark[t] = 1;
          out.push_back(t);
        }
    for (State t : out) mark[t] = 0;
    std::sort(out.begin(), out.end());
    return out;
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (Symbol c = 0; c < k; ++c) {
      // copies: intern may reallocate `states`
      StateSet s = states[i].first, o = states[i].second;
      StateSet s2 = post(s, c, false);
      StateSet o2 = o.empty() ? post(s, c, true) : post(o, c, true);
      delta.push_back(intern(std::move(s2), std::move(o2)));
    }
  }
  std::vector<bool> rejecting(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) rejecting[i] = states[i].second.empty();
  return OmegaAutomaton(n.alphabet, states.size(), 0, std::move(delta), Acceptance::cobuchi(std::move(rejecting)));
}

void validate(const NondetAutomaton& n, const OmegaAutomaton& d, const DeterminizeOptions& opts) {
  g_calls.fetch_add(1);
  for (const auto& w : lasso_battery(n.alphabet, opts.battery_words, opts.seed)) {
    g_words.fetch_add(1);
    if (member_up(d, w) != member_nondet(n, w)) {
      g_disagreements.fetch_add(1);
      throw Error(ErrorCode::ValidationFailed, "determinized automaton disagrees with its input on a battery word");
    }
  }
}

}  // namespace

NondetAutomaton as_cobuchi(const NondetAutomaton& n) {
  if (n.condition == RunCondition::CoBuchi) return n;
  std::vector<std::vector<State>> succ(n.num_states);
  for (State q = 0; q < n.num_states; ++q) {
    for (Symbol c = 0; c < n.alphabet.size(); ++c)
      for (State t : n.successors(q, c)) succ[q].push_back(t);
    std::sort(succ[q].begin(), succ[q].end());
    succ[q].erase(std::unique(succ[q].begin(), succ[q].end()), succ[q].end());
  }
  auto sccs = detail::strongly_connected(succ);
  for (std::size_t i = 0; i < sccs.members.size(); ++i) {
    if (!sccs.nontrivial[i]) continue;
    const auto& m = sccs.members[i];
    for (State q : m)
      if (n.good[q] != n.good[m.front()])
        throw Error(ErrorCode::Unsupported, "Buchi run condition is not SCC-uniform; cannot determinize");
  }
  NondetAutomaton out = n;
  out.condition = RunCondition::CoBuchi;
  return out;
}

ValidationStats validation_stats() { return {g_calls.load(), g_words.load(), g_disagreements.load()}; }

bool member_nondet(const NondetAutomaton& n, const Lasso& word) {
  if (word.cycle.empty()) throw Error(ErrorCode::InvalidArgument, "lasso cycle must be nonempty");
  const std::size_t p = word.prefix.size(), len = p + word.cycle.size();
  auto symbol_at = [&](std::size_t i) { return i < p ? word.prefix[i] : word.cycle[i - p]; };
  auto next_pos = [&](std::size_t i) { return i + 1 < len ? i + 1 : p; };
  // product node = position * num_states + state
  const std::size_t total = len * n.num_states;
  std::vector<std::vector<State>> succ(total);
  std::vector<bool> reach(total, false);
  std::vector<State> todo;
  for (State q : n.initial) {
    if (!reach[q]) {
      reach[q] = true;
      todo.push_back(q);
    }
  }
  while (!todo.empty()) {
    State v = todo.back();
    todo.pop_back();
    std::size_t i = v / n.num_states;
    State q = static_cast<State>(v % n.num_states);
    Symbol c = symbol_at(i);
    if (c >= n.alphabet.size()) throw Error(ErrorCode::InvalidArgument, "symbol out of range");
    for (State t : n.successors(q, c)) {
      State w = static_cast<State>(next_pos(i) * n.num_states + t);
      succ[v].push_back(w);
      if (!reach[w]) {
        reach[w] = true;
        todo.push_back(w);
      }
    }
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  auto good = [&](State v) { return n.good[v % n.num_states]; };
  std::vector<bool> allowed = reach;
  if (n.condition == RunCondition::CoBuchi)
    for (std::size_t v = 0; v < total; ++v) allowed[v] = allowed[v] && good(static_cast<State>(v));
  auto sccs = detail::strongly_connected(succ, allowed);
  for (std::size_t i = 0; i < sccs.members.size(); ++i) {
    if (!sccs.nontrivial[i]) continue;
    if (n.condition == RunCondition::CoBuchi) return true;
    const auto& m = sccs.members[i];
    if (std::any_of(m.begin(), m.end(), good)) return true;
  }
  return false;
}

OmegaAutomaton determinize_cobuchi(const NondetAutomaton& n, const DeterminizeOptions& opts) {
  auto c = as_cobuchi(n);
  auto d = trim(breakpoint(c, opts));
  validate(c, d, opts);
  return d;
}

OmegaAutomaton determinize_to_weak(const NondetAutomaton& n, const DeterminizeOptions& opts) {
  auto c = as_cobuchi(n);
  auto d = trim(breakpoint(c, opts));
  // an SCC becomes accepting iff it contains a loop avoiding the rejecting states
  auto succ = detail::successor_lists(d);
  auto sccs = detail::strongly_connected(succ);
  std::vector<bool> avoid(d.num_states());
  for (State q = 0; q < d.num_states(); ++q) avoid[q] = !d.acceptance().marked[q];
  auto inner = detail::strongly_connected(succ, avoid);
  std::vector<bool> scc_accepting(sccs.members.size(), false);
  for (std::size_t j = 0; j < inner.members.size(); ++j)
    if (inner.nontrivial[j]) scc_accepting[sccs.comp[inner.members[j].front()]] = true;
  std::vector<bool> marked(d.num_states());
  for (State q = 0; q < d.num_states(); ++q) marked[q] = scc_accepting[sccs.comp[q]];
  auto w = minimize_weak(d.with_acceptance(Acceptance::weak(std::move(marked))));
  validate(c, w, opts);
  return w;
}

Lasso lasso_of(const Alphabet& alphabet, const std::vector<UPWord>& tracks) {
  if (tracks.size() != alphabet.arity()) throw Error(ErrorCode::InvalidArgument, "track count mismatch");
  std::size_t int_len = 0, pre_len = 0, per_len = 1;
  for (const auto& w : tracks) {
    if (!(w.base == alphabet.base())) throw Error(ErrorCode::InvalidArgument, "word base differs from alphabet");
    w.validate();
    int_len = std::max(int_len, w.int_digits.size());
    pre_len = std::max(pre_len, w.frac_prefix.size());
    per_len = std::lcm(per_len, w.frac_period.size());
  }
  Lasso out;
  std::vector<Digit> tuple(tracks.size());
  for (std::size_t i = 0; i < int_len; ++i) {
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      const auto& d = tracks[t].int_digits;
      std::size_t pad = int_len - d.size();
      tuple[t] = i < pad ? d.front() : d[i - pad];
    }
    out.prefix.push_back(alphabet.encode(tuple));
  }
  out.prefix.push_back(alphabet.separator());
  auto frac_digit = [&](const UPWord& w, std::size_t i) {
    if (i < w.frac_prefix.size()) return w.frac_prefix[i];
    return w.frac_period[(i - w.frac_prefix.size()) % w.frac_period.size()];
  };
  for (std::size_t i = 0; i < pre_len + per_len; ++i) {
    for (std::size_t t = 0; t < tracks.size(); ++t) tuple[t] = frac_digit(tracks[t], i);
    (i < pre_len ? out.prefix : out.cycle).push_back(alphabet.encode(tuple));
  }
  return out;
}

std::vector<Lasso> lasso_battery(const Alphabet& alphabet, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Base base = alphabet.base();
  const std::uint32_t r = base.value();
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  static const long long dens[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 25, 27, 36};
  std::vector<Lasso> out;
  out.reserve(count);
  while (out.size() < count) {
    if (uniform(0, 9) < 6) {
      std::vector<UPWord> tracks;
      for (unsigned t = 0; t < alphabet.arity(); ++t) {
        long long den = dens[uniform(0, std::size(dens) - 1)];
        long long num = static_cast<long long>(uniform(0, 8 * den)) - 4 * den;
        UPWord w = encode_rational(Rational(num, den), base);
        if (uniform(0, 2) == 0) {
          if (auto d = dual_of(w)) w = *d;
        }
        for (auto extra = uniform(0, 2); extra > 0; --extra) w.int_digits.insert(w.int_digits.begin(), w.int_digits[0]);
        tracks.push_back(std::move(w));
      }
      out.push_back(lasso_of(alphabet, tracks));
    } else {
      // unconstrained words, mostly shaped like encodings
      Lasso w;
      const auto digits = alphabet.digit_symbols();
      auto lead = uniform(0, 3);
      for (std::size_t i = 0, n = uniform(0, 4); i < n; ++i) {
        Symbol s = static_cast<Symbol>(uniform(0, digits - 1));
        if (i == 0 && lead > 0) s = alphabet.uniform(uniform(0, 1) ? 0 : r - 1);
        w.prefix.push_back(s);
      }
      auto shape = uniform(0, 9);
      if (shape < 8) w.prefix.push_back(alphabet.separator());
      for (std::size_t i = 0, n = uniform(0, 3); i < n; ++i)
        w.prefix.push_back(static_cast<Symbol>(uniform(0, digits - 1)));
      if (shape == 8) w.prefix.push_back(alphabet.separator());
      for (std::size_t i = 0, n = uniform(1, 3); i < n; ++i)
        w.cycle.push_back(static_cast<Symbol>(uniform(0, shape == 9 ? digits : digits - 1)));
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace realset
