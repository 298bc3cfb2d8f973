#include <algorithm>
#include <map>

#include "graph.hpp"
#include "realset/automaton.hpp"

namespace realset {

namespace {

/// Maximal coloring: colors never increase along transitions, nontrivial
/// accepting SCCs get even colors, rejecting ones odd, each as large as allowed.
std::vector<std::uint32_t> maximal_coloring(const OmegaAutomaton& a) {
  auto succ = detail::successor_lists(a);
  auto sccs = detail::strongly_connected(succ);
  const std::uint32_t top = 2 * static_cast<std::uint32_t>(a.num_states()) + 2;
  std::vector<std::uint32_t> color(a.num_states(), top);
  // members are listed sinks first, so successors outside an SCC are colored already
  for (std::size_t i = 0; i < sccs.members.size(); ++i) {
    const auto& m = sccs.members[i];
    std::uint32_t low = top;
    for (State q : m)
      for (State t : succ[q])
        if (sccs.comp[t] != static_cast<std::int32_t>(i)) low = std::min(low, color[t]);
    std::uint32_t c = low;
    if (sccs.nontrivial[i]) {
      bool acc = a.acceptance().marked[m.front()];
      if ((c % 2 == 0) != acc) c = c - 1;  // stays positive: top exceeds twice the SCC count
    }
    for (State q : m) color[q] = c;
  }
  return color;
}

}  // namespace

OmegaAutomaton minimize_weak(const OmegaAutomaton& input) {
  if (input.acceptance().kind != AcceptanceKind::Weak)
    throw Error(ErrorCode::InvalidArgument, "minimize_weak needs weak acceptance");
  auto a = trim(input);
  if (!is_scc_uniform(a)) throw Error(ErrorCode::PreconditionFailed, "weak acceptance is not SCC-uniform");
  auto color = maximal_coloring(a);
  const std::size_t n = a.num_states();
  const std::uint32_t k = a.alphabet().size();

  std::vector<std::uint32_t> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = color[q] % 2;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig(k + 1);
    for (State q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (Symbol c = 0; c < k; ++c) sig[c + 1] = cls[a.next(q, c)];
      auto [it, inserted] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
      next[q] = it->second;
    }
    cls.swap(next);
    if (ids.size() == count) break;
    count = ids.size();
  }

  std::vector<State> delta(count * k);
  std::vector<bool> marked(count);
  for (State q = 0; q < n; ++q) {
    marked[cls[q]] = color[q] % 2 == 0;
    for (Symbol c = 0; c < k; ++c) delta[cls[q] * k + c] = cls[a.next(q, c)];
  }
  OmegaAutomaton quotient(a.alphabet(), count, cls[a.initial()], std::move(delta),
                          Acceptance::weak(std::move(marked)));
  return trim(quotient);
}

OmegaAutomaton reduce(const OmegaAutomaton& input) {
  const auto kind = input.acceptance().kind;
  if (kind == AcceptanceKind::Weak) return minimize_weak(input);
  if (kind == AcceptanceKind::Muller) return trim(input);
  auto a = trim(input);
  const std::size_t n = a.num_states();
  const std::uint32_t k = a.alphabet().size();
  const bool cobuchi = kind == AcceptanceKind::CoBuchi;
  auto live = live_states(a);
  auto succ = detail::successor_lists(a);
  auto sccs = detail::strongly_connected(succ);
  // marks only matter on cycles; co-Buchi SCCs without a clean loop reject outright
  std::vector<bool> avoid(n);
  for (State q = 0; q < n; ++q) avoid[q] = a.acceptance().marked[q] != cobuchi;
  auto inner = detail::strongly_connected(succ, avoid);
  std::vector<bool> clean(sccs.members.size(), false);
  for (std::size_t j = 0; j < inner.members.size(); ++j)
    if (inner.nontrivial[j]) clean[sccs.comp[inner.members[j].front()]] = true;
  std::vector<std::uint32_t> cls(n);
  for (State q = 0; q < n; ++q) {
    const auto c = sccs.comp[q];
    bool m = a.acceptance().marked[q];
    if (!live[q] || !sccs.nontrivial[c]) m = false;
    else if (cobuchi && !clean[c]) m = true;
    cls[q] = live[q] ? (m ? 2 : 1) : 0;
  }
  std::vector<bool> mark(n);
  for (State q = 0; q < n; ++q) mark[q] = cls[q] == 2;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig(k + 1);
    for (State q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (Symbol c = 0; c < k; ++c) sig[c + 1] = cls[a.next(q, c)];
      // all dead states collapse regardless of their successors
      if (!live[q]) std::fill(sig.begin() + 1, sig.end(), 0);
      auto [it, inserted] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
      next[q] = it->second;
    }
    cls.swap(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  std::vector<State> delta(count * k);
  std::vector<bool> marked(count);
  for (State q = 0; q < n; ++q) {
    marked[cls[q]] = live[q] ? mark[q] : cobuchi;
    for (Symbol c = 0; c < k; ++c) delta[cls[q] * k + c] = live[q] ? cls[a.next(q, c)] : cls[q];
  }
  OmegaAutomaton quotient(a.alphabet(), count, cls[a.initial()], std::move(delta),
                          Acceptance{kind, std::move(marked), {}});
  return trim(quotient);
}

}  // namespace realset
