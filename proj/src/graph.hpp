#pragma once

// Internal graph helpers shared by the automaton algorithms.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "realset/automaton.hpp"

namespace realset::detail {

/// Deduplicated successor lists of the transition graph.
inline std::vector<std::vector<State>> successor_lists(const OmegaAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::uint32_t k = a.alphabet().size();
  std::vector<std::vector<State>> out(n);
  for (State q = 0; q < n; ++q) {
    auto& s = out[q];
    s.reserve(k);
    for (Symbol c = 0; c < k; ++c) s.push_back(a.next(q, c));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

struct SccDecomposition {
  std::vector<std::int32_t> comp;       // -1 for states outside the considered subgraph
  std::vector<StateSet> members;        // in reverse topological order (sinks first)
  std::vector<bool> nontrivial;         // holds a cycle
};

/// Tarjan's algorithm on the subgraph induced by `allowed` (all states if empty).
inline SccDecomposition strongly_connected(const std::vector<std::vector<State>>& succ,
                                           const std::vector<bool>& allowed = {}) {
  const std::size_t n = succ.size();
  auto in = [&](State q) { return allowed.empty() || allowed[q]; };
  SccDecomposition out;
  out.comp.assign(n, -1);
  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::int64_t counter = 0;
  struct Frame {
    State q;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (State root = 0; root < n; ++root) {
    if (!in(root) || index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& s = succ[f.q];
      if (f.next < s.size()) {
        State t = s[f.next++];
        if (!in(t)) continue;
        if (index[t] < 0) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.q] = std::min(low[f.q], index[t]);
        }
        continue;
      }
      State q = f.q;
      call.pop_back();
      if (!call.empty()) low[call.back().q] = std::min(low[call.back().q], low[q]);
      if (low[q] == index[q]) {
        StateSet comp;
        State t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[t] = false;
          comp.push_back(t);
          out.comp[t] = static_cast<std::int32_t>(out.members.size());
        } while (t != q);
        std::sort(comp.begin(), comp.end());
        bool cyclic = comp.size() > 1 ||
                      std::binary_search(succ[q].begin(), succ[q].end(), q);
        out.members.push_back(std::move(comp));
        out.nontrivial.push_back(cyclic);
      }
    }
  }
  return out;
}

inline std::vector<bool> reachable_from(const std::vector<std::vector<State>>& succ, State start) {
  std::vector<bool> seen(succ.size(), false);
  std::vector<State> todo{start};
  seen[start] = true;
  while (!todo.empty()) {
    State q = todo.back();
    todo.pop_back();
    for (State t : succ[q])
      if (!seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
  }
  return seen;
}

/// A loop condition in conjunctive form: the infinity set stays inside
/// `allowed` and meets every set in `visits`.
struct Clause {
  std::vector<bool> allowed;
  std::vector<std::vector<bool>> visits;
};

std::vector<Clause> positive_clauses(const OmegaAutomaton& a);
std::vector<Clause> negative_clauses(const OmegaAutomaton& a);

/// Strongly connected subsets (loops) of one SCC, bounded by muller_family_bound.
std::vector<StateSet> enumerate_loops(const std::vector<std::vector<State>>& succ, const StateSet& scc);

/// All loops of all reachable SCCs.
std::vector<StateSet> enumerate_all_loops(const OmegaAutomaton& a);

/// A nontrivial SCC satisfying the clause among states reachable from `from`.
std::optional<StateSet> find_loop(const std::vector<std::vector<State>>& succ, const Clause& clause,
                                  const std::vector<bool>& reachable);

/// Lasso from `from` whose run ends up cycling through exactly `loop`.
Lasso lasso_through(const OmegaAutomaton& a, State from, const StateSet& loop);

/// Reachable pair structure of two automata over one alphabet.
struct PairStructure {
  std::vector<std::pair<State, State>> pairs;
  std::vector<State> delta;
  State initial = 0;
};
PairStructure pair_structure(const OmegaAutomaton& a, const OmegaAutomaton& b);

}  // namespace realset::detail
