#include <algorithm>

#include "graph.hpp"
#include "realset/automaton.hpp"

namespace realset {

const char* to_string(TopClassKind kind) {
  switch (kind) {
    case TopClassKind::Weak: return "WEAK";
    case TopClassKind::DetBuchiOnly: return "DET_BUCHI_ONLY";
    case TopClassKind::DetCoBuchiOnly: return "DET_COBUCHI_ONLY";
    case TopClassKind::Beyond: return "BEYOND";
  }
  return "?";
}

namespace {

/// An SCC meeting `hit` that contains a nontrivial strongly connected part avoiding `hit`.
std::optional<LoopWitness> nested_avoiding(const std::vector<std::vector<State>>& succ,
                                           const std::vector<bool>& reach, const std::vector<bool>& hit,
                                           bool inner_accepting) {
  auto sccs = detail::strongly_connected(succ, reach);
  for (std::size_t i = sccs.members.size(); i-- > 0;) {
    if (!sccs.nontrivial[i]) continue;
    const auto& m = sccs.members[i];
    if (std::none_of(m.begin(), m.end(), [&](State q) { return hit[q]; })) continue;
    std::vector<bool> inside(succ.size(), false);
    for (State q : m) inside[q] = !hit[q];
    auto sub = detail::strongly_connected(succ, inside);
    for (std::size_t j = sub.members.size(); j-- > 0;)
      if (sub.nontrivial[j]) return LoopWitness{sub.members[j], m, inner_accepting};
  }
  return std::nullopt;
}

bool subset(const StateSet& a, const StateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TopClass classify(const OmegaAutomaton& a) {
  auto succ = detail::successor_lists(a);
  auto reach = detail::reachable_from(succ, a.initial());
  const auto& acc = a.acceptance();
  switch (acc.kind) {
    case AcceptanceKind::Weak:
    case AcceptanceKind::Buchi: {
      auto w = nested_avoiding(succ, reach, acc.marked, false);
      if (!w) return {TopClassKind::Weak, std::nullopt};
      return {TopClassKind::DetBuchiOnly, w};
    }
    case AcceptanceKind::CoBuchi: {
      auto w = nested_avoiding(succ, reach, acc.marked, true);
      if (!w) return {TopClassKind::Weak, std::nullopt};
      return {TopClassKind::DetCoBuchiOnly, w};
    }
    case AcceptanceKind::Muller: {
      // accepting inside rejecting breaks Buchi; rejecting inside accepting breaks co-Buchi
      auto loops = detail::enumerate_all_loops(a);
      std::vector<bool> accepted(loops.size());
      for (std::size_t i = 0; i < loops.size(); ++i) accepted[i] = acc.accepts_loop(loops[i]);
      std::optional<LoopWitness> acc_in_rej, rej_in_acc;
      for (std::size_t i = 0; i < loops.size(); ++i)
        for (std::size_t j = 0; j < loops.size(); ++j) {
          if (i == j || accepted[i] == accepted[j] || !subset(loops[i], loops[j])) continue;
          if (accepted[i] && !acc_in_rej) acc_in_rej = LoopWitness{loops[i], loops[j], true};
          if (!accepted[i] && !rej_in_acc) rej_in_acc = LoopWitness{loops[i], loops[j], false};
        }
      if (acc_in_rej && rej_in_acc) return {TopClassKind::Beyond, acc_in_rej};
      if (acc_in_rej) return {TopClassKind::DetCoBuchiOnly, acc_in_rej};
      if (rej_in_acc) return {TopClassKind::DetBuchiOnly, rej_in_acc};
      return {TopClassKind::Weak, std::nullopt};
    }
  }
  return {};
}

}  // namespace realset
