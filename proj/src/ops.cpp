#include <algorithm>
#include <deque>

#include "graph.hpp"
#include "realset/automaton.hpp"

namespace realset {

namespace {

using detail::Clause;

bool buchi_like(AcceptanceKind k) { return k == AcceptanceKind::Weak || k == AcceptanceKind::Buchi; }

/// Accepting set when the automaton is read as Buchi (Weak or Buchi only).
bool accepting_state(const OmegaAutomaton& a, State q) { return a.acceptance().marked[q]; }

/// Rejecting set when read as co-Buchi (Weak or CoBuchi only).
bool rejecting_state(const OmegaAutomaton& a, State q) {
  return a.acceptance().kind == AcceptanceKind::CoBuchi ? a.acceptance().marked[q] : !a.acceptance().marked[q];
}

OmegaAutomaton from_pairs(const Alphabet& alphabet, const detail::PairStructure& ps, Acceptance acc) {
  return OmegaAutomaton(alphabet, ps.pairs.size(), ps.initial, ps.delta, std::move(acc));
}

/// Product with a flag cycling between the two accepting sets (Buchi and Buchi).
OmegaAutomaton buchi_intersection(const OmegaAutomaton& a, const OmegaAutomaton& b, bool dual) {
  const std::uint32_t k = a.alphabet().size();
  auto ps = detail::pair_structure(a, b);
  const std::size_t m = ps.pairs.size();
  auto good_a = [&](State p) { return dual ? rejecting_state(a, p) : accepting_state(a, p); };
  auto good_b = [&](State q) { return dual ? rejecting_state(b, q) : accepting_state(b, q); };
  std::vector<State> delta(2 * m * k);
  std::vector<bool> marked(2 * m, false);
  for (std::size_t i = 0; i < m; ++i) {
    auto [p, q] = ps.pairs[i];
    for (int f = 0; f < 2; ++f) {
      int nf = f == 0 ? (good_a(p) ? 1 : 0) : (good_b(q) ? 0 : 1);
      for (Symbol c = 0; c < k; ++c)
        delta[(2 * i + f) * k + c] = static_cast<State>(2 * ps.delta[i * k + c] + nf);
    }
    marked[2 * i + 1] = good_b(q);
  }
  Acceptance acc = dual ? Acceptance::cobuchi(std::move(marked)) : Acceptance::buchi(std::move(marked));
  return trim(OmegaAutomaton(a.alphabet(), 2 * m, static_cast<State>(2 * ps.initial), std::move(delta), acc));
}

OmegaAutomaton muller_product(const OmegaAutomaton& a, const OmegaAutomaton& b, BoolOp op) {
  auto ps = detail::pair_structure(a, b);
  OmegaAutomaton shape = from_pairs(a.alphabet(), ps, Acceptance::weak(std::vector<bool>(ps.pairs.size(), false)));
  std::vector<StateSet> family;
  for (const auto& loop : detail::enumerate_all_loops(shape)) {
    StateSet pa, pb;
    for (State s : loop) {
      pa.push_back(ps.pairs[s].first);
      pb.push_back(ps.pairs[s].second);
    }
    std::sort(pa.begin(), pa.end());
    pa.erase(std::unique(pa.begin(), pa.end()), pa.end());
    std::sort(pb.begin(), pb.end());
    pb.erase(std::unique(pb.begin(), pb.end()), pb.end());
    bool x = a.acceptance().accepts_loop(pa), y = b.acceptance().accepts_loop(pb);
    if (op == BoolOp::And ? (x && y) : (x || y)) family.push_back(loop);
  }
  return shape.with_acceptance(Acceptance::muller(ps.pairs.size(), std::move(family)));
}

std::vector<std::vector<State>> pair_successors(const detail::PairStructure& ps, std::uint32_t k) {
  std::vector<std::vector<State>> succ(ps.pairs.size());
  for (std::size_t i = 0; i < ps.pairs.size(); ++i) {
    auto& s = succ[i];
    s.assign(ps.delta.begin() + static_cast<std::ptrdiff_t>(i * k),
             ps.delta.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return succ;
}

Clause lift(const detail::PairStructure& ps, const Clause& x, const Clause& y) {
  const std::size_t m = ps.pairs.size();
  Clause c{std::vector<bool>(m), {}};
  for (std::size_t i = 0; i < m; ++i) c.allowed[i] = x.allowed[ps.pairs[i].first] && y.allowed[ps.pairs[i].second];
  for (const auto& v : x.visits) {
    std::vector<bool> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = v[ps.pairs[i].first];
    c.visits.push_back(std::move(w));
  }
  for (const auto& v : y.visits) {
    std::vector<bool> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = v[ps.pairs[i].second];
    c.visits.push_back(std::move(w));
  }
  return c;
}

/// A lasso accepted by `a` and rejected by `b`, if any.
std::optional<Lasso> difference_witness(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  auto ps = detail::pair_structure(a, b);
  const std::uint32_t k = a.alphabet().size();
  auto succ = pair_successors(ps, k);
  std::vector<bool> all(ps.pairs.size(), true);
  auto pos = detail::positive_clauses(a);
  auto neg = detail::negative_clauses(b);
  for (const auto& x : pos)
    for (const auto& y : neg) {
      auto loop = detail::find_loop(succ, lift(ps, x, y), all);
      if (!loop) continue;
      auto shape = from_pairs(a.alphabet(), ps, Acceptance::weak(std::vector<bool>(ps.pairs.size(), false)));
      return detail::lasso_through(shape, ps.initial, *loop);
    }
  return std::nullopt;
}

}  // namespace

OmegaAutomaton product(const OmegaAutomaton& a, const OmegaAutomaton& b, BoolOp op) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "product over different alphabets");
  using K = AcceptanceKind;
  const K ka = a.acceptance().kind, kb = b.acceptance().kind;
  auto ps = detail::pair_structure(a, b);
  const std::size_t m = ps.pairs.size();
  auto lifted = [&](auto pred) {
    std::vector<bool> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = pred(ps.pairs[i].first, ps.pairs[i].second);
    return v;
  };
  if (ka == K::Weak && kb == K::Weak) {
    auto marked = lifted([&](State p, State q) {
      return op == BoolOp::And ? (accepting_state(a, p) && accepting_state(b, q))
                               : (accepting_state(a, p) || accepting_state(b, q));
    });
    return from_pairs(a.alphabet(), ps, Acceptance::weak(std::move(marked)));
  }
  const bool cob_a = ka == K::Weak || ka == K::CoBuchi, cob_b = kb == K::Weak || kb == K::CoBuchi;
  const bool buc_a = buchi_like(ka), buc_b = buchi_like(kb);
  if (op == BoolOp::And) {
    if (cob_a && cob_b)
      return from_pairs(a.alphabet(), ps, Acceptance::cobuchi(lifted([&](State p, State q) {
                          return rejecting_state(a, p) || rejecting_state(b, q);
                        })));
    if (ka == K::Weak && kb == K::Buchi)
      return from_pairs(a.alphabet(), ps, Acceptance::buchi(lifted([&](State p, State q) {
                          return accepting_state(a, p) && accepting_state(b, q);
                        })));
    if (ka == K::Buchi && kb == K::Weak) return product(b, a, op);
    if (buc_a && buc_b) return buchi_intersection(a, b, false);
  } else {
    if (buc_a && buc_b)
      return from_pairs(a.alphabet(), ps, Acceptance::buchi(lifted([&](State p, State q) {
                          return accepting_state(a, p) || accepting_state(b, q);
                        })));
    if (ka == K::Weak && kb == K::CoBuchi)
      return from_pairs(a.alphabet(), ps, Acceptance::cobuchi(lifted([&](State p, State q) {
                          return rejecting_state(a, p) && rejecting_state(b, q);
                        })));
    if (ka == K::CoBuchi && kb == K::Weak) return product(b, a, op);
    if (cob_a && cob_b) return buchi_intersection(a, b, true);
  }
  return muller_product(a, b, op);
}

OmegaAutomaton complement(const OmegaAutomaton& a) {
  const auto& acc = a.acceptance();
  switch (acc.kind) {
    case AcceptanceKind::Weak: {
      std::vector<bool> flipped(acc.marked.size());
      for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] = !acc.marked[i];
      return a.with_acceptance(Acceptance::weak(std::move(flipped)));
    }
    case AcceptanceKind::Buchi:
      return a.with_acceptance(Acceptance::cobuchi(acc.marked));
    case AcceptanceKind::CoBuchi:
      return a.with_acceptance(Acceptance::buchi(acc.marked));
    case AcceptanceKind::Muller: {
      auto t = trim(a);
      std::vector<StateSet> family;
      for (const auto& loop : detail::enumerate_all_loops(t))
        if (!t.acceptance().accepts_loop(loop)) family.push_back(loop);
      return t.with_acceptance(Acceptance::muller(t.num_states(), std::move(family)));
    }
  }
  return a;
}

std::optional<Lasso> find_lasso_from(const OmegaAutomaton& a, State from) {
  auto succ = detail::successor_lists(a);
  auto reach = detail::reachable_from(succ, from);
  for (const auto& clause : detail::positive_clauses(a)) {
    auto loop = detail::find_loop(succ, clause, reach);
    if (loop) return detail::lasso_through(a, from, *loop);
  }
  return std::nullopt;
}

std::optional<Lasso> emptiness(const OmegaAutomaton& a) { return find_lasso_from(a, a.initial()); }

Equivalence included(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "comparing different alphabets");
  auto w = difference_witness(a, b);
  return {!w.has_value(), w};
}

Equivalence equivalent(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  auto r = included(a, b);
  if (!r.equivalent) return r;
  return included(b, a);
}

bool member_up(const OmegaAutomaton& a, const Lasso& word) {
  if (word.cycle.empty()) throw Error(ErrorCode::InvalidArgument, "lasso cycle must be nonempty");
  for (Symbol c : word.prefix)
    if (c >= a.alphabet().size()) throw Error(ErrorCode::InvalidArgument, "symbol out of range");
  for (Symbol c : word.cycle)
    if (c >= a.alphabet().size()) throw Error(ErrorCode::InvalidArgument, "symbol out of range");
  State q = a.run(a.initial(), word.prefix);
  // iterate the cycle until its start state repeats
  std::vector<std::int64_t> seen_at(a.num_states(), -1);
  std::vector<State> starts;
  while (seen_at[q] < 0) {
    seen_at[q] = static_cast<std::int64_t>(starts.size());
    starts.push_back(q);
    q = a.run(q, word.cycle);
  }
  StateSet inf;
  for (std::size_t i = static_cast<std::size_t>(seen_at[q]); i < starts.size(); ++i) {
    State s = starts[i];
    for (Symbol c : word.cycle) {
      inf.push_back(s);
      s = a.next(s, c);
    }
  }
  std::sort(inf.begin(), inf.end());
  inf.erase(std::unique(inf.begin(), inf.end()), inf.end());
  return a.acceptance().accepts_loop(inf);
}

OmegaAutomaton trim(const OmegaAutomaton& a) {
  const std::uint32_t k = a.alphabet().size();
  std::vector<std::int64_t> id(a.num_states(), -1);
  std::vector<State> order{a.initial()};
  id[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol c = 0; c < k; ++c) {
      State t = a.next(order[i], c);
      if (id[t] < 0) {
        id[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  std::vector<State> delta(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol c = 0; c < k; ++c) delta[i * k + c] = static_cast<State>(id[a.next(order[i], c)]);
  const auto& acc = a.acceptance();
  Acceptance out;
  if (acc.kind == AcceptanceKind::Muller) {
    std::vector<StateSet> family;
    for (const auto& m : acc.family) {
      StateSet s;
      bool ok = true;
      for (State q : m) {
        if (id[q] < 0) {
          ok = false;
          break;
        }
        s.push_back(static_cast<State>(id[q]));
      }
      if (ok) family.push_back(std::move(s));
    }
    out = Acceptance::muller(order.size(), std::move(family));
  } else {
    out.kind = acc.kind;
    out.marked.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) out.marked[i] = acc.marked[order[i]];
  }
  return OmegaAutomaton(a.alphabet(), order.size(), 0, std::move(delta), std::move(out));
}

bool is_scc_uniform(const OmegaAutomaton& a) {
  if (a.acceptance().kind != AcceptanceKind::Weak) return false;
  auto sccs = detail::strongly_connected(detail::successor_lists(a));
  for (std::size_t i = 0; i < sccs.members.size(); ++i) {
    if (!sccs.nontrivial[i]) continue;
    const auto& m = sccs.members[i];
    bool first = a.acceptance().marked[m.front()];
    for (State q : m)
      if (a.acceptance().marked[q] != first) return false;
  }
  return true;
}

bool isomorphic(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) return false;
  auto x = trim(a), y = trim(b);
  if (x.num_states() != y.num_states() || x.delta() != y.delta()) return false;
  const auto &ax = x.acceptance(), &ay = y.acceptance();
  return ax.kind == ay.kind && ax.marked == ay.marked && ax.family == ay.family;
}

std::vector<bool> live_states(const OmegaAutomaton& a) {
  auto succ = detail::successor_lists(a);
  const std::size_t n = a.num_states();
  std::vector<bool> live(n, false);
  for (const auto& clause : detail::positive_clauses(a)) {
    auto sccs = detail::strongly_connected(succ, clause.allowed);
    for (std::size_t i = 0; i < sccs.members.size(); ++i) {
      if (!sccs.nontrivial[i]) continue;
      const auto& m = sccs.members[i];
      bool ok = std::all_of(clause.visits.begin(), clause.visits.end(), [&](const std::vector<bool>& v) {
        return std::any_of(m.begin(), m.end(), [&](State q) { return v[q]; });
      });
      if (ok)
        for (State q : m) live[q] = true;
    }
  }
  std::vector<std::vector<State>> pred(n);
  for (State q = 0; q < n; ++q)
    for (State t : succ[q]) pred[t].push_back(q);
  std::vector<State> todo;
  for (State q = 0; q < n; ++q)
    if (live[q]) todo.push_back(q);
  while (!todo.empty()) {
    State q = todo.back();
    todo.pop_back();
    for (State p : pred[q])
      if (!live[p]) {
        live[p] = true;
        todo.push_back(p);
      }
  }
  return live;
}

OmegaAutomaton safety_closure(const OmegaAutomaton& a) {
  return trim(a).with_acceptance(Acceptance::weak(live_states(trim(a))));
}

OmegaAutomaton inverse_homomorphism(const OmegaAutomaton& a, const Alphabet& target,
                                    const std::function<Symbol(Symbol)>& map) {
  const std::uint32_t k = target.size();
  std::vector<State> delta(a.num_states() * k);
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol c = 0; c < k; ++c) {
      Symbol img = map(c);
      if (img >= a.alphabet().size()) throw Error(ErrorCode::InvalidArgument, "homomorphism image out of range");
      delta[q * k + c] = a.next(q, img);
    }
  return OmegaAutomaton(target, a.num_states(), a.initial(), std::move(delta), a.acceptance());
}

}  // namespace realset
