#include <algorithm>
#include <cmath>
#include <functional>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "graph.hpp"
#include "realset/arith.hpp"
#include "realset/rna.hpp"

namespace realset {

namespace {

Alphabet pair_alphabet(Base base) { return Alphabet(base, 2); }

/// Automaton over `target` (arity 2) reading only track `track` with `a`.
OmegaAutomaton on_track(const OmegaAutomaton& a, const Alphabet& target, unsigned track) {
  const Alphabet& src = a.alphabet();
  return inverse_homomorphism(a, target, [&](Symbol s) {
    if (target.is_separator(s)) return src.separator();
    return src.uniform(target.component(s, track));
  });
}

RNA empty_set(Base base, unsigned arity) { return complement_set(validity_automaton(base, arity)); }

bool is_sign_tuple(const Alphabet& al, Symbol s) {
  if (al.is_separator(s)) return false;
  const Digit top = al.base().max_digit();
  auto ds = al.decode(s);
  return std::all_of(ds.begin(), ds.end(), [&](Digit d) { return d == 0 || d == top; });
}

}  // namespace

bool Domain::contains(const Rational& x) const {
  if (lo && (lo_closed ? x < *lo : x <= *lo)) return false;
  if (hi && (hi_closed ? x > *hi : x >= *hi)) return false;
  return true;
}

RNA affine(const RNA& input, const Rational& a, const Rational& b) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "affine needs arity 1");
  const Base base = input.base();
  if (a.sign() == 0) {
    if (!emptiness(input.automaton)) return empty_set(base, 1);
    return atomic_linear({Rational(1)}, Cmp::Eq, b, base);
  }
  RNA r = saturate(input);
  Alphabet two = pair_alphabet(base);
  // y = a·x + b on tracks (x, y)
  auto relation = atomic_linear({a, Rational(-1)}, Cmp::Eq, -b, base);
  auto joint = product(relation.automaton, on_track(r.automaton, two, 0), BoolOp::And);
  return project_tracks(RNA{joint, true}, {1});
}

RNA clip(const RNA& r, const Domain& d) {
  const Base base = r.base();
  if (r.arity() != 1) throw Error(ErrorCode::InvalidArgument, "clip needs arity 1");
  if (d.lo && d.hi && *d.hi < *d.lo) throw Error(ErrorCode::InvalidArgument, "empty clipping domain");
  RNA out = r;
  if (d.lo) out = intersect(out, atomic_linear({Rational(1)}, d.lo_closed ? Cmp::Ge : Cmp::Gt, *d.lo, base));
  if (d.hi) out = intersect(out, atomic_linear({Rational(1)}, d.hi_closed ? Cmp::Le : Cmp::Lt, *d.hi, base));
  out.saturated = r.saturated;
  return out;
}

RNA clip(const RNA& r, const Rational& lo, const Rational& hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "clip needs lo <= hi");
  return clip(r, Domain::closed(lo, hi));
}

// ---------------------------------------------------------------------------
// Base conversion between r and r^l

RNA base_power_up(const RNA& input, unsigned l) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be >= 1");
  if (l == 1) return input;
  RNA r = saturate(input);
  const auto& a = r.automaton;
  const auto kind = a.acceptance().kind;
  if (kind == AcceptanceKind::Muller) throw Error(ErrorCode::Unsupported, "base conversion of Muller automata");
  const Alphabet& small = a.alphabet();
  const std::uint32_t rb = small.base().value();
  BigInt big_value = ipow(rb, l);
  if (big_value > 4096) throw Error(ErrorCode::BlowUp, "target base too large");
  const Base big_base(static_cast<std::uint32_t>(big_value));
  Alphabet big(big_base, small.arity());
  const unsigned n = small.arity();

  // expansion of a big symbol into l small symbols
  std::vector<std::vector<Symbol>> expand(big.digit_symbols());
  for (Symbol s = 0; s < big.digit_symbols(); ++s) {
    auto ds = big.decode(s);
    std::vector<std::vector<Digit>> tracks(n, std::vector<Digit>(l));
    for (unsigned t = 0; t < n; ++t) {
      Digit v = ds[t];
      for (unsigned i = l; i-- > 0;) {
        tracks[t][i] = v % rb;
        v /= rb;
      }
    }
    for (unsigned i = 0; i < l; ++i) {
      std::vector<Digit> tuple(n);
      for (unsigned t = 0; t < n; ++t) tuple[t] = tracks[t][i];
      expand[s].push_back(small.encode(tuple));
    }
  }
  const bool flagged = kind != AcceptanceKind::Weak;
  auto marked = [&](State q) { return a.acceptance().marked[q]; };
  // state id: 0 = start, then (q, flag) pairs
  std::map<std::pair<State, bool>, State> index;
  std::vector<std::pair<State, bool>> states;
  AutomatonBuilder b(big);
  State start = b.add_state();
  b.set_initial(start);
  auto intern = [&](State q, bool f) {
    auto key = std::make_pair(q, flagged && f);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    State id = b.add_state();
    index.emplace(key, id);
    states.push_back(key);
    return id;
  };
  auto run_block = [&](State q, Symbol s) {
    bool f = false;
    for (Symbol c : expand[s]) {
      q = a.next(q, c);
      f = f || marked(q);
    }
    return std::make_pair(q, f);
  };
  for (Symbol s = 0; s < big.digit_symbols(); ++s) {
    if (!is_sign_tuple(big, s)) continue;
    auto [q, f] = run_block(a.initial(), s);
    b.set_transition(start, s, intern(q, f));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    State from = static_cast<State>(i + 1);
    State q = states[i].first;
    for (Symbol s = 0; s < big.digit_symbols(); ++s) {
      auto [t, f] = run_block(q, s);
      b.set_transition(from, s, intern(t, f));
    }
    State t = a.next(q, small.separator());
    b.set_transition(from, big.separator(), intern(t, marked(t)));
  }
  std::vector<bool> acc(b.num_states(), kind == AcceptanceKind::CoBuchi);
  for (std::size_t i = 0; i < states.size(); ++i)
    acc[i + 1] = flagged ? states[i].second : marked(states[i].first);
  Acceptance out{kind, acc, {}};
  return normalize({b.build(out), true});
}

RNA base_power_down(const RNA& input, unsigned l) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be >= 1");
  if (l == 1) return input;
  const std::uint32_t big_value = input.base().value();
  std::uint32_t rb = 2;
  while (ipow(rb, l) < big_value) ++rb;
  if (ipow(rb, l) != big_value) throw Error(ErrorCode::InvalidArgument, "base is not an l-th power");
  RNA r = saturate(input);
  const auto& a = r.automaton;
  const auto kind = a.acceptance().kind;
  const Alphabet& big = a.alphabet();
  Alphabet small(Base(rb), big.arity());
  const unsigned n = big.arity();
  const std::uint32_t k = small.size();

  // partial block: number of symbols read and their digits per track
  struct Partial {
    State q;
    std::uint32_t count;
    std::vector<Digit> value;  // per track, base-r value of the digits read
    bool operator<(const Partial& o) const { return std::tie(q, count, value) < std::tie(o.q, o.count, o.value); }
  };
  auto push = [&](Partial p, Symbol c) {
    auto ds = small.decode(c);
    for (unsigned t = 0; t < n; ++t) p.value[t] = p.value[t] * rb + ds[t];
    if (++p.count == l) {
      p.q = a.next(p.q, big.encode(p.value));
      p.count = 0;
      std::fill(p.value.begin(), p.value.end(), 0);
    }
    return p;
  };
  // key 0: int phase (one partial per alignment guess), key 1: fraction phase
  using Key = std::pair<int, std::vector<Partial>>;
  std::map<Key, State> index;
  std::vector<Key> keys;
  AutomatonBuilder b(small);
  State start = b.add_state();
  b.set_initial(start);
  auto intern = [&](Key key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    State id = b.add_state();
    index.emplace(key, id);
    keys.push_back(std::move(key));
    return id;
  };
  for (Symbol c = 0; c < small.digit_symbols(); ++c) {
    if (!is_sign_tuple(small, c)) continue;
    auto ds = small.decode(c);
    std::vector<Digit> sign_block(n);
    for (unsigned t = 0; t < n; ++t) sign_block[t] = ds[t] == 0 ? 0 : big.base().max_digit();
    State q0 = a.next(a.initial(), big.encode(sign_block));
    std::vector<Partial> guesses;
    for (unsigned p = 0; p < l; ++p) {
      Partial part{q0, 0, std::vector<Digit>(n, 0)};
      for (unsigned i = 0; i <= p; ++i) part = push(part, c);
      guesses.push_back(part);
    }
    b.set_transition(start, c, intern({0, guesses}));
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const State from = static_cast<State>(i + 1);
    Key key = keys[i];
    for (Symbol c = 0; c < small.digit_symbols(); ++c) {
      std::vector<Partial> next;
      for (const auto& p : key.second) next.push_back(push(p, c));
      b.set_transition(from, c, intern({key.first, next}));
    }
    if (key.first == 0) {
      for (const auto& p : key.second)
        if (p.count == 0)
          b.set_transition(from, small.separator(),
                           intern({1, {Partial{a.next(p.q, big.separator()), 0, std::vector<Digit>(n, 0)}}}));
    }
  }
  const std::size_t total = b.num_states();
  auto frac_state = [&](std::size_t id) -> const Partial* {
    if (id == 0 || id > keys.size() || keys[id - 1].first != 1) return nullptr;
    return &keys[id - 1].second[0];
  };
  Acceptance acc;
  if (kind == AcceptanceKind::Muller) {
    auto shape = b.build(Acceptance::weak(std::vector<bool>(total, false)));
    std::vector<StateSet> family;
    for (const auto& loop : detail::enumerate_all_loops(shape)) {
      StateSet inf;
      bool frac = true;
      for (State s : loop) {
        const Partial* p = frac_state(s);
        if (!p) {
          frac = false;
          break;
        }
        if (p->count == 0) inf.push_back(p->q);
      }
      std::sort(inf.begin(), inf.end());
      inf.erase(std::unique(inf.begin(), inf.end()), inf.end());
      if (frac && a.acceptance().accepts_loop(inf)) family.push_back(loop);
    }
    return normalize({shape.with_acceptance(Acceptance::muller(shape.num_states(), family)), true});
  }
  std::vector<bool> marked(total, kind == AcceptanceKind::CoBuchi);
  for (std::size_t id = 0; id < total; ++id) {
    const Partial* p = frac_state(id);
    if (!p) continue;
    bool m = a.acceptance().marked[p->q];
    switch (kind) {
      case AcceptanceKind::Weak: marked[id] = m; break;
      case AcceptanceKind::Buchi: marked[id] = m && p->count == 0; break;
      case AcceptanceKind::CoBuchi: marked[id] = m && p->count == 0; break;
      default: break;
    }
  }
  (void)k;
  return normalize({b.build(Acceptance{kind, marked, {}}), true});
}

// ---------------------------------------------------------------------------
// Topology

RNA boundary(const RNA& input) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "boundary needs arity 1");
  RNA r = saturate(input);
  auto valid = validity_automaton(r.base(), 1);
  auto closure_of = [&](const RNA& s) {
    RNA cl{product(safety_closure(s.automaton), valid.automaton, BoolOp::And), false};
    return saturate(normalize(cl));
  };
  return intersect(closure_of(r), closure_of(complement_set(r)));
}

namespace {

/// Minimal sign prefix, no (r-1)^ω tail: one word per real (Buchi).
OmegaAutomaton canonical_words(Base base) {
  Alphabet al(base, 1);
  const Digit top = base.max_digit();
  AutomatonBuilder b(al);
  State init = b.add_state(), zero = b.add_state(), neg = b.add_state(), body = b.add_state(),
        frac_top = b.add_state(), frac_other = b.add_state();
  b.set_initial(init);
  b.set_transition(init, al.uniform(0), zero);
  b.set_transition(init, al.uniform(top), neg);
  for (Digit d = 0; d <= top; ++d) {
    if (d != 0) b.set_transition(zero, al.uniform(d), body);
    if (d != top) b.set_transition(neg, al.uniform(d), body);
    b.set_transition(body, al.uniform(d), body);
    State f = d == top ? frac_top : frac_other;
    b.set_transition(frac_top, al.uniform(d), f);
    b.set_transition(frac_other, al.uniform(d), f);
  }
  for (State q : {zero, neg, body}) b.set_transition(q, al.separator(), frac_other);
  std::vector<bool> acc(b.num_states(), false);
  acc[frac_other] = true;
  return b.build(Acceptance::buchi(acc));
}

struct CanonicalView {
  OmegaAutomaton automaton;
  std::vector<bool> live;
  std::vector<bool> on_cycle;
};

CanonicalView canonical_view(const RNA& r) {
  auto c = trim(product(r.automaton, canonical_words(r.base()), BoolOp::And));
  auto live = live_states(c);
  auto succ = detail::successor_lists(c);
  auto sccs = detail::strongly_connected(succ, live);
  std::vector<bool> on_cycle(c.num_states(), false);
  for (std::size_t i = 0; i < sccs.members.size(); ++i)
    if (sccs.nontrivial[i])
      for (State q : sccs.members[i]) on_cycle[q] = true;
  return {std::move(c), std::move(live), std::move(on_cycle)};
}

std::size_t live_edges(const CanonicalView& v, State q) {
  std::size_t count = 0;
  for (Symbol c = 0; c < v.automaton.alphabet().size(); ++c)
    if (v.live[v.automaton.next(q, c)]) ++count;
  return count;
}

Rational value_of_symbols(const Alphabet& al, const std::vector<Symbol>& prefix, const std::vector<Symbol>& cycle) {
  UPWord w;
  w.base = al.base();
  bool frac = false;
  for (Symbol s : prefix) {
    if (al.is_separator(s)) {
      frac = true;
      continue;
    }
    (frac ? w.frac_prefix : w.int_digits).push_back(al.component(s, 0));
  }
  for (Symbol s : cycle) w.frac_period.push_back(al.component(s, 0));
  return decode_word(w);
}

}  // namespace

std::optional<std::vector<Rational>> finite_points(const RNA& r) {
  if (r.arity() != 1) throw Error(ErrorCode::InvalidArgument, "finite_points needs arity 1");
  auto v = canonical_view(normalize(saturate(r)));
  const auto& a = v.automaton;
  for (State q = 0; q < a.num_states(); ++q)
    if (v.live[q] && v.on_cycle[q] && live_edges(v, q) != 1) return std::nullopt;
  std::vector<Rational> out;
  if (!v.live[a.initial()]) return out;
  // depth-first walk of the acyclic part; cycles are forced
  std::vector<Symbol> path;
  std::function<void(State)> walk = [&](State q) {
    if (v.on_cycle[q]) {
      std::vector<Symbol> cycle;
      State s = q;
      do {
        Symbol next = 0;
        for (Symbol c = 0; c < a.alphabet().size(); ++c)
          if (v.live[a.next(s, c)]) next = c;
        cycle.push_back(next);
        s = a.next(s, next);
      } while (s != q);
      out.push_back(value_of_symbols(a.alphabet(), path, cycle));
      return;
    }
    for (Symbol c = 0; c < a.alphabet().size(); ++c) {
      State t = a.next(q, c);
      if (!v.live[t]) continue;
      path.push_back(c);
      walk(t);
      path.pop_back();
    }
  };
  walk(a.initial());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Interval decompositions

namespace {

std::vector<Interval> intervals_of(const RNA& frac, const std::vector<Rational>& boundary_points) {
  std::vector<Rational> pts{Rational(0), Rational(1)};
  for (const auto& p : boundary_points)
    if (Rational(0) <= p && p <= Rational(1)) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // pieces: point 0, gap, point 1, gap, ... point m
  struct Piece {
    Rational lo, hi;
    bool point;
    bool in;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pieces.push_back({pts[i], pts[i], true, member(frac, pts[i])});
    if (i + 1 < pts.size()) {
      Rational mid = (pts[i] + pts[i + 1]) * Rational(1, 2);
      pieces.push_back({pts[i], pts[i + 1], false, member(frac, mid)});
    }
  }
  std::vector<Interval> out;
  for (std::size_t i = 0; i < pieces.size();) {
    if (!pieces[i].in) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pieces.size() && pieces[j + 1].in) ++j;
    out.push_back({pieces[i].lo, pieces[j].hi, pieces[i].point, pieces[j].point});
    i = j + 1;
  }
  return out;
}

struct Periodic {
  std::size_t start, period;
};

std::optional<Periodic> detect_period(const std::vector<bool>& bits) {
  const std::size_t n = bits.size();
  for (std::size_t b = 1; b <= n / 3; ++b)
    for (std::size_t s = 0; s <= n / 3; ++s) {
      bool ok = true;
      for (std::size_t i = s; i + b < n && ok; ++i) ok = bits[i] == bits[i + b];
      if (ok) return Periodic{s, b};
    }
  return std::nullopt;
}

std::optional<std::vector<Progression>> progressions_of(const std::vector<bool>& pos, const std::vector<bool>& neg) {
  std::vector<Progression> out;
  for (int side = 0; side < 2; ++side) {
    const auto& bits = side == 0 ? pos : neg;
    auto per = detect_period(bits);
    if (!per) return std::nullopt;
    auto at = [&](std::size_t t) { return side == 0 ? BigInt(t) : BigInt(-1) - BigInt(t); };
    const BigInt step = side == 0 ? BigInt(per->period) : BigInt(-static_cast<long long>(per->period));
    for (std::size_t t = 0; t < per->start; ++t)
      if (bits[t]) out.push_back({at(t), 0});
    for (std::size_t t = per->start; t < per->start + per->period; ++t)
      if (bits[t]) out.push_back({at(t), step});
  }
  return out;
}

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.lo_closed && !b.lo_closed);
  });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty()) {
      Interval& cur = out.back();
      if (iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed))) {
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

std::string intervals_key(const std::vector<Interval>& v) {
  std::string key;
  for (const auto& iv : v)
    key += (iv.lo_closed ? "[" : "(") + iv.lo.str() + "," + iv.hi.str() + (iv.hi_closed ? "]" : ")");
  return key;
}

std::string shifted(const BigInt& a, const BigInt& b, const std::string& k) {
  // "x - a - b*k" with signs folded
  std::ostringstream s;
  s << "x";
  if (a > 0) s << " - " << a;
  if (a < 0) s << " + " << -a;
  auto times = [&](const BigInt& m) { return m == 1 ? k : m.str() + "*" + k; };
  if (b > 0) s << " - " << times(b);
  if (b < 0) s << " + " << times(-b);
  return s.str();
}

}  // namespace

std::string IntervalDecomposition::str() const {
  std::ostringstream out;
  for (const auto& line : lines) {
    out << "class " << line.progression.a << ' ' << line.progression.b << " :";
    for (const auto& iv : line.intervals)
      out << ' ' << (iv.lo_closed ? '[' : '(') << iv.lo.str() << ',' << iv.hi.str() << (iv.hi_closed ? ']' : ')');
    out << "\n";
  }
  return out.str();
}

std::string IntervalDecomposition::formula() const {
  std::vector<std::string> parts;
  for (const auto& line : lines) {
    if (line.intervals.empty()) continue;
    const std::string k = "k" + std::to_string(parts.size());
    const std::string t = shifted(line.progression.a, line.progression.b, k);
    std::vector<std::string> ivs;
    for (const auto& iv : line.intervals) {
      if (iv.lo == iv.hi) {
        ivs.push_back(t + " = " + iv.lo.str());
        continue;
      }
      ivs.push_back(iv.lo.str() + (iv.lo_closed ? " <= " : " < ") + t + " & " + t + (iv.hi_closed ? " <= " : " < ") +
                    iv.hi.str());
    }
    std::string body;
    for (std::size_t i = 0; i < ivs.size(); ++i) body += (i ? " | " : "") + ivs[i];
    if (line.progression.b == 0)
      parts.push_back("(" + body + ")");
    else
      parts.push_back("(E " + k + " . int(" + k + ") & " + k + " >= 0 & (" + body + "))");
  }
  if (parts.empty()) return "x < x";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " | " : "") + parts[i];
  return out;
}

std::variant<IntervalDecomposition, NotIntervalFinite> interval_extract(const RNA& input) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "interval_extract needs arity 1");
  RNA r = normalize(saturate(input));
  auto dec = decompose(r);
  struct ClassData {
    const IntegerPart* integer;
    std::vector<Interval> intervals;
  };
  std::vector<ClassData> classes;
  for (const auto& part : dec.parts) {
    auto pts = finite_points(boundary(part.fractional));
    if (!pts) return NotIntervalFinite{};
    classes.push_back({&part.integer, intervals_of(part.fractional, *pts)});
  }
  // fractional set of x in [n, n+1): a point 1 of class n-1 becomes 0 of n
  auto frac_set = [&](const BigInt& n) {
    std::vector<Interval> parts;
    for (const auto& c : classes) {
      if (c.integer->contains(n))
        for (auto iv : c.intervals) {
          if (iv.lo == Rational(1)) continue;
          if (iv.hi == Rational(1)) iv.hi_closed = false;
          parts.push_back(iv);
        }
      if (c.integer->contains(n - 1))
        for (const auto& iv : c.intervals)
          if (iv.hi == Rational(1) && iv.hi_closed) parts.push_back({Rational(0), Rational(0), true, true});
    }
    return merge_intervals(std::move(parts));
  };
  std::size_t bound = 48 + 4 * r.automaton.num_states();
  for (int attempt = 0; attempt < 3; ++attempt, bound *= 3) {
    struct Group {
      std::vector<Interval> intervals;
      std::vector<bool> pos, neg;
    };
    std::map<std::string, Group> groups;
    for (int side = 0; side < 2; ++side)
      for (std::size_t t = 0; t < bound; ++t) {
        BigInt n = side == 0 ? BigInt(t) : BigInt(-1) - BigInt(t);
        auto f = frac_set(n);
        if (f.empty()) continue;
        auto [it, fresh] = groups.try_emplace(intervals_key(f));
        if (fresh) {
          it->second.intervals = f;
          it->second.pos.assign(bound, false);
          it->second.neg.assign(bound, false);
        }
        (side == 0 ? it->second.pos : it->second.neg)[t] = true;
      }
    IntervalDecomposition out;
    bool periodic = true;
    for (const auto& [key, g] : groups) {
      auto progs = progressions_of(g.pos, g.neg);
      if (!progs) {
        periodic = false;
        break;
      }
      for (const auto& p : *progs) out.lines.push_back({p, g.intervals});
    }
    if (!periodic) continue;
    auto rebuilt = compile(out.formula(), r.base()).rna;
    if (equivalent(rebuilt.automaton, r.automaton).equivalent) return out;
  }
  return NotIntervalFinite{};
}

// ---------------------------------------------------------------------------
// Stability

namespace {

Domain meet(const Domain& a, const Domain& b) {
  Domain d = a;
  if (b.lo && (!d.lo || *b.lo > *d.lo || (*b.lo == *d.lo && !b.lo_closed))) {
    d.lo = b.lo;
    d.lo_closed = b.lo_closed;
  }
  if (b.hi && (!d.hi || *b.hi < *d.hi || (*b.hi == *d.hi && !b.hi_closed))) {
    d.hi = b.hi;
    d.hi_closed = b.hi_closed;
  }
  return d;
}

bool empty_domain(const Domain& d) {
  if (!d.lo || !d.hi) return false;
  if (*d.lo < *d.hi) return false;
  return !(*d.lo == *d.hi && d.lo_closed && d.hi_closed);
}

}  // namespace

bool product_stability(const RNA& input, const Rational& f, const Domain& d) {
  if (f.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "stability factor must be positive");
  RNA r = saturate(input);
  // x in D and f·x in D
  Domain scaled = d;
  if (scaled.lo) scaled.lo = *scaled.lo / f;
  if (scaled.hi) scaled.hi = *scaled.hi / f;
  Domain both = meet(d, scaled);
  if (empty_domain(both)) return true;
  auto lhs = clip(r, both);
  auto rhs = clip(affine(r, Rational(1) / f, Rational(0)), both);
  return equivalent(lhs.automaton, rhs.automaton).equivalent;
}

bool sum_stability(const RNA& input, const Rational& t, const Domain& d) {
  RNA r = saturate(input);
  Domain shifted_d = d;
  if (shifted_d.lo) shifted_d.lo = *shifted_d.lo - t;
  if (shifted_d.hi) shifted_d.hi = *shifted_d.hi - t;
  Domain both = meet(d, shifted_d);
  if (empty_domain(both)) return true;
  auto lhs = clip(r, both);
  auto rhs = clip(affine(r, Rational(1), -t), both);
  return equivalent(lhs.automaton, rhs.automaton).equivalent;
}

RNA star_delay(const RNA& input) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "star_delay needs arity 1");
  RNA r = saturate(input);
  const auto& a = r.automaton;
  const auto& al = a.alphabet();
  auto src = as_nondet(a);
  // state (q, phase): 0 before the real separator, 1 after it but before the
  // delayed one, 2 after both
  NondetAutomaton n(al, 3 * a.num_states());
  n.condition = src.condition;
  auto id = [](State q, int phase) { return static_cast<State>(3 * q + phase); };
  n.initial = {id(a.initial(), 0)};
  const Symbol sep = al.separator();
  for (State q = 0; q < a.num_states(); ++q) {
    n.good[id(q, 2)] = src.good[q];
    const State after_sep = a.next(q, sep);
    for (Symbol c = 0; c < al.digit_symbols(); ++c) {
      n.add_transition(id(q, 0), c, id(a.next(q, c), 0));
      n.add_transition(id(q, 0), c, id(a.next(after_sep, c), 1));
      n.add_transition(id(q, 1), c, id(a.next(q, c), 1));
      n.add_transition(id(q, 2), c, id(a.next(q, c), 2));
    }
    n.add_transition(id(q, 0), sep, id(after_sep, 2));
    n.add_transition(id(q, 1), sep, id(q, 2));
  }
  auto pumped = nfa::pump_sign_prefix(n);
  RNA out{nfa::determinize(pumped, r.weak()), true};
  return intersect(out, validity_automaton(r.base(), 1));
}

std::pair<std::uint64_t, std::uint64_t> zero_run_lengths(const OmegaAutomaton& a) {
  const auto& al = a.alphabet();
  const Symbol zero = al.uniform(0);
  State q = a.next(a.next(a.initial(), zero), al.separator());
  std::unordered_map<State, std::uint64_t> first_seen;
  for (std::uint64_t i = 0;; ++i) {
    auto [it, inserted] = first_seen.emplace(q, i);
    if (!inserted) return {it->second, i - it->second};
    q = a.next(q, zero);
  }
}

StabilityReport stability_pipeline(const RNA& r_in, const RNA& s_in, std::uint64_t seed) {
  if (r_in.arity() != 1 || s_in.arity() != 1) throw Error(ErrorCode::InvalidArgument, "pipeline needs arity 1");
  RNA rr = normalize(saturate(r_in)), rs = normalize(saturate(s_in));
  const std::uint32_t r = rr.base().value(), s = rs.base().value();
  // same subset of [0,1] on a rational battery
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 200; ++i) {
    long long den = 1 + static_cast<long long>(rng() % 200);
    if (i % 3 == 0) den = static_cast<long long>(std::pow(r, rng() % 4) * std::pow(s, rng() % 3));
    long long num = static_cast<long long>(rng() % (den + 1));
    Rational x(num, den);
    if (member(rr, x) != member(rs, x))
      throw Error(ErrorCode::PreconditionFailed, "inputs disagree on " + x.str());
  }
  auto b = boundary(rr);
  if (finite_points(b)) throw Error(ErrorCode::PreconditionFailed, "boundary is finite");

  // family 0⋆u v^k t w^ω: first branching cycle state in breadth-first order
  auto v = canonical_view(b);
  const auto& ca = v.automaton;
  const auto& al = ca.alphabet();
  std::vector<std::int64_t> parent(ca.num_states(), -1);
  std::vector<Symbol> via(ca.num_states(), 0);
  std::vector<bool> seen(ca.num_states(), false);
  std::deque<State> queue{ca.initial()};
  seen[ca.initial()] = true;
  std::optional<State> branch;
  while (!queue.empty() && !branch) {
    State q = queue.front();
    queue.pop_front();
    if (v.on_cycle[q] && live_edges(v, q) >= 2) {
      branch = q;
      break;
    }
    for (Symbol c = 0; c < al.size(); ++c) {
      State t = ca.next(q, c);
      if (!v.live[t] || seen[t]) continue;
      seen[t] = true;
      parent[t] = q;
      via[t] = c;
      queue.push_back(t);
    }
  }
  if (!branch) throw Error(ErrorCode::PreconditionFailed, "no infinite boundary family");
  std::vector<Symbol> u;
  for (State q = *branch; parent[q] >= 0; q = static_cast<State>(parent[q])) u.push_back(via[q]);
  std::reverse(u.begin(), u.end());
  // v: shortest cycle back to the branch state inside its live SCC
  std::vector<Symbol> cyc;
  {
    std::vector<std::int64_t> par(ca.num_states(), -1);
    std::vector<Symbol> sym(ca.num_states(), 0);
    std::vector<bool> vis(ca.num_states(), false);
    std::deque<State> qu;
    std::optional<State> last;
    for (Symbol c = 0; c < al.size() && !last; ++c) {
      State t = ca.next(*branch, c);
      if (!v.live[t] || vis[t]) continue;
      vis[t] = true;
      sym[t] = c;
      if (t == *branch) last = t;
      qu.push_back(t);
    }
    while (!qu.empty() && !last) {
      State q = qu.front();
      qu.pop_front();
      for (Symbol c = 0; c < al.size() && !last; ++c) {
        State t = ca.next(q, c);
        if (!v.live[t]) continue;
        if (t == *branch) {
          par[t] = q;
          sym[t] = c;
          last = t;
          break;
        }
        if (vis[t]) continue;
        vis[t] = true;
        par[t] = q;
        sym[t] = c;
        qu.push_back(t);
      }
    }
    if (!last) throw Error(ErrorCode::PreconditionFailed, "branch state is not on a cycle");
    State q = *branch;
    do {
      cyc.push_back(sym[q]);
      if (par[q] < 0) break;
      q = static_cast<State>(par[q]);
    } while (q != *branch);
    std::reverse(cyc.begin(), cyc.end());
  }
  Symbol exit = al.size();
  for (Symbol c = 0; c < al.size(); ++c)
    if (c != cyc.front() && v.live[ca.next(*branch, c)]) {
      exit = c;
      break;
    }
  auto tail = find_lasso_from(ca, ca.next(*branch, exit));
  if (!tail) throw Error(ErrorCode::PreconditionFailed, "no accepting continuation");

  StabilityReport rep;
  rep.y = value_of_symbols(al, u, cyc);
  for (int k = 0; k < 6; ++k) {
    std::vector<Symbol> prefix = u;
    for (int i = 0; i < k; ++i) prefix.insert(prefix.end(), cyc.begin(), cyc.end());
    prefix.push_back(exit);
    prefix.insert(prefix.end(), tail->prefix.begin(), tail->prefix.end());
    rep.y_k.push_back(value_of_symbols(al, prefix, tail->cycle));
  }
  rep.from_above = rep.y_k.front() > rep.y;

  auto shift = [&](const RNA& x) {
    return rep.from_above ? clip(affine(x, Rational(1), -rep.y), Rational(0), Rational(1))
                          : clip(affine(x, Rational(-1), rep.y), Rational(0), Rational(1));
  };
  rep.s1_r = shift(rr);
  rep.s1_s = shift(rs);
  std::tie(rep.p, rep.q) = zero_run_lengths(rep.s1_r->automaton);
  std::tie(rep.p_prime, rep.q_prime) = zero_run_lengths(rep.s1_s->automaton);
  const Rational rp(ipow(r, static_cast<unsigned>(rep.p)), 1), sp(ipow(s, static_cast<unsigned>(rep.p_prime)), 1);
  rep.s2 = clip(affine(*rep.s1_r, rp, Rational(0)), Rational(0), Rational(1));
  rep.s4 = clip(affine(*rep.s1_s, sp, Rational(0)), Rational(0), Rational(1));
  rep.s3_r = clip(affine(*rep.s1_r, rp * sp, Rational(0)), Rational(0), Rational(1));
  rep.s3_s = clip(affine(*rep.s1_s, rp * sp, Rational(0)), Rational(0), Rational(1));
  const Domain unit = Domain::closed(Rational(0), Rational(1));
  rep.r_stable = product_stability(*rep.s3_r, Rational(ipow(r, static_cast<unsigned>(rep.q)), 1), unit);
  rep.s_stable = product_stability(*rep.s3_s, Rational(ipow(s, static_cast<unsigned>(rep.q_prime)), 1), unit);
  return rep;
}

}  // namespace realset
