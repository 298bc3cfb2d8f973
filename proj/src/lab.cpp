#include "realset/lab.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "realset/arith.hpp"

namespace realset {

RNA dual_set(Base t) {
  Alphabet al(t, 1);
  const Digit top = t.max_digit();
  AutomatonBuilder b(al);
  State init = b.add_state(), in_int = b.add_state(), frac = b.add_state(), other = b.add_state(),
        zero_new = b.add_state(), top_new = b.add_state(), zero = b.add_state(), tail_top = b.add_state();
  b.set_initial(init);
  b.set_transition(init, al.uniform(0), in_int);
  b.set_transition(init, al.uniform(top), in_int);
  b.set_transition(in_int, al.separator(), frac);
  for (Digit d = 0; d <= top; ++d) {
    b.set_transition(in_int, al.uniform(d), in_int);
    // entering a run of 0 or r-1 passes through a rejecting state
    for (State q : {frac, other, zero_new, top_new, zero, tail_top}) {
      State to = other;
      if (d == 0) to = (q == zero || q == zero_new) ? zero : zero_new;
      else if (d == top) to = (q == tail_top || q == top_new) ? tail_top : top_new;
      b.set_transition(q, al.uniform(d), to);
    }
  }
  std::vector<bool> rejecting(b.num_states(), true);
  rejecting[zero] = rejecting[tail_top] = false;
  return {b.build(Acceptance::cobuchi(rejecting)), true};
}

std::vector<Rational> rational_battery(Base r, Base s, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
  std::vector<std::uint32_t> native = r.prime_factors();
  for (auto p : s.prime_factors()) native.push_back(p);
  std::sort(native.begin(), native.end());
  native.erase(std::unique(native.begin(), native.end()), native.end());
  std::vector<std::uint32_t> foreign;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u})
    if (!std::binary_search(native.begin(), native.end(), p)) foreign.push_back(p);
  auto power_product = [&](const std::vector<std::uint32_t>& primes, unsigned max_factors) {
    BigInt d = 1;
    if (primes.empty()) return d;
    for (auto k = pick(0, max_factors); k > 0; --k) d *= primes[pick(0, primes.size() - 1)];
    return d;
  };
  std::vector<Rational> out;
  out.reserve(n);
  while (out.size() < n) {
    BigInt den;
    switch (out.size() % 4) {
      case 0: den = power_product(native, 6); break;
      case 1: den = power_product(foreign, 3); break;
      case 2: den = power_product(native, 4) * power_product(foreign, 2); break;
      default: den = 1 + pick(0, 40); break;
    }
    // mostly in [0,1], sometimes a wider window for periodic sets
    BigInt span = pick(0, 3) == 0 ? BigInt(12) : BigInt(1);
    BigInt num = BigInt(pick(0, static_cast<std::uint64_t>(2 * span * den))) - (span == 1 ? BigInt(0) : span * den);
    out.emplace_back(num, den);
  }
  return out;
}

std::vector<char> member_batch(const RNA& a, const std::vector<Rational>& xs) {
  std::vector<char> out(xs.size());
  const long long n = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) out[i] = member(a, xs[i]);
  return out;
}

std::vector<char> member_batch_serial(const RNA& a, const std::vector<Rational>& xs) {
  std::vector<char> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = member(a, xs[i]);
  return out;
}

namespace {

CrossBaseReport compare_with(const RNA& a, const RNA& b, std::size_t n, std::uint64_t seed,
                             std::vector<char> (*batch)(const RNA&, const std::vector<Rational>&)) {
  if (a.arity() != 1 || b.arity() != 1) throw Error(ErrorCode::InvalidArgument, "comparison needs arity 1");
  CrossBaseReport rep;
  rep.base_r = a.base().value();
  rep.base_s = b.base().value();
  auto xs = rational_battery(a.base(), b.base(), n, seed);
  auto ma = batch(a, xs), mb = batch(b, xs);
  rep.samples = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ma[i] == mb[i]) ++rep.agreements;
    else if (!rep.witness) rep.witness = xs[i];
  }
  rep.verdict_r = classify(a.automaton).kind;
  rep.verdict_s = classify(b.automaton).kind;
  return rep;
}

}  // namespace

CrossBaseReport cross_base_compare(const RNA& a, const RNA& b, std::size_t n, std::uint64_t seed) {
  return compare_with(a, b, n, seed, member_batch);
}

CrossBaseReport cross_base_compare_serial(const RNA& a, const RNA& b, std::size_t n, std::uint64_t seed) {
  return compare_with(a, b, n, seed, member_batch_serial);
}

// ---------------------------------------------------------------------------

bool OscillationWitness::verify(const RNA& a) const {
  if (x.empty() || x.size() != inside.size() || eps.size() + 1 != x.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (inside[i] != (i % 2 == 0)) return false;
    if (member(a, x[i]) != inside[i]) return false;
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (abs(x[i] - x[i + 1]) > eps[i]) return false;
    if (i + 1 < eps.size() && !(eps[i + 1] < eps[i])) return false;
  }
  return true;
}

namespace {

Rational eps_at(Base base, unsigned step, unsigned g) {
  return Rational(2) / Rational(ipow(base.value(), step * g), 1);
}

// Points at distance roughly d from x, on and off fine base grids.
std::vector<Rational> candidates_near(const Rational& x, const Rational& d, Base base, unsigned fine) {
  std::vector<Rational> out;
  static const long long offsets[] = {1, 5, 7, 11, 13};
  for (int sign : {1, -1}) {
    Rational z = x + Rational(sign) * d;
    out.push_back(z);
    for (unsigned k = 0; k <= 6; ++k) {
      BigInt grid = ipow(base.value(), fine + k);
      for (long long p : offsets) {
        BigInt den = grid * p;
        Rational snapped(Rational(z * Rational(den, 1)).floor(), den);
        out.push_back(snapped);
        out.push_back(snapped + Rational(BigInt(1), den));
      }
    }
  }
  return out;
}

}  // namespace

std::optional<OscillationWitness> oscillation_witness(const RNA& input, unsigned depth, unsigned g,
                                                      std::size_t budget) {
  if (input.arity() != 1) throw Error(ErrorCode::InvalidArgument, "oscillation needs arity 1");
  if (depth == 0 || g == 0) throw Error(ErrorCode::InvalidArgument, "depth and granularity must be positive");
  RNA a = saturate(input);
  const Base base = a.base();
  auto lasso = emptiness(a.automaton);
  if (!lasso) return std::nullopt;
  // anchors: the emptiness witness plus members among a few small rationals
  std::vector<Rational> anchors;
  {
    UPWord w;
    w.base = base;
    bool frac = false;
    const auto& al = a.automaton.alphabet();
    for (Symbol s : lasso->prefix) {
      if (al.is_separator(s)) frac = true;
      else (frac ? w.frac_prefix : w.int_digits).push_back(al.component(s, 0));
    }
    for (Symbol s : lasso->cycle) w.frac_period.push_back(al.component(s, 0));
    anchors.push_back(decode_word(w));
    for (long long den : {1, 2, 3, 4, 5, 7})
      for (long long num = -2 * den; num <= 2 * den; ++num) {
        Rational x(num, den);
        if (member(a, x)) anchors.push_back(x);
      }
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  }
  std::size_t spent = 0;
  OscillationWitness w;
  std::function<bool()> extend = [&]() -> bool {
    if (w.x.size() == depth) return true;
    const unsigned step = static_cast<unsigned>(w.x.size());
    const Rational hi = eps_at(base, step + 1, g), lo = eps_at(base, step + 2, g);
    const bool want = !w.inside.back();
    for (int j = 8; j >= 1; --j) {
      Rational d = hi * Rational(j, 8);
      if (!(lo < d)) break;
      for (const auto& y : candidates_near(w.x.back(), d, base, (step + 2) * g)) {
        if (++spent > budget) return false;
        Rational dist = abs(y - w.x.back());
        if (!(lo < dist) || dist > hi) continue;
        if (member(a, y) != want) continue;
        w.x.push_back(y);
        w.inside.push_back(want);
        w.eps.push_back(hi);
        if (extend()) return true;
        w.x.pop_back();
        w.inside.pop_back();
        w.eps.pop_back();
        if (spent > budget) return false;
        break;  // one candidate per distance band keeps the search shallow
      }
    }
    return false;
  };
  for (const auto& x0 : anchors) {
    w = {};
    w.x.push_back(x0);
    w.inside.push_back(true);
    if (extend()) return w;
    if (spent > budget) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& definable_corpus() {
  static const std::vector<std::string> corpus{
      "0 <= x & x <= 1",
      "x < 1/3 | x >= 2/3",
      "x > -5/2 & x <= 7/4",
      "x = 1/3 | x = 2/5 | x = -7/6",
      "int(x)",
      "!int(x) & 0 < x & x < 3",
      "E y . int(y) & y <= x & x < y + 1/2",
      "E y . int(y) & 1/3 <= x - y & x - y < 2/3",
      "E y . x = 2*y & int(y)",
      "E y . int(y) & x = 3*y + 1",
      "E y . int(y) & x = 5*y & x >= 0",
      "E y . int(y) & 2*x = 3*y + 1/2",
      "E y . E z . int(y) & int(z) & 0 <= z & z <= 1 & x = y + 1/2*z",
      "A y . !int(y) | y <= x | y >= x + 1",
  };
  return corpus;
}

bool SuiteReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.ok; });
}

std::string SuiteReport::text() const {
  std::ostringstream out;
  for (const auto& r : rows) {
    out << "experiment: " << r.experiment << "\n"
        << "bases: " << r.base_r << " " << r.base_s << "\n"
        << "verdict: " << r.verdict << "\n";
    if (!r.witness.empty()) out << "witness: " << r.witness << "\n";
    out << "status: " << (r.ok ? "ok" : "FAILED") << "\n\n";
  }
  if (stability) {
    out << "stability.p: " << stability->p << "\nstability.q: " << stability->q
        << "\nstability.p_prime: " << stability->p_prime << "\nstability.q_prime: " << stability->q_prime
        << "\nstability.y: " << stability->y.str() << "\nstability.r_stable: " << std::boolalpha
        << stability->r_stable << "\nstability.s_stable: " << stability->s_stable << "\n";
  }
  out << "overall: " << (ok() ? "ok" : "FAILED") << "\n";
  return out.str();
}

std::string SuiteReport::csv() const {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream out;
  out << "experiment,base_r,base_s,verdict,witness\n";
  for (const auto& r : rows)
    out << quote(r.experiment) << ',' << r.base_r << ',' << r.base_s << ',' << quote(r.verdict) << ','
        << quote(r.witness) << "\n";
  return out.str();
}

namespace {

std::string loop_text(const LoopWitness& w) {
  auto set = [](const StateSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out + "}";
  };
  return "inner " + set(w.inner) + (w.inner_accepting ? " accepting" : " rejecting") + " in outer " + set(w.outer);
}

}  // namespace

SuiteReport run_cobham_suite(Base r, Base s, std::uint64_t seed) {
  SuiteReport rep;
  const std::uint32_t rv = r.value(), sv = s.value();
  for (const auto& phi : definable_corpus()) {
    auto a = compile(phi, r).rna, b = compile(phi, s).rna;
    auto cmp = cross_base_compare(a, b, 1000, seed);
    const bool ok = cmp.verdict_r == TopClassKind::Weak && cmp.verdict_s == TopClassKind::Weak && cmp.full_agreement();
    std::string verdict = std::string(to_string(cmp.verdict_r)) + "/" + to_string(cmp.verdict_s) + " agree " +
                          std::to_string(cmp.agreements) + "/" + std::to_string(cmp.samples);
    rep.rows.push_back({"definable: " + phi, rv, sv, verdict, cmp.witness ? cmp.witness->str() : "", ok});
  }

  RNA dr = dual_set(r), ds = dual_set(s);
  const bool shared = r.same_prime_factors(s);
  for (const auto* d : {&dr, &ds}) {
    auto c = classify(d->automaton);
    rep.rows.push_back({"dual_set classify base " + std::to_string(d->base().value()), rv, sv, to_string(c.kind),
                        c.witness ? loop_text(*c.witness) : "", c.kind == TopClassKind::DetCoBuchiOnly});
  }
  auto cmp = cross_base_compare(dr, ds, 1000, seed);
  rep.rows.push_back({"dual_set compare", rv, sv,
                      std::string(cmp.full_agreement() ? "agree " : "disagree ") + std::to_string(cmp.agreements) +
                          "/" + std::to_string(cmp.samples),
                      cmp.witness ? cmp.witness->str() : "", !shared || cmp.full_agreement()});
  auto osc = oscillation_witness(dr, 6);
  std::string osc_text;
  if (osc)
    for (std::size_t i = 0; i < osc->x.size(); ++i) osc_text += (i ? " " : "") + osc->x[i].str();
  rep.rows.push_back({"dual_set oscillation", rv, sv, osc ? "FOUND" : "NONE_FOUND", osc_text,
                      osc.has_value() && osc->verify(dr)});

  if (shared) {
    try {
      auto unit = Domain::closed(Rational(0), Rational(1));
      auto st = stability_pipeline(clip(dr, unit), clip(ds, unit), seed);
      std::ostringstream w;
      w << "p=" << st.p << " q=" << st.q << " p'=" << st.p_prime << " q'=" << st.q_prime << " y=" << st.y.str();
      rep.rows.push_back({"stability pipeline", rv, sv,
                          std::string("r_stable=") + (st.r_stable ? "true" : "false") +
                              " s_stable=" + (st.s_stable ? "true" : "false"),
                          w.str(), st.r_stable && st.s_stable && st.q > 0 && st.q_prime > 0});
      rep.stability = std::move(st);
    } catch (const Error& e) {
      rep.rows.push_back({"stability pipeline", rv, sv, "ERROR", e.what(), false});
    }
  }
  return rep;
}

}  // namespace realset
