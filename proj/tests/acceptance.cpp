// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "realset/arith.hpp"
#include "realset/lab.hpp"

using namespace realset;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

RNA set_of(const std::string& phi, std::uint32_t base) { return compile(phi, Base(base)).rna; }

BigInt big_pow(std::uint32_t b, std::uint64_t e) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= b;
  return out;
}

Outcome encodings() {
  std::mt19937_64 rng(101);
  std::size_t n = 0, duals = 0;
  for (std::uint32_t b : {2u, 3u, 6u, 10u, 12u}) {
    for (int i = 0; i < 2000; ++i, ++n) {
      auto den = static_cast<long long>(1 + rng() % 2000);
      auto num = static_cast<long long>(rng() % 4000001) - 2000000;
      Rational x{BigInt(num), BigInt(den)};
      auto w = encode_rational(x, Base(b));
      if (decode_word(w) != x) return {false, "decode(encode(" + x.str() + ")) in base " + std::to_string(b)};
      if (auto d = dual_of(w)) {
        ++duals;
        if (decode_word(*d) != x) return {false, "dual of " + x.str() + " in base " + std::to_string(b)};
      }
    }
  }
  return {true, std::to_string(n) + " rationals, " + std::to_string(duals) + " duals"};
}

Outcome eleven_halves() {
  auto a = decode_word(UPWord::parse("05*5(0)w", Base(10)));
  auto b = decode_word(UPWord::parse("05*4(9)w", Base(10)));
  return {a == Rational(11, 2) && b == Rational(11, 2), a.str() + " and " + b.str()};
}

Outcome definable_corpus_weak() {
  const auto& corpus = definable_corpus();
  if (corpus.size() < 12) return {false, "corpus too small"};
  std::size_t comparisons = 0;
  for (const auto& phi : corpus) {
    std::vector<RNA> sets;
    for (std::uint32_t b : {2u, 3u, 10u}) {
      sets.push_back(set_of(phi, b));
      if (classify(sets.back().automaton).kind != TopClassKind::Weak)
        return {false, phi + " not weak in base " + std::to_string(b)};
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        auto rep = cross_base_compare(sets[i], sets[j], 1000, 7 + comparisons);
        ++comparisons;
        if (!rep.full_agreement()) return {false, phi + " disagrees at " + rep.witness->str()};
      }
  }
  return {true, std::to_string(corpus.size()) + " formulas, " + std::to_string(comparisons) + " batteries of 1000"};
}

Outcome counterexample() {
  auto d6 = dual_set(Base(6)), d12 = dual_set(Base(12));
  for (const RNA* d : {&d6, &d12}) {
    auto c = classify(d->automaton);
    if (c.kind != TopClassKind::DetCoBuchiOnly || !c.witness) return {false, "dual set class"};
    if (classify(complement(d->automaton)).kind != TopClassKind::DetBuchiOnly) return {false, "complement class"};
  }
  auto rep = cross_base_compare(d6, d12, 1000, 3);
  if (!rep.full_agreement()) return {false, "disagreement at " + rep.witness->str()};
  auto w = oscillation_witness(d6, 6);
  if (!w || w->x.size() < 6 || !w->verify(d6)) return {false, "no verified oscillation witness"};
  return {true, "1000/1000 agreements, witness length " + std::to_string(w->x.size())};
}

// Random weak sets: interval unions combined with periodic integer sets.
std::string random_weak_formula(std::mt19937_64& rng) {
  auto u = random_interval_union(rng);
  std::string phi = u.formula();
  switch (rng() % 3) {
    case 0: return phi;
    case 1: return "(" + phi + ") | E y . int(y) & x = " + std::to_string(2 + rng() % 3) + "*y + 1/2";
    default: return "(" + phi + ") & !(E y . int(y) & y <= x & x < y + 1/" + std::to_string(2 + rng() % 3) + ")";
  }
}

Outcome base_round_trip() {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 20; ++i) {
    auto phi = random_weak_formula(rng);
    auto s = set_of(phi, 2);
    auto up = base_power_up(s, 2);
    if (up.base().value() != 4) return {false, "wrong base"};
    auto eq = equivalent(base_power_down(up, 2).automaton, s.automaton);
    if (!eq.equivalent) return {false, phi};
  }
  return {true, "20 sets"};
}

Outcome affine_and_clip() {
  std::mt19937_64 rng(61);
  std::size_t checks = 0;
  for (int i = 0; i < 30; ++i) {
    auto u = random_interval_union(rng);
    RNA s = set_of(u.formula(), i % 2 ? 3 : 2);
    Rational a = random_small_rational(rng, 2), b = random_small_rational(rng, 2);
    if (a.sign() == 0) a = Rational(-3, 2);
    Rational lo = random_small_rational(rng, 2), hi = random_small_rational(rng, 2);
    if (hi < lo) std::swap(lo, hi);
    auto t = affine(s, a, b);
    auto c = clip(s, lo, hi);
    for (const auto& y : probes(rng, u, 200)) {
      ++checks;
      if (member(t, y) != u.contains((y - b) / a)) return {false, "affine at " + y.str()};
      if (member(c, y) != (u.contains(y) && lo <= y && y <= hi)) return {false, "clip at " + y.str()};
    }
  }
  return {true, std::to_string(checks) + " probes, exact"};
}

Outcome boundaries() {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"0 <= x & x <= 1/2", "x = 0 | x = 1/2"},
      {"x < 1/3 | x = 1 | 2 < x & x < 5/2", "x = 1/3 | x = 1 | x = 2 | x = 5/2"},
      {"x >= -1 & x < 5/2", "x = -1 | x = 5/2"},
      {"E y . int(y) & y <= x & x < y + 1/2", "E y . int(y) & (x = y | x = y + 1/2)"},
      {"int(x)", "int(x)"},
      {"E y . int(y) & x = 3*y + 1", "E y . int(y) & x = 3*y + 1"},
      {"x < x", "x < x"},
  };
  std::size_t n = 0;
  for (std::uint32_t base : {2u, 3u, 10u})
    for (const auto& [set, points] : cases) {
      auto b = boundary(set_of(set, base));
      auto expected = set_of(points, base);
      auto res = interval_extract(b);
      if (!std::holds_alternative<IntervalDecomposition>(res)) return {false, set + " boundary not interval-finite"};
      const auto& d = std::get<IntervalDecomposition>(res);
      for (const auto& line : d.lines)
        for (const auto& iv : line.intervals)
          if (iv.lo != iv.hi) return {false, set + " boundary has an interval"};
      if (!equivalent(set_of(d.formula(), base).automaton, expected.automaton).equivalent)
        return {false, set + " boundary in base " + std::to_string(base)};
      ++n;
    }
  auto cantor = saturate({cantor_automaton(), false});
  if (!equivalent(boundary(cantor).automaton, cantor.automaton).equivalent) return {false, "Cantor boundary"};
  return {true, std::to_string(n) + " sets and the Cantor set"};
}

bool divides_period(std::uint32_t r, std::uint32_t s, unsigned k, std::uint64_t v, std::uint64_t u) {
  return (big_pow(r, v) * (big_pow(r, u) - 1)) % big_pow(s, k) == 0;
}

Outcome period_growth() {
  std::uint64_t last = 0;
  for (auto [r, s] : {std::pair{2u, 3u}, {3u, 2u}, {10u, 6u}})
    for (unsigned k = 1; k <= 6; ++k) {
      auto pl = period_lengths(Base(r), Base(s), k);
      std::uint64_t v = pl.preperiod_len, u = pl.period_len;
      std::string at = "(" + std::to_string(r) + "," + std::to_string(s) + ") k=" + std::to_string(k);
      if (u == 0 || !divides_period(r, s, k, v, u)) return {false, at + " fails divisibility"};
      // no shorter preperiod with any period up to 4u, no shorter period with this preperiod
      for (std::uint64_t v2 = 0; v2 <= v; ++v2)
        for (std::uint64_t u2 = 1; u2 <= (v2 < v ? 4 * u : u); ++u2)
          if ((v2 != v || u2 != u) && divides_period(r, s, k, v2, u2)) return {false, at + " not minimal"};
      if (r == 2) {
        if (u <= last) return {false, at + " period did not grow"};
        last = u;
      }
    }
  return {true, "18 cases brute-forced"};
}

Outcome kronecker() {
  std::mt19937_64 rng(12);
  auto check = [](const Rational& lo, const Rational& hi, std::optional<PowerRatio> pr) {
    if (!pr) return false;
    Rational q(big_pow(2, pr->i), big_pow(3, pr->j));
    return lo < q && q < hi;
  };
  for (int i = 0; i < 10; ++i) {
    // lo in [1/2, 39/20] on a grid of 1/200
    Rational lo{BigInt(100 + static_cast<long long>(rng() % 291)), BigInt(200)};
    Rational hi = lo + Rational(1, 20);
    if (!check(lo, hi, find_power_ratio(Base(2), Base(3), lo, hi, 64))) return {false, "interval at " + lo.str()};
  }
  auto pr = find_power_ratio(Base(2), Base(3), Rational(49, 50), Rational(1), 64);
  if (!check(Rational(49, 50), Rational(1), pr) || !(*pr == PowerRatio{19, 12})) return {false, "(49/50, 1)"};
  return {true, "10 intervals and (19,12)"};
}

Outcome stability() {
  auto d6 = dual_set(Base(6)), d12 = dual_set(Base(12));
  auto rep = stability_pipeline(d6, d12, 1);
  if (rep.q == 0 || rep.q_prime == 0) return {false, "q or q' is zero"};
  Domain unit = Domain::closed(Rational(0), Rational(1));
  bool r_ok = product_stability(*rep.s3_r, Rational(big_pow(6, rep.q), 1), unit);
  bool s_ok = product_stability(*rep.s3_s, Rational(big_pow(12, rep.q_prime), 1), unit);
  if (!r_ok || !s_ok || !rep.r_stable || !rep.s_stable) return {false, "S3 not product-stable"};
  auto sd = star_delay(d6);
  if (!product_stability(sd, Rational(6), Domain::closed(Rational(0), Rational(32))))
    return {false, "star delay not 6-stable on [0,32]"};
  if (!equivalent(clip(sd, Rational(0), Rational(1)).automaton, clip(d6, Rational(0), Rational(1)).automaton).equivalent)
    return {false, "star delay does not restrict back"};
  return {true, "q=" + std::to_string(rep.q) + " q'=" + std::to_string(rep.q_prime)};
}

Outcome determinization_battery() {
  auto st = validation_stats();
  std::ostringstream os;
  os << st.calls << " calls, " << st.words << " words, " << st.disagreements << " disagreements";
  return {st.calls > 0 && st.disagreements == 0 && st.words >= 200 * st.calls, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "encoding exactness", 5, encodings},
      {2, "11/2 in base 10", 0, eleven_halves},
      {3, "definable corpus is weak and base-independent", 60, definable_corpus_weak},
      {4, "dual sets of 6 and 12", 30, counterexample},
      {5, "base 2 to 4 and back", 30, base_round_trip},
      {6, "affine and clip against interval oracles", 0, affine_and_clip},
      {7, "boundaries", 20, boundaries},
      {8, "period lengths", 10, period_growth},
      {9, "power ratios of 2 and 3", 0, kronecker},
      {10, "stability pipeline and star delay", 60, stability},
      {11, "determinization batteries", 0, determinization_battery},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = o.ok && (c.limit_s == 0 || secs < c.limit_s);
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail;
    std::cout.precision(3);
    std::cout << " (" << secs << " s";
    if (c.limit_s > 0) std::cout << ", limit " << c.limit_s << " s";
    std::cout << ")\n";
  }
  return all ? 0 : 1;
}
