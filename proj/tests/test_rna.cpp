#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "realset/arith.hpp"
#include "realset/lab.hpp"

using namespace realset;
using namespace testing_support;

namespace {

RNA set_of(const std::string& phi, std::uint32_t base) { return compile(phi, Base(base)).rna; }

RNA cantor() { return saturate({cantor_automaton(), false}); }

// Oracle: x = x_I + x_F with x_F in [0,1] in both possible ways.
std::vector<std::pair<BigInt, Rational>> splits(const Rational& x) {
  BigInt f = x.floor();
  std::vector<std::pair<BigInt, Rational>> out{{f, x - Rational(f, 1)}};
  if (x.is_integer()) out.push_back({f - 1, rat(1)});
  return out;
}

// Oracle: breadth-first walk of the 0⋆0^ω run.
std::pair<std::uint64_t, std::uint64_t> walk_zero_run(const OmegaAutomaton& a) {
  const auto& al = a.alphabet();
  std::vector<State> path{a.next(a.next(a.initial(), al.uniform(0)), al.separator())};
  while (true) {
    State next = a.next(path.back(), al.uniform(0));
    for (std::size_t i = 0; i < path.size(); ++i)
      if (path[i] == next) return {i, path.size() - i};
    path.push_back(next);
  }
}

}  // namespace

TEST_CASE("validity automaton accepts exactly well-shaped encodings") {
  for (std::uint32_t b : {2u, 3u, 10u}) {
    auto v = validity_automaton(Base(b), 1);
    for (const auto& w : lasso_battery(v.automaton.alphabet(), 300, b)) {
      const auto& al = v.automaton.alphabet();
      std::size_t seps = 0;
      for (Symbol c : w.prefix) seps += al.is_separator(c);
      bool cycle_ok = true;
      for (Symbol c : w.cycle) cycle_ok = cycle_ok && !al.is_separator(c);
      bool lead_ok = !w.prefix.empty() && !al.is_separator(w.prefix[0]) &&
                     (al.component(w.prefix[0], 0) == 0 || al.component(w.prefix[0], 0) == b - 1);
      CHECK(member_up(v.automaton, w) == (seps == 1 && cycle_ok && lead_ok));
    }
  }
}

TEST_CASE("representation soundness on compiled and co-Buchi sets") {
  std::mt19937_64 rng(11);
  std::vector<RNA> sets{set_of("x <= 1/2", 2), set_of("E y . int(y) & x = 3*y + 1", 3), dual_set(Base(6)),
                        set_of("x < 1/3 | x >= 2/3", 10)};
  for (const auto& s : sets) {
    for (int i = 0; i < 1000; ++i) {
      Rational x = random_small_rational(rng, 5);
      auto w = encode_rational(x, s.base());
      CHECK(member(s, x) == member_up(s.automaton, lasso_of(s.automaton.alphabet(), {w})));
      if (auto d = dual_of(w)) CHECK(member_up(s.automaton, lasso_of(s.automaton.alphabet(), {*d})) == member(s, x));
    }
  }
}

TEST_CASE("saturation adds duals and sign padding") {
  Alphabet al(Base(10), 1);
  AutomatonBuilder b(al);
  // only the word 05⋆5(0)^ω
  State s0 = b.add_state(), s1 = b.add_state(), s2 = b.add_state(), s3 = b.add_state(), s4 = b.add_state();
  b.set_initial(s0);
  b.set_transition(s0, al.uniform(0), s1);
  b.set_transition(s1, al.uniform(5), s2);
  b.set_transition(s2, al.separator(), s3);
  b.set_transition(s3, al.uniform(5), s4);
  b.set_transition(s4, al.uniform(0), s4);
  std::vector<bool> acc(b.num_states(), false);
  acc[s4] = true;
  RNA raw{b.build(Acceptance::weak(acc)), false};
  auto sat = saturate(raw);
  auto word = [&](const char* t) { return lasso_of(al, {UPWord::parse(t, Base(10))}); };
  CHECK_FALSE(member_up(raw.automaton, word("05*4(9)w")));
  CHECK(member_up(sat.automaton, word("05*4(9)w")));
  CHECK(member_up(sat.automaton, word("0005*5(0)w")));
  CHECK_FALSE(member_up(sat.automaton, word("05*5(1)w")));
  CHECK(equivalent(saturate(sat).automaton, sat.automaton).equivalent);
}

TEST_CASE("affine maps agree with the interval oracle") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 6; ++round) {
    auto u = random_interval_union(rng);
    RNA s = set_of(u.formula(), round % 2 ? 3 : 2);
    Rational a = random_small_rational(rng, 2), b = random_small_rational(rng, 2);
    if (a.sign() == 0) a = rat(-3, 2);
    auto t = affine(s, a, b);
    for (const auto& y : probes(rng, u, 60)) CHECK(member(t, y) == u.contains((y - b) / a));
  }
  auto unit = set_of("0 <= x & x <= 1", 2);
  auto half = affine(unit, rat(1, 2), rat(1, 4));
  CHECK(equivalent(half.automaton, set_of("1/4 <= x & x <= 3/4", 2).automaton).equivalent);
  auto point = affine(unit, rat(0), rat(5));
  CHECK(member(point, rat(5)));
  CHECK_FALSE(member(point, rat(4)));
}

TEST_CASE("affine composition") {
  auto s = set_of("x < 1/3 | x >= 2/3 & x < 2", 2);
  auto lhs = affine(affine(s, rat(2), rat(1)), rat(-1, 2), rat(3));
  auto rhs = affine(s, rat(-1), rat(5, 2));
  CHECK(equivalent(lhs.automaton, rhs.automaton).equivalent);
}

TEST_CASE("clip with open and unbounded domains") {
  std::mt19937_64 rng(5);
  auto u = random_interval_union(rng);
  RNA s = set_of(u.formula(), 3);
  Domain d;
  d.lo = rat(-1, 2);
  d.lo_closed = false;
  auto c = clip(s, d);
  for (const auto& x : probes(rng, u, 80)) CHECK(member(c, x) == (u.contains(x) && x > rat(-1, 2)));
  auto c2 = clip(s, rat(0), rat(1));
  for (const auto& x : probes(rng, u, 80)) CHECK(member(c2, x) == (u.contains(x) && rat(0) <= x && x <= rat(1)));
  CHECK_THROWS_AS(clip(s, rat(1), rat(0)), Error);
}

TEST_CASE("base conversion round trips") {
  std::mt19937_64 rng(8);
  auto third = set_of("x = 1/3", 2);
  auto up = base_power_up(third, 2);
  CHECK(up.base().value() == 4);
  CHECK(member(up, rat(1, 3)));
  CHECK(member_up(up.automaton, lasso_of(up.automaton.alphabet(), {UPWord::parse("0*(1)w", Base(4))})));
  for (unsigned l : {2u, 3u}) {
    for (const char* phi : {"x <= 1/2", "E y . int(y) & x = 2*y + 1", "x < -1 | 1/3 < x & x < 5/2"}) {
      auto s = set_of(phi, 2);
      auto back = base_power_down(base_power_up(s, l), l);
      CHECK(equivalent(back.automaton, s.automaton).equivalent);
    }
  }
  auto d36 = base_power_up(dual_set(Base(6)), 2);
  CHECK(classify(d36.automaton).kind == TopClassKind::DetCoBuchiOnly);
  for (int i = 0; i < 200; ++i) {
    Rational x = random_small_rational(rng, 2);
    CHECK(member(d36, x) == member(dual_set(Base(6)), x));
  }
  CHECK_THROWS_AS(base_power_down(set_of("x < 1", 6), 2), Error);
}

TEST_CASE("boundary points") {
  auto b = boundary(set_of("0 <= x & x <= 1/2", 2));
  auto pts = finite_points(b);
  REQUIRE(pts);
  CHECK(*pts == std::vector<Rational>{rat(0), rat(1, 2)});
  auto b2 = boundary(set_of("x < 1/3 | x = 1 | 2 < x & x < 5/2", 3));
  auto p2 = finite_points(b2);
  REQUIRE(p2);
  CHECK(*p2 == std::vector<Rational>{rat(1, 3), rat(1), rat(2), rat(5, 2)});
  auto c = cantor();
  CHECK(equivalent(boundary(c).automaton, c.automaton).equivalent);
  CHECK_FALSE(finite_points(boundary(dual_set(Base(6)))));
}

TEST_CASE("Cantor automaton matches its digit oracle") {
  auto c = cantor();
  for (long long den : {1, 3, 4, 9, 10, 13, 27, 40, 81})
    for (long long num = 0; num <= den; ++num) CHECK(member(c, rat(num, den)) == cantor_contains(rat(num, den)));
}

TEST_CASE("decomposition reconstructs the set") {
  std::mt19937_64 rng(3);
  for (const char* phi : {"E y . int(y) & y <= x & x < y + 1/2", "x <= 1/2", "x = 1 | x = 5/2"}) {
    auto s = set_of(phi, 2);
    auto d = decompose(s);
    for (int i = 0; i < 200; ++i) {
      Rational x = random_small_rational(rng, 4);
      bool in = false;
      for (const auto& [xi, xf] : splits(x))
        for (const auto& part : d.parts) in = in || (part.integer.contains(xi) && member(part.fractional, xf));
      CHECK(in == member(s, x));
    }
  }
}

TEST_CASE("interval extraction") {
  auto r = interval_extract(set_of("0 <= x & x <= 1/2", 2));
  REQUIRE(std::holds_alternative<IntervalDecomposition>(r));
  const auto& d = std::get<IntervalDecomposition>(r);
  REQUIRE(d.lines.size() == 1);
  CHECK(d.lines[0].progression == Progression{0, 0});
  CHECK(d.lines[0].intervals == std::vector<Interval>{{rat(0), rat(1, 2), true, true}});

  auto e = interval_extract(set_of("x < x", 2));
  REQUIRE(std::holds_alternative<IntervalDecomposition>(e));
  CHECK(std::get<IntervalDecomposition>(e).lines.empty());

  CHECK(std::holds_alternative<NotIntervalFinite>(interval_extract(clip(dual_set(Base(6)), rat(0), rat(1)))));

  for (const char* phi : {"E y . int(y) & y <= x & x < y + 1/2", "E y . int(y) & x = 5*y & x >= 0",
                          "x < 1/3 | x >= 2/3", "!int(x) & 0 < x & x < 3"}) {
    for (std::uint32_t b : {2u, 3u}) {
      auto s = set_of(phi, b);
      auto res = interval_extract(s);
      REQUIRE(std::holds_alternative<IntervalDecomposition>(res));
      auto rebuilt = compile(std::get<IntervalDecomposition>(res).formula(), Base(b)).rna;
      CHECK(equivalent(rebuilt.automaton, s.automaton).equivalent);
    }
  }
}

TEST_CASE("product and sum stability") {
  CHECK(product_stability(set_of("x < x", 2), rat(7), Domain{}));
  CHECK(product_stability(cantor(), rat(3), Domain::closed(rat(0), rat(1))));
  CHECK_FALSE(product_stability(set_of("0 <= x & x <= 1/2", 2), rat(2), Domain::closed(rat(0), rat(1))));
  CHECK(product_stability(set_of("x > 0", 3), rat(5, 2), Domain{}));
  CHECK(sum_stability(set_of("int(x)", 2), rat(1), Domain{}));
  CHECK(sum_stability(set_of("int(x)", 2), rat(-3), Domain{}));
  CHECK_FALSE(sum_stability(set_of("int(x)", 2), rat(1, 2), Domain{}));
  // stable shifts compose
  auto s = set_of("E y . int(y) & x = 3*y + 1", 2);
  CHECK(sum_stability(s, rat(3), Domain{}));
  CHECK(sum_stability(s, rat(6), Domain{}));
  CHECK_FALSE(sum_stability(s, rat(2), Domain{}));
  // outside the domain nothing is compared
  CHECK(sum_stability(set_of("x <= 0", 2), rat(1), Domain::closed(rat(1), rat(5))));
}

TEST_CASE("star delay") {
  auto s = set_of("1/2 <= x & x <= 1", 2);
  auto d = star_delay(s);
  CHECK(member(d, rat(3)));
  CHECK_FALSE(member(d, rat(1, 4)));
  CHECK(member(d, rat(1, 2)));
  CHECK(member(d, rat(40)));
  CHECK_FALSE(product_stability(d, rat(2), Domain::closed(rat(0), rat(4))));  // 1/4 out, 1/2 in
  // the Cantor set is 3-stable on [0,1], so delaying changes nothing there
  auto c = cantor();
  auto dc = star_delay(c);
  CHECK(equivalent(clip(dc, rat(0), rat(1)).automaton, c.automaton).equivalent);
  for (long long n : {1, 4, 32}) CHECK(product_stability(dc, rat(3), Domain::closed(rat(0), rat(n))));
  CHECK(member(dc, rat(6)));
  CHECK_FALSE(member(dc, rat(4)));
}

TEST_CASE("zero runs") {
  for (const RNA& s : {dual_set(Base(6)), set_of("x <= 1/2", 2), cantor()}) {
    CHECK(zero_run_lengths(s.automaton) == walk_zero_run(s.automaton));
    CHECK(zero_run_lengths(s.automaton).second > 0);
  }
}

TEST_CASE("stability pipeline") {
  auto unit = Domain::closed(rat(0), rat(1));
  auto rep = stability_pipeline(clip(dual_set(Base(6)), unit), clip(dual_set(Base(12)), unit), 4);
  CHECK(rep.q > 0);
  CHECK(rep.q_prime > 0);
  CHECK(rep.r_stable);
  CHECK(rep.s_stable);
  REQUIRE(rep.s1_r);
  CHECK(std::make_pair(rep.p, rep.q) == walk_zero_run(rep.s1_r->automaton));
  CHECK(std::make_pair(rep.p_prime, rep.q_prime) == walk_zero_run(rep.s1_s->automaton));
  // y_k approach y from one side
  for (std::size_t k = 0; k + 1 < rep.y_k.size(); ++k)
    CHECK(abs(rep.y_k[k + 1] - rep.y) < abs(rep.y_k[k] - rep.y));
  for (const auto& y : rep.y_k) CHECK((y > rep.y) == rep.from_above);

  auto half2 = set_of("0 <= x & x <= 1/2", 2), half3 = set_of("0 <= x & x <= 1/2", 3);
  try {
    stability_pipeline(half2, half3, 1);
    FAIL("finite boundary accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  try {
    stability_pipeline(clip(dual_set(Base(6)), unit), clip(dual_set(Base(10)), unit), 1);
    FAIL("different sets accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}
