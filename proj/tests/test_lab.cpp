#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "realset/arith.hpp"
#include "realset/lab.hpp"

using namespace realset;
using namespace testing_support;

namespace {

// Oracle: the denominator divides a power of t.
bool t_adic(const Rational& x, std::uint32_t t) {
  BigInt d = x.den();
  BigInt g = gcd(d, BigInt(t));
  while (g > 1) {
    d /= g;
    g = gcd(d, BigInt(t));
  }
  return d == 1;
}

// Valid encodings ending in 0^ω only; an unsaturated description of the same set.
RNA zero_tails(std::uint32_t t) {
  Alphabet al(Base(t), 1);
  AutomatonBuilder b(al);
  State init = b.add_state(), in_int = b.add_state(), frac = b.add_state(), zero = b.add_state();
  b.set_initial(init);
  for (Digit d = 0; d < t; ++d) {
    Symbol s = al.uniform(d);
    if (d == 0 || d == t - 1) b.set_transition(init, s, in_int);
    b.set_transition(in_int, s, in_int);
    b.set_transition(frac, s, d == 0 ? zero : frac);
    b.set_transition(zero, s, d == 0 ? zero : frac);
  }
  b.set_transition(in_int, al.separator(), frac);
  std::vector<bool> rejecting(b.num_states(), true);
  rejecting[zero] = false;
  return {b.build(Acceptance::cobuchi(rejecting)), false};
}

}  // namespace

TEST_CASE("dual sets") {
  auto d6 = dual_set(Base(6));
  CHECK(member(d6, rat(1, 4)));
  CHECK_FALSE(member(d6, rat(1, 5)));
  for (std::uint32_t t : {2u, 6u, 10u, 12u}) {
    auto d = dual_set(Base(t));
    CHECK(d.saturated);
    CHECK(classify(d.automaton).kind == TopClassKind::DetCoBuchiOnly);
    CHECK(classify(complement(d.automaton)).kind == TopClassKind::DetBuchiOnly);
    CHECK(equivalent(d.automaton, saturate(zero_tails(t)).automaton).equivalent);
    std::mt19937_64 rng(t);
    for (int i = 0; i < 300; ++i) {
      Rational x(BigInt(static_cast<long long>(rng() % 2001) - 1000), BigInt(static_cast<long long>(1 + rng() % 144)));
      CHECK(member(d, x) == t_adic(x, t));
    }
  }
}

TEST_CASE("rational battery is seeded and stratified") {
  auto a = rational_battery(Base(2), Base(3), 400, 5);
  auto b = rational_battery(Base(2), Base(3), 400, 5);
  CHECK(a == b);
  CHECK(a.size() == 400);
  CHECK(a != rational_battery(Base(2), Base(3), 400, 6));
  std::size_t dyadic = 0, triadic = 0, neither = 0;
  for (const auto& x : a) {
    if (t_adic(x, 2) && !x.is_integer()) ++dyadic;
    else if (t_adic(x, 3) && !x.is_integer()) ++triadic;
    else if (!t_adic(x, 6)) ++neither;
  }
  CHECK(dyadic > 20);
  CHECK(triadic > 20);
  CHECK(neither > 20);
}

TEST_CASE("parallel batches match the serial reference") {
  auto d = dual_set(Base(6));
  auto xs = rational_battery(Base(2), Base(3), 600, 11);
  CHECK(member_batch(d, xs) == member_batch_serial(d, xs));
  auto s = compile("E y . int(y) & y <= x & x < y + 1/2", Base(3)).rna;
  auto p = cross_base_compare(s, d, 500, 3);
  auto q = cross_base_compare_serial(s, d, 500, 3);
  CHECK(p.agreements == q.agreements);
  CHECK(p.witness == q.witness);
}

TEST_CASE("cross-base comparison") {
  auto half = compile("0 <= x & x <= 1/2", Base(2)).rna;
  auto third = compile("0 <= x & x <= 1/3", Base(3)).rna;
  auto rep = cross_base_compare(half, third, 1000, 1);
  CHECK(rep.base_r == 2);
  CHECK(rep.base_s == 3);
  CHECK_FALSE(rep.full_agreement());
  REQUIRE(rep.witness);
  CHECK(*rep.witness > rat(1, 3));
  CHECK(*rep.witness <= rat(1, 2));
  CHECK(rep.verdict_r == TopClassKind::Weak);

  for (const auto& phi : definable_corpus()) {
    auto self = cross_base_compare(compile(phi, Base(4)).rna, compile(phi, Base(10)).rna, 300, 2);
    CHECK_MESSAGE(self.full_agreement(), phi);
  }
  auto d4 = dual_set(Base(4)), d2 = dual_set(Base(2));
  CHECK(cross_base_compare(d4, d2, 1000, 7).full_agreement());
  CHECK_FALSE(cross_base_compare(dual_set(Base(6)), d2, 1000, 7).full_agreement());
}

TEST_CASE("oscillation witnesses") {
  auto d = dual_set(Base(6));
  auto w = oscillation_witness(d, 6);
  REQUIRE(w);
  CHECK(w->x.size() == 6);
  CHECK(w->verify(d));
  for (std::size_t i = 0; i + 1 < w->x.size(); ++i) {
    CHECK(w->inside[i] != w->inside[i + 1]);
    CHECK(member(d, w->x[i]) == w->inside[i]);
    Rational gap = w->x[i] - w->x[i + 1];
    if (gap.sign() < 0) gap = -gap;
    CHECK(gap <= w->eps[i]);
    if (i + 1 < w->eps.size()) CHECK(gap > w->eps[i + 1]);
  }
  auto tampered = *w;
  tampered.inside[0] = !tampered.inside[0];
  CHECK_FALSE(tampered.verify(d));

  // A finite witness exists around any boundary point; here it closes in on 1/2.
  auto half = compile("0 <= x & x <= 1/2", Base(2)).rna;
  auto h = oscillation_witness(half, 6);
  REQUIRE(h);
  CHECK(h->verify(half));
  Rational off = h->x.back() - rat(1, 2);
  if (off.sign() < 0) off = -off;
  CHECK(off <= h->eps.back());
  CHECK_FALSE(oscillation_witness(compile("int(x)", Base(3)).rna, 5));
}

TEST_CASE("suite") {
  auto rep = run_cobham_suite(Base(6), Base(12), 1);
  CHECK(rep.ok());
  CHECK(rep.stability.has_value());
  CHECK(rep.csv().rfind("experiment,base_r,base_s,verdict,witness\n", 0) == 0);
  CHECK(rep.text().find("dual") != std::string::npos);
  auto coprime = run_cobham_suite(Base(2), Base(3), 1);
  CHECK(coprime.ok());
  CHECK_FALSE(coprime.stability.has_value());
}
