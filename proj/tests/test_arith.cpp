#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "realset/arith.hpp"
#include "realset/lab.hpp"

using namespace realset;
using namespace testing_support;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_formula(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

// Oracle: x = 2y has an integer solution y.
bool even_integer(const Rational& x) { return x.is_integer() && x.num() % 2 == 0; }

// Oracle: fractional part below 1/2.
bool low_half(const Rational& x) { return x - Rational(x.floor(), 1) < rat(1, 2); }

}  // namespace

TEST_CASE("parser builds the expected trees") {
  auto f = parse_formula("E y . x = 2*y & int(y)");
  CHECK(f.kind == Formula::Kind::Exists);
  CHECK(f.var == "y");
  REQUIRE(f.kids.size() == 1);
  CHECK(f.kids[0]->kind == Formula::Kind::And);
  CHECK(f.free_vars() == std::vector<std::string>{"x"});

  auto g = parse_formula("x < 1/3 | x >= 2/3");
  CHECK(g.kind == Formula::Kind::Or);
  CHECK(g.kids[0]->kind == Formula::Kind::Atom);
  CHECK(g.kids[1]->cmp == Cmp::Ge);
  CHECK(g.kids[1]->constant == rat(2, 3));

  auto h = parse_formula("!a < b & c = 1 | d > 0");
  CHECK(h.kind == Formula::Kind::Or);
  CHECK(h.kids[0]->kind == Formula::Kind::And);
  CHECK(h.kids[0]->kids[0]->kind == Formula::Kind::Not);
  CHECK(h.free_vars() == std::vector<std::string>{"a", "b", "c", "d"});

  // terms fold to one side
  auto t = parse_formula("2*x - 1/2 <= x + y - 3");
  CHECK(t.vars == std::vector<std::string>{"x", "y"});
  CHECK(t.coeffs == std::vector<Rational>{rat(1), rat(-1)});
  CHECK(t.constant == rat(-5, 2));

  auto q = parse_formula("A u . E v . u < v");
  CHECK(q.free_vars().empty());
  CHECK(parse_formula(q.str()).str() == q.str());
}

TEST_CASE("parser errors carry positions") {
  CHECK(parse_error("x <").find("column 4") != std::string::npos);
  CHECK(parse_error("x < 1 &\n  y >").find("line 2, column 6") != std::string::npos);
  CHECK(parse_error("x < 1/0").find("zero") != std::string::npos);
  CHECK(parse_error("x # 1").find("column 3") != std::string::npos);
  CHECK(parse_error("E y . E y . y < 1") != "");
  CHECK(parse_error("x < 1 & E x . x > 0") != "");
  CHECK(parse_error("2*3 < x") != "");
}

TEST_CASE("atoms") {
  auto le = atomic_linear({rat(1)}, Cmp::Le, rat(1, 2), Base(2));
  CHECK(member(le, rat(1, 2)));
  CHECK_FALSE(member(le, rat(3, 4)));
  auto diag = atomic_linear({rat(1), rat(-1)}, Cmp::Eq, rat(0), Base(3));
  for (const auto& x : {rat(0), rat(1, 3), rat(5)}) CHECK(member(diag, {x, x}));
  CHECK_FALSE(member(diag, {rat(1, 3), rat(2, 3)}));
  auto strict = atomic_linear({rat(2)}, Cmp::Lt, rat(1), Base(10));
  CHECK_FALSE(member(strict, rat(1, 2)));
  CHECK(member(strict, rat(49, 100)));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    std::vector<Rational> a{random_small_rational(rng, 3), random_small_rational(rng, 3)};
    if (a[0].sign() == 0 && a[1].sign() == 0) continue;
    Rational c = random_small_rational(rng, 2);
    auto cmp = static_cast<Cmp>(rng() % 5);
    auto s = atomic_linear(a, cmp, c, Base(2 + static_cast<std::uint32_t>(rng() % 3)));
    std::vector<Rational> x{random_small_rational(rng, 3), random_small_rational(rng, 3)};
    Rational lhs = a[0] * x[0] + a[1] * x[1];
    bool expect = cmp == Cmp::Lt ? lhs < c : cmp == Cmp::Le ? lhs <= c : cmp == Cmp::Eq ? lhs == c
                  : cmp == Cmp::Ge ? lhs >= c : lhs > c;
    CHECK(member(s, x) == expect);
    CHECK(classify(s.automaton).kind == TopClassKind::Weak);
  }
}

TEST_CASE("integrality") {
  auto z = integrality(Base(10));
  CHECK(member(z, rat(3)));
  CHECK_FALSE(member(z, rat(7, 2)));
  Alphabet al(Base(10), 1);
  CHECK(member_up(z.automaton, lasso_of(al, {UPWord::parse("02*(9)w", Base(10))})));
  auto z2 = integrality(Base(2));
  CHECK_FALSE(member_up(z2.automaton, lasso_of(Alphabet(Base(2), 1), {UPWord::parse("0*01(0)w", Base(2))})));
}

TEST_CASE("projection") {
  auto diag = atomic_linear({rat(1), rat(-1)}, Cmp::Eq, rat(0), Base(2));
  auto v = validity_automaton(Base(2), 1);
  CHECK(equivalent(project(diag, 0).automaton, v.automaton).equivalent);
  CHECK(equivalent(project(diag, 1).automaton, v.automaton).equivalent);
  auto half = atomic_linear({rat(1), rat(-2)}, Cmp::Eq, rat(0), Base(2));
  CHECK(equivalent(project(half, 1).automaton, v.automaton).equivalent);
  auto evens = compile("E y . x = 2*y & int(y)", Base(2)).rna;
  for (long long n = -10; n <= 10; ++n) {
    CHECK(member(evens, rat(n)) == even_integer(rat(n)));
    CHECK_FALSE(member(evens, rat(2 * n + 1, 2)));
  }
}

TEST_CASE("compile examples") {
  CHECK(emptiness(compile("x < x", Base(3)).rna.automaton) == std::nullopt);
  auto s = compile("E y . int(y) & y <= x & x < y + 1/2", Base(2)).rna;
  CHECK(member(s, rat(9, 4)));
  CHECK_FALSE(member(s, rat(7, 4)));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Rational x = random_small_rational(rng, 6);
    CHECK(member(s, x) == low_half(x));
  }
  auto unit = clip(validity_automaton(Base(2), 1), rat(0), rat(1));
  for (std::uint32_t b : {2u, 3u, 10u}) {
    auto c = compile("0 <= x & x <= 1", Base(b));
    CHECK(c.vars == std::vector<std::string>{"x"});
    auto cmp = cross_base_compare(c.rna, unit, 400, b);
    CHECK(cmp.full_agreement());
  }
  auto sentence = compile("A x . E y . x < y", Base(2));
  CHECK(sentence.vars == std::vector<std::string>{"_"});
  CHECK(emptiness(sentence.rna.automaton).has_value());
  CHECK_FALSE(emptiness(compile("E x . A y . y < x", Base(2)).rna.automaton).has_value());
  auto two = compile("y = 2*x + 1", Base(3));
  CHECK(two.vars == std::vector<std::string>{"x", "y"});
  CHECK(member(two.rna, {rat(1, 3), rat(5, 3)}));
}

TEST_CASE("boolean soundness, tautologies and quantifier duality") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> parts{"x < 1/3", "int(x)", "E y . int(y) & x = 3*y + 1", "x >= -1 & x < 5/2"};
  for (std::uint32_t b : {2u, 3u}) {
    const Base base(b);
    auto v = validity_automaton(base, 1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      const auto& q = parts[(i + 1) % parts.size()];
      auto sp = compile(p, base).rna, sq = compile(q, base).rna;
      auto conj = compile("(" + p + ") & (" + q + ")", base).rna;
      auto disj = compile("(" + p + ") | (" + q + ")", base).rna;
      auto neg = compile("!(" + p + ")", base).rna;
      for (int k = 0; k < 500; ++k) {
        Rational x = random_small_rational(rng, 4);
        bool a = member(sp, x), c = member(sq, x);
        CHECK(member(conj, x) == (a && c));
        CHECK(member(disj, x) == (a || c));
        CHECK(member(neg, x) == !a);
      }
      CHECK(equivalent(complement_set(neg).automaton, sp.automaton).equivalent);
      CHECK(equivalent(product(sp.automaton, neg.automaton, BoolOp::Or), v.automaton).equivalent);
      CHECK_FALSE(emptiness(product(sp.automaton, neg.automaton, BoolOp::And)).has_value());
    }
    auto all = compile("A y . y <= x | y > x + 1 | int(y) | !int(y)", base).rna;
    auto dual = complement_set(compile("E y . !(y <= x | y > x + 1 | int(y) | !int(y))", base).rna);
    CHECK(equivalent(all.automaton, dual.automaton).equivalent);
    auto f1 = compile("A y . !int(y) | y <= x | y >= x + 1", base).rna;
    auto f2 = complement_set(compile("E y . !(!int(y) | y <= x | y >= x + 1)", base).rna);
    CHECK(equivalent(f1.automaton, f2.automaton).equivalent);
    CHECK(equivalent(f1.automaton, compile("int(x)", base).rna.automaton).equivalent);
  }
}

TEST_CASE("compiled sets are weak in several bases") {
  for (std::uint32_t b : {2u, 3u, 4u, 10u})
    for (const auto& phi : definable_corpus()) {
      auto c = compile(phi, Base(b));
      CHECK_MESSAGE(classify(c.rna.automaton).kind == TopClassKind::Weak, phi << " base " << b);
      CHECK(c.rna.saturated);
    }
}
