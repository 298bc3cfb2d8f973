#include <algorithm>

#include "realset/arith.hpp"

namespace realset {

namespace {

// A compiled subformula: an RNA over `vars` (sorted), or a truth value when
// no variable is free.
struct Sub {
  std::optional<RNA> rna;
  std::vector<std::string> vars;
  bool truth = false;
};

Sub constant(bool value) { return {std::nullopt, {}, value}; }

RNA lift(const RNA& r, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  if (from == to) return r;
  Alphabet target(r.base(), static_cast<unsigned>(to.size()));
  std::vector<unsigned> pick;
  for (const auto& v : from)
    pick.push_back(static_cast<unsigned>(std::find(to.begin(), to.end(), v) - to.begin()));
  const Alphabet& src = r.automaton.alphabet();
  auto a = inverse_homomorphism(r.automaton, target, [&](Symbol s) {
    if (target.is_separator(s)) return src.separator();
    auto ds = target.decode(s);
    std::vector<Digit> sub;
    for (unsigned t : pick) sub.push_back(ds[t]);
    return src.encode(sub);
  });
  return normalize({a, r.saturated});
}

Sub empty_over(const std::vector<std::string>& vars, Base base) {
  return {complement_set(validity_automaton(base, static_cast<unsigned>(vars.size()))), vars, false};
}

Sub full_over(const std::vector<std::string>& vars, Base base) {
  return {validity_automaton(base, static_cast<unsigned>(vars.size())), vars, false};
}

Sub combine(const Sub& a, const Sub& b, BoolOp op, Base base) {
  const bool is_and = op == BoolOp::And;
  if (!a.rna && !b.rna) return constant(is_and ? a.truth && b.truth : a.truth || b.truth);
  if (!a.rna || !b.rna) {
    const Sub& c = a.rna ? b : a;
    const Sub& s = a.rna ? a : b;
    if (c.truth == is_and) return s;
    return is_and ? empty_over(s.vars, base) : full_over(s.vars, base);
  }
  std::vector<std::string> vars = a.vars;
  vars.insert(vars.end(), b.vars.begin(), b.vars.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  RNA la = lift(*a.rna, a.vars, vars), lb = lift(*b.rna, b.vars, vars);
  return {is_and ? intersect(la, lb) : unite(la, lb), vars, false};
}

Sub negate(const Sub& s) {
  if (!s.rna) return constant(!s.truth);
  return {complement_set(*s.rna), s.vars, false};
}

Sub exists(const Sub& s, const std::string& var) {
  auto it = std::find(s.vars.begin(), s.vars.end(), var);
  if (!s.rna || it == s.vars.end()) return s;
  if (s.vars.size() == 1) return constant(emptiness(s.rna->automaton).has_value());
  auto vars = s.vars;
  unsigned track = static_cast<unsigned>(it - s.vars.begin());
  vars.erase(vars.begin() + track);
  return {normalize(project(*s.rna, track)), vars, false};
}

Sub compile_sub(const Formula& f, Base base) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      if (f.vars.empty()) {
        int c = f.constant.sign();  // 0 ~ constant
        bool v = f.cmp == Cmp::Lt ? 0 < c : f.cmp == Cmp::Le ? 0 <= c : f.cmp == Cmp::Eq ? c == 0
                 : f.cmp == Cmp::Ge ? 0 >= c : 0 > c;
        return constant(v);
      }
      std::vector<std::string> vars = f.vars;
      std::sort(vars.begin(), vars.end());
      std::vector<Rational> coeffs(vars.size());
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        auto at = std::find(vars.begin(), vars.end(), f.vars[i]) - vars.begin();
        coeffs[at] = coeffs[at] + f.coeffs[i];
      }
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      coeffs.resize(vars.size());
      return {atomic_linear(coeffs, f.cmp, f.constant, base), vars, false};
    }
    case K::Int: return {integrality(base), {f.var}, false};
    case K::Not: return negate(compile_sub(*f.kids[0], base));
    case K::And: return combine(compile_sub(*f.kids[0], base), compile_sub(*f.kids[1], base), BoolOp::And, base);
    case K::Or: return combine(compile_sub(*f.kids[0], base), compile_sub(*f.kids[1], base), BoolOp::Or, base);
    case K::Exists: return exists(compile_sub(*f.kids[0], base), f.var);
    case K::Forall: return negate(exists(negate(compile_sub(*f.kids[0], base)), f.var));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown formula node");
}

}  // namespace

CompiledSet compile(const Formula& phi, Base base) {
  Sub s = compile_sub(phi, base);
  if (!s.rna) {
    auto v = validity_automaton(base, 1);
    return {s.truth ? v : complement_set(v), {"_"}};
  }
  return {*s.rna, s.vars};
}

CompiledSet compile(std::string_view text, Base base) { return compile(parse_formula(text), base); }

}  // namespace realset
