#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "realset/arith.hpp"

namespace realset {

namespace {

enum class Tok { End, Var, Num, Sym, Exists, Forall, Int };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (std::islower(static_cast<unsigned char>(c))) {
      while (j < s.size() && (std::islower(static_cast<unsigned char>(s[j])) ||
                              std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      t.text = std::string(s.substr(i, j - i));
      std::size_t k = j;
      while (k < s.size() && s[k] == ' ') ++k;
      t.kind = t.text == "int" && k < s.size() && s[k] == '(' ? Tok::Int : Tok::Var;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Num;
      t.text = std::string(s.substr(i, j - i));
    } else if (c == 'E' || c == 'A') {
      j = i + 1;
      t.kind = c == 'E' ? Tok::Exists : Tok::Forall;
      t.text = std::string(1, c);
    } else if ((c == '<' || c == '>') && i + 1 < s.size() && s[i + 1] == '=') {
      j = i + 2;
      t.kind = Tok::Sym;
      t.text = std::string(s.substr(i, 2));
    } else if (std::string_view("()|&!.<>=+-*/").find(c) != std::string_view::npos) {
      j = i + 1;
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
    advance(j - i);
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

using Node = std::shared_ptr<const Formula>;

struct Linear {
  std::map<std::string, Rational> coeffs;
  std::vector<std::string> order;  // first mention
  Rational constant;

  void add_var(const std::string& v, const Rational& a) {
    if (!coeffs.count(v)) order.push_back(v);
    coeffs[v] = coeffs[v] + a;
  }
  void add(const Linear& o, int sign) {
    for (const auto& v : o.order) add_var(v, o.coeffs.at(v) * Rational(sign));
    constant = constant + o.constant * Rational(sign);
  }
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula run() {
    Node f = disjunction();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return *f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + msg);
  }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  void expect(const char* s) {
    if (!is_sym(s)) fail(peek(), std::string("expected '") + s + "'");
    ++pos_;
  }
  static Node make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

  Node binary(Formula::Kind kind, Node a, Node b) {
    Formula f;
    f.kind = kind;
    f.kids = {std::move(a), std::move(b)};
    return make(std::move(f));
  }

  Node disjunction() {
    Node f = conjunction();
    while (is_sym("|")) {
      ++pos_;
      f = binary(Formula::Kind::Or, f, conjunction());
    }
    return f;
  }

  Node conjunction() {
    Node f = unary();
    while (is_sym("&")) {
      ++pos_;
      f = binary(Formula::Kind::And, f, unary());
    }
    return f;
  }

  Node unary() {
    const Token& t = peek();
    if (is_sym("!")) {
      ++pos_;
      Formula f;
      f.kind = Formula::Kind::Not;
      f.kids = {unary()};
      return make(std::move(f));
    }
    if (t.kind == Tok::Exists || t.kind == Tok::Forall) {
      ++pos_;
      if (peek().kind != Tok::Var) fail(peek(), "expected variable");
      Formula f;
      f.kind = t.kind == Tok::Exists ? Formula::Kind::Exists : Formula::Kind::Forall;
      f.var = peek().text;
      ++pos_;
      expect(".");
      f.kids = {disjunction()};
      return make(std::move(f));
    }
    if (t.kind == Tok::Int) {
      ++pos_;
      expect("(");
      if (peek().kind != Tok::Var) fail(peek(), "expected variable");
      Formula f;
      f.kind = Formula::Kind::Int;
      f.var = peek().text;
      ++pos_;
      expect(")");
      return make(std::move(f));
    }
    if (is_sym("(")) {
      ++pos_;
      Node f = disjunction();
      expect(")");
      return f;
    }
    return atom();
  }

  Rational rational(bool negative) {
    if (peek().kind != Tok::Num) fail(peek(), "expected number");
    BigInt num(peek().text);
    ++pos_;
    BigInt den = 1;
    if (is_sym("/")) {
      ++pos_;
      if (peek().kind != Tok::Num) fail(peek(), "expected positive integer");
      den = BigInt(peek().text);
      if (den == 0) fail(peek(), "zero denominator");
      ++pos_;
    }
    return Rational(negative ? BigInt(-num) : num, den);
  }

  Linear summand() {
    Linear out;
    bool negative = false;
    if (is_sym("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().kind == Tok::Var) {
      out.add_var(peek().text, Rational(negative ? -1 : 1));
      ++pos_;
      return out;
    }
    Rational r = rational(negative);
    if (is_sym("*")) {
      ++pos_;
      if (peek().kind != Tok::Var) fail(peek(), "expected variable after '*'");
      out.add_var(peek().text, r);
      ++pos_;
    } else {
      out.constant = r;
    }
    return out;
  }

  Linear term() {
    Linear out = summand();
    while (is_sym("+") || is_sym("-")) {
      int sign = is_sym("+") ? 1 : -1;
      ++pos_;
      out.add(summand(), sign);
    }
    return out;
  }

  Node atom() {
    Linear lhs = term();
    const Token& t = peek();
    static const std::map<std::string, Cmp> cmps{
        {"<", Cmp::Lt}, {"<=", Cmp::Le}, {"=", Cmp::Eq}, {">=", Cmp::Ge}, {">", Cmp::Gt}};
    if (t.kind != Tok::Sym || !cmps.count(t.text)) fail(t, "expected comparison");
    Cmp cmp = cmps.at(t.text);
    ++pos_;
    Linear rhs = term();
    lhs.add(rhs, -1);
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.cmp = cmp;
    f.constant = -lhs.constant;
    for (const auto& v : lhs.order) {
      f.vars.push_back(v);
      f.coeffs.push_back(lhs.coeffs.at(v));
    }
    return make(std::move(f));
  }
};

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      for (const auto& v : f.vars)
        if (!bound.count(v)) out.insert(v);
      break;
    case Formula::Kind::Int:
      if (!bound.count(f.var)) out.insert(f.var);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.var).second;
      collect_free(*f.kids[0], bound, out);
      if (fresh) bound.erase(f.var);
      break;
    }
    default:
      for (const auto& k : f.kids) collect_free(*k, bound, out);
  }
}

void collect_bound(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) out.push_back(f.var);
  for (const auto& k : f.kids) collect_bound(*k, out);
}

}  // namespace

std::vector<std::string> Formula::free_vars() const {
  std::set<std::string> bound, out;
  collect_free(*this, bound, out);
  return {out.begin(), out.end()};
}

std::string Formula::str() const {
  switch (kind) {
    case Kind::Atom: {
      std::ostringstream s;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        const Rational& a = coeffs[i];
        if (i > 0) s << (a.sign() < 0 ? " - " : " + ");
        else if (a.sign() < 0) s << "-";
        s << abs(a).str() << "*" << vars[i];
      }
      if (vars.empty()) s << "0";
      s << ' ' << to_string(cmp) << ' ' << constant.str();
      return s.str();
    }
    case Kind::Int: return "int(" + var + ")";
    case Kind::Not: return "!(" + kids[0]->str() + ")";
    case Kind::And: return "(" + kids[0]->str() + " & " + kids[1]->str() + ")";
    case Kind::Or: return "(" + kids[0]->str() + " | " + kids[1]->str() + ")";
    case Kind::Exists: return "(E " + var + " . " + kids[0]->str() + ")";
    case Kind::Forall: return "(A " + var + " . " + kids[0]->str() + ")";
  }
  return "";
}

Formula parse_formula(std::string_view text) {
  Formula f = Parser(text).run();
  std::vector<std::string> bound;
  collect_bound(f, bound);
  std::vector<std::string> sorted = bound;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::Parse, "variable bound more than once");
  for (const auto& v : f.free_vars())
    if (std::binary_search(sorted.begin(), sorted.end(), v))
      throw Error(ErrorCode::Parse, "variable '" + v + "' occurs both free and bound");
  return f;
}

}  // namespace realset
