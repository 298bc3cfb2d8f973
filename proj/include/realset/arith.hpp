#pragma once

// First-order formulas over the reals with integers, and their compilation.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "realset/rna.hpp"

namespace realset {

enum class Cmp { Lt, Le, Eq, Ge, Gt };
const char* to_string(Cmp c);

/// {x̄ : Σ a_i x_i ~ c}; weak and saturated.
RNA atomic_linear(const std::vector<Rational>& coeffs, Cmp cmp, const Rational& c, Base base);

/// ℤ as a weak saturated set.
RNA integrality(Base base);

/// Erases one track (existential quantification).
RNA project(const RNA& r, unsigned track);

struct Formula {
  enum class Kind { Atom, Int, Not, And, Or, Exists, Forall };
  Kind kind = Kind::Atom;
  // atoms: Σ coeffs[i]·vars[i] ~ constant (variables distinct)
  std::vector<std::string> vars;
  std::vector<Rational> coeffs;
  Cmp cmp = Cmp::Eq;
  Rational constant;
  std::string var;  // Int and quantifiers
  std::vector<std::shared_ptr<const Formula>> kids;

  std::vector<std::string> free_vars() const;  // sorted
  std::string str() const;
};

/// Errors carry "line L, column C".
Formula parse_formula(std::string_view text);

struct CompiledSet {
  RNA rna;
  std::vector<std::string> vars;  // track order; a placeholder "_" for sentences
};

CompiledSet compile(const Formula& phi, Base base);
CompiledSet compile(std::string_view text, Base base);

}  // namespace realset
