#pragma once

// Concrete ASCII syntax.
//
//   term   := ident | "c:" ident | term "*" term | term "+" term | "!" term
//           | "f[" (nat | "w") "](" term ")"
//   agent  := "P" | "V"
//   eform  := ident | "~" eform | eform "&" eform | eform "|" eform
//           | eform "->" eform | eform "<->" eform
//           | "box[" agent "]" eform | term ":[" agent "]" eform
//   form   := eform | "Pr>=" qeps "(" eform ")" | "Pr~" rational "(" eform ")"
//           | ("Pr<" | "Pr<=" | "Pr>" | "Pr=") qeps "(" eform ")"
//           | "~" form | form "&" form | form "|" form | form "->" form
//
// Precedence: ! > * > + for terms; unary > & > | > -> > <-> for formulas.
// "->" associates to the right, the others to the left. Derived
// connectives and probability operators are desugared while parsing.

#include <string>
#include <string_view>

#include "ipj/formula.hpp"
#include "ipj/term.hpp"

namespace ipj {

struct ParseOptions {
  /// Template parameter admitted in threshold position ("c/v^j" for nu,
  /// "c sigma" for sigma). The parameter name is reserved elsewhere.
  Parameter parameter = Parameter::None;
  /// Added to reported line numbers.
  std::size_t line_offset = 0;
};

Term parse_term(std::string_view text, const ParseOptions& opts = {});
Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
EFormula parse_eformula(std::string_view text, const ParseOptions& opts = {});

std::string to_string(const Term& t);
/// Prints with the derived connectives recognized, so "p -> q" prints back
/// as written. Output reparses to the identical AST.
std::string to_string(const Formula& f);

}  // namespace ipj
