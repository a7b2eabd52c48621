// Native input format:
//
//   SIG
//     name : type            type ::= sort | type -> type | ( type )
//   RULES
//     lhs => rhs
//
// Terms: application by juxtaposition, /\x. body (also /\x y. body),
// meta-variables Name[arg,...] with an uppercase initial (Name alone has no
// arguments), lowercase variables bound by /\, # comments to end of line.
// Types of bound variables and meta-variables are inferred by unification.
#ifndef HO_PARSE_HPP
#define HO_PARSE_HPP

#include "ho/rewrite.hpp"

namespace ho {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg);
  int line, col;
};

struct InputSystem {
  std::vector<std::string> sorts; // in order of first appearance
  Signature signature;
  std::vector<std::string> symbol_order; // declaration order
  std::vector<Rule> rules;

  RuleSet rule_set() const;
};

InputSystem parse_system(const std::string& text);
InputSystem parse_file(const std::string& path);
// Parse a single closed or open term against a signature; free lowercase
// identifiers must be listed in vars.
Term parse_term(const std::string& text, const Signature& sig, const VarTypes& vars = {});
// Several terms sharing meta-variable and free-variable types.
std::vector<Term> parse_terms(const std::vector<std::string>& texts, const Signature& sig, const VarTypes& vars = {});
Type parse_type(const std::string& text);

std::string render_system(const InputSystem& sys);
std::string render_system(const RuleSet& R);

} // namespace ho

#endif
