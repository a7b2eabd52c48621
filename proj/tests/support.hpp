// Shared helpers for the test binaries.
#ifndef HO_TEST_SUPPORT_HPP
#define HO_TEST_SUPPORT_HPP

#include <string>

#include "ho/dp.hpp"
#include "ho/parse.hpp"

namespace test {

inline std::string corpus(const std::string& name) { return std::string(HO_CORPUS_DIR) + "/" + name + ".afsm"; }

inline ho::InputSystem load(const std::string& name) { return ho::parse_file(corpus(name)); }

inline ho::Term term(const std::string& text, const ho::Signature& sig, const ho::VarTypes& vars = {}) {
  return ho::parse_term(text, sig, vars);
}

// "l", "p" parsed together so meta-variable types are shared
inline ho::DP dp(const std::string& l, const std::string& p, const ho::Signature& sig, ho::Conditions conds = {},
                 const ho::VarTypes& vars = {}) {
  auto ts = ho::parse_terms({l, p}, sig, vars);
  return ho::DP{ts[0], ts[1], std::move(conds)};
}

inline ho::Type ty(const std::string& text) { return ho::parse_type(text); }

} // namespace test

#endif
