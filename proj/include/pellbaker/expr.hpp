#pragma once

#include <string>

#include "pellbaker/arith.hpp"
#include "pellbaker/reduce.hpp"

namespace pellbaker {

class ParseError : public Error {
 public:
  using Error::Error;
};

// Real constants such as "log4/logalpha", "log(quad 1 1 2)", "sqrt(2)", "-log(3/2)*2".
// Atoms: integers, decimals, p/q, log2, log4, logalpha, log(<rational>),
// log(quad a b D), sqrt(<rational>); operators + - * / and parentheses.
RealOracle parse_real_expr(const std::string& text);

// Text instance: lines "C <int>", "X <int>" (default for every tau) and
// "tau <expr> [X_i]"; '#' starts a comment. C defaults to (t max X_i)^(t+1).
LLLInstance parse_lll_instance(const std::string& text);

}  // namespace pellbaker
