#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entropykit/chart.hpp"
#include "entropykit/expr.hpp"
#include "entropykit/forms.hpp"

namespace entropykit {

/// Where the text being parsed starts inside its enclosing file, for error positions.
struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Identifiers an expression may mention: chart coordinates first, then parameters.
struct Scope {
  Chart chart;
  std::vector<std::string> params;
  /// Unspecified functions, written `T(S, V)` or just `T`; arguments must match the declaration.
  std::map<std::string, std::vector<std::string>, std::less<>> functions;

  bool knows(std::string_view name) const;
};

/// Parses `text` into canonical form.
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | factor
///   factor := base ('^' exponent)?
///   base   := number | ident | '(' expr ')' | ('ln'|'exp') '(' expr ')' | fname ('(' ident (',' ident)* ')')?
///   exponent := rational | '(' rational ')' ;  rational := '-'? integer ('/' integer)?
///   number := integer ('/' integer)?
///
/// Throws ParseError (with line/column), UnknownIdentifierError, DivisionByZeroError
/// when dividing by an expression that canonicalizes to zero, and DomainError for
/// things like ln(0) or (-1)^(1/2).
Expr parse(std::string_view text, const Scope& scope, SourcePos origin = {});
Expr parse(std::string_view text, const Chart& chart, const std::vector<std::string>& params = {});

/// 1-form such as `dU - T*dS + p*dV`: `d<x>` for a chart coordinate x is its differential, and
/// the text must be linear in the differentials with coefficients free of them.
DifferentialForm parse_one_form(std::string_view text, const Scope& scope, SourcePos origin = {});

}  // namespace entropykit
