#pragma once

// Expression DSL.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := base ('^' int)?
//   base   := number | symbol | '(' expr ')' | 'sqrt' '(' expr ')'
//
// '^' binds tighter than unary minus, so -x^2 parses as -(x^2). `r` is a
// reserved symbol for sqrt(x^2+y^2+z^2).

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kcp/form.hpp"

namespace kcp {

struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

struct AstNode {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Sqrt };
    Kind kind;
    Scalar number;      // Number
    std::string symbol; // Symbol
    AstPtr a, b;        // children (a only for Neg/Pow/Sqrt)
    long exponent = 0;  // Pow
};

// Throws SyntaxError with line/column on malformed input.
AstPtr parse(std::string_view text);

using SymbolTable = std::map<std::string, RationalForm, std::less<>>;

// Lowers to canonical form. Symbols resolve as phase variables / r, then the
// declared parameters, then `env` (previously defined names). Division is
// accepted only for invertible divisors; sqrt only for x^2+y^2+z^2.
RationalForm lower(const AstPtr& ast, const std::vector<std::string>& params,
                   const SymbolTable& env = {});

} // namespace kcp
