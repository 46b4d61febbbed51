#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "qlab/series.hpp"

namespace qlab {

/// AST of the identity mini-language.
///
/// Grammar (whitespace insignificant, '*' optional between factors):
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/')? factor)*
///   factor  := atom ('^' ['-'] int)?
///   atom    := 'f' int            eta factor f_k
///            | 'q' ('^' int)?     monomial
///            | 'G(q['^'int])' | 'H(q['^'int])' | 'T(q['^'int])'
///            | 'K'
///            | 'negq4(' expr ')'  argument substitution q -> -q^4
///            | '@' ident          named built-in series
///            | int ['/' int]      rational constant (both parts bare ints)
///            | '(' expr ')'
enum class ExprKind {
    RationalConst,
    Monomial,
    EtaF,
    GFun,
    HFun,
    TFun,
    KConst,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    SubstNegQ4,
    NamedSeries,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    Rational value;        // RationalConst
    long long arg = 0;     // Monomial/EtaF: k; G/H/T: dilation; Pow: exponent
    std::string name;      // NamedSeries
    ExprPtr lhs, rhs;      // children; unary nodes use lhs only
    std::size_t begin = 0, end = 0;  // source span [begin, end)
};

/// Parse the mini-language; throws ParseError with byte offset and the
/// expected-token set.
ExprPtr parse_expr(std::string_view text);

/// Canonical text form; parsing it back yields a structurally identical AST.
std::string print_expr(const ExprPtr& e);

/// Resolver for '@name' atoms.
struct EvalEnv {
    std::function<Series(std::string_view name, std::size_t n, const Ring& ring)> named;
};

/// Evaluate to a Series of precision n over the given ring. Division and
/// negative powers require unit-leading denominators; violations raise
/// NonUnitLeadingError carrying the offending subexpression's span.
Series eval(const ExprPtr& e, std::size_t n, const Ring& ring, const EvalEnv& env = {});

}  // namespace qlab
