#pragma once

/**
 * @file expr.hpp
 * @brief Univariate analytic expressions for surface profiles A(u), B(v), beta(v).
 *
 * Grammar:
 *   expr   := term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := '-' factor | power
 *   power  := atom ('^' exponent)?
 *   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
 *
 * The exponent is a numeric literal, optionally signed and parenthesized
 * ("^2", "^(-2)", "^-0.5"), and must be an integer or half-integer.
 */

#include <spinsym/jet.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace spinsym {

using Bindings = std::map<std::string, double>;

namespace ast {

struct Node;
using NodePtr = std::shared_ptr<Node const>;

struct Number
{
    double value;
};
struct Identifier
{
    std::string name;
};
struct Negate
{
    NodePtr operand;
};
struct Binary
{
    char op; // one of + - * /
    NodePtr lhs;
    NodePtr rhs;
};
struct Power
{
    NodePtr base;
    double exponent;
};
struct Call
{
    UnaryFn fn;
    NodePtr arg;
};

struct Node
{
    std::variant<Number, Identifier, Negate, Binary, Power, Call> data;
};

} // namespace ast

class ExprAst
{
public:
    ExprAst() = default;
    explicit ExprAst(ast::NodePtr root);

    ast::Node const& root() const { return *root_; }
    ast::NodePtr const& root_ptr() const { return root_; }

    /// The coordinate the expression depends on, if any.
    std::optional<Variable> variable() const;
    std::set<std::string> parameters() const;

    static ExprAst number(double x);
    static ExprAst power(ExprAst const& base, double exponent);

private:
    ast::NodePtr root_;
};

/// Parameter names accepted by parse(text) without an explicit list.
std::set<std::string> const& default_parameter_names();

std::string_view function_name(UnaryFn f);

ExprAst parse(std::string_view text);
ExprAst parse(std::string_view text, std::set<std::string> const& parameters);

/// Jet of the expression with its coordinate replaced by var.
Jet2 eval_jet(ExprAst const& e, Jet2 const& var, Bindings const& bindings);

/// Plain real evaluation; domain errors match eval_jet.
double eval(ExprAst const& e, double x, Bindings const& bindings);

/// Fully parenthesized text that parses back to an equivalent expression.
std::string to_string(ExprAst const& e);

} // namespace spinsym
