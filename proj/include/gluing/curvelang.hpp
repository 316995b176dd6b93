#pragma once

// Expression language for parametric curves and surfaces.
//
//   map     := '[' expr ',' expr ',' expr ']'
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'u' | 'v' | 'pi' | 'sqrt2'
//            | ('sin' | 'cos' | 'sqrt') '(' expr ')' | '(' expr ')'

#include "gluing/jet.hpp"
#include "gluing/vec3.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gluing {

inline constexpr int kMaxEvalOrder = 12;

enum class Var { U, V };
enum class Arity { Curve, Surface };

enum class NodeKind { Variable, Literal, Constant, Neg, Sin, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode
{
    NodeKind kind = NodeKind::Literal;
    Var var = Var::U;
    double value = 0.0;   // literal value, or the value of a named constant
    std::string name;     // named constant
    int exponent = 0;     // Pow
    Expr lhs;             // unary operand or left operand
    Expr rhs;
};

struct ParametricMap
{
    std::array<Expr, 3> components;
    Arity arity = Arity::Surface;
};

Expr literal(double value);
Expr variable(Var var);

Expr parse_expr(std::string_view source);
/// Parse "[a, b, c]". The arity is inferred from the use of v unless given;
/// ArityError if a curve is requested and v appears.
ParametricMap parse_map(std::string_view source, std::optional<Arity> arity = std::nullopt);
/// Three separately written components; ParseError offsets are relative to the
/// offending component.
ParametricMap make_map(const std::array<std::string, 3>& sources, std::optional<Arity> arity = std::nullopt);

std::string to_string(const Expr& e);
std::string to_string(const ParametricMap& m);
bool equal(const Expr& a, const Expr& b);
bool equal(const ParametricMap& a, const ParametricMap& b);
bool uses(const Expr& e, Var var);

double evaluate(const Expr& e, double u, double v);
Jet evaluate(const Expr& e, const Jet& u, const Jet& v);
Vec3 evaluate(const ParametricMap& m, double u, double v);
VecJet evaluate(const ParametricMap& m, const Jet& u, const Jet& v);

/// Symbolic partial derivative with constant folding of 0 and 1.
Expr differentiate(const Expr& e, Var var);
ParametricMap differentiate(const ParametricMap& m, Var var);

/// Jet of the map along `wrt` through (u0, v0), the other variable held fixed.
/// The jet's base point is the coordinate being varied.
VecJet eval_jet(const ParametricMap& m, double u0, double v0, int order, Var wrt);

} // namespace gluing
