#include "gluing/curvelang.hpp"

#include "gluing/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace gluing {

namespace {

Expr make_node(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

Expr unary(NodeKind kind, Expr operand)
{
    ExprNode n;
    n.kind = kind;
    n.lhs = std::move(operand);
    return make_node(std::move(n));
}

Expr binary(NodeKind kind, Expr lhs, Expr rhs)
{
    ExprNode n;
    n.kind = kind;
    n.lhs = std::move(lhs);
    n.rhs = std::move(rhs);
    return make_node(std::move(n));
}

Expr named_constant(const std::string& name, double value)
{
    ExprNode n;
    n.kind = NodeKind::Constant;
    n.name = name;
    n.value = value;
    return make_node(std::move(n));
}

Expr power(Expr base, int exponent)
{
    ExprNode n;
    n.kind = NodeKind::Pow;
    n.lhs = std::move(base);
    n.exponent = exponent;
    return make_node(std::move(n));
}

const std::vector<std::string> kOperandStart = {"number", "u", "v", "pi", "sqrt2", "sin", "cos", "sqrt", "(", "-"};

class Parser
{
  public:
    explicit Parser(std::string_view src) : src_(src) {}

    ParametricMap map()
    {
        expect('[');
        std::array<Expr, 3> comps;
        for (int i = 0; i < 3; ++i) {
            if (i > 0) expect(',');
            comps[static_cast<std::size_t>(i)] = expr();
        }
        expect(']');
        end();
        return {comps, Arity::Surface};
    }

    Expr single()
    {
        Expr e = expr();
        end();
        return e;
    }

  private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail)
    {
        skip_ws();
        throw ParseError(pos_, std::move(expected), detail);
    }

    void expect(char c)
    {
        if (peek() != c) fail({std::string(1, c)}, found());
        ++pos_;
    }

    void end()
    {
        if (peek() != '\0') fail({"end of input"}, found());
    }

    std::string found()
    {
        skip_ws();
        if (pos_ >= src_.size()) return "found end of input";
        return std::string("found '") + src_[pos_] + "'";
    }

    Expr expr()
    {
        Expr lhs = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = binary(c == '+' ? NodeKind::Add : NodeKind::Sub, lhs, term());
        }
    }

    Expr term()
    {
        Expr lhs = unary_expr();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = binary(c == '*' ? NodeKind::Mul : NodeKind::Div, lhs, unary_expr());
        }
    }

    Expr unary_expr()
    {
        if (peek() == '-') {
            ++pos_;
            return unary(NodeKind::Neg, unary_expr());
        }
        return power_expr();
    }

    Expr power_expr()
    {
        Expr base = primary();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail({"non-negative integer exponent"}, found());
        int exponent = 0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, exponent);
        if (ec != std::errc()) {
            pos_ = start;
            fail({"non-negative integer exponent"}, "exponent out of range");
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
            fail({"non-negative integer exponent"}, "fractional exponent");
        return power(base, exponent);
    }

    Expr primary()
    {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const std::string_view word = src_.substr(start, pos_ - start);
            if (word == "u") return variable(Var::U);
            if (word == "v") return variable(Var::V);
            if (word == "pi") return named_constant("pi", std::numbers::pi);
            if (word == "sqrt2") return named_constant("sqrt2", std::numbers::sqrt2);
            NodeKind fn;
            if (word == "sin") fn = NodeKind::Sin;
            else if (word == "cos") fn = NodeKind::Cos;
            else if (word == "sqrt") fn = NodeKind::Sqrt;
            else {
                pos_ = start;
                fail(kOperandStart, "unknown identifier '" + std::string(word) + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return unary(fn, arg);
        }
        fail(kOperandStart, found());
    }

    Expr number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail({"number"}, "malformed number");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail({"exponent digits"}, "malformed exponent");
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc()) {
            pos_ = start;
            fail({"number"}, "number out of range");
        }
        return literal(value);
    }
};

int precedence(const ExprNode& n)
{
    switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
    }
}

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void print(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, bool parens, std::string& out)
{
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
}

void print(const ExprNode& n, std::string& out)
{
    const int p = precedence(n);
    switch (n.kind) {
    case NodeKind::Variable: out += n.var == Var::U ? "u" : "v"; return;
    case NodeKind::Literal: out += format_number(n.value); return;
    case NodeKind::Constant: out += n.name; return;
    case NodeKind::Neg:
        out += '-';
        print_child(*n.lhs, precedence(*n.lhs) < p, out);
        return;
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Sqrt:
        out += n.kind == NodeKind::Sin ? "sin" : n.kind == NodeKind::Cos ? "cos" : "sqrt";
        print_child(*n.lhs, true, out);
        return;
    case NodeKind::Pow:
        print_child(*n.lhs, precedence(*n.lhs) < 5, out);
        out += '^';
        out += std::to_string(n.exponent);
        return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
        static constexpr const char* ops[] = {" + ", " - ", "*", "/"};
        print_child(*n.lhs, precedence(*n.lhs) < p, out);
        out += ops[static_cast<int>(n.kind) - static_cast<int>(NodeKind::Add)];
        print_child(*n.rhs, precedence(*n.rhs) <= p, out);
        return;
    }
    }
}

bool is_literal(const Expr& e, double value) { return e->kind == NodeKind::Literal && e->value == value; }

Expr add(Expr a, Expr b)
{
    if (is_literal(a, 0.0)) return b;
    if (is_literal(b, 0.0)) return a;
    return binary(NodeKind::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b)
{
    if (is_literal(b, 0.0)) return a;
    if (is_literal(a, 0.0)) return unary(NodeKind::Neg, std::move(b));
    return binary(NodeKind::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b)
{
    if (is_literal(a, 0.0) || is_literal(b, 0.0)) return literal(0.0);
    if (is_literal(a, 1.0)) return b;
    if (is_literal(b, 1.0)) return a;
    return binary(NodeKind::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b)
{
    if (is_literal(a, 0.0)) return literal(0.0);
    if (is_literal(b, 1.0)) return a;
    return binary(NodeKind::Div, std::move(a), std::move(b));
}

Expr neg(Expr a)
{
    if (is_literal(a, 0.0)) return a;
    return unary(NodeKind::Neg, std::move(a));
}

template <class T, class Ops>
T eval(const ExprNode& n, const T& u, const T& v, const Ops& ops)
{
    switch (n.kind) {
    case NodeKind::Variable: return n.var == Var::U ? u : v;
    case NodeKind::Literal:
    case NodeKind::Constant: return ops.constant(n.value);
    case NodeKind::Neg: return -eval(*n.lhs, u, v, ops);
    case NodeKind::Sin: return ops.sin(eval(*n.lhs, u, v, ops));
    case NodeKind::Cos: return ops.cos(eval(*n.lhs, u, v, ops));
    case NodeKind::Sqrt: return ops.sqrt(eval(*n.lhs, u, v, ops));
    case NodeKind::Add: return eval(*n.lhs, u, v, ops) + eval(*n.rhs, u, v, ops);
    case NodeKind::Sub: return eval(*n.lhs, u, v, ops) - eval(*n.rhs, u, v, ops);
    case NodeKind::Mul: return eval(*n.lhs, u, v, ops) * eval(*n.rhs, u, v, ops);
    case NodeKind::Div: return ops.div(eval(*n.lhs, u, v, ops), eval(*n.rhs, u, v, ops));
    case NodeKind::Pow: return ops.pow(eval(*n.lhs, u, v, ops), n.exponent);
    }
    throw std::logic_error("unknown expression node");
}

struct DoubleOps
{
    double constant(double x) const { return x; }
    double sin(double x) const { return std::sin(x); }
    double cos(double x) const { return std::cos(x); }
    double sqrt(double x) const
    {
        if (x < 0.0) throw DomainError("sqrt of negative value " + format_number(x));
        return std::sqrt(x);
    }
    double div(double a, double b) const
    {
        if (b == 0.0) throw DomainError("division by zero");
        return a / b;
    }
    double pow(double a, int n) const
    {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= a;
        return r;
    }
};

struct JetOps
{
    double base;
    int order;
    Jet constant(double x) const { return Jet::constant(base, order, x); }
    Jet sin(const Jet& x) const { return gluing::sin(x); }
    Jet cos(const Jet& x) const { return gluing::cos(x); }
    Jet sqrt(const Jet& x) const { return gluing::sqrt(x); }
    Jet div(const Jet& a, const Jet& b) const { return a / b; }
    Jet pow(const Jet& a, int n) const { return gluing::pow(a, n); }
};

ParametricMap with_arity(ParametricMap m, std::optional<Arity> arity)
{
    const bool has_v = uses(m.components[0], Var::V) || uses(m.components[1], Var::V) || uses(m.components[2], Var::V);
    if (arity == Arity::Curve && has_v) throw ArityError("curve expression depends on v: " + to_string(m));
    m.arity = arity.value_or(has_v ? Arity::Surface : Arity::Curve);
    return m;
}

} // namespace

Expr literal(double value)
{
    ExprNode n;
    n.kind = NodeKind::Literal;
    n.value = value;
    return make_node(std::move(n));
}

Expr variable(Var var)
{
    ExprNode n;
    n.kind = NodeKind::Variable;
    n.var = var;
    return make_node(std::move(n));
}

Expr parse_expr(std::string_view source) { return Parser(source).single(); }

ParametricMap parse_map(std::string_view source, std::optional<Arity> arity)
{
    return with_arity(Parser(source).map(), arity);
}

ParametricMap make_map(const std::array<std::string, 3>& sources, std::optional<Arity> arity)
{
    ParametricMap m;
    for (std::size_t i = 0; i < 3; ++i) m.components[i] = parse_expr(sources[i]);
    return with_arity(std::move(m), arity);
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(*e, out);
    return out;
}

std::string to_string(const ParametricMap& m)
{
    return "[" + to_string(m.components[0]) + ", " + to_string(m.components[1]) + ", " + to_string(m.components[2]) +
           "]";
}

bool equal(const Expr& a, const Expr& b)
{
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case NodeKind::Variable: return a->var == b->var;
    case NodeKind::Literal: return a->value == b->value;
    case NodeKind::Constant: return a->name == b->name;
    case NodeKind::Pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    case NodeKind::Neg:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Sqrt: return equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

bool equal(const ParametricMap& a, const ParametricMap& b)
{
    return a.arity == b.arity && equal(a.components[0], b.components[0]) && equal(a.components[1], b.components[1]) &&
           equal(a.components[2], b.components[2]);
}

bool uses(const Expr& e, Var var)
{
    if (e->kind == NodeKind::Variable) return e->var == var;
    return (e->lhs && uses(e->lhs, var)) || (e->rhs && uses(e->rhs, var));
}

double evaluate(const Expr& e, double u, double v) { return eval(*e, u, v, DoubleOps{}); }

Jet evaluate(const Expr& e, const Jet& u, const Jet& v)
{
    return eval(*e, u, v, JetOps{u.base_point(), std::min(u.order(), v.order())});
}

Vec3 evaluate(const ParametricMap& m, double u, double v)
{
    return {evaluate(m.components[0], u, v), evaluate(m.components[1], u, v), evaluate(m.components[2], u, v)};
}

VecJet evaluate(const ParametricMap& m, const Jet& u, const Jet& v)
{
    return {evaluate(m.components[0], u, v), evaluate(m.components[1], u, v), evaluate(m.components[2], u, v)};
}

Expr differentiate(const Expr& e, Var var)
{
    const ExprNode& n = *e;
    switch (n.kind) {
    case NodeKind::Variable: return literal(n.var == var ? 1.0 : 0.0);
    case NodeKind::Literal:
    case NodeKind::Constant: return literal(0.0);
    case NodeKind::Neg: return neg(differentiate(n.lhs, var));
    case NodeKind::Sin: return mul(unary(NodeKind::Cos, n.lhs), differentiate(n.lhs, var));
    case NodeKind::Cos: return neg(mul(unary(NodeKind::Sin, n.lhs), differentiate(n.lhs, var)));
    case NodeKind::Sqrt: return div(differentiate(n.lhs, var), mul(literal(2.0), e));
    case NodeKind::Add: return add(differentiate(n.lhs, var), differentiate(n.rhs, var));
    case NodeKind::Sub: return sub(differentiate(n.lhs, var), differentiate(n.rhs, var));
    case NodeKind::Mul:
        return add(mul(differentiate(n.lhs, var), n.rhs), mul(n.lhs, differentiate(n.rhs, var)));
    case NodeKind::Div:
        return div(sub(mul(differentiate(n.lhs, var), n.rhs), mul(n.lhs, differentiate(n.rhs, var))),
                   power(n.rhs, 2));
    case NodeKind::Pow: {
        if (n.exponent == 0) return literal(0.0);
        Expr lowered = n.exponent == 1 ? literal(1.0) : n.exponent == 2 ? n.lhs : power(n.lhs, n.exponent - 1);
        return mul(mul(literal(n.exponent), lowered), differentiate(n.lhs, var));
    }
    }
    throw std::logic_error("unknown expression node");
}

ParametricMap differentiate(const ParametricMap& m, Var var)
{
    return {{differentiate(m.components[0], var), differentiate(m.components[1], var),
             differentiate(m.components[2], var)},
            m.arity};
}

VecJet eval_jet(const ParametricMap& m, double u0, double v0, int order, Var wrt)
{
    if (order < 0 || order > kMaxEvalOrder)
        throw std::invalid_argument("jet order must be in [0, " + std::to_string(kMaxEvalOrder) + "]");
    if (wrt == Var::U) return evaluate(m, Jet::variable(u0, order), Jet::constant(u0, order, v0));
    return evaluate(m, Jet::constant(v0, order, u0), Jet::variable(v0, order));
}

} // namespace gluing
