#pragma once

// Expression language for curve and field definitions.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" integer)?
//   base   := number | ident | ident "(" expr ")" | "(" expr ")"
//
// Functions: sin, cos, exp, sqrt. Evaluation is generic over double and Jet.

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surflap/errors.hpp"
#include "surflap/jet.hpp"

namespace surflap {

enum class Func { Sin, Cos, Exp, Sqrt };

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct ExprNode {
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double number = 0.0;
    std::string name;  // Variable
    int exponent = 0;  // Pow
    Func func = Func::Sin;
    std::vector<std::shared_ptr<const ExprNode>> children;
    Span span;
};

/// Immutable expression tree with shared structure.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    static Expr number(double v);
    static Expr variable(std::string name);

    const ExprNode& root() const { return *root_; }
    bool empty() const { return !root_; }

    /// Canonical text; parse(to_string()) reproduces the tree.
    std::string to_string() const;
    /// Variable names in order of first appearance.
    std::vector<std::string> free_variables() const;

    /// Structural equality, ignoring source spans.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const ExprNode> root_;
};

Expr parse_expr(std::string_view text);

const char* func_name(Func f);

/// Name-to-value assignment for evaluation.
template <class T>
using Bindings = std::vector<std::pair<std::string, T>>;

namespace detail {

inline double apply(Func f, double x) {
    switch (f) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Exp: return std::exp(x);
        case Func::Sqrt:
            if (x < 0.0) throw DomainError("sqrt of negative value");
            return std::sqrt(x);
    }
    return 0.0;
}

inline Jet apply(Func f, const Jet& x) {
    switch (f) {
        case Func::Sin: return sin(x);
        case Func::Cos: return cos(x);
        case Func::Exp: return exp(x);
        case Func::Sqrt: return sqrt(x);
    }
    return x;
}

inline double ipow(double x, int n) { return std::pow(x, n); }
inline Jet ipow(const Jet& x, int n) { return pow(x, n); }

inline double divide(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
}
inline Jet divide(const Jet& a, const Jet& b) { return a / b; }

template <class T>
T eval_node(const ExprNode& n, const Bindings<T>& env, const T& unit) {
    using K = ExprNode::Kind;
    switch (n.kind) {
        case K::Number: return unit * n.number;
        case K::Variable:
            for (const auto& [name, value] : env) {
                if (name == n.name) return value;
            }
            throw UnboundVariable("unbound variable '" + n.name + "'");
        case K::Neg: return -eval_node(*n.children[0], env, unit);
        case K::Add: return eval_node(*n.children[0], env, unit) + eval_node(*n.children[1], env, unit);
        case K::Sub: return eval_node(*n.children[0], env, unit) - eval_node(*n.children[1], env, unit);
        case K::Mul: return eval_node(*n.children[0], env, unit) * eval_node(*n.children[1], env, unit);
        case K::Div:
            return divide(eval_node(*n.children[0], env, unit), eval_node(*n.children[1], env, unit));
        case K::Pow: return ipow(eval_node(*n.children[0], env, unit), n.exponent);
        case K::Call: return apply(n.func, eval_node(*n.children[0], env, unit));
    }
    return unit;
}

}  // namespace detail

/// Evaluates over double or Jet. Constants take the variable set of `unit`.
template <class T>
T evaluate(const Expr& e, const Bindings<T>& env, const T& unit) {
    return detail::eval_node(e.root(), env, unit);
}

inline double evaluate(const Expr& e, const Bindings<double>& env) {
    return evaluate<double>(e, env, 1.0);
}

/// Taylor coefficients of `e` at `point` up to `order`, one jet variable per
/// binding in the given order.
Jet jet_lift(const Expr& e, const Bindings<double>& point, int order);

}  // namespace surflap
