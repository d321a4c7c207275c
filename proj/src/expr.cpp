#include "surflap/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <functional>

namespace surflap {
namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using K = ExprNode::Kind;

NodePtr make(K kind, Span span, std::vector<NodePtr> children = {}) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->span = span;
    n->children = std::move(children);
    return n;
}

bool lookup_func(std::string_view name, Func& out) {
    if (name == "sin") out = Func::Sin;
    else if (name == "cos") out = Func::Cos;
    else if (name == "exp") out = Func::Exp;
    else if (name == "sqrt") out = Func::Sqrt;
    else return false;
    return true;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    NodePtr expr() {
        skip_ws();
        const std::size_t start = pos_;
        NodePtr lhs = term();
        while (peek('+') || peek('-')) {
            const K kind = s_[pos_] == '+' ? K::Add : K::Sub;
            ++pos_;
            NodePtr rhs = term();
            lhs = make(kind, {start, pos_}, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr term() {
        skip_ws();
        const std::size_t start = pos_;
        NodePtr lhs = factor();
        while (peek('*') || peek('/')) {
            const K kind = s_[pos_] == '*' ? K::Mul : K::Div;
            ++pos_;
            NodePtr rhs = factor();
            lhs = make(kind, {start, pos_}, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr factor() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek('-')) {
            ++pos_;
            NodePtr operand = factor();
            return make(K::Neg, {start, pos_}, {operand});
        }
        NodePtr b = base();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            const std::size_t num_start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == num_start) fail("expected integer exponent");
            int exponent = 0;
            auto [ptr, ec] = std::from_chars(s_.data() + num_start, s_.data() + pos_, exponent);
            if (ec != std::errc()) {
                pos_ = num_start;
                fail("exponent out of range");
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = K::Pow;
            n->exponent = exponent;
            n->span = {start, pos_};
            n->children = {b};
            return n;
        }
        return b;
    }

    NodePtr base() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view ident = s_.substr(start, pos_ - start);
            if (peek('(')) {
                Func f;
                if (!lookup_func(ident, f)) {
                    throw UnknownFunction("unknown function '" + std::string(ident) + "' at offset " +
                                          std::to_string(start));
                }
                ++pos_;
                NodePtr arg = expr();
                if (!peek(')')) fail("expected ')'");
                ++pos_;
                auto n = std::make_shared<ExprNode>();
                n->kind = K::Call;
                n->func = f;
                n->span = {start, pos_};
                n->children = {arg};
                return n;
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = K::Variable;
            n->name = std::string(ident);
            n->span = {start, pos_};
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (pos_ == exp_start) pos_ = save;  // "2e" is a number followed by ident
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = K::Number;
        n->number = v;
        n->span = {start, pos_};
        return n;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

int precedence(const ExprNode& n) {
    switch (n.kind) {
        case K::Add:
        case K::Sub: return 1;
        case K::Mul:
        case K::Div: return 2;
        case K::Neg: return 3;
        case K::Pow: return 4;
        default: return 5;
    }
}

void print(const ExprNode& n, std::string& out) {
    auto child = [&](const ExprNode& c, bool parens) {
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case K::Number: {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.number);
            out.append(buf, ptr);
            return;
        }
        case K::Variable: out += n.name; return;
        case K::Neg:
            out += '-';
            child(*n.children[0], precedence(*n.children[0]) < precedence(n));
            return;
        case K::Pow:
            child(*n.children[0], precedence(*n.children[0]) <= precedence(n));
            out += '^';
            out += std::to_string(n.exponent);
            return;
        case K::Call:
            out += func_name(n.func);
            out += '(';
            print(*n.children[0], out);
            out += ')';
            return;
        default: {
            const int p = precedence(n);
            const ExprNode& l = *n.children[0];
            const ExprNode& r = *n.children[1];
            child(l, precedence(l) < p);
            out += n.kind == K::Add ? " + " : n.kind == K::Sub ? " - " : n.kind == K::Mul ? " * " : " / ";
            // left-associative: an equal-precedence right operand needs parentheses
            child(r, precedence(r) <= p);
            return;
        }
    }
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    switch (a.kind) {
        case K::Number:
            if (a.number != b.number) return false;
            break;
        case K::Variable:
            if (a.name != b.name) return false;
            break;
        case K::Pow:
            if (a.exponent != b.exponent) return false;
            break;
        case K::Call:
            if (a.func != b.func) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!equal_nodes(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

}  // namespace

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Sqrt: return "sqrt";
    }
    return "?";
}

Expr Expr::number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = K::Number;
    n->number = v;
    return Expr(n);
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = K::Variable;
    n->name = std::move(name);
    return Expr(n);
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) print(*root_, out);
    return out;
}

std::vector<std::string> Expr::free_variables() const {
    std::vector<std::string> vars;
    std::function<void(const ExprNode&)> walk = [&](const ExprNode& n) {
        if (n.kind == K::Variable &&
            std::find(vars.begin(), vars.end(), n.name) == vars.end()) {
            vars.push_back(n.name);
        }
        for (const auto& c : n.children) walk(*c);
    };
    if (root_) walk(*root_);
    return vars;
}

bool operator==(const Expr& a, const Expr& b) {
    if (!a.root_ || !b.root_) return !a.root_ && !b.root_;
    return equal_nodes(*a.root_, *b.root_);
}

Expr parse_expr(std::string_view text) { return Expr(Parser(text).parse()); }

Jet jet_lift(const Expr& e, const Bindings<double>& point, int order) {
    if (order < 0 || order > kMaxJetOrder) throw DomainError("jet order must be in [0, 3]");
    const int nvars = static_cast<int>(point.size());
    if (nvars > kMaxJetVars) throw DomainError("at most 4 jet variables");
    Bindings<Jet> env;
    env.reserve(point.size());
    for (int i = 0; i < nvars; ++i) {
        env.emplace_back(point[i].first, Jet::variable(nvars, order, i, point[i].second));
    }
    Jet r = evaluate<Jet>(e, env, Jet::constant(1.0));
    if (r.is_scalar()) return Jet(nvars, order, r.value());
    return r;
}

}  // namespace surflap
