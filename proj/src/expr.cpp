#include "cmslab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

namespace cmslab {

struct ExprNode {
    enum Kind { Number, Variable, Param, Unary, Binary, Call } kind;
    double number = 0.0;
    Var var = Var::U;
    std::string name; // parameter or function name
    char op = 0;      // + - * / ^
    ExprPtr lhs, rhs; // Unary/Call use lhs only
    size_t pos = 0;
};

namespace {

const std::set<std::string>& function_names() {
    static const std::set<std::string> fns = {"sin", "cos",  "tan",  "exp",
                                              "log", "sqrt", "sinh", "cosh"};
    return fns;
}

struct Token {
    enum Kind { Number, Ident, Op, End } kind;
    double number = 0.0;
    std::string text;
    char op = 0;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
        tok_ = {};
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit((unsigned char)c) || c == '.') {
            const char* begin = s_.data() + i_;
            const char* end = s_.data() + s_.size();
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr == begin)
                throw ParseError("malformed number", i_);
            tok_.kind = Token::Number;
            tok_.number = value;
            tok_.text.assign(begin, ptr);
            i_ += (size_t)(ptr - begin);
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i_;
            while (j < s_.size() && (std::isalnum((unsigned char)s_[j]) || s_[j] == '_')) ++j;
            tok_.kind = Token::Ident;
            tok_.text = std::string(s_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
            tok_.kind = Token::Op;
            tok_.op = c;
            ++i_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    std::string_view s_;
    size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw ParseError("unexpected trailing input", t.pos);
        return e;
    }

private:
    ExprPtr sum() {
        ExprPtr e = product();
        while (lex_.peek().kind == Token::Op &&
               (lex_.peek().op == '+' || lex_.peek().op == '-')) {
            Token t = lex_.take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Binary;
            n->op = t.op;
            n->pos = t.pos;
            n->lhs = e;
            n->rhs = product();
            e = n;
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = unary();
        while (lex_.peek().kind == Token::Op &&
               (lex_.peek().op == '*' || lex_.peek().op == '/')) {
            Token t = lex_.take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Binary;
            n->op = t.op;
            n->pos = t.pos;
            n->lhs = e;
            n->rhs = unary();
            e = n;
        }
        return e;
    }

    ExprPtr unary() {
        if (lex_.peek().kind == Token::Op && lex_.peek().op == '-') {
            Token t = lex_.take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Unary;
            n->op = '-';
            n->pos = t.pos;
            n->lhs = unary();
            return n;
        }
        return power();
    }

    // '^' binds tighter than unary minus and associates to the right.
    ExprPtr power() {
        ExprPtr base = primary();
        if (lex_.peek().kind == Token::Op && lex_.peek().op == '^') {
            Token t = lex_.take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Binary;
            n->op = '^';
            n->pos = t.pos;
            n->lhs = base;
            n->rhs = unary();
            return n;
        }
        return base;
    }

    ExprPtr primary() {
        Token t = lex_.take();
        if (t.kind == Token::Number) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Number;
            n->number = t.number;
            n->pos = t.pos;
            return n;
        }
        if (t.kind == Token::Ident) {
            if (lex_.peek().kind == Token::Op && lex_.peek().op == '(') {
                if (!function_names().count(t.text))
                    throw ParseError("unknown function '" + t.text + "'", t.pos);
                lex_.take(); // '('
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Call;
                n->name = t.text;
                n->pos = t.pos;
                n->lhs = sum();
                expect(')');
                return n;
            }
            auto n = std::make_shared<ExprNode>();
            n->pos = t.pos;
            if (t.text == "u") { n->kind = ExprNode::Variable; n->var = Var::U; }
            else if (t.text == "v") { n->kind = ExprNode::Variable; n->var = Var::V; }
            else if (t.text == "t") { n->kind = ExprNode::Variable; n->var = Var::T; }
            else { n->kind = ExprNode::Param; n->name = t.text; }
            return n;
        }
        if (t.kind == Token::Op && t.op == '(') {
            ExprPtr e = sum();
            expect(')');
            return e;
        }
        if (t.kind == Token::End) throw ParseError("unexpected end of input", t.pos);
        throw ParseError(std::string("unexpected '") + t.op + "'", t.pos);
    }

    void expect(char op) {
        const Token& t = lex_.peek();
        if (t.kind != Token::Op || t.op != op)
            throw ParseError(std::string("expected '") + op + "'", t.pos);
        lex_.take();
    }

    Lexer lex_;
};

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Precedence levels for printing: sum 1, product 2, unary 3, power 4, atom 5.
int level(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Binary:
            if (n.op == '^') return 4;
            return (n.op == '+' || n.op == '-') ? 1 : 2;
        case ExprNode::Unary: return 3;
        default: return 5;
    }
}

void print_node(const ExprNode& n, std::string& out) {
    auto child = [&](const ExprNode& c, bool parens) {
        if (parens) out += '(';
        print_node(c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case ExprNode::Number: out += format_number(n.number); return;
        case ExprNode::Variable:
            out += (n.var == Var::U) ? 'u' : (n.var == Var::V) ? 'v' : 't';
            return;
        case ExprNode::Param: out += n.name; return;
        case ExprNode::Unary:
            out += '-';
            child(*n.lhs, level(*n.lhs) < 3);
            return;
        case ExprNode::Call:
            out += n.name;
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
        case ExprNode::Binary: {
            int lv = level(n);
            if (n.op == '^') {
                child(*n.lhs, level(*n.lhs) <= 4);
                out += '^';
                child(*n.rhs, level(*n.rhs) < 4);
            } else {
                child(*n.lhs, level(*n.lhs) < lv);
                out += n.op;
                child(*n.rhs, level(*n.rhs) <= lv);
            }
            return;
        }
    }
}

// Exponents that are literal integers (possibly negated) stay exact and
// impose no sign restriction on the base.
std::optional<long long> constant_int_exponent(const ExprNode& n) {
    if (n.kind == ExprNode::Unary && n.lhs->kind == ExprNode::Number) {
        double v = -n.lhs->number;
        if (v == std::floor(v) && std::abs(v) < (1ll << 31)) return (long long)v;
        return std::nullopt;
    }
    if (n.kind == ExprNode::Number) {
        double v = n.number;
        if (v == std::floor(v) && std::abs(v) < (1ll << 31)) return (long long)v;
        return std::nullopt;
    }
    return std::nullopt;
}

double eval_node(const ExprNode& n, double u, double v, double t, const Params& params) {
    switch (n.kind) {
        case ExprNode::Number: return n.number;
        case ExprNode::Variable:
            return (n.var == Var::U) ? u : (n.var == Var::V) ? v : t;
        case ExprNode::Param: {
            auto it = params.find(n.name);
            if (it == params.end())
                throw EvalError("unknown parameter '" + n.name + "'", n.pos);
            return it->second;
        }
        case ExprNode::Unary: return -eval_node(*n.lhs, u, v, t, params);
        case ExprNode::Call: {
            double x = eval_node(*n.lhs, u, v, t, params);
            if (n.name == "sin") return std::sin(x);
            if (n.name == "cos") return std::cos(x);
            if (n.name == "tan") return std::tan(x);
            if (n.name == "exp") return std::exp(x);
            if (n.name == "log") {
                if (!(x > 0.0)) throw EvalError("log of a non-positive value", n.pos);
                return std::log(x);
            }
            if (n.name == "sqrt") {
                if (!(x > 0.0)) throw EvalError("sqrt of a non-positive value", n.pos);
                return std::sqrt(x);
            }
            if (n.name == "sinh") return std::sinh(x);
            return std::cosh(x);
        }
        case ExprNode::Binary: {
            double a = eval_node(*n.lhs, u, v, t, params);
            if (n.op == '^') {
                if (auto e = constant_int_exponent(*n.rhs)) {
                    if (*e < 0 && a == 0.0)
                        throw EvalError("negative power of zero", n.pos);
                    return std::pow(a, (double)*e);
                }
                double b = eval_node(*n.rhs, u, v, t, params);
                if (!(a > 0.0))
                    throw EvalError("power with non-integer exponent needs a positive base",
                                    n.pos);
                return std::pow(a, b);
            }
            double b = eval_node(*n.rhs, u, v, t, params);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                default:
                    if (b == 0.0) throw EvalError("division by zero", n.pos);
                    return a / b;
            }
        }
    }
    throw EvalError("corrupt expression node", n.pos);
}

Jet eval_jet_node(const ExprNode& n, double u, double v, double t, int order,
                  const Params& params, const std::map<std::string, Jet>* bindings) {
    switch (n.kind) {
        case ExprNode::Number: return Jet::constant(n.number, order);
        case ExprNode::Variable: {
            double point = (n.var == Var::U) ? u : (n.var == Var::V) ? v : t;
            return Jet::variable(n.var, point, order);
        }
        case ExprNode::Param: {
            if (bindings) {
                auto bit = bindings->find(n.name);
                if (bit != bindings->end()) return bit->second;
            }
            auto it = params.find(n.name);
            if (it == params.end())
                throw EvalError("unknown parameter '" + n.name + "'", n.pos);
            return Jet::constant(it->second, order);
        }
        case ExprNode::Unary: return -eval_jet_node(*n.lhs, u, v, t, order, params, bindings);
        case ExprNode::Call: {
            Jet x = eval_jet_node(*n.lhs, u, v, t, order, params, bindings);
            try {
                if (n.name == "sin") return sin(x);
                if (n.name == "cos") return cos(x);
                if (n.name == "tan") return tan(x);
                if (n.name == "exp") return exp(x);
                if (n.name == "log") return log(x);
                if (n.name == "sqrt") return sqrt(x);
                if (n.name == "sinh") return sinh(x);
                return cosh(x);
            } catch (const Error& e) {
                throw EvalError(e.what(), n.pos);
            }
        }
        case ExprNode::Binary: {
            Jet a = eval_jet_node(*n.lhs, u, v, t, order, params, bindings);
            try {
                if (n.op == '^') {
                    if (auto e = constant_int_exponent(*n.rhs)) return powi(a, *e);
                    if (!(a.value() > 0.0))
                        throw EvalError(
                            "power with non-integer exponent needs a positive base", n.pos);
                    Jet b = eval_jet_node(*n.rhs, u, v, t, order, params, bindings);
                    return exp(b * log(a));
                }
                Jet b = eval_jet_node(*n.rhs, u, v, t, order, params, bindings);
                switch (n.op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    default: return a / b;
                }
            } catch (const EvalError&) {
                throw;
            } catch (const Error& e) {
                throw EvalError(e.what(), n.pos);
            }
        }
    }
    throw EvalError("corrupt expression node", n.pos);
}

bool equal_node(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Number: return a.number == b.number;
        case ExprNode::Variable: return a.var == b.var;
        case ExprNode::Param: return a.name == b.name;
        case ExprNode::Unary: return equal_node(*a.lhs, *b.lhs);
        case ExprNode::Call: return a.name == b.name && equal_node(*a.lhs, *b.lhs);
        case ExprNode::Binary:
            return a.op == b.op && equal_node(*a.lhs, *b.lhs) && equal_node(*a.rhs, *b.rhs);
    }
    return false;
}

void collect_params(const ExprNode& n, std::set<std::string>& out) {
    if (n.kind == ExprNode::Param) out.insert(n.name);
    if (n.lhs) collect_params(*n.lhs, out);
    if (n.rhs) collect_params(*n.rhs, out);
}

} // namespace

Expr Expr::parse(std::string_view text) {
    Parser p(text);
    return Expr(p.parse());
}

std::string Expr::print() const {
    if (!root_) throw Error("printing an empty expression");
    std::string out;
    print_node(*root_, out);
    return out;
}

double Expr::eval(double u, double v, double t, const Params& params) const {
    if (!root_) throw Error("evaluating an empty expression");
    return eval_node(*root_, u, v, t, params);
}

Jet Expr::eval_jet(double u, double v, double t, int order, const Params& params) const {
    if (!root_) throw Error("evaluating an empty expression");
    return eval_jet_node(*root_, u, v, t, order, params, nullptr);
}

Jet Expr::eval_jet(double u, double v, double t, int order, const Params& params,
                   const std::map<std::string, Jet>& bindings) const {
    if (!root_) throw Error("evaluating an empty expression");
    return eval_jet_node(*root_, u, v, t, order, params, &bindings);
}

std::set<std::string> Expr::param_names() const {
    std::set<std::string> out;
    if (root_) collect_params(*root_, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return equal_node(*a.root_, *b.root_);
}

} // namespace cmslab
