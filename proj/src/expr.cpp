#include "hhphi/expr.hpp"

#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace hhphi {

struct Expr::Node {
    Kind kind;
    double value = 0.0;  // Constant payload
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using Kind = Expr::Kind;

std::shared_ptr<const Node> make_node(Kind k, double v = 0.0,
                                      std::shared_ptr<const Node> l = nullptr,
                                      std::shared_ptr<const Node> r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

int arity(Kind k) {
    switch (k) {
        case Kind::Constant:
        case Kind::Variable:
            return 0;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow:
            return 2;
        default:
            return 1;
    }
}

const char* function_name(Kind k) {
    switch (k) {
        case Kind::Exp: return "exp";
        case Kind::Ln: return "ln";
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Abs: return "abs";
        case Kind::Sqrt: return "sqrt";
        default: return nullptr;
    }
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

// Precedence levels used by render: + - are 1, * / are 2, unary minus 3,
// ^ is 4, atoms 5.
int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Negate: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void render_node(const Node* n, std::string& out, int min_prec);

void render_child(const Node* c, std::string& out, int min_prec, bool force_parens = false) {
    if (force_parens || precedence(c->kind) < min_prec) {
        out += '(';
        render_node(c, out, 0);
        out += ')';
    } else {
        render_node(c, out, min_prec);
    }
}

bool is_negative_constant(const Node* n) {
    return n->kind == Kind::Constant && std::signbit(n->value) && n->value != 0.0;
}

void render_node(const Node* n, std::string& out, int) {
    switch (n->kind) {
        case Kind::Constant:
            out += format_double(n->value);
            return;
        case Kind::Variable:
            out += 'x';
            return;
        case Kind::Negate:
            out += '-';
            // parenthesize nested negations for readability; both forms reparse
            render_child(n->lhs.get(), out, 3, n->lhs->kind == Kind::Negate);
            return;
        case Kind::Add:
        case Kind::Sub: {
            render_child(n->lhs.get(), out, 1);
            out += (n->kind == Kind::Add) ? '+' : '-';
            bool rp = n->rhs->kind == Kind::Negate || is_negative_constant(n->rhs.get());
            render_child(n->rhs.get(), out, 2, rp);
            return;
        }
        case Kind::Mul:
        case Kind::Div: {
            render_child(n->lhs.get(), out, 2);
            out += (n->kind == Kind::Mul) ? '*' : '/';
            bool rp = n->rhs->kind == Kind::Negate || is_negative_constant(n->rhs.get());
            render_child(n->rhs.get(), out, 3, rp);
            return;
        }
        case Kind::Pow: {
            // grammar requires the base to be an atom
            bool base_parens = precedence(n->lhs->kind) < 5 || is_negative_constant(n->lhs.get());
            render_child(n->lhs.get(), out, 5, base_parens);
            out += '^';
            out += format_double(n->rhs->value);
            return;
        }
        default: {
            out += function_name(n->kind);
            out += '(';
            render_node(n->lhs.get(), out, 0);
            out += ')';
            return;
        }
    }
}

bool structurally_equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::Constant) return a->value == b->value;
    int ar = arity(a->kind);
    if (ar >= 1 && !structurally_equal(a->lhs.get(), b->lhs.get())) return false;
    if (ar >= 2 && !structurally_equal(a->rhs.get(), b->rhs.get())) return false;
    return true;
}

bool node_contains_variable(const Node* n) {
    if (n->kind == Kind::Variable) return true;
    int ar = arity(n->kind);
    if (ar >= 1 && node_contains_variable(n->lhs.get())) return true;
    if (ar >= 2 && node_contains_variable(n->rhs.get())) return true;
    return false;
}

int count_nodes(const Node* n) {
    int c = 1;
    int ar = arity(n->kind);
    if (ar >= 1) c += count_nodes(n->lhs.get());
    if (ar >= 2) c += count_nodes(n->rhs.get());
    return c;
}

[[noreturn]] void throw_eval(EvalErrorKind kind, const Node* n, const std::string& what) {
    std::string sub;
    render_node(n, sub, 0);
    throw EvalError(kind, sub, what);
}

Complex check_finite(Complex v, const Node* n) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw_eval(EvalErrorKind::Overflow, n, "non-finite value");
    return v;
}

// Integer powers by repeated squaring keeps negative real bases exactly real;
// exp(c*log(z)) would leak O(|z|^c * eps) into the imaginary part.
Complex powi(Complex base, long long e) {
    if (e < 0) return 1.0 / powi(base, -e);
    Complex acc = 1.0;
    Complex b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Complex eval_node(const Node* n, Complex z) {
    switch (n->kind) {
        case Kind::Constant:
            return {n->value, 0.0};
        case Kind::Variable:
            return z;
        case Kind::Negate:
            return -eval_node(n->lhs.get(), z);
        case Kind::Add:
            return check_finite(eval_node(n->lhs.get(), z) + eval_node(n->rhs.get(), z), n);
        case Kind::Sub:
            return check_finite(eval_node(n->lhs.get(), z) - eval_node(n->rhs.get(), z), n);
        case Kind::Mul:
            return check_finite(eval_node(n->lhs.get(), z) * eval_node(n->rhs.get(), z), n);
        case Kind::Div: {
            Complex den = eval_node(n->rhs.get(), z);
            if (den == Complex{0.0, 0.0})
                throw_eval(EvalErrorKind::Pole, n, "division by zero");
            return check_finite(eval_node(n->lhs.get(), z) / den, n);
        }
        case Kind::Pow: {
            Complex base = eval_node(n->lhs.get(), z);
            double c = n->rhs->value;
            if (base == Complex{0.0, 0.0}) {
                if (c > 0.0) return {0.0, 0.0};
                if (c == 0.0) return {1.0, 0.0};
                throw_eval(EvalErrorKind::Pole, n, "zero base with negative exponent");
            }
            if (c == std::nearbyint(c) && std::fabs(c) <= 1e9)
                return check_finite(powi(base, static_cast<long long>(c)), n);
            return check_finite(std::pow(base, Complex{c, 0.0}), n);
        }
        case Kind::Exp:
            return check_finite(std::exp(eval_node(n->lhs.get(), z)), n);
        case Kind::Ln: {
            Complex v = eval_node(n->lhs.get(), z);
            if (v == Complex{0.0, 0.0})
                throw_eval(EvalErrorKind::BranchPoint, n, "log of zero");
            return check_finite(std::log(v), n);
        }
        case Kind::Sin:
            return check_finite(std::sin(eval_node(n->lhs.get(), z)), n);
        case Kind::Cos:
            return check_finite(std::cos(eval_node(n->lhs.get(), z)), n);
        case Kind::Abs:
            return {check_finite(std::abs(eval_node(n->lhs.get(), z)), n).real(), 0.0};
        case Kind::Sqrt:
            return check_finite(std::sqrt(eval_node(n->lhs.get(), z)), n);
    }
    throw std::logic_error("unreachable expression kind");
}

// ---- differentiation with local constant folding -------------------------

bool is_const(const std::shared_ptr<const Node>& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

std::shared_ptr<const Node> fold_neg(std::shared_ptr<const Node> a) {
    if (a->kind == Kind::Constant) return make_node(Kind::Constant, -a->value);
    if (a->kind == Kind::Negate) return a->lhs;
    return make_node(Kind::Negate, 0.0, std::move(a));
}

std::shared_ptr<const Node> fold_add(std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return make_node(Kind::Constant, a->value + b->value);
    return make_node(Kind::Add, 0.0, std::move(a), std::move(b));
}

std::shared_ptr<const Node> fold_sub(std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return fold_neg(std::move(b));
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return make_node(Kind::Constant, a->value - b->value);
    return make_node(Kind::Sub, 0.0, std::move(a), std::move(b));
}

std::shared_ptr<const Node> fold_mul(std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_node(Kind::Constant, 0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return make_node(Kind::Constant, a->value * b->value);
    return make_node(Kind::Mul, 0.0, std::move(a), std::move(b));
}

std::shared_ptr<const Node> fold_div(std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
    if (is_const(b, 1.0)) return a;
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return make_node(Kind::Constant, 0.0);
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && b->value != 0.0)
        return make_node(Kind::Constant, a->value / b->value);
    return make_node(Kind::Div, 0.0, std::move(a), std::move(b));
}

std::shared_ptr<const Node> fold_pow(std::shared_ptr<const Node> base, double c) {
    if (c == 1.0) return base;
    if (c == 0.0) return make_node(Kind::Constant, 1.0);
    return make_node(Kind::Pow, 0.0, std::move(base), make_node(Kind::Constant, c));
}

std::shared_ptr<const Node> diff_node(const std::shared_ptr<const Node>& n) {
    switch (n->kind) {
        case Kind::Constant:
            return make_node(Kind::Constant, 0.0);
        case Kind::Variable:
            return make_node(Kind::Constant, 1.0);
        case Kind::Negate:
            return fold_neg(diff_node(n->lhs));
        case Kind::Add:
            return fold_add(diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Sub:
            return fold_sub(diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Mul:
            return fold_add(fold_mul(diff_node(n->lhs), n->rhs),
                            fold_mul(n->lhs, diff_node(n->rhs)));
        case Kind::Div:
            // (u'v - uv') / v^2
            return fold_div(fold_sub(fold_mul(diff_node(n->lhs), n->rhs),
                                     fold_mul(n->lhs, diff_node(n->rhs))),
                            fold_pow(n->rhs, 2.0));
        case Kind::Pow: {
            double c = n->rhs->value;
            // c * u^(c-1) * u'
            return fold_mul(fold_mul(make_node(Kind::Constant, c), fold_pow(n->lhs, c - 1.0)),
                            diff_node(n->lhs));
        }
        case Kind::Exp:
            return fold_mul(make_node(Kind::Exp, 0.0, n->lhs), diff_node(n->lhs));
        case Kind::Ln:
            return fold_div(diff_node(n->lhs), n->lhs);
        case Kind::Sin:
            return fold_mul(make_node(Kind::Cos, 0.0, n->lhs), diff_node(n->lhs));
        case Kind::Cos:
            return fold_neg(fold_mul(make_node(Kind::Sin, 0.0, n->lhs), diff_node(n->lhs)));
        case Kind::Abs:
            // sign as u/abs(u); undefined at u = 0
            return fold_mul(fold_div(n->lhs, make_node(Kind::Abs, 0.0, n->lhs)), diff_node(n->lhs));
        case Kind::Sqrt:
            return fold_div(diff_node(n->lhs),
                            fold_mul(make_node(Kind::Constant, 2.0), make_node(Kind::Sqrt, 0.0, n->lhs)));
    }
    throw std::logic_error("unreachable expression kind");
}

// ---- parser ---------------------------------------------------------------

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                      src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
        current_.offset = pos_;
        current_.text.clear();
        if (pos_ >= src_.size()) {
            current_.type = Token::Type::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': current_.type = Token::Type::Plus; ++pos_; return;
            case '-': current_.type = Token::Type::Minus; ++pos_; return;
            case '*': current_.type = Token::Type::Star; ++pos_; return;
            case '/': current_.type = Token::Type::Slash; ++pos_; return;
            case '^': current_.type = Token::Type::Caret; ++pos_; return;
            case '(': current_.type = Token::Type::LParen; ++pos_; return;
            case ')': current_.type = Token::Type::RParen; ++pos_; return;
            default: break;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            lex_number();
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
                    (src_[pos_] >= 'A' && src_[pos_] <= 'Z') ||
                    (src_[pos_] >= '0' && src_[pos_] <= '9') || src_[pos_] == '_'))
                ++pos_;
            current_.type = Token::Type::Ident;
            current_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(pos_, "a number, identifier, operator or parenthesis",
                         "unexpected character");
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
        }
        if (pos_ - start == 1 && src_[start] == '.')
            throw ParseError(start, "digits", "malformed number");
        // exponent part only if it is actually followed by digits
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
            if (mark < src_.size() && src_[mark] >= '0' && src_[mark] <= '9') {
                pos_ = mark;
                while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        double v = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw ParseError(start, "a valid number literal", "malformed number");
        current_.type = Token::Type::Number;
        current_.number = v;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    std::shared_ptr<const Node> parse_all() {
        auto e = parse_expr();
        if (lex_.peek().type != Token::Type::End)
            throw ParseError(lex_.peek().offset, "an operator or end of input",
                             "unexpected trailing input");
        return e;
    }

private:
    std::shared_ptr<const Node> parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            auto t = lex_.peek().type;
            if (t == Token::Type::Plus || t == Token::Type::Minus) {
                lex_.take();
                auto rhs = parse_term();
                lhs = make_node(t == Token::Type::Plus ? Kind::Add : Kind::Sub, 0.0,
                                std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<const Node> parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            auto t = lex_.peek().type;
            if (t == Token::Type::Star || t == Token::Type::Slash) {
                lex_.take();
                auto rhs = parse_unary();
                lhs = make_node(t == Token::Type::Star ? Kind::Mul : Kind::Div, 0.0,
                                std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<const Node> parse_unary() {
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.take();
            auto inner = parse_unary();
            // a minus sign directly on a literal is the literal's sign
            if (inner->kind == Kind::Constant)
                return make_node(Kind::Constant, -inner->value);
            return make_node(Kind::Negate, 0.0, std::move(inner));
        }
        return parse_power();
    }

    std::shared_ptr<const Node> parse_power() {
        auto base = parse_atom();
        if (lex_.peek().type != Token::Type::Caret) return base;
        std::size_t caret_off = lex_.take().offset;
        auto expo = parse_unary();
        if (node_contains_variable(expo.get()))
            throw ParseError(caret_off, "a constant exponent",
                             "exponent must not contain the variable");
        double c;
        try {
            Complex v = eval_node(expo.get(), Complex{0.0, 0.0});
            if (std::fabs(v.imag()) > 1e-12 * (1.0 + std::fabs(v.real())))
                throw ParseError(caret_off, "a real constant exponent", "exponent is not real");
            c = v.real();
        } catch (const EvalError& e) {
            throw ParseError(caret_off, "an evaluable constant exponent", e.what());
        }
        return make_node(Kind::Pow, 0.0, std::move(base), make_node(Kind::Constant, c));
    }

    std::shared_ptr<const Node> parse_atom() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Token::Type::Number: {
                double v = lex_.take().number;
                return make_node(Kind::Constant, v);
            }
            case Token::Type::LParen: {
                lex_.take();
                auto e = parse_expr();
                if (lex_.peek().type != Token::Type::RParen)
                    throw ParseError(lex_.peek().offset, "')'", "unbalanced parenthesis");
                lex_.take();
                return e;
            }
            case Token::Type::Ident: {
                Token id = lex_.take();
                if (id.text == "x") return make_node(Kind::Variable);
                if (id.text == "pi") return make_node(Kind::Constant, std::numbers::pi);
                if (id.text == "e") return make_node(Kind::Constant, std::numbers::e);
                Kind fk;
                if (id.text == "exp") fk = Kind::Exp;
                else if (id.text == "ln") fk = Kind::Ln;
                else if (id.text == "sin") fk = Kind::Sin;
                else if (id.text == "cos") fk = Kind::Cos;
                else if (id.text == "abs") fk = Kind::Abs;
                else if (id.text == "sqrt") fk = Kind::Sqrt;
                else
                    throw ParseError(id.offset, "'x', 'pi', 'e', exp, ln, sin, cos, abs or sqrt",
                                     "unknown identifier '" + id.text + "'");
                if (lex_.peek().type != Token::Type::LParen)
                    throw ParseError(lex_.peek().offset, "'(' after function name",
                                     "function application needs parentheses");
                lex_.take();
                auto arg = parse_expr();
                if (lex_.peek().type != Token::Type::RParen)
                    throw ParseError(lex_.peek().offset, "')'", "unbalanced parenthesis");
                lex_.take();
                return make_node(fk, 0.0, std::move(arg));
            }
            default:
                throw ParseError(t.offset, "a number, 'x', 'pi', 'e', a function, '(' or '-'",
                                 "expected an operand");
        }
    }

    Lexer lex_;
};

} // namespace

ParseError::ParseError(std::size_t offset, std::string expected, const std::string& detail)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + detail +
                         " (expected " + expected + ")"),
      offset_(offset),
      expected_(std::move(expected)) {}

EvalError::EvalError(EvalErrorKind kind, std::string subexpr, const std::string& detail)
    : std::runtime_error("evaluation error: " + detail + " in '" + subexpr + "'"),
      kind_(kind),
      subexpr_(std::move(subexpr)) {}

Expr Expr::constant(double value) { return Expr(make_node(Kind::Constant, value)); }
Expr Expr::variable() { return Expr(make_node(Kind::Variable)); }
Expr Expr::negate(Expr e) { return Expr(make_node(Kind::Negate, 0.0, std::move(e.node_))); }
Expr Expr::add(Expr a, Expr b) { return Expr(make_node(Kind::Add, 0.0, std::move(a.node_), std::move(b.node_))); }
Expr Expr::sub(Expr a, Expr b) { return Expr(make_node(Kind::Sub, 0.0, std::move(a.node_), std::move(b.node_))); }
Expr Expr::mul(Expr a, Expr b) { return Expr(make_node(Kind::Mul, 0.0, std::move(a.node_), std::move(b.node_))); }
Expr Expr::div(Expr a, Expr b) { return Expr(make_node(Kind::Div, 0.0, std::move(a.node_), std::move(b.node_))); }
Expr Expr::pow(Expr base, double exponent) {
    return Expr(make_node(Kind::Pow, 0.0, std::move(base.node_), make_node(Kind::Constant, exponent)));
}
Expr Expr::exp(Expr e) { return Expr(make_node(Kind::Exp, 0.0, std::move(e.node_))); }
Expr Expr::ln(Expr e) { return Expr(make_node(Kind::Ln, 0.0, std::move(e.node_))); }
Expr Expr::sin(Expr e) { return Expr(make_node(Kind::Sin, 0.0, std::move(e.node_))); }
Expr Expr::cos(Expr e) { return Expr(make_node(Kind::Cos, 0.0, std::move(e.node_))); }
Expr Expr::abs(Expr e) { return Expr(make_node(Kind::Abs, 0.0, std::move(e.node_))); }
Expr Expr::sqrt(Expr e) { return Expr(make_node(Kind::Sqrt, 0.0, std::move(e.node_))); }

Expr::Kind Expr::kind() const { return node_->kind; }

double Expr::constant_value() const {
    assert(node_->kind == Kind::Constant);
    return node_->value;
}

int Expr::child_count() const { return arity(node_->kind); }

Expr Expr::child(int i) const {
    assert(i >= 0 && i < child_count());
    return Expr(i == 0 ? node_->lhs : node_->rhs);
}

double Expr::exponent() const {
    assert(node_->kind == Kind::Pow);
    return node_->rhs->value;
}

bool Expr::contains_variable() const { return node_contains_variable(node_.get()); }

int Expr::node_count() const { return count_nodes(node_.get()); }

bool Expr::operator==(const Expr& other) const {
    return structurally_equal(node_.get(), other.node_.get());
}

std::string Expr::render() const {
    std::string out;
    render_node(node_.get(), out, 0);
    return out;
}

Expr Expr::differentiate() const { return Expr(diff_node(node_)); }

Complex Expr::eval(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw EvalError(EvalErrorKind::Undefined, "x", "evaluation point is not finite");
    return eval_node(node_.get(), z);
}

Expr parse(std::string_view src) {
    return Expr(Parser(src).parse_all());
}

double eval_abs_deriv(const Expr& e, Complex z) {
    return std::abs(e.differentiate().eval(z));
}

} // namespace hhphi
