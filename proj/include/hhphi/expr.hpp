#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hhphi {

using Complex = std::complex<double>;

/// Parse failure; carries the byte offset into the source text and a
/// human-readable description of what the parser would have accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected, const std::string& detail);
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

enum class EvalErrorKind { Pole, BranchPoint, Overflow, Undefined };

/// Evaluation failure at a concrete point; carries the rendered offending
/// subexpression so reports can say which factor blew up.
class EvalError : public std::runtime_error {
public:
    EvalError(EvalErrorKind kind, std::string subexpr, const std::string& detail);
    EvalErrorKind kind() const { return kind_; }
    const std::string& subexpr() const { return subexpr_; }

private:
    EvalErrorKind kind_;
    std::string subexpr_;
};

/// Immutable expression tree over one real variable `x`, evaluable at complex
/// points. The closed grammar (documented in the README):
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?     -- exponent must fold to a real constant
///   atom   := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
///   FUNC   := exp | ln | sin | cos | abs | sqrt
///
/// Power binds tighter than unary minus ("-x^2" is -(x^2)); `^` is
/// right-associative, everything else left-associative. Trees are shared and
/// never mutated, so an Expr may be copied and evaluated from many threads.
class Expr {
public:
    enum class Kind {
        Constant,
        Variable,
        Negate,
        Add,
        Sub,
        Mul,
        Div,
        Pow,  // exponent child is always a Constant node
        Exp,
        Ln,
        Sin,
        Cos,
        Abs,
        Sqrt,
    };

    static Expr constant(double value);
    static Expr variable();
    static Expr negate(Expr e);
    static Expr add(Expr lhs, Expr rhs);
    static Expr sub(Expr lhs, Expr rhs);
    static Expr mul(Expr lhs, Expr rhs);
    static Expr div(Expr lhs, Expr rhs);
    static Expr pow(Expr base, double exponent);
    static Expr exp(Expr e);
    static Expr ln(Expr e);
    static Expr sin(Expr e);
    static Expr cos(Expr e);
    static Expr abs(Expr e);
    static Expr sqrt(Expr e);

    Kind kind() const;
    /// Value of a Constant node (also usable on a Pow node's exponent child).
    double constant_value() const;
    int child_count() const;
    Expr child(int i) const;
    /// Exponent of a Pow node.
    double exponent() const;

    bool contains_variable() const;
    int node_count() const;

    /// Structural equality (same shape, bit-equal constants).
    bool operator==(const Expr& other) const;
    bool operator!=(const Expr& other) const { return !(*this == other); }

    /// Canonical text; `parse(render())` reproduces the tree exactly.
    std::string render() const;

    /// Symbolic d/dx by the standard rules; abs differentiates to x/abs(x)
    /// (undefined at 0, which surfaces as an EvalError when evaluated there).
    Expr differentiate() const;

    /// Evaluate at a complex point. abs is the complex modulus; ln, sqrt
    /// and non-integer powers use the principal branch. Throws EvalError
    /// on poles, the ln branch point at 0, and non-finite results.
    Complex eval(Complex z) const;

    struct Node;  // opaque; defined in expr.cpp

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    friend Expr parse(std::string_view src);
    std::shared_ptr<const Node> node_;
};

/// Parse the grammar above. Throws ParseError (with byte offset) on syntax
/// errors, unknown identifiers, and non-constant `^` exponents.
Expr parse(std::string_view src);

/// |f'(z)| where f' is the symbolic derivative of e. Nonnegative by
/// construction; propagates evaluation errors.
double eval_abs_deriv(const Expr& e, Complex z);

} // namespace hhphi
