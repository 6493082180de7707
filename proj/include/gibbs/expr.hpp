#pragma once

// A small univariate expression language used to describe IFS branches and
// potentials in configuration files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sin | cos | sqrt | abs | atan

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace gibbs::expr {

enum class Kind {
  kNumber,     // decimal literal, always >= 0
  kConstant,   // named constant: pi, e
  kVariable,   // x
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kCall,
};

enum class Function { kExp, kLog, kSin, kCos, kSqrt, kAbs, kAtan };

std::string_view function_name(Function f);

class Expr;

namespace detail {
struct Node;
}

/// Immutable expression tree.  Copies share structure; evaluation is
/// reentrant.
class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr number(double value);
  static Expr constant(std::string_view name);
  static Expr variable();
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr negate(Expr operand);
  static Expr call(Function f, Expr arg);

  Kind kind() const;
  /// Literal value for numbers and named constants.
  double value() const;
  /// Name of a named constant ("pi", "e").
  const std::string& name() const;
  Function function() const;
  /// Left operand (binary), operand (negation) or argument (call).
  Expr lhs() const;
  Expr rhs() const;

  /// True when the tree does not reference x.
  bool is_constant() const;

  /// Evaluates at a real point.  Throws DomainError instead of producing a
  /// non-finite value.
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;
  double operator()(double x) const { return eval(x); }

  /// Symbolic d/dx.  Literal-only subtrees are folded.
  Expr derivative() const;

  /// Canonical text form.  parse(to_string()) is structurally equal to *this.
  std::string to_string() const;

  /// Structural equality (literals compared by value).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

/// Parses expression text.  Throws ParseError on malformed input or an
/// unknown identifier.
Expr parse(std::string_view source);

Expr differentiate(const Expr& e);

}  // namespace gibbs::expr
