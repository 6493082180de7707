#include "gibbs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "gibbs/error.hpp"

namespace gibbs::expr {

namespace detail {

struct Node {
  Kind kind = Kind::kNumber;
  double value = 0.0;
  std::string name;
  Function function = Function::kExp;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool constant = true;
  // Value of an x-free subtree, when it evaluates without a domain error.
  std::optional<double> folded;
};

}  // namespace detail

using detail::Node;

namespace {

constexpr std::string_view kFunctionNames[] = {"exp",  "log", "sin", "cos",
                                               "sqrt", "abs", "atan"};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(fmt::format("non-finite result in {}", what));
  }
}

void check_finite(std::complex<double> v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw DomainError(fmt::format("non-finite result in {}", what));
  }
}

bool is_integer(double v) { return std::isfinite(v) && std::trunc(v) == v; }

double eval_real(const Node& n, double x);

double apply_real(Function f, double u) {
  switch (f) {
    case Function::kExp:
      return std::exp(u);
    case Function::kLog:
      if (u <= 0.0) {
        throw DomainError(fmt::format("log of non-positive value {}", u));
      }
      return std::log(u);
    case Function::kSin:
      return std::sin(u);
    case Function::kCos:
      return std::cos(u);
    case Function::kSqrt:
      if (u < 0.0) {
        throw DomainError(fmt::format("sqrt of negative value {}", u));
      }
      return std::sqrt(u);
    case Function::kAbs:
      return std::abs(u);
    case Function::kAtan:
      return std::atan(u);
  }
  return 0.0;
}

double real_pow(double base, double exponent) {
  if (is_integer(exponent)) {
    if (base == 0.0 && exponent < 0.0) {
      throw DomainError("zero raised to a negative power");
    }
    return std::pow(base, exponent);
  }
  if (base <= 0.0) {
    throw DomainError(
        fmt::format("non-positive base {} with non-integer exponent", base));
  }
  return std::pow(base, exponent);
}

double eval_real(const Node& n, double x) {
  if (n.folded) return *n.folded;
  double r = 0.0;
  switch (n.kind) {
    case Kind::kNumber:
    case Kind::kConstant:
      return n.value;
    case Kind::kVariable:
      return x;
    case Kind::kAdd:
      r = eval_real(*n.a, x) + eval_real(*n.b, x);
      break;
    case Kind::kSub:
      r = eval_real(*n.a, x) - eval_real(*n.b, x);
      break;
    case Kind::kMul:
      r = eval_real(*n.a, x) * eval_real(*n.b, x);
      break;
    case Kind::kDiv: {
      const double num = eval_real(*n.a, x);
      const double den = eval_real(*n.b, x);
      if (den == 0.0) throw DomainError("division by zero");
      r = num / den;
      break;
    }
    case Kind::kPow:
      r = real_pow(eval_real(*n.a, x), eval_real(*n.b, x));
      break;
    case Kind::kNeg:
      return -eval_real(*n.a, x);
    case Kind::kCall:
      r = apply_real(n.function, eval_real(*n.a, x));
      break;
  }
  check_finite(r, "expression");
  return r;
}

using cplx = std::complex<double>;

cplx complex_pow(cplx base, cplx exponent) {
  if (exponent.imag() == 0.0 && is_integer(exponent.real()) &&
      std::abs(exponent.real()) <= 64.0) {
    auto n = static_cast<long>(exponent.real());
    if (n < 0 && base == cplx(0.0)) {
      throw DomainError("zero raised to a negative power");
    }
    const bool invert = n < 0;
    unsigned long m = static_cast<unsigned long>(invert ? -n : n);
    cplx acc(1.0), sq = base;
    while (m != 0) {
      if (m & 1u) acc *= sq;
      sq *= sq;
      m >>= 1u;
    }
    return invert ? cplx(1.0) / acc : acc;
  }
  if (base == cplx(0.0)) {
    throw DomainError("zero base with non-integer exponent");
  }
  return std::exp(exponent * std::log(base));
}

cplx eval_complex(const Node& n, cplx z) {
  cplx r;
  switch (n.kind) {
    case Kind::kNumber:
    case Kind::kConstant:
      return n.value;
    case Kind::kVariable:
      return z;
    case Kind::kAdd:
      r = eval_complex(*n.a, z) + eval_complex(*n.b, z);
      break;
    case Kind::kSub:
      r = eval_complex(*n.a, z) - eval_complex(*n.b, z);
      break;
    case Kind::kMul:
      r = eval_complex(*n.a, z) * eval_complex(*n.b, z);
      break;
    case Kind::kDiv: {
      const cplx num = eval_complex(*n.a, z);
      const cplx den = eval_complex(*n.b, z);
      if (den == cplx(0.0)) throw DomainError("division by zero");
      r = num / den;
      break;
    }
    case Kind::kPow:
      r = complex_pow(eval_complex(*n.a, z), eval_complex(*n.b, z));
      break;
    case Kind::kNeg:
      return -eval_complex(*n.a, z);
    case Kind::kCall: {
      const cplx u = eval_complex(*n.a, z);
      switch (n.function) {
        case Function::kExp:
          r = std::exp(u);
          break;
        case Function::kLog:
          if (u == cplx(0.0)) throw DomainError("log of zero");
          r = std::log(u);
          break;
        case Function::kSin:
          r = std::sin(u);
          break;
        case Function::kCos:
          r = std::cos(u);
          break;
        case Function::kSqrt:
          r = std::sqrt(u);
          break;
        case Function::kAbs:
          r = std::abs(u);
          break;
        case Function::kAtan:
          r = std::atan(u);
          break;
      }
      break;
    }
  }
  check_finite(r, "expression");
  return r;
}

std::shared_ptr<Node> finish(std::shared_ptr<Node> n) {
  if (n->constant && n->kind != Kind::kNumber && n->kind != Kind::kConstant) {
    try {
      n->folded = eval_real(*n, 0.0);
    } catch (const DomainError&) {
      // Left unfolded so evaluation reports the error at the call site.
    }
  }
  return n;
}

int precedence(Kind k) {
  switch (k) {
    case Kind::kAdd:
    case Kind::kSub:
      return 1;
    case Kind::kMul:
    case Kind::kDiv:
      return 2;
    case Kind::kNeg:
      return 3;
    case Kind::kPow:
      return 4;
    default:
      return 5;
  }
}

void print(const Node& n, std::string& out);

void print_child(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::kNumber:
      out += fmt::format("{}", n.value);
      return;
    case Kind::kConstant:
      out += n.name;
      return;
    case Kind::kVariable:
      out += 'x';
      return;
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv: {
      const int p = precedence(n.kind);
      print_child(*n.a, precedence(n.a->kind) < p, out);
      switch (n.kind) {
        case Kind::kAdd: out += " + "; break;
        case Kind::kSub: out += " - "; break;
        case Kind::kMul: out += '*'; break;
        default: out += '/'; break;
      }
      print_child(*n.b, precedence(n.b->kind) <= p, out);
      return;
    }
    case Kind::kPow:
      print_child(*n.a, precedence(n.a->kind) <= precedence(Kind::kPow), out);
      out += '^';
      print_child(*n.b, precedence(n.b->kind) < precedence(Kind::kNeg), out);
      return;
    case Kind::kNeg:
      out += '-';
      print_child(*n.a, precedence(n.a->kind) < precedence(Kind::kNeg), out);
      return;
    case Kind::kCall:
      out += function_name(n.function);
      out += '(';
      print(*n.a, out);
      out += ')';
      return;
  }
}

bool equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::kNumber:
      return a.value == b.value;
    case Kind::kConstant:
      return a.name == b.name;
    case Kind::kVariable:
      return true;
    case Kind::kNeg:
      return equal(*a.a, *b.a);
    case Kind::kCall:
      return a.function == b.function && equal(*a.a, *b.a);
    default:
      return equal(*a.a, *b.a) && equal(*a.b, *b.b);
  }
}

// --- parser ---------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("empty expression", 0);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) {
      throw ParseError(fmt::format("expected operator or end of input, found "
                                   "'{}'",
                                   src_[pos_]),
                       pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == src_.size()) {
        throw ParseError(fmt::format("expected '{}' but input ended", c),
                         pos_);
      }
      throw ParseError(
          fmt::format("expected '{}', found '{}'", c, src_[pos_]), pos_);
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Kind::kAdd, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(Kind::kSub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Kind::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Kind::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(Kind::kPow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ == src_.size()) {
      throw ParseError("expected number, identifier or '(' but input ended",
                       pos_);
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = src_.substr(start, pos_ - start);
      if (ident == "x") return Expr::variable();
      if (ident == "pi" || ident == "e") return Expr::constant(ident);
      for (std::size_t i = 0; i < std::size(kFunctionNames); ++i) {
        if (ident == kFunctionNames[i]) {
          expect('(');
          Expr arg = parse_expr();
          expect(')');
          return Expr::call(static_cast<Function>(i), arg);
        }
      }
      throw ParseError(fmt::format("unknown identifier '{}'", ident), start);
    }
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    throw ParseError(
        fmt::format("expected number, identifier or '(', found '{}'", c),
        pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      // Only an exponent if digits follow; otherwise "2e" is a syntax error
      // reported on the identifier.
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        ++look;
      }
      if (look < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
      throw ParseError(fmt::format("malformed number '{}'", text), start);
    }
    return Expr::number(v);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// --- derivative helpers -----------------------------------------------------

bool is_number(const Expr& e, double v) {
  return e.kind() == Kind::kNumber && e.value() == v;
}

Expr fold(Expr e) {
  if (!e.is_constant() || e.kind() == Kind::kNumber) return e;
  if (e.kind() == Kind::kNeg && e.lhs().kind() == Kind::kNumber) return e;
  try {
    return Expr::number(e.eval(0.0));
  } catch (const DomainError&) {
    return e;
  }
}

Expr add(Expr a, Expr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  return fold(Expr::binary(Kind::kAdd, a, b));
}

Expr neg(Expr a) {
  if (is_number(a, 0.0)) return a;
  if (a.kind() == Kind::kNeg) return a.lhs();
  return fold(Expr::negate(a));
}

Expr sub(Expr a, Expr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return neg(b);
  return fold(Expr::binary(Kind::kSub, a, b));
}

Expr mul(Expr a, Expr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return Expr::number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  return fold(Expr::binary(Kind::kMul, a, b));
}

Expr div(Expr a, Expr b) {
  if (is_number(a, 0.0)) return a;
  if (is_number(b, 1.0)) return a;
  return fold(Expr::binary(Kind::kDiv, a, b));
}

Expr pow(Expr a, Expr b) { return fold(Expr::binary(Kind::kPow, a, b)); }

Expr apply(Function f, Expr a) { return fold(Expr::call(f, a)); }

}  // namespace

std::string_view function_name(Function f) {
  return kFunctionNames[static_cast<std::size_t>(f)];
}

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("non-finite literal");
  }
  if (std::signbit(value)) {
    // Literals are non-negative so printed text re-parses to the same tree.
    return value == 0.0 ? number(0.0) : negate(number(-value));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNumber;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::constant(std::string_view name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConstant;
  n->name = std::string(name);
  if (name == "pi") {
    n->value = std::numbers::pi;
  } else if (name == "e") {
    n->value = std::numbers::e;
  } else {
    throw ParseError(fmt::format("unknown constant '{}'", name), 0);
  }
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVariable;
  n->constant = false;
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->constant = lhs.node_->constant && rhs.node_->constant;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return Expr(finish(std::move(n)));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNeg;
  n->constant = operand.node_->constant;
  n->a = std::move(operand.node_);
  return Expr(finish(std::move(n)));
}

Expr Expr::call(Function f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCall;
  n->function = f;
  n->constant = arg.node_->constant;
  n->a = std::move(arg.node_);
  return Expr(finish(std::move(n)));
}

Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Function Expr::function() const { return node_->function; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }
bool Expr::is_constant() const { return node_->constant; }

double Expr::eval(double x) const { return eval_real(*node_, x); }

std::complex<double> Expr::eval(std::complex<double> z) const {
  return eval_complex(*node_, z);
}

std::string Expr::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  return equal(*a.node_, *b.node_);
}

Expr Expr::derivative() const {
  if (is_constant()) return number(0.0);
  switch (kind()) {
    case Kind::kNumber:
    case Kind::kConstant:
      return number(0.0);
    case Kind::kVariable:
      return number(1.0);
    case Kind::kAdd:
      return add(lhs().derivative(), rhs().derivative());
    case Kind::kSub:
      return sub(lhs().derivative(), rhs().derivative());
    case Kind::kMul: {
      const Expr u = lhs(), v = rhs();
      return add(mul(u.derivative(), v), mul(u, v.derivative()));
    }
    case Kind::kDiv: {
      const Expr u = lhs(), v = rhs();
      return div(sub(mul(u.derivative(), v), mul(u, v.derivative())),
                 pow(v, number(2.0)));
    }
    case Kind::kNeg:
      return neg(lhs().derivative());
    case Kind::kPow: {
      const Expr u = lhs(), v = rhs();
      if (v.is_constant()) {
        return mul(mul(v, pow(u, sub(v, number(1.0)))), u.derivative());
      }
      // d(u^v) = u^v (v' log u + v u'/u)
      return mul(*this, add(mul(v.derivative(), apply(Function::kLog, u)),
                            div(mul(v, u.derivative()), u)));
    }
    case Kind::kCall: {
      const Expr u = lhs();
      const Expr du = u.derivative();
      switch (function()) {
        case Function::kExp:
          return mul(*this, du);
        case Function::kLog:
          return div(du, u);
        case Function::kSin:
          return mul(apply(Function::kCos, u), du);
        case Function::kCos:
          return neg(mul(apply(Function::kSin, u), du));
        case Function::kSqrt:
          return div(du, mul(number(2.0), *this));
        case Function::kAbs:
          // sign(u) u', undefined (division by zero) at u = 0
          return mul(div(u, *this), du);
        case Function::kAtan:
          return div(du, add(number(1.0), pow(u, number(2.0))));
      }
    }
  }
  return number(0.0);
}

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

Expr differentiate(const Expr& e) { return e.derivative(); }

}  // namespace gibbs::expr
