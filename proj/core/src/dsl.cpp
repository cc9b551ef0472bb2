#include "forge/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "forge/errors.hpp"

namespace forge {
namespace dsl {

namespace {
constexpr double kTiny = 1e-300;
}

DualComplex operator+(DualComplex a, DualComplex b) { return {a.v + b.v, a.d + b.d}; }
DualComplex operator-(DualComplex a, DualComplex b) { return {a.v - b.v, a.d - b.d}; }
DualComplex operator-(DualComplex a) { return {-a.v, -a.d}; }
DualComplex operator*(DualComplex a, DualComplex b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
DualComplex operator/(DualComplex a, DualComplex b) {
  if (std::abs(b.v) < kTiny) throw DomainError("division by zero");
  cx q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  double number = 0.0;
  std::string ident;
  std::size_t offset = 0;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
    Token t;
    t.offset = i;
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const char* begin = s.c_str() + i;
      char* end = nullptr;
      t.number = std::strtod(begin, &end);
      if (end == begin) throw SyntaxError("bad number", i);
      t.kind = Tok::Number;
      i += std::size_t(end - begin);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.ident = s.substr(i, j - i);
      i = j;
      out.push_back(t);
      continue;
    }
    switch (ch) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default: throw SyntaxError(std::string("unexpected character '") + ch + "'", i);
    }
    ++i;
    out.push_back(t);
  }
  Token end;
  end.kind = Tok::End;
  end.offset = s.size();
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Pratt parser

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }

  ExprPtr make(NodeKind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr primary() {
    Token t = take();
    switch (t.kind) {
      case Tok::Number: {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Number;
        e->number = t.number;
        return e;
      }
      case Tok::Ident: {
        if (t.ident == "z") return make(NodeKind::Var);
        if (t.ident == "i") return make(NodeKind::ImagUnit);
        if (t.ident == "pi") return make(NodeKind::Pi);
        Fn fn;
        if (t.ident == "sqrt") fn = Fn::Sqrt;
        else if (t.ident == "log") fn = Fn::Log;
        else if (t.ident == "exp") fn = Fn::Exp;
        else if (t.ident == "sin") fn = Fn::Sin;
        else if (t.ident == "cos") fn = Fn::Cos;
        else throw UnknownIdentifier("unknown identifier '" + t.ident + "'", t.offset);
        if (peek().kind != Tok::LParen)
          throw SyntaxError("expected '(' after function name", peek().offset);
        take();
        ExprPtr arg = expression(0);
        if (peek().kind != Tok::RParen)
          throw SyntaxError("expected ')'", peek().offset);
        take();
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Call;
        e->fn = fn;
        e->lhs = std::move(arg);
        return e;
      }
      case Tok::Minus:
        return make(NodeKind::Neg, unary_operand());
      case Tok::LParen: {
        ExprPtr inner = expression(0);
        if (peek().kind != Tok::RParen)
          throw SyntaxError("expected ')'", peek().offset);
        take();
        return inner;
      }
      default:
        throw SyntaxError("unexpected token", t.offset);
    }
  }

  // Operand of unary minus: binds tighter than * but looser than ^,
  // so -z^2 parses as -(z^2).
  ExprPtr unary_operand() { return expression(25); }

  int lbp(Tok k) const {
    switch (k) {
      case Tok::Plus:
      case Tok::Minus: return 10;
      case Tok::Star:
      case Tok::Slash: return 20;
      case Tok::Caret: return 30;
      default: return 0;
    }
  }

  ExprPtr expression(int min_bp) {
    ExprPtr left = primary();
    for (;;) {
      Tok k = peek().kind;
      int bp = lbp(k);
      if (bp == 0 || bp <= min_bp) break;
      take();
      switch (k) {
        case Tok::Plus: left = make(NodeKind::Add, left, expression(bp)); break;
        case Tok::Minus: left = make(NodeKind::Sub, left, expression(bp)); break;
        case Tok::Star: left = make(NodeKind::Mul, left, expression(bp)); break;
        case Tok::Slash: left = make(NodeKind::Div, left, expression(bp)); break;
        case Tok::Caret:
          // right-associative
          left = make(NodeKind::Pow, left, expression(bp - 1));
          break;
        default: break;
      }
    }
    return left;
  }
};

}  // namespace

ExprPtr parse(const std::string& src) {
  Parser p;
  p.toks = lex(src);
  ExprPtr e = p.expression(0);
  if (p.peek().kind != Tok::End)
    throw SyntaxError("trailing input", p.peek().offset);
  return e;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int prec(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 10;
    case NodeKind::Mul:
    case NodeKind::Div: return 20;
    case NodeKind::Neg: return 25;
    case NodeKind::Pow: return 30;
    default: return 100;
  }
}

void print_rec(const ExprPtr& e, int parent_prec, std::string& out) {
  int myprec = prec(e->kind);
  bool need_paren = myprec < parent_prec;
  if (need_paren) out += '(';
  switch (e->kind) {
    case NodeKind::Number: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", e->number);
      out += buf;
      break;
    }
    case NodeKind::ImagUnit: out += 'i'; break;
    case NodeKind::Pi: out += "pi"; break;
    case NodeKind::Var: out += 'z'; break;
    case NodeKind::Neg:
      out += '-';
      print_rec(e->lhs, myprec + 1, out);
      break;
    case NodeKind::Add:
      print_rec(e->lhs, myprec, out);
      out += " + ";
      print_rec(e->rhs, myprec + 1, out);
      break;
    case NodeKind::Sub:
      print_rec(e->lhs, myprec, out);
      out += " - ";
      print_rec(e->rhs, myprec + 1, out);
      break;
    case NodeKind::Mul:
      print_rec(e->lhs, myprec, out);
      out += "*";
      print_rec(e->rhs, myprec + 1, out);
      break;
    case NodeKind::Div:
      print_rec(e->lhs, myprec, out);
      out += "/";
      print_rec(e->rhs, myprec + 1, out);
      break;
    case NodeKind::Pow:
      print_rec(e->lhs, myprec + 1, out);
      out += "^";
      print_rec(e->rhs, myprec, out);
      break;
    case NodeKind::Call:
      switch (e->fn) {
        case Fn::Sqrt: out += "sqrt"; break;
        case Fn::Log: out += "log"; break;
        case Fn::Exp: out += "exp"; break;
        case Fn::Sin: out += "sin"; break;
        case Fn::Cos: out += "cos"; break;
      }
      out += '(';
      print_rec(e->lhs, 0, out);
      out += ')';
      break;
  }
  if (need_paren) out += ')';
}

}  // namespace

std::string print(const ExprPtr& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  if (a->kind == NodeKind::Number && a->number != b->number) return false;
  if (a->kind == NodeKind::Call && a->fn != b->fn) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// Evaluation

cx eval(const ExprPtr& e, cx z) {
  switch (e->kind) {
    case NodeKind::Number: return cx{e->number, 0};
    case NodeKind::ImagUnit: return kI;
    case NodeKind::Pi: return cx{kPi, 0};
    case NodeKind::Var: return z;
    case NodeKind::Neg: return -eval(e->lhs, z);
    case NodeKind::Add: return eval(e->lhs, z) + eval(e->rhs, z);
    case NodeKind::Sub: return eval(e->lhs, z) - eval(e->rhs, z);
    case NodeKind::Mul: return eval(e->lhs, z) * eval(e->rhs, z);
    case NodeKind::Div: {
      cx den = eval(e->rhs, z);
      if (std::abs(den) < kTiny) throw DomainError("division by zero");
      return eval(e->lhs, z) / den;
    }
    case NodeKind::Pow: {
      cx base = eval(e->lhs, z);
      cx ex = eval(e->rhs, z);
      // Exact small integer powers avoid exp/log rounding and the log(0) issue.
      if (ex.imag() == 0.0 && ex.real() == std::floor(ex.real()) &&
          std::abs(ex.real()) <= 64) {
        long n = long(ex.real());
        if (n < 0 && std::abs(base) < kTiny) throw DomainError("0^negative");
        cx acc{1, 0};
        cx b = n < 0 ? cx{1, 0} / base : base;
        for (long k = 0; k < std::labs(n); ++k) acc *= b;
        return acc;
      }
      if (std::abs(base) < kTiny) {
        if (ex.real() > 0) return cx{0, 0};
        throw DomainError("0 raised to a non-positive power");
      }
      return std::exp(ex * std::log(base));
    }
    case NodeKind::Call: {
      cx a = eval(e->lhs, z);
      switch (e->fn) {
        case Fn::Sqrt: return std::sqrt(a);
        case Fn::Log:
          if (std::abs(a) < kTiny) throw DomainError("log of zero");
          return std::log(a);
        case Fn::Exp: return std::exp(a);
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
      }
    }
  }
  throw NumericalError("eval: corrupt expression node");
}

DualComplex eval_dual(const ExprPtr& e, cx z) {
  switch (e->kind) {
    case NodeKind::Number: return {cx{e->number, 0}, cx{0, 0}};
    case NodeKind::ImagUnit: return {kI, cx{0, 0}};
    case NodeKind::Pi: return {cx{kPi, 0}, cx{0, 0}};
    case NodeKind::Var: return {z, cx{1, 0}};
    case NodeKind::Neg: return -eval_dual(e->lhs, z);
    case NodeKind::Add: return eval_dual(e->lhs, z) + eval_dual(e->rhs, z);
    case NodeKind::Sub: return eval_dual(e->lhs, z) - eval_dual(e->rhs, z);
    case NodeKind::Mul: return eval_dual(e->lhs, z) * eval_dual(e->rhs, z);
    case NodeKind::Div: return eval_dual(e->lhs, z) / eval_dual(e->rhs, z);
    case NodeKind::Pow: {
      DualComplex base = eval_dual(e->lhs, z);
      DualComplex ex = eval_dual(e->rhs, z);
      if (ex.d == cx{0, 0} && ex.v.imag() == 0.0 &&
          ex.v.real() == std::floor(ex.v.real()) && std::abs(ex.v.real()) <= 64) {
        long n = long(ex.v.real());
        if (n == 0) return {cx{1, 0}, cx{0, 0}};
        if (n < 0 && std::abs(base.v) < kTiny) throw DomainError("0^negative");
        // b^n and n b^{n-1} b'
        cx bn1{1, 0};
        for (long k = 0; k < std::labs(n) - 1; ++k)
          bn1 *= (n > 0 ? base.v : cx{1, 0} / base.v);
        if (n > 0) return {bn1 * base.v, double(n) * bn1 * base.d};
        cx bn = bn1 / base.v;  // b^n for negative n
        return {bn, double(n) * bn / base.v * base.d};
      }
      if (std::abs(base.v) < kTiny) throw DomainError("pow at zero base");
      cx lg = std::log(base.v);
      cx val = std::exp(ex.v * lg);
      cx der = val * (ex.d * lg + ex.v * base.d / base.v);
      return {val, der};
    }
    case NodeKind::Call: {
      DualComplex a = eval_dual(e->lhs, z);
      switch (e->fn) {
        case Fn::Sqrt: {
          cx r = std::sqrt(a.v);
          if (std::abs(r) < kTiny) throw DomainError("sqrt derivative at zero");
          return {r, a.d / (2.0 * r)};
        }
        case Fn::Log:
          if (std::abs(a.v) < kTiny) throw DomainError("log of zero");
          return {std::log(a.v), a.d / a.v};
        case Fn::Exp: {
          cx v = std::exp(a.v);
          return {v, v * a.d};
        }
        case Fn::Sin: return {std::sin(a.v), std::cos(a.v) * a.d};
        case Fn::Cos: return {std::cos(a.v), -std::sin(a.v) * a.d};
      }
    }
  }
  throw NumericalError("eval_dual: corrupt expression node");
}

}  // namespace dsl
}  // namespace forge
