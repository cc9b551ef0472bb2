#pragma once

#include <memory>
#include <string>

#include "forge/contour.hpp"

namespace forge {
namespace dsl {

// Complex dual number: value and first derivative with respect to z.
struct DualComplex {
  cx v{0, 0};
  cx d{0, 0};
};

DualComplex operator+(DualComplex a, DualComplex b);
DualComplex operator-(DualComplex a, DualComplex b);
DualComplex operator-(DualComplex a);
DualComplex operator*(DualComplex a, DualComplex b);
DualComplex operator/(DualComplex a, DualComplex b);

enum class NodeKind { Number, ImagUnit, Pi, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

// Supported call targets.
enum class Fn { Sqrt, Log, Exp, Sin, Cos };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind;
  double number = 0.0;          // Number
  Fn fn = Fn::Sqrt;             // Call
  ExprPtr lhs, rhs;             // children (unary ops use lhs)
};

// Parse the expression grammar:
//   literals, i, pi, the variable z, + - * / ^ (right assoc), unary -,
//   parentheses, sqrt/log/exp/sin/cos calls.
// Throws SyntaxError / UnknownIdentifier with a byte offset.
ExprPtr parse(const std::string& src);

// Canonical printing; parse(print(e)) reproduces the tree.
std::string print(const ExprPtr& e);

// Structural equality.
bool equal(const ExprPtr& a, const ExprPtr& b);

// Evaluate at z. Principal branches for sqrt/log; pow(a,b) = exp(b log a).
// Throws DomainError on division by (numerical) zero and log/0^negative.
cx eval(const ExprPtr& e, cx z);

// Forward-mode evaluation: value and d/dz in one pass.
DualComplex eval_dual(const ExprPtr& e, cx z);

}  // namespace dsl
}  // namespace forge
