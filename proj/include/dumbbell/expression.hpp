#pragma once

#include "dumbbell/dual.hpp"

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace dumbbell {

/// The five torque arguments, in state order (t first).
enum class Variable { t, theta, theta_dot, phi, phi_dot };

std::string_view variable_name(Variable v);

enum class UnaryOp { neg, sin, cos, tan };
enum class BinaryOp { add, sub, mul, div };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Numeric literal or named constant (`pi`, `sqrt3`); name is empty for literals.
struct ConstantNode {
    double value;
    std::string name;
};
struct VariableNode {
    Variable var;
};
struct UnaryNode {
    UnaryOp op;
    NodePtr arg;
};
struct BinaryNode {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};
struct PowerNode {
    NodePtr base;
    int exponent;
};

struct Node {
    std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode, PowerNode> data;
};

/// Structural equality; constants compare by value and name.
bool structurally_equal(const Node& a, const Node& b);

/// Values for (t, theta, theta_dot, phi, phi_dot).
struct Bindings {
    double t = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
    double phi = 0.0;
    double phi_dot = 0.0;

    double operator[](Variable v) const;
};

/// Variable carrying the unit derivative seed, if any.
enum class Seed { none, t, theta, theta_dot, phi, phi_dot };

/// Immutable parsed torque. Cheap to copy (shares the tree).
class TorqueExpression {
public:
    explicit TorqueExpression(NodePtr root);

    const Node& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }

    /// Canonical text form; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    double evaluate(const Bindings& b) const;

    friend bool operator==(const TorqueExpression& a, const TorqueExpression& b)
    {
        return structurally_equal(*a.root_, *b.root_);
    }

private:
    NodePtr root_;
};

/// Grammar (whitespace insensitive):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' ['-'] integer)?
///     primary := number | constant | variable | func '(' expr ')' | '(' expr ')'
///
/// with constants {pi, sqrt3}, variables {t, theta, theta_dot, phi, phi_dot} and
/// functions {sin, cos, tan, neg}. Throws SyntaxError or UnknownIdentifier.
TorqueExpression parse_torque(std::string_view text);

/// Value and exact first derivative with respect to the seeded variable.
/// Throws DomainError for tan near a pole or division by zero.
Dual eval_dual(const TorqueExpression& expr, const Bindings& b, Seed seed);

} // namespace dumbbell
