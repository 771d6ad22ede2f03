#include "dumbbell/expression.hpp"

#include "dumbbell/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace dumbbell {

std::string_view variable_name(Variable v)
{
    switch (v) {
    case Variable::t: return "t";
    case Variable::theta: return "theta";
    case Variable::theta_dot: return "theta_dot";
    case Variable::phi: return "phi";
    case Variable::phi_dot: return "phi_dot";
    }
    return "?";
}

double Bindings::operator[](Variable v) const
{
    switch (v) {
    case Variable::t: return t;
    case Variable::theta: return theta;
    case Variable::theta_dot: return theta_dot;
    case Variable::phi: return phi;
    case Variable::phi_dot: return phi_dot;
    }
    return 0.0;
}

bool structurally_equal(const Node& a, const Node& b)
{
    if (a.data.index() != b.data.index()) return false;
    return std::visit(
        [&b](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.data);
            if constexpr (std::is_same_v<T, ConstantNode>) {
                return lhs.value == rhs.value && lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, VariableNode>) {
                return lhs.var == rhs.var;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                return lhs.op == rhs.op && structurally_equal(*lhs.arg, *rhs.arg);
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                return lhs.op == rhs.op && structurally_equal(*lhs.lhs, *rhs.lhs)
                    && structurally_equal(*lhs.rhs, *rhs.rhs);
            } else {
                return lhs.exponent == rhs.exponent && structurally_equal(*lhs.base, *rhs.base);
            }
        },
        a.data);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

NodePtr make(auto node) { return std::make_shared<const Node>(Node{std::move(node)}); }

std::optional<Variable> lookup_variable(std::string_view name)
{
    static constexpr std::array<Variable, 5> all{Variable::t, Variable::theta, Variable::theta_dot,
                                                  Variable::phi, Variable::phi_dot};
    for (Variable v : all)
        if (variable_name(v) == name) return v;
    return std::nullopt;
}

std::optional<UnaryOp> lookup_function(std::string_view name)
{
    if (name == "sin") return UnaryOp::sin;
    if (name == "cos") return UnaryOp::cos;
    if (name == "tan") return UnaryOp::tan;
    if (name == "neg") return UnaryOp::neg;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse()
    {
        skip_ws();
        if (pos_ == text_.size()) fail({"expression"});
        NodePtr root = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                                : std::string("end of input");
        throw SyntaxError(pos_, std::move(expected), found);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(BinaryNode{BinaryOp::add, lhs, term()});
            else if (accept('-')) lhs = make(BinaryNode{BinaryOp::sub, lhs, term()});
            else return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(BinaryNode{BinaryOp::mul, lhs, unary()});
            else if (accept('/')) lhs = make(BinaryNode{BinaryOp::div, lhs, unary()});
            else return lhs;
        }
    }

    NodePtr unary()
    {
        if (accept('-')) return make(UnaryNode{UnaryOp::neg, unary()});
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (!accept('^')) return base;
        skip_ws();
        const bool negative = accept('-');
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail({"integer exponent"});
        int exponent = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"integer exponent"});
        }
        return make(PowerNode{base, negative ? -exponent : exponent});
    }

    NodePtr primary()
    {
        skip_ws();
        if (pos_ == text_.size()) fail({"number", "identifier", "'('", "'-'"});
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail({"number", "identifier", "'('", "'-'"});
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        auto digits = [this] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (exp_start == pos_) pos_ = save;
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"number"});
        }
        return make(ConstantNode{value, {}});
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "pi") return make(ConstantNode{std::numbers::pi, "pi"});
        if (name == "sqrt3") return make(ConstantNode{kSqrt3, "sqrt3"});
        if (auto v = lookup_variable(name)) return make(VariableNode{*v});
        if (auto f = lookup_function(name)) {
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(UnaryNode{*f, arg});
        }
        throw UnknownIdentifier(start, std::string(name));
    }
};

// ---------------------------------------------------------------------------
// Printer

// Binding strength of the node's outermost construct.
int precedence(const Node& n)
{
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, BinaryNode>) {
                return (x.op == BinaryOp::add || x.op == BinaryOp::sub) ? 1 : 2;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                return x.op == UnaryOp::neg ? 3 : 5;
            } else if constexpr (std::is_same_v<T, PowerNode>) {
                return 4;
            } else {
                return 5;
            }
        },
        n.data);
}

void print(std::ostringstream& os, const Node& n, int min_prec)
{
    const bool paren = precedence(n) < min_prec;
    if (paren) os << '(';
    std::visit(
        [&os](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstantNode>) {
                if (!x.name.empty()) {
                    os << x.name;
                } else {
                    std::array<char, 32> buf{};
                    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x.value);
                    os << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
                }
            } else if constexpr (std::is_same_v<T, VariableNode>) {
                os << variable_name(x.var);
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                switch (x.op) {
                case UnaryOp::neg:
                    os << '-';
                    print(os, *x.arg, 3);
                    return;
                case UnaryOp::sin: os << "sin("; break;
                case UnaryOp::cos: os << "cos("; break;
                case UnaryOp::tan: os << "tan("; break;
                }
                print(os, *x.arg, 0);
                os << ')';
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                const bool additive = x.op == BinaryOp::add || x.op == BinaryOp::sub;
                const int level = additive ? 1 : 2;
                print(os, *x.lhs, level);
                switch (x.op) {
                case BinaryOp::add: os << " + "; break;
                case BinaryOp::sub: os << " - "; break;
                case BinaryOp::mul: os << '*'; break;
                case BinaryOp::div: os << '/'; break;
                }
                print(os, *x.rhs, additive ? 2 : 3);
            } else {
                print(os, *x.base, 5);
                os << '^' << x.exponent;
            }
        },
        n.data);
    if (paren) os << ')';
}

// ---------------------------------------------------------------------------
// Evaluation

Dual eval(const Node& n, const Bindings& b, Seed seed)
{
    return std::visit(
        [&](const auto& x) -> Dual {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstantNode>) {
                return Dual{x.value, 0.0};
            } else if constexpr (std::is_same_v<T, VariableNode>) {
                const bool seeded = seed != Seed::none
                    && static_cast<int>(seed) - 1 == static_cast<int>(x.var);
                return Dual{b[x.var], seeded ? 1.0 : 0.0};
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                const Dual a = eval(*x.arg, b, seed);
                switch (x.op) {
                case UnaryOp::neg: return -a;
                case UnaryOp::sin: return sin(a);
                case UnaryOp::cos: return cos(a);
                case UnaryOp::tan:
                    if (std::abs(std::cos(a.value)) < 1e-12)
                        throw DomainError("tan evaluated at a pole (argument "
                                          + std::to_string(a.value) + ")");
                    return tan(a);
                }
                return a;
            } else if constexpr (std::is_same_v<T, BinaryNode>) {
                const Dual l = eval(*x.lhs, b, seed);
                const Dual r = eval(*x.rhs, b, seed);
                switch (x.op) {
                case BinaryOp::add: return l + r;
                case BinaryOp::sub: return l - r;
                case BinaryOp::mul: return l * r;
                case BinaryOp::div:
                    if (r.value == 0.0) throw DomainError("division by zero");
                    return l / r;
                }
                return l;
            } else {
                const Dual base = eval(*x.base, b, seed);
                if (x.exponent < 0 && base.value == 0.0)
                    throw DomainError("negative power of zero");
                return pow(base, x.exponent);
            }
        },
        n.data);
}

} // namespace

TorqueExpression::TorqueExpression(NodePtr root) : root_(std::move(root)) {}

std::string TorqueExpression::to_string() const
{
    std::ostringstream os;
    print(os, *root_, 0);
    return os.str();
}

double TorqueExpression::evaluate(const Bindings& b) const
{
    return eval(*root_, b, Seed::none).value;
}

TorqueExpression parse_torque(std::string_view text)
{
    return TorqueExpression(Parser(text).parse());
}

Dual eval_dual(const TorqueExpression& expr, const Bindings& b, Seed seed)
{
    return eval(expr.root(), b, seed);
}

} // namespace dumbbell
