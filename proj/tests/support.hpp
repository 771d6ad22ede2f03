#pragma once

#include "dumbbell/averaging.hpp"
#include "dumbbell/expression.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace dumbbell::testing {

inline NodePtr node(auto x) { return std::make_shared<const Node>(Node{std::move(x)}); }

// Random tree of at most `depth` levels. Literals are non-negative; the parser
// produces negation as a unary node.
inline NodePtr random_tree(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 1 ? 2 : 7);
    std::uniform_int_distribution<int> var(0, 4);
    switch (pick(rng)) {
    case 0: {
        std::uniform_real_distribution<double> v(0.0, 10.0);
        const int style = std::uniform_int_distribution<int>(0, 2)(rng);
        if (style == 0) return node(ConstantNode{std::floor(v(rng)), {}});
        if (style == 1) return node(ConstantNode{v(rng) * 1e-3, {}});
        return node(ConstantNode{v(rng), {}});
    }
    case 1: return node(VariableNode{static_cast<Variable>(var(rng))});
    case 2: {
        const bool pi = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
        return node(ConstantNode{pi ? 3.141592653589793 : 1.7320508075688772935, pi ? "pi" : "sqrt3"});
    }
    case 3:
    case 4: {
        const auto op = static_cast<UnaryOp>(std::uniform_int_distribution<int>(0, 3)(rng));
        return node(UnaryNode{op, random_tree(rng, depth - 1)});
    }
    case 5: {
        const int e = std::uniform_int_distribution<int>(-3, 5)(rng);
        return node(PowerNode{random_tree(rng, depth - 1), e});
    }
    default: {
        const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 3)(rng));
        return node(BinaryNode{op, random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    }
    }
}

// Smooth expression without poles: sums and products of sin/cos/polynomials.
inline NodePtr random_smooth_tree(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 5);
    switch (pick(rng)) {
    case 0: return node(ConstantNode{std::uniform_real_distribution<double>(0.1, 3.0)(rng), {}});
    case 1: return node(VariableNode{static_cast<Variable>(std::uniform_int_distribution<int>(0, 4)(rng))});
    case 2: {
        const auto op = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? UnaryOp::sin : UnaryOp::cos;
        return node(UnaryNode{op, random_smooth_tree(rng, depth - 1)});
    }
    case 3: return node(PowerNode{random_smooth_tree(rng, depth - 1), std::uniform_int_distribution<int>(0, 3)(rng)});
    case 4: return node(UnaryNode{UnaryOp::neg, random_smooth_tree(rng, depth - 1)});
    default: {
        const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 2)(rng));
        return node(BinaryNode{op, random_smooth_tree(rng, depth - 1), random_smooth_tree(rng, depth - 1)});
    }
    }
}

inline Eigen::Vector2d random_in_annulus(std::mt19937_64& rng, double r1, double r2)
{
    const double r = std::uniform_real_distribution<double>(r1, r2)(rng);
    const double a = std::uniform_real_distribution<double>(0.0, 2.0 * 3.141592653589793)(rng);
    return {r * std::cos(a), r * std::sin(a)};
}

inline LinearizedTorque only_f1(Coefficient f)
{
    LinearizedTorque lin = LinearizedTorque::zero();
    lin.f1 = std::move(f);
    return lin;
}

inline LinearizedTorque only_f4(Coefficient f)
{
    LinearizedTorque lin = LinearizedTorque::zero();
    lin.f4 = std::move(f);
    return lin;
}

// Averaged fields worked out by expanding the integrands in trigonometric
// moments over one period.
struct OracleCase {
    std::string name;
    Mode mode;
    LinearizedTorque lin;
    Eigen::Vector2d (*expected)(const Eigen::Vector2d&);
};

inline std::vector<OracleCase> oracle_cases()
{
    const double s3 = std::sqrt(3.0);
    return {
        {"f1 = 1", Mode::NutationT1, only_f1([](double, double, double) { return 1.0; }),
         [](const Eigen::Vector2d& a) -> Eigen::Vector2d { return {a.y() / 6.0, a.x() / 2.0}; }},
        {"f1 = v1^2", Mode::NutationT1, only_f1([](double, double v1, double) { return v1 * v1; }),
         [](const Eigen::Vector2d& a) -> Eigen::Vector2d {
             const double r = 3.0 * a.x() * a.x() + a.y() * a.y();
             return {a.y() * r / 24.0, a.x() * r / 8.0};
         }},
        {"f1 = sin(sqrt3 t) v1", Mode::NutationT1,
         only_f1([s3](double t, double v1, double) { return std::sin(s3 * t) * v1; }),
         [](const Eigen::Vector2d& a) -> Eigen::Vector2d {
             const double r3 = std::sqrt(3.0);
             return {-r3 * a.x() * a.y() / 12.0, -r3 * (3.0 * a.x() * a.x() - a.y() * a.y()) / 24.0};
         }},
        {"f4 = 1", Mode::PrecessionT2, only_f4([](double, double, double) { return 1.0; }),
         [](const Eigen::Vector2d& a) -> Eigen::Vector2d { return {a.y() / 4.0, a.x()}; }},
        {"f4 = v2^2", Mode::PrecessionT2, only_f4([](double, double, double v2) { return v2 * v2; }),
         [](const Eigen::Vector2d& a) -> Eigen::Vector2d {
             const double r = a.y() * a.y() + 4.0 * a.x() * a.x();
             return {a.y() * r / 16.0, a.x() * r / 4.0};
         }},
    };
}

inline constexpr const char* kCorollary1F1 = "sin(theta)*theta_dot^4 + sin(phi)*sin(theta)*(1 - phi_dot^2)";
inline constexpr const char* kCorollary1F2
    = "cos(theta) - sin(sqrt3*t)*sin(theta)*theta_dot - sin(theta)*theta_dot^2 - cos(phi)*(1 - phi_dot^2)";
inline constexpr const char* kCorollary2F1
    = "sin(phi)*sin(theta)*phi_dot + sin(phi) + sin(2*t)*sin(phi)*(1 - phi_dot)*phi_dot";
inline constexpr const char* kCorollary2F2 = "sin(phi) - sin(2*t)*sin(phi)*phi_dot - sin(phi)*phi_dot^2";

} // namespace dumbbell::testing
