#pragma once

#include <cmath>

namespace dumbbell {

/// First-order forward-mode dual number: value + derivative * e, e^2 = 0.
struct Dual {
    double value = 0.0;
    double deriv = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v, double d = 0.0) : value(v), deriv(d) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
constexpr Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
constexpr Dual operator*(Dual a, Dual b)
{
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}
// Caller checks b.value != 0.
constexpr Dual operator/(Dual a, Dual b)
{
    return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

inline Dual sin(Dual a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(Dual a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }
inline Dual tan(Dual a)
{
    const double c = std::cos(a.value);
    return {std::tan(a.value), a.deriv / (c * c)};
}

/// a^n for integer n via binary powering; n < 0 requires a.value != 0.
inline Dual pow(Dual a, int n)
{
    if (n == 0) return {1.0, 0.0};
    if (n < 0) return Dual{1.0} / pow(a, -n);
    Dual result{1.0, 0.0};
    Dual base = a;
    unsigned e = static_cast<unsigned>(n);
    while (e != 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e != 0) base = base * base;
    }
    return result;
}

} // namespace dumbbell
