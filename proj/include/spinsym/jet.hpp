#pragma once

/**
 * @file jet.hpp
 * @brief Truncated bivariate Taylor jets.
 *
 * A Jet2 of order N at base point (u0, v0) stores the monomial coefficients
 * c_ij of sum c_ij (u - u0)^i (v - v0)^j for i + j <= N. Coefficients are
 * plain (not divided by factorials), so the product is the truncated Cauchy
 * product and d/du maps c_{i+1,j} to (i+1) c_{i+1,j}.
 *
 * Every binary operation requires both operands to share base point and
 * order; use truncated() to bring a higher-order jet down explicitly.
 */

#include <spinsym/error.hpp>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace spinsym {

using Complex = std::complex<double>;

struct Point
{
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(Point const&, Point const&) = default;
};

enum class Variable { u, v };

/// Elementary analytic functions that can be composed with a jet.
enum class UnaryFn { sin, cos, sinh, cosh, exp, ln, sqrt, reciprocal };

class Jet2
{
public:
    /// Zero jet of order 0 at the origin.
    Jet2();
    Jet2(Point base, int order);

    static Jet2 constant(Point base, int order, Complex value);
    /// The coordinate function u (or v) expanded at base.
    static Jet2 variable(Point base, int order, Variable which);

    Point base() const noexcept { return base_; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Coefficient of (u-u0)^i (v-v0)^j. Throws if i + j exceeds the order.
    Complex coeff(int i, int j) const;
    Complex& coeff(int i, int j);
    Complex value() const noexcept { return coeffs_[0]; }

    /// Same jet with all terms of total degree > n dropped.
    Jet2 truncated(int n) const;
    Jet2 zero_like() const { return Jet2(base_, order_); }

    /// Sum of |c_ij| over all coefficients.
    double l1_norm() const;

    Jet2& operator+=(Jet2 const& o);
    Jet2& operator-=(Jet2 const& o);
    Jet2& operator*=(Jet2 const& o);
    Jet2& operator*=(Complex s);
    Jet2& operator+=(Complex s);
    Jet2& operator-=(Complex s);

    Jet2 operator-() const;

    friend Jet2 operator+(Jet2 a, Jet2 const& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, Jet2 const& b) { return a -= b; }
    friend Jet2 operator*(Jet2 const& a, Jet2 const& b);
    friend Jet2 operator/(Jet2 const& a, Jet2 const& b);

    friend Jet2 operator*(Jet2 a, Complex s) { return a *= s; }
    friend Jet2 operator*(Complex s, Jet2 a) { return a *= s; }
    friend Jet2 operator*(Jet2 a, double s) { return a *= Complex(s); }
    friend Jet2 operator*(double s, Jet2 a) { return a *= Complex(s); }
    friend Jet2 operator/(Jet2 a, Complex s) { return a *= (1.0 / s); }
    friend Jet2 operator/(Jet2 a, double s) { return a *= Complex(1.0 / s); }
    friend Jet2 operator+(Jet2 a, Complex s) { return a += s; }
    friend Jet2 operator+(Complex s, Jet2 a) { return a += s; }
    friend Jet2 operator-(Jet2 a, Complex s) { return a -= s; }
    friend Jet2 operator-(Complex s, Jet2 const& a) { return (-a) += s; }
    friend Jet2 operator/(Complex s, Jet2 const& a);

    static std::size_t index(int i, int j) noexcept
    {
        int const d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }
    static std::size_t coefficient_count(int order) noexcept
    {
        return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
    }

private:
    void require_compatible(Jet2 const& o) const;

    Point base_;
    int order_ = 0;
    std::vector<Complex> coeffs_;
};

inline Jet2 zero_like(Jet2 const& x) { return x.zero_like(); }
inline Complex zero_like(Complex) { return Complex{}; }

/// f(a) via the Taylor series of f about a's constant term.
Jet2 compose(UnaryFn f, Jet2 const& a);
/// a^p for real p. Integer p >= 0 is evaluated by repeated products.
Jet2 pow(Jet2 const& a, double p);

inline Jet2 sin(Jet2 const& a) { return compose(UnaryFn::sin, a); }
inline Jet2 cos(Jet2 const& a) { return compose(UnaryFn::cos, a); }
inline Jet2 sinh(Jet2 const& a) { return compose(UnaryFn::sinh, a); }
inline Jet2 cosh(Jet2 const& a) { return compose(UnaryFn::cosh, a); }
inline Jet2 exp(Jet2 const& a) { return compose(UnaryFn::exp, a); }
inline Jet2 log(Jet2 const& a) { return compose(UnaryFn::ln, a); }
inline Jet2 sqrt(Jet2 const& a) { return compose(UnaryFn::sqrt, a); }
inline Jet2 reciprocal(Jet2 const& a) { return compose(UnaryFn::reciprocal, a); }

/// Partial derivative; the result has order one less than a.
Jet2 partial(Jet2 const& a, Variable which);

/// Antiderivative in one variable with vanishing constant of integration;
/// the result has order one more than a.
Jet2 antiderivative(Jet2 const& a, Variable which);

/// Evaluate the truncated polynomial at (u, v).
Complex evaluate(Jet2 const& a, Point at);

/// Taylor coefficients t_k = f^(k)(x0)/k! for k = 0..n.
std::vector<Complex> taylor_coefficients(UnaryFn f, Complex x0, int n);

std::ostream& operator<<(std::ostream& os, Jet2 const& a);

} // namespace spinsym
