#pragma once

#include <spinsym/jet.hpp>

#include <array>
#include <functional>

namespace spinsym {

/// A scalar function on the surface, evaluated as a jet of the requested order at a point.
using ScalarField = std::function<Jet2(Point, int)>;

/// Closed-form field written in terms of the coordinate jets u and v.
using CoordinateFn = std::function<Jet2(Jet2 const& u, Jet2 const& v)>;

/// Contravariant coordinate components X^u, X^v.
struct VectorField
{
    ScalarField u;
    ScalarField v;
};

/// Symmetric contravariant coordinate components T^uu, T^uv = T^vu, T^vv.
struct TensorField
{
    ScalarField uu;
    ScalarField uv;
    ScalarField vv;
};

using Vec2J = std::array<Jet2, 2>;
using Mat2J = std::array<std::array<Jet2, 2>, 2>;

inline ScalarField field_from(CoordinateFn f)
{
    return [f = std::move(f)](Point p, int n) {
        return f(Jet2::variable(p, n, Variable::u), Jet2::variable(p, n, Variable::v));
    };
}

inline ScalarField constant_field(Complex c)
{
    return [c](Point p, int n) { return Jet2::constant(p, n, c); };
}

inline VectorField zero_vector_field()
{
    return {constant_field(0.0), constant_field(0.0)};
}

inline Vec2J evaluate(VectorField const& x, Point p, int n)
{
    return {x.u(p, n), x.v(p, n)};
}

inline Mat2J evaluate(TensorField const& t, Point p, int n)
{
    Jet2 const off = t.uv(p, n);
    return {{{t.uu(p, n), off}, {off, t.vv(p, n)}}};
}

} // namespace spinsym
