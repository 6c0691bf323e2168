#pragma once

#include <spinsym/clifford.hpp>

#include <array>
#include <functional>

namespace spinsym {

/// Jets of the two components of a spinor field at one point.
struct SpinorJet
{
    std::array<Jet2, 2> c;

    int order() const { return c[0].order(); }
    Point base() const { return c[0].base(); }

    SpinorJet truncated(int n) const { return {{c[0].truncated(n), c[1].truncated(n)}}; }

    SpinorJet& operator+=(SpinorJet const& o)
    {
        c[0] += o.c[0];
        c[1] += o.c[1];
        return *this;
    }
    SpinorJet& operator-=(SpinorJet const& o)
    {
        c[0] -= o.c[0];
        c[1] -= o.c[1];
        return *this;
    }
    friend SpinorJet operator+(SpinorJet a, SpinorJet const& b) { return a += b; }
    friend SpinorJet operator-(SpinorJet a, SpinorJet const& b) { return a -= b; }
    friend SpinorJet operator*(Jet2 const& f, SpinorJet const& s) { return {{f * s.c[0], f * s.c[1]}}; }
    friend SpinorJet operator*(Complex z, SpinorJet const& s) { return {{z * s.c[0], z * s.c[1]}}; }
};

inline SpinorJet zero_like(SpinorJet const& s)
{
    return {{s.c[0].zero_like(), s.c[1].zero_like()}};
}

/// Max over components of |constant term|.
double residual_norm(SpinorJet const& s);

/// Action of a Clifford element on a spinor through the representation.
/// Jet coefficients of x are truncated to the spinor's order.
SpinorJet act(Representation const& rep, ClJet const& x, SpinorJet const& psi);
SpinorJet act(Representation const& rep, Cl const& x, SpinorJet const& psi);

/// A two-component complex field on the surface.
using SpinorField = std::function<SpinorJet(Point, int)>;

} // namespace spinsym
