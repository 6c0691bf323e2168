#pragma once

/**
 * @file clifford.hpp
 * @brief The Clifford algebra C(2) of Euclidean signature, basis {I, g1, g2, g}.
 *
 * g := g1 g2. Products are taken from a structure table that follows only
 * from g_a g_b + g_b g_a = 2 delta_ab I; no matrix representation is
 * involved. Coefficients can be complex numbers or Jet2 fields.
 */

#include <spinsym/jet.hpp>

#include <array>
#include <cstddef>
#include <string>

namespace spinsym {

enum class Basis : std::size_t { I = 0, g1 = 1, g2 = 2, g = 3 };

/// Product of two basis elements: sign * basis[index].
struct BasisProduct
{
    std::size_t index;
    int sign;
};

// clang-format off
inline constexpr std::array<std::array<BasisProduct, 4>, 4> kStructureTable{{
    //          I          g1          g2          g
    /* I  */ {{{0, +1},   {1, +1},    {2, +1},    {3, +1}}},
    /* g1 */ {{{1, +1},   {0, +1},    {3, +1},    {2, +1}}},
    /* g2 */ {{{2, +1},   {3, -1},    {0, +1},    {1, -1}}},
    /* g  */ {{{3, +1},   {2, -1},    {1, +1},    {0, -1}}},
}};
// clang-format on

template <typename S>
struct CliffordElement
{
    std::array<S, 4> c;

    static CliffordElement basis(Basis b, S const& one)
    {
        S const zero = zero_like(one);
        CliffordElement x{{zero, zero, zero, zero}};
        x.c[static_cast<std::size_t>(b)] = one;
        return x;
    }
    static CliffordElement scalar(S const& s)
    {
        S const zero = zero_like(s);
        return {{s, zero, zero, zero}};
    }
    static CliffordElement zero(S const& like)
    {
        S const z = zero_like(like);
        return {{z, z, z, z}};
    }
    /// v1 g1 + v2 g2.
    static CliffordElement vector(S const& v1, S const& v2)
    {
        S const zero = zero_like(v1);
        return {{zero, v1, v2, zero}};
    }

    S const& operator[](Basis b) const { return c[static_cast<std::size_t>(b)]; }
    S& operator[](Basis b) { return c[static_cast<std::size_t>(b)]; }

    CliffordElement& operator+=(CliffordElement const& o)
    {
        for (std::size_t k = 0; k < 4; ++k) c[k] += o.c[k];
        return *this;
    }
    CliffordElement& operator-=(CliffordElement const& o)
    {
        for (std::size_t k = 0; k < 4; ++k) c[k] -= o.c[k];
        return *this;
    }
    template <typename T>
    CliffordElement& operator*=(T const& s)
    {
        for (auto& x : c) x = x * s;
        return *this;
    }

    CliffordElement operator-() const
    {
        CliffordElement r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend CliffordElement operator+(CliffordElement a, CliffordElement const& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, CliffordElement const& b) { return a -= b; }

    friend CliffordElement operator*(CliffordElement const& x, CliffordElement const& y)
    {
        CliffordElement r = zero(x.c[0]);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                auto const [k, sign] = kStructureTable[i][j];
                if (sign > 0) {
                    r.c[k] += x.c[i] * y.c[j];
                } else {
                    r.c[k] -= x.c[i] * y.c[j];
                }
            }
        }
        return r;
    }

    friend CliffordElement operator*(CliffordElement a, S const& s) { return a *= s; }
    friend CliffordElement operator*(S const& s, CliffordElement a) { return a *= s; }
    friend CliffordElement operator*(CliffordElement a, double s) { return a *= Complex(s); }
    friend CliffordElement operator*(double s, CliffordElement a) { return a *= Complex(s); }
};

// Complex * Clifford<Jet2> needs its own overloads to avoid ambiguity with S.
inline CliffordElement<Jet2> operator*(Complex s, CliffordElement<Jet2> a) { return a *= s; }
inline CliffordElement<Jet2> operator*(CliffordElement<Jet2> a, Complex s) { return a *= s; }

using Cl = CliffordElement<Complex>;
using ClJet = CliffordElement<Jet2>;

template <typename S>
CliffordElement<S> commutator(CliffordElement<S> const& x, CliffordElement<S> const& y)
{
    return x * y - y * x;
}

template <typename S>
CliffordElement<S> anticommutator(CliffordElement<S> const& x, CliffordElement<S> const& y)
{
    return x * y + y * x;
}

/// (c_I, c_1, c_2, c_g); the inverse of constructing from coefficients.
template <typename S>
std::array<S, 4> decompose(CliffordElement<S> const& x)
{
    return x.c;
}

inline Cl gamma_1() { return Cl::basis(Basis::g1, 1.0); }
inline Cl gamma_2() { return Cl::basis(Basis::g2, 1.0); }
inline Cl gamma_12() { return Cl::basis(Basis::g, 1.0); }
inline Cl identity() { return Cl::basis(Basis::I, 1.0); }
/// g_a for a = 0, 1 (frame index 1, 2).
inline Cl gamma_frame(std::size_t a) { return a == 0 ? gamma_1() : gamma_2(); }

ClJet truncated(ClJet const& x, int n);
ClJet lift(Cl const& x, Jet2 const& like);
double max_abs_value(ClJet const& x);
double max_abs(Cl const& x);

/// 2x2 complex matrix, row-major.
using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 operator*(Mat2 const& a, Mat2 const& b);

/**
 * A concrete choice of Dirac matrices. Spinors are acted on through it;
 * everything asserted about operators is independent of the choice.
 */
class Representation
{
public:
    Representation(std::string name, Mat2 const& gamma1, Mat2 const& gamma2);

    /// g1 = diag(-1, 1), g2 = [[0, i], [-i, 0]]: the matrices in which the
    /// antidiagonal separation frame gives the textbook matrix Dirac operator.
    static Representation standard();
    /// g1 = sigma_x, g2 = sigma_y.
    static Representation pauli();

    std::string const& name() const noexcept { return name_; }
    Mat2 const& image(Basis b) const { return images_[static_cast<std::size_t>(b)]; }
    Mat2 image(Cl const& x) const;

private:
    std::string name_;
    std::array<Mat2, 4> images_;
};

struct RepresentationCheck
{
    bool anticommutation = false;   // g_a g_b + g_b g_a = 2 delta_ab I as matrices
    bool table_matches = false;     // all 16 basis products agree with kStructureTable
    bool traceless_volume = false;  // tr(rep(g)) = 0
    double max_deviation = 0.0;
    bool ok() const { return anticommutation && table_matches && traceless_volume; }
};

RepresentationCheck concrete_representation_check(Representation const& rep);
RepresentationCheck concrete_representation_check();

} // namespace spinsym
