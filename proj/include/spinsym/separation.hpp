#pragma once

/**
 * @file separation.hpp
 * @brief Separation of the Dirac equation on A = 0, B = beta(v)^{-2} in the
 * antidiagonal spin frame: psi = (a1(u) b1(v), a2(u) b2(v)).
 *
 * In the standard representation the frame e_1 = -beta d_v, e_2 = beta d_u
 * gives
 *   D = beta [ J d_u + diag(i, -i) d_v ] + (i/2) diag(-beta', beta'),
 *   J = [[0, -1], [1, 0]],
 * and the separated equations
 *   a2' = -mu1 a1,  a1' = mu2 a2,
 *   -i b1' + i (beta'/2beta) b1 + (m/beta) b1 = mu1 b2,
 *    i b2' - i (beta'/2beta) b2 + (m/beta) b2 = mu2 b1.
 * The u-equations give a'' = -mu a, so psi is an eigenspinor of -d_uu with
 * eigenvalue mu = mu1 mu2.
 */

#include <spinsym/presets.hpp>
#include <spinsym/spinor_ops.hpp>

#include <vector>

namespace spinsym {

/// A function of one coordinate, evaluated on that coordinate's jet.
using CoordinateFunction = std::function<Jet2(Jet2 const&)>;

struct FunctionPair
{
    CoordinateFunction first;
    CoordinateFunction second;
};

class SeparationScheme
{
public:
    /// mu2 is set to mu / mu1. Throws Error when mu1 or mu2 vanishes.
    SeparationScheme(ProfilePtr beta, double m, Complex mu, Complex mu1, Domain domain);

    ProfilePtr const& beta() const noexcept { return beta_; }
    double mass() const noexcept { return m_; }
    Complex mu() const noexcept { return mu1_ * mu2_; }
    Complex mu1() const noexcept { return mu1_; }
    Complex mu2() const noexcept { return mu2_; }
    Domain const& domain() const noexcept { return domain_; }

    /// The same scheme with a different factorisation mu = mu1' mu2'.
    SeparationScheme refactored(Complex mu1) const;

    Complex c1{1.0, 0.0}, c2{0.0, 0.0}, d1{1.0, 0.0}, d2{0.0, 0.0};

    /// beta constant on the domain (checked on its constant-term jets at a few points).
    bool cartesian() const;

    LiouvilleSurface surface() const;

private:
    ProfilePtr beta_;
    double m_;
    Complex mu1_, mu2_;
    Domain domain_;
};

/// FrameChoice for the antidiagonal frame with scale beta.
FrameChoice d5_frame(ProfilePtr beta);
/// The frame matrix e_a^mu at p.
Arr22<Jet2> d5_frame_at(ProfilePtr const& beta, Point p, int order);

/// The matrix operator displayed above applied to psi; minus m psi when m != 0.
SpinorJet dirac_matrix_form(ProfilePtr const& beta, double m, SpinorJet const& psi);

/// a1 = c1 sin(sqrt(mu) u) + c2 cos(sqrt(mu) u), a2 = (sqrt(mu)/mu2)(c1 cos - c2 sin).
FunctionPair a_solutions(Complex mu, Complex mu1, Complex mu2, Complex c1, Complex c2);

/// Closed form for constant beta = beta0:
///   b1 = d1 sin(Mv) + d2 cos(Mv), M = sqrt((m/beta0)^2 - mu),
///   b2 = (-i b1' + (m/beta0) b1) / mu1.
FunctionPair b_solutions_cartesian(double beta0, double m, Complex mu, Complex mu1, Complex d1,
                                   Complex d2);

/// The printed closed form b2 = [(d1 + iM d2) sin + (d2 - iM d1) cos] / mu1 (beta = 1).
CoordinateFunction b2_printed(double m, Complex mu, Complex mu1, Complex d1, Complex d2);

/// Numerical b-pair for general beta: integrates the v-equations from v_ref
/// with b1(v_ref) = d1, b2(v_ref) = d2 / mu1 (adaptive RK45, tol 1e-10), then
/// extends the values to jets by Picard iteration of the same equations.
FunctionPair b_solutions_numeric(ProfilePtr beta, double m, Complex mu1, Complex mu2, Complex d1,
                                 Complex d2, double v_ref);

/// b-pair used by assemble_and_verify: closed form when beta is constant.
FunctionPair b_solutions(SeparationScheme const& s);

struct SeparatedResiduals
{
    double a_first = 0.0;  ///< |a2' + mu1 a1|, |a1' - mu2 a2|
    double a_second = 0.0; ///< |a_i'' + mu a_i|
    double b = 0.0;        ///< both v-equations
};

SeparatedResiduals separated_ode_residuals(SeparationScheme const& s, FunctionPair const& a,
                                           FunctionPair const& b, std::vector<Point> const& points);

/// psi = (a1 b1, a2 b2) as a spinor field.
SpinorField assemble(FunctionPair const& a, FunctionPair const& b);

struct SeparationReport
{
    double dirac = 0.0;      ///< max |D psi - m psi| over the grid
    double eigen = 0.0;      ///< max |-d_uu psi - mu psi|
    double matrix_form = 0.0; ///< max |dirac_apply - dirac_matrix_form| (D5 frame, standard rep)
    double mu_only = 0.0;    ///< max |psi - psi~| for the factorisation mu1~ = 2 mu1
    SeparatedResiduals odes;
    bool numeric = false;
    std::size_t points = 0;
};

/// Evaluates the residuals on an nu x nv grid spanning the scheme's domain
/// (shrunk by 2% on each side).
SeparationReport assemble_and_verify(SeparationScheme const& s, int nu = 20, int nv = 20);

} // namespace spinsym
