#pragma once

/**
 * @file killing.hpp
 * @brief Killing equations, the scalar g of a second-order operator, and the
 * special Liouville surfaces on which g exists without a Killing vector.
 */

#include <spinsym/spinor_ops.hpp>

#include <vector>

namespace spinsym {

/// Closedness tolerance on the curl of the integrability one-form.
inline constexpr double kCurlTolerance = 1e-9;

/// max over points of |nabla^(a zeta^b)|, frame components.
double killing_vector_residual(LiouvilleSurface const& s, VectorField const& zeta,
                               std::vector<Point> const& points);
/// max over points of |nabla^(d K^ab)|.
double killing_tensor_residual(LiouvilleSurface const& s, TensorField const& k,
                               std::vector<Point> const& points);

/// omega_mu = -1/4 nabla^nu (R K_{mu nu}), coordinate components, jets of order n.
Arr2<Jet2> integrability_one_form(LiouvilleSurface const& s, TensorField const& k, Point p, int n);

/// d_u omega_v - d_v omega_u, order n-1.
Jet2 curl(Arr2<Jet2> const& omega);

/// (A+B)^2 (A'B''' + A'''B') + 6A'B'(A'^2 + B'^2) - 6A'B'(A+B)(A''+B'').
double integrability_condition_lhs(LiouvilleSurface const& s, Point p);

/// Max |curl omega| over an nu x nv grid of the surface domain.
double max_curl(LiouvilleSurface const& s, TensorField const& k, int nu = 9, int nv = 9);

enum class Staircase {
    u_then_v, ///< (u0,v0) -> (u,v0) -> (u,v)
    v_then_u, ///< (u0,v0) -> (u0,v) -> (u,v)
};

/// g0 + line integral of omega from base to p.
double integrate_one_form(LiouvilleSurface const& s, TensorField const& k, Point base, Point p,
                          Staircase path, double g0 = 0.0);

struct GSolution
{
    ScalarField g;
    double max_curl = 0.0;
};

/**
 * Solves d g = omega. Throws Rejection("integrability curl nonzero", max curl)
 * when omega is not closed on the surface domain. The jets of g at p are the
 * quadrature value plus the antiderivative of the jets of omega.
 */
GSolution solve_g(LiouvilleSurface const& s, TensorField const& k, Point base, double g0 = 0.0,
                  Staircase path = Staircase::u_then_v);

struct SpecialCaseParams
{
    double k = 0.0;
    double a3 = 0.0;
    double a2 = 0.0;
    double a1 = 0.0;
    double a0 = 0.0;
};

struct SpecialResiduals
{
    double a = 0.0; ///< max |A'^2 - (k A^4 + a3 A^3 + a2 A^2 + a1 A + a0)|
    double b = 0.0; ///< max |B'^2 - (-k B^4 + a3 B^3 - a2 B^2 + a1 B - a0)|
};

SpecialResiduals special_system_residual(LiouvilleSurface const& s, SpecialCaseParams const& q,
                                         std::vector<Point> const& points);
/// Closed-form curvature (A - B) k + a3 / 2 of the special family. It is
/// written for the opposite sign convention (unit sphere R = -2), so the value
/// compared against it is -R in this library's convention.
Complex special_case_ricci(LiouvilleSurface const& s, SpecialCaseParams const& q, Point p);

/// max |(-R) - ((A - B) k + a3 / 2)|.
double special_case_ricci_check(LiouvilleSurface const& s, SpecialCaseParams const& q,
                                std::vector<Point> const& points);

struct FirstOrderInputs
{
    VectorField zeta;
    Complex a_const{0.0, 0.0};
    Complex g{0.0, 0.0};
};

struct SecondOrderInputs
{
    std::optional<TensorField> k; ///< Liouville tensor when unset
    std::optional<VectorField> alpha;
    std::optional<VectorField> zeta;
    Complex a_const{0.0, 0.0};
    double g0 = 0.0;
    std::optional<Point> base; ///< domain midpoint when unset
};

/// Tolerance for the Killing residuals checked during assembly.
inline constexpr double kKillingTolerance = 1e-9;

/// Checks the hypotheses of the first-order theorem and returns the data.
SymmetryData assemble_symmetry_data(LiouvilleSurface const& s, FirstOrderInputs const& in,
                                    std::vector<Point> const& probes);
/// Checks K Killing, K not proportional to the metric and closedness, then solves g.
SymmetryData assemble_symmetry_data(LiouvilleSurface const& s, SecondOrderInputs const& in,
                                    std::vector<Point> const& probes);

/// Points drawn uniformly from the surface domain, shrunk by `margin` on each side.
std::vector<Point> sample_points(LiouvilleSurface const& s, std::uint64_t seed, std::size_t count,
                                 double margin = 0.02);

} // namespace spinsym
