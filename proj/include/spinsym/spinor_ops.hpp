#pragma once

/**
 * @file spinor_ops.hpp
 * @brief The Dirac operator and second-order operators E^{ab} nabla_ab + F^a nabla_a + G.
 *
 * Operators act on spinor jets at a single point. A jet of order n loses one
 * order under D and two under a second-order operator, so [K, D] needs
 * spinor jets of order at least 3.
 */

#include <spinsym/geometry.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace spinsym {

/// Surface plus the two gauge choices every operator depends on.
struct OperatorContext
{
    LiouvilleSurface surface;
    FrameChoice frame = FrameChoice::diagonal();
    Representation rep = Representation::standard();
};

/// Geometric data of a symmetry operator. Tensor fields are contravariant
/// coordinate components; unset fields are zero.
struct SymmetryData
{
    std::optional<TensorField> k;
    std::optional<VectorField> alpha;
    std::optional<VectorField> zeta;
    Complex a_const{0.0, 0.0};
    ScalarField g; ///< must be set before coefficients are built

    bool first_order_shape() const { return !k && !alpha; }
};

/// Coefficient jets at one point, frame indices.
struct CoefficientJets
{
    Arr22<ClJet> e;
    Arr2<ClJet> f;
    ClJet g;

    int order() const { return g.c[0].order(); }
    CoefficientJets truncated(int n) const;
};

/// Coefficients as fields: at(p, n) yields jets of order n.
struct OperatorCoefficients
{
    std::function<CoefficientJets(Point, int)> at;
};

OperatorCoefficients build_coefficients(OperatorContext const& ctx, SymmetryData const& d);
OperatorCoefficients zero_coefficients();

/// A linear operator at a fixed point, acting on spinor jets based there.
struct JetOperator
{
    std::function<SpinorJet(SpinorJet const&)> apply;
    int loss = 0; ///< jet orders consumed
};

/// D psi = i g^a nabla_a psi - m psi. fd must have order >= that of the input.
JetOperator dirac_operator(FramePointData const& fd, Representation const& rep, double m);
JetOperator symmetry_operator(FramePointData const& fd, Representation const& rep,
                              CoefficientJets const& c);
/// (a o b) psi = a(b(psi))
JetOperator compose(JetOperator a, JetOperator b);

SpinorJet dirac_apply(OperatorContext const& ctx, double m, SpinorField const& psi, Point p,
                      int order);
SpinorJet symmetry_apply(OperatorContext const& ctx, OperatorCoefficients const& c,
                         SpinorField const& psi, Point p, int order);

/// ||(a b - b a) psi|| at p.
double commutator_residual(JetOperator const& a, JetOperator const& b, SpinorJet const& psi);
/// ||[K, D] psi|| at p for the second-order operator with coefficients c.
double commutator_residual(OperatorContext const& ctx, double m, OperatorCoefficients const& c,
                           SpinorField const& psi, Point p, int order);
/// ||[D o K1, D] psi|| for the first-order operator with coefficients c1.
double trivial_commutator_residual(OperatorContext const& ctx, double m,
                                   OperatorCoefficients const& c1, SpinorField const& psi,
                                   Point p, int order);

/// Max |constant term| of each of the four determining equations.
struct DeterminingResiduals
{
    std::array<double, 4> eq{};
    double max() const;
};

DeterminingResiduals determining_equations_residuals(OperatorContext const& ctx,
                                                     OperatorCoefficients const& c, Point p);
DeterminingResiduals determining_equations_residuals(FramePointData const& fd,
                                                     CoefficientJets const& c);

/// Product of two first-order operators: K^{ab} = z1^(a z2^b) + 2 A1 A2 eta^{ab},
/// alpha^a = (A1 z2^a + A2 z1^a) / 2. The scalar g is left unset.
SymmetryData compose_first_order(LiouvilleSurface const& s, SymmetryData const& d1,
                                 SymmetryData const& d2);

/// Seeded polynomial-plus-trigonometric test fields.
std::vector<SpinorField> sample_spinor_fields(std::uint64_t seed, std::size_t count, Point centre);

} // namespace spinsym
