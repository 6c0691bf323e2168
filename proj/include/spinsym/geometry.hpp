#pragma once

/**
 * @file geometry.hpp
 * @brief Frames, connections and curvature of a Liouville surface at a point.
 *
 * Index conventions used throughout the library:
 *  - frame[a][mu]  = e_a^mu, the frame vectors e_a = e_a^mu d_mu
 *  - coframe[a][mu] = e^a_mu, the dual basis
 *  - christoffel[alpha][beta][mu] = Gamma^alpha_{beta mu} of the induced metric
 *  - spin[a][b][mu] = Gamma^{ab}_mu = e^a_alpha (Gamma^alpha_{beta mu} e_b^beta + d_mu e_b^alpha)
 *  - frame indices are moved with delta_ab, so upper and lower frame indices agree
 *  - epsilon_12 = +1
 *
 * The frame covariant derivative of a frame vector is
 *   nabla_c X^a = e_c(X^a) + Gamma^{ab}_c X^b,   Gamma^{ab}_c := e_c^mu Gamma^{ab}_mu,
 * and of a spinor
 *   nabla_mu psi = d_mu psi + (1/4) eps_ab Gamma^{ab}_mu g psi.
 * Clifford-valued fields additionally pick up [Omega_c, X] with
 * Omega_c = (1/4) eps_ab Gamma^{ab}_c g.
 */

#include <spinsym/fields.hpp>
#include <spinsym/spinor.hpp>
#include <spinsym/surface.hpp>

#include <array>

namespace spinsym {

template <typename T>
using Arr2 = std::array<T, 2>;
template <typename T>
using Arr22 = std::array<std::array<T, 2>, 2>;
template <typename T>
using Arr222 = std::array<Arr22<T>, 2>;

inline constexpr Arr22<double> kEpsilon{{{0.0, 1.0}, {-1.0, 0.0}}};

/// Orthonormal frame of the conformal metric at each point.
struct FrameChoice
{
    enum class Kind {
        diagonal,     ///< e_1 = s d_u, e_2 = s d_v
        antidiagonal, ///< e_1 = -s d_v, e_2 = s d_u (the separation frame)
    };

    Kind kind = Kind::diagonal;
    /// s with s^2 = 1/lambda; lambda^{-1/2} when empty.
    ScalarField scale;

    static FrameChoice diagonal() { return {}; }
    static FrameChoice antidiagonal(ScalarField scale = {})
    {
        return {Kind::antidiagonal, std::move(scale)};
    }
};

struct FramePointData
{
    Point point;
    int order = 0;

    Jet2 lambda;                          // order N
    Arr22<Jet2> metric;                   // g_{mu nu}, order N
    Arr22<Jet2> inverse_metric;           // g^{mu nu}, order N
    Arr22<Jet2> frame;                    // e_a^mu, order N
    Arr22<Jet2> coframe;                  // e^a_mu, order N
    Arr222<Jet2> christoffel;             // order N-1
    Arr222<Jet2> spin;                    // Gamma^{ab}_mu, order N-1
    Arr222<Jet2> spin_frame;              // Gamma^{ab}_c, order N-1
    Jet2 ricci;                           // order N-2
};

/// Minimum jet order frame_at accepts (curvature needs two derivatives).
inline constexpr int kMinFrameOrder = 2;

FramePointData frame_at(LiouvilleSurface const& s, Point p, int order,
                        FrameChoice const& choice = FrameChoice::diagonal());

/// Ricci scalar from the full Riemann tensor
///   R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s} + G^r_{m l} G^l_{n s} - G^r_{n l} G^l_{m s},
/// R = g^{s n} R^r_{s r n}. The round unit sphere has R = +2.
Jet2 ricci_scalar(LiouvilleSurface const& s, Point p, int order);

/// Independent route: R = -lambda^{-1} (d_uu + d_vv) ln lambda.
Jet2 ricci_scalar_conformal(LiouvilleSurface const& s, Point p, int order);

/// Frame components R_{abcd}, order N-2.
std::array<Arr222<Jet2>, 2> riemann_frame(FramePointData const& fd);

// ---------------------------------------------------------------------------
// Frame covariant derivatives. Inputs of order n give outputs of order n-1.
// ---------------------------------------------------------------------------

Arr2<Jet2> frame_derivative_scalar(FramePointData const& fd, Jet2 const& f);
/// result[c][a] = nabla_c X^a
Arr22<Jet2> frame_derivative_vector(FramePointData const& fd, Arr2<Jet2> const& x);
/// result[c][a][b] = nabla_c T^{ab}
Arr222<Jet2> frame_derivative_tensor(FramePointData const& fd, Arr22<Jet2> const& t);

/// Clifford-valued versions including the [Omega_c, .] term.
Arr2<ClJet> frame_derivative_scalar(FramePointData const& fd, ClJet const& f);
Arr22<ClJet> frame_derivative_vector(FramePointData const& fd, Arr2<ClJet> const& x);
Arr222<ClJet> frame_derivative_tensor(FramePointData const& fd, Arr22<ClJet> const& t);

/// Coordinate covariant derivative of a covector: result[rho][mu] = nabla_rho w_mu.
Arr22<Jet2> coordinate_derivative_covector(FramePointData const& fd, Arr2<Jet2> const& w);
/// result[rho][mu][nu] = nabla_rho T_{mu nu} for a covariant 2-tensor.
Arr222<Jet2> coordinate_derivative_covariant_tensor(FramePointData const& fd,
                                                    Arr22<Jet2> const& t);

// Component conversions (orders are those of the inputs).
Arr2<Jet2> to_frame(FramePointData const& fd, Arr2<Jet2> const& contravariant);
Arr22<Jet2> to_frame(FramePointData const& fd, Arr22<Jet2> const& contravariant);
Arr2<Jet2> frame_to_covector(FramePointData const& fd, Arr2<Jet2> const& frame_components);
Arr22<Jet2> lower_indices(FramePointData const& fd, Arr22<Jet2> const& contravariant);

// ---------------------------------------------------------------------------
// Spinors
// ---------------------------------------------------------------------------

/// (nabla_u psi, nabla_v psi)
Arr2<SpinorJet> spinor_covariant_derivative(FramePointData const& fd, Representation const& rep,
                                            SpinorJet const& psi);
/// nabla_a psi = e_a^mu nabla_mu psi
Arr2<SpinorJet> spinor_frame_derivative(FramePointData const& fd, Representation const& rep,
                                        SpinorJet const& psi);
/// nabla_{ab} psi = (nabla_a nabla_b + nabla_b nabla_a) psi / 2, order n-2.
Arr22<SpinorJet> second_symmetrized_derivative(FramePointData const& fd,
                                               Representation const& rep, SpinorJet const& psi);

/// Omega_c = (1/4) eps_ab Gamma^{ab}_c g in the frame.
Arr2<ClJet> spin_connection_element(FramePointData const& fd);

// ---------------------------------------------------------------------------
// The Liouville Killing tensor
// ---------------------------------------------------------------------------

/// K = B/(A+B) d_u d_u - A/(A+B) d_v d_v (contravariant coordinate components).
TensorField killing_tensor_liouville(LiouvilleSurface const& s);

struct KillingTensorComponents
{
    Arr22<Jet2> coordinate;
    Arr22<Jet2> frame; // diag(B, -A) in the diagonal frame
};

KillingTensorComponents killing_tensor_liouville_at(LiouvilleSurface const& s,
                                                    FramePointData const& fd);

} // namespace spinsym
