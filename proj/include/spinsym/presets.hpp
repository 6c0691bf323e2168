#pragma once

/**
 * @file presets.hpp
 * @brief Named surfaces: the beta catalog of surfaces of revolution, the
 * parabolic plane and the triaxial ellipsoid in Liouville coordinates.
 */

#include <spinsym/surface.hpp>

#include <string>
#include <vector>

namespace spinsym {

/// B(v) = beta(v)^{-2} for a profile beta of v.
ProfilePtr inverse_square_profile(ProfilePtr beta);

/// The surface A = 0, B = beta^{-2}.
LiouvilleSurface revolution_surface(std::string name, ProfilePtr beta, Domain domain);

struct EllipsoidParams
{
    double a = 1.0;
    double b = 2.0;
    double c = 3.0;
    double h = 4.0;
    /// Coordinate windows inside (a, b) and (b, c); the metric degenerates at the ends.
    double u1_lo = 1.1, u1_hi = 1.9;
    double u2_lo = 2.1, u2_hi = 2.9;
};

/**
 * Triaxial ellipsoid u3 = h in confocal coordinates (u1, u2), rescaled by
 * u = int sqrt(phi1) du1 and v = int sqrt(phi2) du2 so that
 * g = (u2^2 - u1^2)(du^2 + dv^2), i.e. A(u) = -u1(u)^2 and B(v) = u2(v)^2.
 * Throws Error unless 0 <= a < b < c < h.
 */
LiouvilleSurface ellipsoid_surface(EllipsoidParams const& q = {});

/// Metric functions phi1(u1), phi2(u2) with g = (u2^2 - u1^2)(phi1 du1^2 + phi2 du2^2).
double ellipsoid_phi1(EllipsoidParams const& q, double u1);
double ellipsoid_phi2(EllipsoidParams const& q, double u2);

/// One entry of the catalog of beta profiles.
struct BetaPreset
{
    std::string name;     ///< preset name, as labelled in the literature
    std::string beta;     ///< expression in v
    Bindings bindings;
    Domain domain;
    std::string note;     ///< curvature remark
};

std::vector<BetaPreset> beta_catalog(double torus_k = 2.0);

/// plane-cartesian, plane-polar, plane-parabolic, sphere, pseudosphere, torus, ellipsoid.
std::vector<std::string> preset_names();

/// Builds a named preset. Recognised bindings: k (torus), a (parabolic),
/// a, b, c, h (ellipsoid).
LiouvilleSurface make_preset(std::string const& name, Bindings const& bindings = {});

/// The beta profile of a surface-of-revolution preset; throws for others.
ProfilePtr preset_beta(std::string const& name, Bindings const& bindings = {});

} // namespace spinsym
