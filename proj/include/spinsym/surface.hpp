#pragma once

/**
 * @file surface.hpp
 * @brief Liouville surfaces g = (A(u) + B(v)) (du^2 + dv^2).
 */

#include <spinsym/expr.hpp>
#include <spinsym/fields.hpp>

#include <memory>
#include <optional>
#include <string>

namespace spinsym {

/// A function of a single coordinate, evaluable on that coordinate's jet.
class Profile
{
public:
    virtual ~Profile() = default;

    /// x is the jet of the coordinate this profile depends on.
    virtual Jet2 eval(Jet2 const& x) const = 0;
    virtual std::string describe() const = 0;
    /// The expression behind the profile, when there is one.
    virtual std::optional<ExprAst> expression() const { return std::nullopt; }
};

using ProfilePtr = std::shared_ptr<Profile const>;

/// Profile given by an expression in one coordinate plus parameter bindings.
ProfilePtr expression_profile(ExprAst e, Bindings bindings);
ProfilePtr expression_profile(std::string_view text, Bindings bindings = {});
ProfilePtr constant_profile(double value);

/// Coordinate rectangle used for sampling and integration.
struct Domain
{
    double u0 = 0.0;
    double u1 = 1.0;
    double v0 = 0.0;
    double v1 = 1.0;

    bool contains(Point p) const { return p.u >= u0 && p.u <= u1 && p.v >= v0 && p.v <= v1; }
};

class LiouvilleSurface
{
public:
    LiouvilleSurface(std::string name, ProfilePtr a, ProfilePtr b, Domain domain);

    std::string const& name() const noexcept { return name_; }
    Domain const& domain() const noexcept { return domain_; }
    ProfilePtr const& a_profile() const noexcept { return a_; }
    ProfilePtr const& b_profile() const noexcept { return b_; }

    Jet2 a(Point p, int order) const;
    Jet2 b(Point p, int order) const;
    /// lambda = A(u) + B(v); throws DomainError unless lambda(p) is real and positive.
    Jet2 conformal_factor(Point p, int order) const;

private:
    std::string name_;
    ProfilePtr a_;
    ProfilePtr b_;
    Domain domain_;
};

} // namespace spinsym
