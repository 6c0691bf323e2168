#include <spinsym/presets.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace spinsym {

namespace {

class InverseSquareProfile final : public Profile
{
public:
    explicit InverseSquareProfile(ProfilePtr beta)
        : beta_(std::move(beta))
    {}

    Jet2 eval(Jet2 const& x) const override
    {
        Jet2 const b = beta_->eval(x);
        if (b.value() == Complex{}) {
            throw DomainError("beta vanishes; B = beta^-2 is singular");
        }
        return reciprocal(b * b);
    }

    std::string describe() const override { return "(" + beta_->describe() + ")^-2"; }

private:
    ProfilePtr beta_;
};

Variable coordinate_of(Jet2 const& x)
{
    if (x.order() >= 1 && x.coeff(0, 1) != Complex{} && x.coeff(1, 0) == Complex{}) {
        return Variable::v;
    }
    return Variable::u;
}

/// One confocal coordinate as a function of its Liouville rescaling.
class EllipsoidCoordinateProfile final : public Profile
{
public:
    EllipsoidCoordinateProfile(EllipsoidParams q, int which)
        : q_(q)
        , which_(which)
    {
        lo_ = which == 1 ? q.u1_lo : q.u2_lo;
        hi_ = which == 1 ? q.u1_hi : q.u2_hi;
        // Root brackets sit strictly inside the open interval where phi is finite.
        double const a = which == 1 ? q.a : q.b;
        double const b = which == 1 ? q.b : q.c;
        bracket_lo_ = 0.5 * (a + lo_);
        bracket_hi_ = 0.5 * (b + hi_);
        mid_ = 0.5 * (lo_ + hi_);
    }

    double phi(double w) const { return which_ == 1 ? ellipsoid_phi1(q_, w) : ellipsoid_phi2(q_, w); }

    Jet2 phi(Jet2 const& w) const
    {
        Jet2 const w2 = w * w;
        Jet2 const num = w2 * (w2 - Complex(q_.h * q_.h));
        Jet2 const den = (w2 - Complex(q_.c * q_.c)) * (Complex(q_.b * q_.b) - w2)
                         * (Complex(q_.a * q_.a) - w2);
        return which_ == 1 ? -num / den : num / den;
    }

    /// Rescaled coordinate of w: int_mid^w sqrt(phi).
    double rescaled(double w) const
    {
        auto f = [this](double t) { return std::sqrt(phi(t)); };
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, mid_, w, 12, 1e-14);
    }

    double invert(double x) const
    {
        auto f = [this, x](double w) { return rescaled(w) - x; };
        std::uintmax_t iterations = 200;
        auto const r = boost::math::tools::toms748_solve(
            f, bracket_lo_, bracket_hi_, boost::math::tools::eps_tolerance<double>(52), iterations);
        return 0.5 * (r.first + r.second);
    }

    double range_lo() const { return rescaled(lo_); }
    double range_hi() const { return rescaled(hi_); }

    Jet2 eval(Jet2 const& x) const override
    {
        double const x0 = x.value().real();
        double const w0 = invert(x0);
        int const n = x.order();
        Variable const var = coordinate_of(x);
        // Picard iteration for dw/dx = phi(w)^{-1/2}; each pass fixes one more order.
        Jet2 w = Jet2::constant(x.base(), n, w0);
        for (int k = 0; k < n; ++k) {
            w = Complex(w0) + antiderivative(pow(phi(w), -0.5), var).truncated(n);
        }
        Jet2 const w2 = w * w;
        return which_ == 1 ? -w2 : w2;
    }

    std::string describe() const override
    {
        std::ostringstream os;
        os << (which_ == 1 ? "-u1(u)^2" : "u2(v)^2") << " ellipsoid a=" << q_.a << " b=" << q_.b
           << " c=" << q_.c << " h=" << q_.h;
        return os.str();
    }

private:
    EllipsoidParams q_;
    int which_;
    double lo_ = 0.0, hi_ = 0.0, mid_ = 0.0;
    double bracket_lo_ = 0.0, bracket_hi_ = 0.0;
};

double bound(Bindings const& b, std::string const& name, double fallback)
{
    auto it = b.find(name);
    return it == b.end() ? fallback : it->second;
}

} // namespace

ProfilePtr inverse_square_profile(ProfilePtr beta)
{
    return std::make_shared<InverseSquareProfile>(std::move(beta));
}

LiouvilleSurface revolution_surface(std::string name, ProfilePtr beta, Domain domain)
{
    return LiouvilleSurface(std::move(name), constant_profile(0.0),
                            inverse_square_profile(std::move(beta)), domain);
}

double ellipsoid_phi1(EllipsoidParams const& q, double u1)
{
    double const s = u1 * u1;
    return -s * (s - q.h * q.h) / ((s - q.c * q.c) * (q.b * q.b - s) * (q.a * q.a - s));
}

double ellipsoid_phi2(EllipsoidParams const& q, double u2)
{
    double const s = u2 * u2;
    return s * (s - q.h * q.h) / ((s - q.c * q.c) * (q.b * q.b - s) * (q.a * q.a - s));
}

LiouvilleSurface ellipsoid_surface(EllipsoidParams const& q)
{
    if (!(0.0 <= q.a && q.a < q.b && q.b < q.c && q.c < q.h)) {
        throw Error("ellipsoid parameters must satisfy 0 <= a < b < c < h");
    }
    if (!(q.a < q.u1_lo && q.u1_lo < q.u1_hi && q.u1_hi < q.b && q.b < q.u2_lo
          && q.u2_lo < q.u2_hi && q.u2_hi < q.c)) {
        throw Error("ellipsoid coordinate windows must lie inside (a, b) and (b, c)");
    }
    auto pa = std::make_shared<EllipsoidCoordinateProfile>(q, 1);
    auto pb = std::make_shared<EllipsoidCoordinateProfile>(q, 2);
    Domain const d{pa->range_lo(), pa->range_hi(), pb->range_lo(), pb->range_hi()};
    return LiouvilleSurface("ellipsoid", pa, pb, d);
}

std::vector<BetaPreset> beta_catalog(double torus_k)
{
    double const two_pi = 2.0 * std::numbers::pi;
    return {
        {"plane-cartesian", "1", {}, {0.0, 1.0, 0.0, 1.0}, "flat, R = 0"},
        {"plane-polar", "exp(v)", {}, {0.0, two_pi, -1.0, 1.0}, "flat, R = 0"},
        {"sphere", "sinh(v)", {}, {0.0, two_pi, 0.3, 2.0},
         "labelled sphere in the literature; R = -2 with R(unit sphere) = +2, i.e. the hyperbolic plane"},
        {"pseudosphere", "cosh(v)", {}, {0.0, two_pi, -1.0, 1.0},
         "labelled pseudosphere in the literature; R = +2, i.e. the unit sphere in Mercator coordinates"},
        {"torus", "k - cos(v)", {{"k", torus_k}}, {0.0, two_pi, 0.0, two_pi}, "non-constant R"},
    };
}

std::vector<std::string> preset_names()
{
    return {"plane-cartesian", "plane-polar", "plane-parabolic", "sphere",
            "pseudosphere",    "torus",       "ellipsoid"};
}

ProfilePtr preset_beta(std::string const& name, Bindings const& bindings)
{
    for (auto const& p : beta_catalog(bound(bindings, "k", 2.0))) {
        if (p.name == name) {
            return expression_profile(p.beta, p.bindings);
        }
    }
    throw Error("preset '" + name + "' is not a surface of revolution");
}

LiouvilleSurface make_preset(std::string const& name, Bindings const& bindings)
{
    if (name == "plane-parabolic") {
        double const a = bound(bindings, "a", 1.0);
        return LiouvilleSurface(name, expression_profile("a*u^2", {{"a", a}}),
                                expression_profile("a*v^2", {{"a", a}}), {0.5, 1.5, 0.5, 1.5});
    }
    if (name == "ellipsoid") {
        EllipsoidParams q;
        q.a = bound(bindings, "a", q.a);
        q.b = bound(bindings, "b", q.b);
        q.c = bound(bindings, "c", q.c);
        q.h = bound(bindings, "h", q.h);
        // Keep the windows at the same relative positions inside (a, b) and (b, c).
        q.u1_lo = q.a + 0.1 * (q.b - q.a);
        q.u1_hi = q.a + 0.9 * (q.b - q.a);
        q.u2_lo = q.b + 0.1 * (q.c - q.b);
        q.u2_hi = q.b + 0.9 * (q.c - q.b);
        return ellipsoid_surface(q);
    }
    double const k = bound(bindings, "k", 2.0);
    if (name == "torus" && !(k > 1.0)) {
        throw Error("torus needs k > 1");
    }
    for (auto const& p : beta_catalog(k)) {
        if (p.name == name) {
            return revolution_surface(name, expression_profile(p.beta, p.bindings), p.domain);
        }
    }
    throw Error("unknown preset '" + name + "'");
}

} // namespace spinsym
