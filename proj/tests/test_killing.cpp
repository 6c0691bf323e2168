#include <doctest.h>

#include "oracles.hpp"

#include <spinsym/killing.hpp>
#include <spinsym/presets.hpp>

using namespace spinsym;

namespace {

VectorField d_u() { return {constant_field(1.0), constant_field(0.0)}; }
VectorField d_v() { return {constant_field(0.0), constant_field(1.0)}; }

LiouvilleSurface generic_surface()
{
    return LiouvilleSurface("generic", expression_profile("u^3 + 3"), expression_profile("sin(v)"),
                            Domain{0.2, 1.0, 0.2, 1.0});
}

/// Solution of y'^2 = P(y) through y'' = P'(y)/2, integrated by RK4 from t0.
class OdeProfile final : public Profile
{
public:
    OdeProfile(std::array<double, 5> p, double t0, double y0, double dy0)
        : p_(p), t0_(t0), y0_(y0), dy0_(dy0)
    {}

    double dP(double y) const { return 4 * p_[4] * y * y * y + 3 * p_[3] * y * y + 2 * p_[2] * y + p_[1]; }
    double ddP(double y) const { return 12 * p_[4] * y * y + 6 * p_[3] * y + 2 * p_[2]; }

    Jet2 eval(Jet2 const& x) const override
    {
        double const t = x.value().real();
        int const steps = std::max(1, int(std::abs(t - t0_) / 1e-4));
        auto const [y, dy] = oracle::rk4_second_order([this](double z) { return 0.5 * dP(z); }, y0_, dy0_,
                                                      t0_, t, steps);
        double const d2 = 0.5 * dP(y);
        double const d3 = 0.5 * ddP(y) * dy;
        Jet2 const h = x - Complex(t);
        return Complex(y) + dy * h + (d2 / 2.0) * h * h + (d3 / 6.0) * h * h * h;
    }

    std::string describe() const override { return "ode"; }

private:
    std::array<double, 5> p_; // a0 .. a4
    double t0_, y0_, dy0_;
};

} // namespace

TEST_CASE("Killing vector residuals")
{
    LiouvilleSurface const sphere = make_preset("sphere");
    auto const pts = sample_points(sphere, 1, 30);
    CHECK(killing_vector_residual(sphere, d_u(), pts) <= 1e-12);
    CHECK(killing_vector_residual(sphere, {constant_field(0.0), constant_field(0.0)}, pts) == 0.0);
    LiouvilleSurface const g = generic_surface();
    CHECK(killing_vector_residual(g, d_u(), sample_points(g, 1, 30)) > 1e-3);
}

TEST_CASE("integrability one-form")
{
    LiouvilleSurface const flat = make_preset("plane-polar");
    for (Point p : sample_points(flat, 2, 10)) {
        auto const w = integrability_one_form(flat, killing_tensor_liouville(flat), p, 1);
        CHECK(std::abs(w[0].value()) + std::abs(w[1].value()) < 1e-12);
    }

    LiouvilleSurface const sphere = make_preset("sphere");
    TensorField const k = killing_tensor_liouville(sphere);
    double largest = 0.0;
    for (Point p : sample_points(sphere, 3, 10)) {
        auto const w = integrability_one_form(sphere, k, p, 1);
        largest = std::max(largest, std::abs(w[1].value()));
        CHECK(std::abs(curl(w).value()) < 1e-12);
    }
    CHECK(largest > 1e-2);

    // K = eta on constant curvature: nabla R = 0 and nabla eta = 0
    TensorField const eta{[&](Point q, int n) { return reciprocal(sphere.conformal_factor(q, n)); },
                          constant_field(0.0),
                          [&](Point q, int n) { return reciprocal(sphere.conformal_factor(q, n)); }};
    auto const w = integrability_one_form(sphere, eta, {1.0, 1.0}, 0);
    CHECK(std::abs(w[0].value()) + std::abs(w[1].value()) < 1e-12);

    LiouvilleSurface const ell = make_preset("ellipsoid");
    CHECK(max_curl(ell, killing_tensor_liouville(ell), 5, 5) > 1e-3);
}

TEST_CASE("integrability condition")
{
    // A = u^3 + 3, B = sin v: evaluate the polynomial expression by hand
    LiouvilleSurface const s = generic_surface();
    for (Point p : sample_points(s, 5, 10)) {
        double const A = p.u * p.u * p.u + 3, A1 = 3 * p.u * p.u, A2 = 6 * p.u, A3 = 6;
        double const B = std::sin(p.v), B1 = std::cos(p.v), B2 = -std::sin(p.v), B3 = -std::cos(p.v);
        double const lam = A + B;
        double const expected = lam * lam * (A1 * B3 + A3 * B1) + 6 * A1 * B1 * (A1 * A1 + B1 * B1)
                                - 6 * A1 * B1 * lam * (A2 + B2);
        CHECK(integrability_condition_lhs(s, p) == doctest::Approx(expected).epsilon(1e-12));
    }
    for (auto const* name : {"sphere", "torus", "plane-parabolic"}) {
        LiouvilleSurface const t = make_preset(name);
        for (Point p : sample_points(t, 6, 100)) {
            CHECK(std::abs(integrability_condition_lhs(t, p)) <= 1e-10);
        }
    }
    LiouvilleSurface const ell = make_preset("ellipsoid");
    for (Point p : sample_points(ell, 7, 10)) {
        CHECK(std::abs(integrability_condition_lhs(ell, p)) > 1e-3);
    }
}

TEST_CASE("solve_g")
{
    LiouvilleSurface const flat = make_preset("plane-cartesian");
    auto const gf = solve_g(flat, killing_tensor_liouville(flat), {0.5, 0.5}, 2.5);
    for (Point p : sample_points(flat, 1, 10)) {
        CHECK(gf.g(p, 0).value().real() == doctest::Approx(2.5));
    }

    for (auto const* name : {"sphere", "pseudosphere", "torus", "plane-polar"}) {
        LiouvilleSurface const s = make_preset(name);
        TensorField const k = killing_tensor_liouville(s);
        Domain const& d = s.domain();
        Point const base{0.5 * (d.u0 + d.u1), 0.5 * (d.v0 + d.v1)};
        auto const g1 = solve_g(s, k, base, 0.0, Staircase::u_then_v);
        auto const g2 = solve_g(s, k, base, 0.0, Staircase::v_then_u);
        for (Point p : sample_points(s, 9, 20)) {
            INFO(name);
            CHECK(std::abs(g1.g(p, 0).value() - g2.g(p, 0).value()) <= 1e-8);
            // d g = omega
            Jet2 const gj = g1.g(p, 2);
            auto const w = integrability_one_form(s, k, p, 1);
            CHECK(std::abs(gj.coeff(1, 0) - w[0].value()) < 1e-14);
            CHECK(std::abs(gj.coeff(0, 1) - w[1].value()) < 1e-14);
            CHECK(std::abs(2.0 * gj.coeff(0, 2) - partial(w[1], Variable::v).value()) < 1e-13);
        }
        // quadrature against Simpson along the staircase
        Point const p{d.u0 + 0.8 * (d.u1 - d.u0), d.v0 + 0.2 * (d.v1 - d.v0)};
        auto wu = [&](double u) { return integrability_one_form(s, k, {u, base.v}, 0)[0].value().real(); };
        auto wv = [&](double v) { return integrability_one_form(s, k, {p.u, v}, 0)[1].value().real(); };
        double const ref = oracle::simpson(wu, base.u, p.u) + oracle::simpson(wv, base.v, p.v);
        CHECK(integrate_one_form(s, k, base, p, Staircase::u_then_v) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }

    LiouvilleSurface const ell = make_preset("ellipsoid");
    try {
        solve_g(ell, killing_tensor_liouville(ell), {0.0, 0.0});
        FAIL("expected a rejection");
    } catch (Rejection const& e) {
        CHECK(e.reason() == "integrability curl nonzero");
        CHECK(e.measure() > 1e-3);
    }
}

TEST_CASE("special system residuals and curvature")
{
    // parabolic: A'^2 = 4a A
    for (double a : {0.5, 1.0, 2.0}) {
        LiouvilleSurface const s = make_preset("plane-parabolic", {{"a", a}});
        SpecialCaseParams const q{0.0, 0.0, 0.0, 4.0 * a, 0.0};
        auto const pts = sample_points(s, 1, 50);
        auto const r = special_system_residual(s, q, pts);
        CHECK(r.a <= 1e-10);
        CHECK(r.b <= 1e-10);
        CHECK(special_case_ricci_check(s, q, pts) <= 1e-8);
    }

    // constant A
    LiouvilleSurface const sph = make_preset("sphere");
    auto const pts = sample_points(sph, 2, 20);
    auto const zero = special_system_residual(sph, SpecialCaseParams{}, pts);
    CHECK(zero.a == 0.0);
    CHECK(zero.b > 1e-2);

    // A = c/u^2, B = c/v^2: A'^2 = (4/c) A^3, constant curvature a3/2 in the closed form
    double const c = 2.0;
    LiouvilleSurface const cc("const", expression_profile("2/u^2"), expression_profile("2/v^2"),
                              Domain{0.5, 1.5, 0.5, 1.5});
    SpecialCaseParams const q{0.0, 4.0 / c, 0.0, 0.0, 0.0};
    auto const cpts = sample_points(cc, 3, 50);
    auto const rc = special_system_residual(cc, q, cpts);
    CHECK(rc.a <= 1e-10);
    CHECK(rc.b <= 1e-10);
    CHECK(special_case_ricci_check(cc, q, cpts) <= 1e-8);
    for (Point p : cpts) {
        CHECK(ricci_scalar(cc, p, 0).value().real() == doctest::Approx(-q.a3 / 2.0));
    }
}

TEST_CASE("special case with k != 0 from an integrated solution")
{
    // k = 0.1, a3 = 1, a2 = 0, a1 = 1, a0 = 0; A(0) = B(0) = 1 with positive slopes
    double const k = 0.1, a3 = 1.0, a2 = 0.0, a1 = 1.0, a0 = 0.0;
    std::array<double, 5> const pa{a0, a1, a2, a3, k};
    std::array<double, 5> const pb{-a0, a1, -a2, a3, -k};
    auto P = [](std::array<double, 5> const& c, double y) {
        return (((c[4] * y + c[3]) * y + c[2]) * y + c[1]) * y + c[0];
    };
    auto A = std::make_shared<OdeProfile>(pa, 0.0, 1.0, std::sqrt(P(pa, 1.0)));
    auto B = std::make_shared<OdeProfile>(pb, 0.0, 1.0, std::sqrt(P(pb, 1.0)));
    LiouvilleSurface const s("ode", A, B, Domain{-0.2, 0.2, -0.2, 0.2});
    SpecialCaseParams const q{k, a3, a2, a1, a0};
    auto const pts = sample_points(s, 4, 30);
    auto const r = special_system_residual(s, q, pts);
    CHECK(r.a <= 1e-9);
    CHECK(r.b <= 1e-9);
    CHECK(special_case_ricci_check(s, q, pts) <= 1e-6);
}

TEST_CASE("assembly of symmetry data")
{
    LiouvilleSurface const sph = make_preset("sphere");
    auto const pts = sample_points(sph, 5, 20);
    OperatorContext const ctx{sph};

    SymmetryData const d2 = assemble_symmetry_data(sph, SecondOrderInputs{}, pts);
    CHECK(d2.k);
    auto const c2 = build_coefficients(ctx, d2);
    for (Point p : pts) {
        CHECK(determining_equations_residuals(ctx, c2, p).max() <= 1e-9);
    }

    SymmetryData const d1 = assemble_symmetry_data(sph, FirstOrderInputs{d_u(), 1.0, 1.0}, pts);
    CHECK(d1.first_order_shape());
    CHECK_THROWS_AS(assemble_symmetry_data(sph, FirstOrderInputs{d_v(), 1.0, 1.0}, pts), Rejection);

    SecondOrderInputs trivial;
    trivial.k = TensorField{[&](Point q, int n) { return reciprocal(sph.conformal_factor(q, n)); },
                            constant_field(0.0),
                            [&](Point q, int n) { return reciprocal(sph.conformal_factor(q, n)); }};
    try {
        assemble_symmetry_data(sph, trivial, pts);
        FAIL("expected a rejection");
    } catch (Rejection const& e) {
        CHECK(e.reason() == "Killing tensor proportional to the metric");
    }

    SecondOrderInputs not_killing;
    not_killing.k = TensorField{constant_field(1.0), constant_field(0.0), constant_field(1.0)};
    CHECK_THROWS_AS(assemble_symmetry_data(sph, not_killing, pts), Rejection);

    LiouvilleSurface const ell = make_preset("ellipsoid");
    auto const epts = sample_points(ell, 5, 20);
    CHECK(killing_tensor_residual(ell, killing_tensor_liouville(ell), epts) <= 1e-9);
    try {
        assemble_symmetry_data(ell, SecondOrderInputs{}, epts);
        FAIL("expected a rejection");
    } catch (Rejection const& e) {
        CHECK(e.reason() == "integrability curl nonzero");
    }
}

TEST_CASE("ellipsoid coordinates")
{
    EllipsoidParams const q;
    LiouvilleSurface const ell = make_preset("ellipsoid");
    // A = -u1^2 with du/du1 = sqrt(phi1): dA/du = -2 u1 / sqrt(phi1)
    for (Point p : sample_points(ell, 6, 10)) {
        Jet2 const a = ell.a(p, 2);
        double const u1 = std::sqrt(-a.value().real());
        CHECK(u1 > q.u1_lo - 1e-12);
        CHECK(u1 < q.u1_hi + 1e-12);
        CHECK(a.coeff(1, 0).real() == doctest::Approx(-2.0 * u1 / std::sqrt(ellipsoid_phi1(q, u1))).epsilon(1e-9));
        Jet2 const b = ell.b(p, 2);
        double const u2 = std::sqrt(b.value().real());
        CHECK(b.coeff(0, 1).real() == doctest::Approx(2.0 * u2 / std::sqrt(ellipsoid_phi2(q, u2))).epsilon(1e-9));
        // second derivative by finite differences
        auto av = [&](double u) { return ell.a({u, p.v}, 0).value().real(); };
        CHECK(2.0 * a.coeff(2, 0).real() == doctest::Approx(oracle::d2(av, p.u, 1e-3)).epsilon(1e-5));
    }
    // u = int sqrt(phi1) from the window midpoint
    double const mid = 0.5 * (q.u1_lo + q.u1_hi);
    double const x = oracle::simpson([&](double t) { return std::sqrt(ellipsoid_phi1(q, t)); }, mid, 1.7);
    CHECK(std::sqrt(-ell.a({x, 0.0}, 0).value().real()) == doctest::Approx(1.7).epsilon(1e-10));

    CHECK_THROWS_AS(make_preset("ellipsoid", {{"h", 1.5}}), Error);
    CHECK_THROWS_AS(make_preset("torus", {{"k", 0.5}}), Error);
    CHECK_THROWS_AS(make_preset("cylinder"), Error);
}
