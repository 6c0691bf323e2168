#include <doctest.h>

#include "oracles.hpp"

#include <spinsym/geometry.hpp>
#include <spinsym/killing.hpp>
#include <spinsym/presets.hpp>

using namespace spinsym;

namespace {

double lambda_of(LiouvilleSurface const& s, double u, double v)
{
    return s.conformal_factor({u, v}, 0).value().real();
}

LiouvilleSurface generic_surface()
{
    return LiouvilleSurface("generic", expression_profile("2 + 0.5*sin(u)"),
                            expression_profile("1 + v^2"), Domain{-1.0, 1.0, -1.0, 1.0});
}

} // namespace

TEST_CASE("flat plane has identity frame and no spin connection")
{
    LiouvilleSurface const s("plane", constant_profile(1.0), constant_profile(0.0), Domain{});
    FramePointData const fd = frame_at(s, {0.3, 0.6}, 3);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t m = 0; m < 2; ++m) {
            CHECK(std::abs(fd.frame[a][m].value() - Complex(a == m ? 1.0 : 0.0)) < 1e-15);
            for (std::size_t b = 0; b < 2; ++b) {
                CHECK(fd.spin[a][b][m].l1_norm() < 1e-15);
            }
        }
    }
    CHECK(fd.ricci.l1_norm() < 1e-15);
}

TEST_CASE("nonpositive conformal factor is a domain error")
{
    LiouvilleSurface const s("bad", constant_profile(-2.0), constant_profile(1.0), Domain{});
    CHECK_THROWS_AS(frame_at(s, {0.5, 0.5}, 2), DomainError);
    CHECK_THROWS_AS(frame_at(make_preset("sphere"), {0.5, 0.5}, 1), JetMismatch);
}

TEST_CASE("spin connection against its defining formula by finite differences")
{
    // lambda = 1/cosh^2 v and the generic surface; diagonal frame e_a^mu = lambda^{-1/2} delta.
    for (auto const& s : {make_preset("pseudosphere"), generic_surface()}) {
        auto lam = [&](double u, double v) { return lambda_of(s, u, v); };
        for (Point p : sample_points(s, 3, 10)) {
            FramePointData const fd = frame_at(s, p, 2);
            double const l = lam(p.u, p.v);
            double const dl[2] = {oracle::du(lam, p.u, p.v) / l, oracle::dv(lam, p.u, p.v) / l};
            // Levi-Civita symbols of lambda * delta
            auto chr = [&](int al, int be, int mu) {
                return 0.5 * ((al == be ? dl[mu] : 0.0) + (al == mu ? dl[be] : 0.0)
                              - (be == mu ? dl[al] : 0.0));
            };
            auto inv_sqrt = [&](double u, double v) { return 1.0 / std::sqrt(lam(u, v)); };
            double const d_inv[2] = {oracle::du(inv_sqrt, p.u, p.v), oracle::dv(inv_sqrt, p.u, p.v)};
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    for (int mu = 0; mu < 2; ++mu) {
                        // e^a_alpha (G^alpha_{beta mu} e^{b beta} + d_mu e^{b alpha})
                        double const expected
                            = std::sqrt(l) * (chr(a, b, mu) / std::sqrt(l) + (a == b ? d_inv[mu] : 0.0));
                        CHECK(fd.spin[a][b][mu].value().real() == doctest::Approx(expected).epsilon(1e-7));
                        CHECK(std::abs(fd.spin[a][b][mu].value() + fd.spin[b][a][mu].value()) < 1e-14);
                    }
                }
            }
        }
    }
    FramePointData const fd = frame_at(make_preset("pseudosphere"), {0.0, 0.4}, 2);
    CHECK(std::abs(fd.spin[0][1][0].value()) > 0.1);
}

TEST_CASE("tetrad postulate")
{
    LiouvilleSurface const s = generic_surface();
    std::array<Variable, 2> const coords{Variable::u, Variable::v};
    for (auto choice : {FrameChoice::diagonal(), FrameChoice::antidiagonal()}) {
        for (Point p : sample_points(s, 8, 10)) {
            FramePointData const fd = frame_at(s, p, 3, choice);
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t al = 0; al < 2; ++al) {
                    for (std::size_t mu = 0; mu < 2; ++mu) {
                        Complex x = partial(fd.frame[b][al], coords[mu]).value();
                        for (std::size_t be = 0; be < 2; ++be) {
                            x += fd.christoffel[al][be][mu].value() * fd.frame[b][be].value();
                        }
                        for (std::size_t a = 0; a < 2; ++a) {
                            x -= fd.spin[a][b][mu].value() * fd.frame[a][al].value();
                        }
                        CHECK(std::abs(x) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("frame reproduces the metric on every preset")
{
    for (auto const& name : preset_names()) {
        LiouvilleSurface const s = make_preset(name);
        for (auto choice : {FrameChoice::diagonal(), FrameChoice::antidiagonal()}) {
            double worst = 0.0;
            for (Point p : sample_points(s, 21, 100)) {
                FramePointData const fd = frame_at(s, p, 2, choice);
                double const lam = lambda_of(s, p.u, p.v);
                for (std::size_t m = 0; m < 2; ++m) {
                    for (std::size_t n = 0; n < 2; ++n) {
                        Complex g = fd.coframe[0][m].value() * fd.coframe[0][n].value()
                                    + fd.coframe[1][m].value() * fd.coframe[1][n].value();
                        worst = std::max(worst, std::abs(g - Complex(m == n ? lam : 0.0)));
                    }
                }
            }
            INFO(name);
            CHECK(worst <= 1e-12);
        }
    }
}

TEST_CASE("curvature: flat, constant and sign anchor")
{
    for (auto const* name : {"plane-cartesian", "plane-polar", "plane-parabolic"}) {
        LiouvilleSurface const s = make_preset(name);
        for (Point p : sample_points(s, 2, 30)) {
            CHECK(std::abs(ricci_scalar(s, p, 0).value()) <= 1e-10);
        }
    }
    LiouvilleSurface const flat("const", expression_profile("1.5"), expression_profile("0.5"), Domain{});
    CHECK(std::abs(ricci_scalar(flat, {0.2, 0.2}, 0).value()) <= 1e-10);

    // sech^2 v (du^2 + dv^2) is the unit sphere in Mercator coordinates: R = +2.
    LiouvilleSurface const mercator = make_preset("pseudosphere");
    LiouvilleSurface const hyper = make_preset("sphere");
    for (Point p : sample_points(mercator, 4, 30)) {
        double const oracle_r = oracle::conformal_curvature(
            [&](double u, double v) { return lambda_of(mercator, u, v); }, p.u, p.v);
        CHECK(oracle_r == doctest::Approx(2.0).epsilon(1e-5));
        CHECK(ricci_scalar(mercator, p, 0).value().real() == doctest::Approx(2.0).epsilon(1e-10));
    }
    for (Point p : sample_points(hyper, 4, 30)) {
        CHECK(ricci_scalar(hyper, p, 0).value().real() == doctest::Approx(-2.0).epsilon(1e-10));
    }

    LiouvilleSurface const torus = make_preset("torus");
    double const r1 = ricci_scalar(torus, {1.0, 0.5}, 0).value().real();
    double const r2 = ricci_scalar(torus, {1.0, 2.5}, 0).value().real();
    CHECK(std::abs(r1 - r2) > 0.1);
}

TEST_CASE("Riemann contraction agrees with the conformal Laplacian route")
{
    std::vector<LiouvilleSurface> surfaces;
    for (auto const& name : preset_names()) {
        surfaces.push_back(make_preset(name));
    }
    surfaces.push_back(generic_surface());
    for (auto const& s : surfaces) {
        for (Point p : sample_points(s, 5, 20)) {
            Jet2 const a = ricci_scalar(s, p, 2);
            Jet2 const b = ricci_scalar_conformal(s, p, 2);
            for (int i = 0; i <= 2; ++i) {
                for (int j = 0; i + j <= 2; ++j) {
                    double const scale = std::max(1.0, std::abs(b.coeff(i, j)));
                    INFO(s.name());
                    CHECK(std::abs(a.coeff(i, j) - b.coeff(i, j)) <= 1e-8 * scale);
                }
            }
            // FD oracle for the value
            double const fd = oracle::conformal_curvature(
                [&](double u, double v) { return lambda_of(s, u, v); }, p.u, p.v, 2e-3);
            CHECK(a.value().real() == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
        }
    }
}

TEST_CASE("two-dimensional Riemann tensor is R/2 eps eps")
{
    LiouvilleSurface const s = generic_surface();
    for (Point p : sample_points(s, 6, 10)) {
        FramePointData const fd = frame_at(s, p, 3);
        auto const riem = riemann_frame(fd);
        Complex const r = fd.ricci.value();
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t c = 0; c < 2; ++c)
                    for (std::size_t d = 0; d < 2; ++d) {
                        Complex const expected = 0.5 * r * kEpsilon[a][b] * kEpsilon[c][d];
                        CHECK(std::abs(riem[a][b][c][d].value() - expected) < 1e-12);
                    }
    }
}

TEST_CASE("frame covariant derivatives")
{
    LiouvilleSurface const sphere = make_preset("sphere");
    FramePointData const fd = frame_at(sphere, {1.0, 1.0}, 3);
    auto const ds = frame_derivative_scalar(fd, Jet2::constant({1.0, 1.0}, 3, 5.0));
    CHECK(ds[0].l1_norm() == 0.0);
    CHECK(ds[1].l1_norm() == 0.0);

    VectorField const du{constant_field(1.0), constant_field(0.0)};
    auto const pts = sample_points(sphere, 1, 50);
    CHECK(killing_vector_residual(sphere, du, pts) < 1e-12);
    VectorField const dv{constant_field(0.0), constant_field(1.0)};
    CHECK(killing_vector_residual(sphere, dv, pts) > 1e-2);
}

TEST_CASE("divergence of the Liouville tensor against finite differences")
{
    LiouvilleSurface const s = generic_surface();
    TensorField const k = killing_tensor_liouville(s);
    auto lam = [&](double u, double v) { return lambda_of(s, u, v); };
    auto comp = [&](int mu, int nu, double u, double v) {
        Point const q{u, v};
        if (mu != nu) return 0.0;
        return (mu == 0 ? k.uu(q, 0) : k.vv(q, 0)).value().real();
    };
    for (Point p : sample_points(s, 12, 10)) {
        double const l = lam(p.u, p.v);
        double const dl[2] = {oracle::du(lam, p.u, p.v) / l, oracle::dv(lam, p.u, p.v) / l};
        auto chr = [&](int al, int be, int mu) {
            return 0.5 * ((al == be ? dl[mu] : 0.0) + (al == mu ? dl[be] : 0.0) - (be == mu ? dl[al] : 0.0));
        };
        double div[2] = {0.0, 0.0};
        for (int nu = 0; nu < 2; ++nu) {
            div[nu] += oracle::du([&](double u, double v) { return comp(nu, 0, u, v); }, p.u, p.v);
            div[nu] += oracle::dv([&](double u, double v) { return comp(nu, 1, u, v); }, p.u, p.v);
            for (int mu = 0; mu < 2; ++mu)
                for (int la = 0; la < 2; ++la) {
                    div[nu] += chr(nu, mu, la) * comp(la, mu, p.u, p.v);
                    div[nu] += chr(mu, mu, la) * comp(nu, la, p.u, p.v);
                }
        }
        FramePointData const fd = frame_at(s, p, 3);
        auto const t = to_frame(fd, evaluate(k, p, 2));
        auto const dt = frame_derivative_tensor(fd, t);
        for (std::size_t a = 0; a < 2; ++a) {
            Complex const lib = dt[0][a][0].value() + dt[1][a][1].value();
            CHECK(lib.real() == doctest::Approx(std::sqrt(l) * div[a]).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("Liouville tensor components and Killing property")
{
    LiouvilleSurface const s = generic_surface();
    for (Point p : sample_points(s, 13, 10)) {
        FramePointData const fd = frame_at(s, p, 2);
        auto const kc = killing_tensor_liouville_at(s, fd);
        CHECK(std::abs(kc.frame[0][0].value() - s.b(p, 0).value()) < 1e-13);
        CHECK(std::abs(kc.frame[1][1].value() + s.a(p, 0).value()) < 1e-13);
        CHECK(std::abs(kc.frame[0][1].value()) < 1e-13);
    }
    for (auto const& name : preset_names()) {
        LiouvilleSurface const t = make_preset(name);
        INFO(name);
        CHECK(killing_tensor_residual(t, killing_tensor_liouville(t), sample_points(t, 17, 100)) <= 1e-9);
    }
    // A = 0: K = d_u (x) d_u in frame components diag(B, 0)
    LiouvilleSurface const sph = make_preset("sphere");
    FramePointData const fd = frame_at(sph, {1.0, 1.0}, 2);
    auto const kc = killing_tensor_liouville_at(sph, fd);
    CHECK(std::abs(kc.frame[1][1].value()) == 0.0);
    CHECK(std::abs(kc.coordinate[0][0].value() - Complex(1.0)) < 1e-14);

    // a symmetric non-Killing field
    TensorField const bad{[](Point q, int n) { return Jet2::variable(q, n, Variable::u); },
                          constant_field(0.0), constant_field(1.0)};
    CHECK(killing_tensor_residual(s, bad, sample_points(s, 1, 10)) > 1e-3);
    // the metric itself
    TensorField const eta{[&](Point q, int n) { return reciprocal(s.conformal_factor(q, n)); },
                          constant_field(0.0),
                          [&](Point q, int n) { return reciprocal(s.conformal_factor(q, n)); }};
    CHECK(killing_tensor_residual(s, eta, sample_points(s, 1, 10)) < 1e-13);
}

TEST_CASE("spinor covariant derivative")
{
    Representation const rep = Representation::standard();
    Point const p{0.4, 0.9};

    LiouvilleSurface const flat("plane", constant_profile(1.0), constant_profile(0.0), Domain{});
    Jet2 const u = Jet2::variable(p, 3, Variable::u);
    Jet2 const v = Jet2::variable(p, 3, Variable::v);
    SpinorJet const psi{{u * u * v + Complex(0.0, 1.0) * v, sin(u + 2.0 * v)}};
    auto const dflat = spinor_covariant_derivative(frame_at(flat, p, 3), rep, psi);
    for (std::size_t c = 0; c < 2; ++c) {
        CHECK(std::abs(dflat[0].c[c].value() - partial(psi.c[c], Variable::u).value()) < 1e-15);
        CHECK(std::abs(dflat[1].c[c].value() - partial(psi.c[c], Variable::v).value()) < 1e-15);
    }

    // constant spinor on a curved surface: (1/4) eps_ab G^{ab}_mu g psi = (1/2) G^{12}_mu g psi
    LiouvilleSurface const s = make_preset("sphere");
    FramePointData const fd = frame_at(s, p, 3);
    SpinorJet const c{{Jet2::constant(p, 3, 1.0), Jet2::constant(p, 3, Complex(0.0, 2.0))}};
    auto const dc = spinor_covariant_derivative(fd, rep, c);
    Mat2 const g = rep.image(Basis::g);
    for (std::size_t mu = 0; mu < 2; ++mu) {
        Complex const w = 0.5 * fd.spin[0][1][mu].value();
        for (std::size_t i = 0; i < 2; ++i) {
            Complex const expected = w * (g[i][0] * Complex(1.0) + g[i][1] * Complex(0.0, 2.0));
            CHECK(std::abs(dc[mu].c[i].value() - expected) < 1e-14);
        }
    }
    CHECK(residual_norm(dc[1]) + residual_norm(dc[0]) > 1e-3);

    // Leibniz: nabla (f psi) = (d f) psi + f nabla psi
    Jet2 const f = exp(u - v);
    auto const lhs = spinor_covariant_derivative(fd, rep, f * psi);
    auto const rhs = spinor_covariant_derivative(fd, rep, psi);
    for (std::size_t mu = 0; mu < 2; ++mu) {
        Jet2 const df = partial(f, mu == 0 ? Variable::u : Variable::v);
        for (std::size_t i = 0; i < 2; ++i) {
            Complex const expected = df.value() * psi.c[i].value() + f.value() * rhs[mu].c[i].value();
            CHECK(std::abs(lhs[mu].c[i].value() - expected) < 1e-13);
        }
    }
}

TEST_CASE("second symmetrized derivative")
{
    Representation const rep = Representation::pauli();
    Point const p{0.2, -0.3};
    LiouvilleSurface const flat("plane", constant_profile(1.0), constant_profile(0.0), Domain{-1, 1, -1, 1});
    auto field = [](double u, double v) { return u * u * u * v + 2.0 * v * v - u * v; };
    Jet2 const u = Jet2::variable(p, 4, Variable::u);
    Jet2 const v = Jet2::variable(p, 4, Variable::v);
    SpinorJet const psi{{u * u * u * v + 2.0 * v * v - u * v, Complex(0.0, 1.0) * u * v}};
    auto const dd = second_symmetrized_derivative(frame_at(flat, p, 4), rep, psi);
    CHECK(dd[0][0].c[0].value().real() == doctest::Approx(6.0 * p.u * p.v));
    CHECK(dd[0][1].c[0].value().real() == doctest::Approx(3.0 * p.u * p.u - 1.0));
    CHECK(dd[1][1].c[1].value() == Complex(0.0));
    CHECK(std::abs(dd[0][1].c[1].value() - Complex(0.0, 1.0)) < 1e-15);
    double const h = 1e-3;
    double const lap = (field(p.u + h, p.v) + field(p.u - h, p.v) + field(p.u, p.v + h)
                        + field(p.u, p.v - h) - 4.0 * field(p.u, p.v))
                       / (h * h);
    CHECK((dd[0][0].c[0].value() + dd[1][1].c[0].value()).real() == doctest::Approx(lap).epsilon(1e-6));

    LiouvilleSurface const s = make_preset("torus");
    auto const dt = second_symmetrized_derivative(frame_at(s, {1.0, 1.0}, 4), rep,
                                                  SpinorJet{{sin(Jet2::variable({1.0, 1.0}, 4, Variable::u)),
                                                             exp(Jet2::variable({1.0, 1.0}, 4, Variable::v))}});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(dt[0][1].c[i].value() - dt[1][0].c[i].value()) == 0.0);
    }
}
