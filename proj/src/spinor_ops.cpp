#include <spinsym/spinor_ops.hpp>

#include <algorithm>
#include <random>

namespace spinsym {

namespace {

ClJet lift_at(Cl const& x, Jet2 const& like) { return lift(x, like); }

ClJet gamma_jet(std::size_t a, Jet2 const& like) { return lift_at(gamma_frame(a), like); }

ClJet volume_jet(Jet2 const& like) { return lift_at(gamma_12(), like); }

Jet2 fit(Jet2 const& x, int n) { return x.order() == n ? x : x.truncated(n); }

ClJet fit(ClJet const& x, int n) { return x.c[0].order() == n ? x : truncated(x, n); }

Arr2<Jet2> frame_vector(FramePointData const& fd, std::optional<VectorField> const& x, int n)
{
    if (!x) {
        Jet2 const z(fd.point, n);
        return {z, z};
    }
    return to_frame(fd, Arr2<Jet2>{x->u(fd.point, n), x->v(fd.point, n)});
}

Arr22<Jet2> frame_tensor(FramePointData const& fd, std::optional<TensorField> const& t, int n)
{
    if (!t) {
        Jet2 const z(fd.point, n);
        return {{{z, z}, {z, z}}};
    }
    return to_frame(fd, evaluate(*t, fd.point, n));
}

double max_value(ClJet const& x) { return max_abs_value(x); }

} // namespace

CoefficientJets CoefficientJets::truncated(int n) const
{
    CoefficientJets out = *this;
    for (auto& row : out.e) {
        for (auto& x : row) {
            x = fit(x, n);
        }
    }
    for (auto& x : out.f) {
        x = fit(x, n);
    }
    out.g = fit(out.g, n);
    return out;
}

OperatorCoefficients build_coefficients(OperatorContext const& ctx, SymmetryData const& d)
{
    if (!d.g) {
        throw Error("symmetry data has no scalar g; solve for it first");
    }
    return {[ctx, d](Point p, int n) {
        FramePointData const fd = frame_at(ctx.surface, p, n + 2, ctx.frame);
        Arr22<Jet2> const k = frame_tensor(fd, d.k, n + 1);
        Arr2<Jet2> const alpha = frame_vector(fd, d.alpha, n + 1);
        Arr2<Jet2> const zeta = frame_vector(fd, d.zeta, n + 1);
        Arr222<Jet2> const dk = frame_derivative_tensor(fd, k);      // [c][a][b]
        Arr22<Jet2> const dalpha = frame_derivative_vector(fd, alpha); // [c][a]
        Arr22<Jet2> const dzeta = frame_derivative_vector(fd, zeta);
        Jet2 const ricci = fit(fd.ricci, n);
        Jet2 const zero(p, n);
        ClJet const vol = volume_jet(zero);

        CoefficientJets c;
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                c.e[a][b] = ClJet::scalar(fit(k[a][b], n))
                            + fit(alpha[a], n) * gamma_jet(b, zero)
                            + fit(alpha[b], n) * gamma_jet(a, zero);
            }
        }
        for (std::size_t a = 0; a < 2; ++a) {
            Jet2 scalar = fit(zeta[a], n);
            Jet2 hat = zero;
            ClJet vec = d.a_const * gamma_jet(a, zero);
            for (std::size_t cc = 0; cc < 2; ++cc) {
                scalar += dk[cc][a][cc];
                vec += dalpha[cc][a] * gamma_jet(cc, zero);
                for (std::size_t b = 0; b < 2; ++b) {
                    hat += kEpsilon[b][cc] * dk[b][a][cc];
                }
            }
            c.f[a] = ClJet::scalar(scalar) + vec + (hat / 3.0) * vol;
        }
        ClJet g = ClJet::scalar(d.g(p, n));
        Jet2 hat = zero;
        for (std::size_t a = 0; a < 2; ++a) {
            g -= (0.25 * ricci * fit(alpha[a], n)) * gamma_jet(a, zero);
            for (std::size_t b = 0; b < 2; ++b) {
                hat += kEpsilon[b][a] * dzeta[b][a];
            }
        }
        c.g = g + (0.25 * hat) * vol;
        return c;
    }};
}

OperatorCoefficients zero_coefficients()
{
    return {[](Point p, int n) {
        ClJet const z = ClJet::zero(Jet2(p, n));
        return CoefficientJets{{{{z, z}, {z, z}}}, {z, z}, z};
    }};
}

JetOperator dirac_operator(FramePointData const& fd, Representation const& rep, double m)
{
    return {[fd, rep, m](SpinorJet const& psi) {
                auto const d = spinor_frame_derivative(fd, rep, psi);
                SpinorJet out = Complex(-m, 0.0) * psi.truncated(d[0].order());
                for (std::size_t a = 0; a < 2; ++a) {
                    out += Complex(0.0, 1.0) * act(rep, gamma_frame(a), d[a]);
                }
                return out;
            },
            1};
}

JetOperator symmetry_operator(FramePointData const& fd, Representation const& rep,
                              CoefficientJets const& c)
{
    return {[fd, rep, c](SpinorJet const& psi) {
                auto const second = second_symmetrized_derivative(fd, rep, psi);
                auto const first = spinor_frame_derivative(fd, rep, psi);
                int const n = second[0][0].order();
                SpinorJet out = act(rep, c.g, psi.truncated(n));
                for (std::size_t a = 0; a < 2; ++a) {
                    out += act(rep, c.f[a], first[a].truncated(n));
                    for (std::size_t b = 0; b < 2; ++b) {
                        out += act(rep, c.e[a][b], second[a][b]);
                    }
                }
                return out;
            },
            2};
}

JetOperator compose(JetOperator a, JetOperator b)
{
    int const loss = a.loss + b.loss;
    return {[a = std::move(a), b = std::move(b)](SpinorJet const& psi) {
                return a.apply(b.apply(psi));
            },
            loss};
}

SpinorJet dirac_apply(OperatorContext const& ctx, double m, SpinorField const& psi, Point p,
                      int order)
{
    FramePointData const fd = frame_at(ctx.surface, p, std::max(order, kMinFrameOrder), ctx.frame);
    return dirac_operator(fd, ctx.rep, m).apply(psi(p, order));
}

SpinorJet symmetry_apply(OperatorContext const& ctx, OperatorCoefficients const& c,
                         SpinorField const& psi, Point p, int order)
{
    FramePointData const fd = frame_at(ctx.surface, p, std::max(order, kMinFrameOrder), ctx.frame);
    return symmetry_operator(fd, ctx.rep, c.at(p, order)).apply(psi(p, order));
}

double commutator_residual(JetOperator const& a, JetOperator const& b, SpinorJet const& psi)
{
    int const n = psi.order() - a.loss - b.loss;
    if (n < 0) {
        throw JetMismatch("spinor jet order too low for the commutator");
    }
    SpinorJet const ab = a.apply(b.apply(psi)).truncated(n);
    SpinorJet const ba = b.apply(a.apply(psi)).truncated(n);
    return residual_norm(ab - ba);
}

double commutator_residual(OperatorContext const& ctx, double m, OperatorCoefficients const& c,
                           SpinorField const& psi, Point p, int order)
{
    if (order < 3) {
        throw JetMismatch("[K, D] needs spinor jets of order >= 3");
    }
    FramePointData const fd = frame_at(ctx.surface, p, order, ctx.frame);
    JetOperator const k = symmetry_operator(fd, ctx.rep, c.at(p, order));
    JetOperator const d = dirac_operator(fd, ctx.rep, m);
    return commutator_residual(k, d, psi(p, order));
}

double trivial_commutator_residual(OperatorContext const& ctx, double m,
                                   OperatorCoefficients const& c1, SpinorField const& psi,
                                   Point p, int order)
{
    if (order < 4) {
        throw JetMismatch("[D o K1, D] needs spinor jets of order >= 4");
    }
    FramePointData const fd = frame_at(ctx.surface, p, order, ctx.frame);
    JetOperator const d = dirac_operator(fd, ctx.rep, m);
    JetOperator const k1 = symmetry_operator(fd, ctx.rep, c1.at(p, order));
    return commutator_residual(compose(d, k1), d, psi(p, order));
}

double DeterminingResiduals::max() const
{
    return *std::max_element(eq.begin(), eq.end());
}

DeterminingResiduals determining_equations_residuals(OperatorContext const& ctx,
                                                     OperatorCoefficients const& c, Point p)
{
    constexpr int n = 2;
    FramePointData const fd = frame_at(ctx.surface, p, n + 2, ctx.frame);
    return determining_equations_residuals(fd, c.at(p, n));
}

DeterminingResiduals determining_equations_residuals(FramePointData const& fd,
                                                     CoefficientJets const& cj)
{
    int const n = cj.order();
    if (n < 1 || fd.order < n + 2) {
        throw JetMismatch("determining equations need coefficient jets of order >= 1 and "
                          "frame data two orders higher");
    }
    int const n1 = n - 1;
    CoefficientJets const c = cj.truncated(n1);
    Jet2 const zero(fd.point, n1);
    ClJet const vol = volume_jet(zero);
    Arr2<ClJet> const gam{gamma_jet(0, zero), gamma_jet(1, zero)};

    auto const de = frame_derivative_tensor(fd, cj.e); // [c][a][b], order n-1
    auto const df = frame_derivative_vector(fd, cj.f); // [c][a]
    auto const dg = frame_derivative_scalar(fd, cj.g); // [a]
    Jet2 const ricci = fit(fd.ricci, n1);
    auto const dricci = frame_derivative_scalar(fd, fit(fd.ricci, n)); // [b]

    DeterminingResiduals r;

    // E^{(ab} g^{c)} - g^{(c} E^{ab)} = 0
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t k = 0; k < 2; ++k) {
                std::array<std::size_t, 3> idx{a, b, k};
                std::sort(idx.begin(), idx.end());
                ClJet sym = ClJet::zero(zero);
                do {
                    sym += commutator(c.e[idx[0]][idx[1]], gam[idx[2]]);
                } while (std::next_permutation(idx.begin(), idx.end()));
                r.eq[0] = std::max(r.eq[0], max_value(sym));
            }
        }
    }

    // F^{(a} g^{b)} - g^{(b} F^{a)} = g^c nabla_c E^{ab}
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            ClJet lhs = 0.5 * (commutator(c.f[a], gam[b]) + commutator(c.f[b], gam[a]));
            for (std::size_t k = 0; k < 2; ++k) {
                lhs -= gam[k] * de[k][a][b];
            }
            r.eq[1] = std::max(r.eq[1], max_value(lhs));
        }
    }

    // G g^a - g^a G = g^c nabla_c F^a - R/4 (E^{ab} g^c + g^c E^{ab}) eps_bc g
    //                 + R/6 (E^{bd} g^c + 2 g^c E^{bd}) eps^a_d eps_bc
    for (std::size_t a = 0; a < 2; ++a) {
        ClJet res = c.g * gam[a] - gam[a] * c.g;
        for (std::size_t k = 0; k < 2; ++k) {
            res -= gam[k] * df[k][a];
            for (std::size_t b = 0; b < 2; ++b) {
                if (kEpsilon[b][k] != 0.0) {
                    res += (0.25 * kEpsilon[b][k] * ricci)
                           * (anticommutator(c.e[a][b], gam[k]) * vol);
                }
                for (std::size_t d = 0; d < 2; ++d) {
                    double const eps = kEpsilon[a][d] * kEpsilon[b][k];
                    if (eps != 0.0) {
                        res -= (eps / 6.0 * ricci)
                               * (c.e[b][d] * gam[k] + 2.0 * (gam[k] * c.e[b][d]));
                    }
                }
            }
        }
        r.eq[2] = std::max(r.eq[2], max_value(res));
    }

    // g^a nabla_a G = R/8 (F^a g^b + g^b F^a) g eps_ab
    //                 + 1/12 (2 E^{ab} g^c + g^c E^{ab}) g eps_ac nabla_b R
    {
        ClJet res = ClJet::zero(zero);
        for (std::size_t a = 0; a < 2; ++a) {
            res += gam[a] * dg[a];
            for (std::size_t b = 0; b < 2; ++b) {
                if (kEpsilon[a][b] != 0.0) {
                    res -= (kEpsilon[a][b] / 8.0 * ricci) * (anticommutator(c.f[a], gam[b]) * vol);
                }
                for (std::size_t k = 0; k < 2; ++k) {
                    if (kEpsilon[a][k] != 0.0) {
                        res -= (kEpsilon[a][k] / 12.0 * dricci[b])
                               * ((2.0 * (c.e[a][b] * gam[k]) + gam[k] * c.e[a][b]) * vol);
                    }
                }
            }
        }
        r.eq[3] = max_value(res);
    }
    return r;
}

SymmetryData compose_first_order(LiouvilleSurface const& s, SymmetryData const& d1,
                                 SymmetryData const& d2)
{
    if (!d1.first_order_shape() || !d2.first_order_shape()) {
        throw Error("compose_first_order expects first-order data (no K, no alpha)");
    }
    VectorField const z1 = d1.zeta.value_or(zero_vector_field());
    VectorField const z2 = d2.zeta.value_or(zero_vector_field());
    Complex const a1 = d1.a_const;
    Complex const a2 = d2.a_const;

    auto product = [](ScalarField x1, ScalarField y2, ScalarField y1, ScalarField x2) {
        return [=](Point p, int n) { return 0.5 * (x1(p, n) * y2(p, n) + y1(p, n) * x2(p, n)); };
    };
    auto inverse_metric = [s, a1, a2](Point p, int n) {
        return (2.0 * a1 * a2) / s.conformal_factor(p, n);
    };

    SymmetryData out;
    ScalarField const uu = product(z1.u, z2.u, z2.u, z1.u);
    ScalarField const vv = product(z1.v, z2.v, z2.v, z1.v);
    out.k = TensorField{
        [uu, inverse_metric](Point p, int n) { return uu(p, n) + inverse_metric(p, n); },
        product(z1.u, z2.v, z2.u, z1.v),
        [vv, inverse_metric](Point p, int n) { return vv(p, n) + inverse_metric(p, n); },
    };
    auto mix = [a1, a2](ScalarField x1, ScalarField x2) {
        return [=](Point p, int n) { return 0.5 * (a1 * x2(p, n) + a2 * x1(p, n)); };
    };
    out.alpha = VectorField{mix(z1.u, z2.u), mix(z1.v, z2.v)};
    return out;
}

std::vector<SpinorField> sample_spinor_fields(std::uint64_t seed, std::size_t count, Point centre)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto complex = [&] { return Complex(unit(rng), unit(rng)); };

    constexpr int kDegree = 3;
    std::vector<SpinorField> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        struct Component
        {
            std::vector<Complex> poly; // total-degree layout
            Complex amplitude;
            double wu, wv;
            Complex phase;
        };
        std::array<Component, 2> comp;
        for (auto& c : comp) {
            c.poly.resize(Jet2::coefficient_count(kDegree));
            for (auto& x : c.poly) {
                x = complex();
            }
            c.amplitude = complex();
            c.wu = 2.0 * unit(rng);
            c.wv = 2.0 * unit(rng);
            c.phase = complex();
        }
        out.emplace_back([comp, centre](Point p, int n) {
            Jet2 const du = Jet2::variable(p, n, Variable::u) - Complex(centre.u);
            Jet2 const dv = Jet2::variable(p, n, Variable::v) - Complex(centre.v);
            SpinorJet s{{Jet2(p, n), Jet2(p, n)}};
            for (std::size_t i = 0; i < 2; ++i) {
                Component const& c = comp[i];
                Jet2 acc(p, n);
                for (int deg = 0; deg <= kDegree; ++deg) {
                    for (int j = 0; j <= deg; ++j) {
                        acc += c.poly[Jet2::index(deg - j, j)] * pow(du, deg - j) * pow(dv, j);
                    }
                }
                acc += c.amplitude * sin(c.wu * du + c.wv * dv + c.phase);
                s.c[i] = acc;
            }
            return s;
        });
    }
    return out;
}

} // namespace spinsym
