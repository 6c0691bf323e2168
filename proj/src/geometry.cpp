#include <spinsym/geometry.hpp>

#include <cmath>
#include <sstream>

namespace spinsym {

namespace {

constexpr std::array<Variable, 2> kCoords{Variable::u, Variable::v};



int order_of(Jet2 const& x) { return x.order(); }
int order_of(ClJet const& x) { return x.c[0].order(); }

Jet2 fit(Jet2 const& x, int n) { return x.order() == n ? x : x.truncated(n); }
ClJet fit(ClJet const& x, int n) { return order_of(x) == n ? x : truncated(x, n); }

ClJet partial(ClJet const& x, Variable w)
{
    return {{partial(x.c[0], w), partial(x.c[1], w), partial(x.c[2], w), partial(x.c[3], w)}};
}

void require_derivable(int n)
{
    if (n < 1) {
        throw JetMismatch("field jet has order 0; no derivative available");
    }
}

/// e_c(X) for jet- or Clifford-valued X.
template <typename V>
V directional(FramePointData const& fd, std::size_t c, V const& x)
{
    int const n = order_of(x) - 1;
    V r = fit(fd.frame[c][0], n) * partial(x, Variable::u);
    r += fit(fd.frame[c][1], n) * partial(x, Variable::v);
    return r;
}

Jet2 spin_term(FramePointData const&, std::size_t, Jet2 const& x)
{
    return zero_like(x);
}

ClJet spin_term(FramePointData const& fd, std::size_t c, ClJet const& x)
{
    ClJet const omega = fit(spin_connection_element(fd)[c], order_of(x));
    return commutator(omega, x);
}

template <typename V>
Arr2<V> grad_impl(FramePointData const& fd, V const& f)
{
    require_derivable(order_of(f));
    int const n = order_of(f) - 1;
    Arr2<V> out{f, f};
    for (std::size_t c = 0; c < 2; ++c) {
        out[c] = directional(fd, c, f) + spin_term(fd, c, fit(f, n));
    }
    return out;
}

template <typename V>
Arr22<V> vector_impl(FramePointData const& fd, Arr2<V> const& x)
{
    require_derivable(order_of(x[0]));
    int const n = order_of(x[0]) - 1;
    Arr22<V> out{{{x[0], x[0]}, {x[0], x[0]}}};
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t a = 0; a < 2; ++a) {
            V r = directional(fd, c, x[a]) + spin_term(fd, c, fit(x[a], n));
            for (std::size_t b = 0; b < 2; ++b) {
                r += fit(fd.spin_frame[a][b][c], n) * fit(x[b], n);
            }
            out[c][a] = r;
        }
    }
    return out;
}

template <typename V>
Arr222<V> tensor_impl(FramePointData const& fd, Arr22<V> const& t)
{
    require_derivable(order_of(t[0][0]));
    int const n = order_of(t[0][0]) - 1;
    V const seed = t[0][0];
    Arr222<V> out{{{{{seed, seed}, {seed, seed}}}, {{{seed, seed}, {seed, seed}}}}};
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                V r = directional(fd, c, t[a][b]) + spin_term(fd, c, fit(t[a][b], n));
                for (std::size_t d = 0; d < 2; ++d) {
                    r += fit(fd.spin_frame[a][d][c], n) * fit(t[d][b], n);
                    r += fit(fd.spin_frame[b][d][c], n) * fit(t[a][d], n);
                }
                out[c][a][b] = r;
            }
        }
    }
    return out;
}

} // namespace

Arr2<ClJet> spin_connection_element(FramePointData const& fd)
{
    Arr2<ClJet> out{ClJet::zero(fd.spin_frame[0][0][0]), ClJet::zero(fd.spin_frame[0][0][0])};
    for (std::size_t c = 0; c < 2; ++c) {
        Jet2 w = fd.spin_frame[0][0][c].zero_like();
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                w += kEpsilon[a][b] * fd.spin_frame[a][b][c];
            }
        }
        out[c][Basis::g] = 0.25 * w;
    }
    return out;
}

FramePointData frame_at(LiouvilleSurface const& s, Point p, int order, FrameChoice const& choice)
{
    if (order < kMinFrameOrder) {
        throw JetMismatch("frame data needs jet order >= " + std::to_string(kMinFrameOrder));
    }
    FramePointData fd;
    fd.point = p;
    fd.order = order;
    int const n = order;
    int const n1 = order - 1;

    fd.lambda = s.conformal_factor(p, n);
    Jet2 const zero = fd.lambda.zero_like();
    Jet2 const inv_lambda = reciprocal(fd.lambda);
    fd.metric = {{{fd.lambda, zero}, {zero, fd.lambda}}};
    fd.inverse_metric = {{{inv_lambda, zero}, {zero, inv_lambda}}};

    Jet2 scale = choice.scale ? choice.scale(p, n) : pow(fd.lambda, -0.5);
    if (scale.value() == Complex{}) {
        std::ostringstream msg;
        msg << "frame scale vanishes at (" << p.u << ", " << p.v << ")";
        throw DomainError(msg.str());
    }
    Complex const normalisation = scale.value() * scale.value() * fd.lambda.value();
    if (std::abs(normalisation - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "frame scale s does not satisfy s^2 (A+B) = 1 at (" << p.u << ", " << p.v
            << "): got " << normalisation;
        throw DomainError(msg.str());
    }

    if (choice.kind == FrameChoice::Kind::diagonal) {
        fd.frame = {{{scale, zero}, {zero, scale}}};
    } else {
        fd.frame = {{{zero, -scale}, {scale, zero}}};
    }
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t mu = 0; mu < 2; ++mu) {
            fd.coframe[a][mu] = fd.metric[mu][0] * fd.frame[a][0] + fd.metric[mu][1] * fd.frame[a][1];
        }
    }

    // Levi-Civita symbols.
    Arr222<Jet2> dg; // dg[gamma][mu][nu] = d_gamma g_{mu nu}
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t mu = 0; mu < 2; ++mu) {
            for (std::size_t nu = 0; nu < 2; ++nu) {
                dg[c][mu][nu] = partial(fd.metric[mu][nu], kCoords[c]);
            }
        }
    }
    for (std::size_t al = 0; al < 2; ++al) {
        for (std::size_t be = 0; be < 2; ++be) {
            for (std::size_t mu = 0; mu < 2; ++mu) {
                Jet2 sum = zero.truncated(n1);
                for (std::size_t ga = 0; ga < 2; ++ga) {
                    sum += fit(fd.inverse_metric[al][ga], n1)
                           * (dg[be][ga][mu] + dg[mu][ga][be] - dg[ga][be][mu]);
                }
                fd.christoffel[al][be][mu] = 0.5 * sum;
            }
        }
    }

    // Spin connection.
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t mu = 0; mu < 2; ++mu) {
                Jet2 sum = zero.truncated(n1);
                for (std::size_t al = 0; al < 2; ++al) {
                    Jet2 inner = partial(fd.frame[b][al], kCoords[mu]);
                    for (std::size_t be = 0; be < 2; ++be) {
                        inner += fd.christoffel[al][be][mu] * fit(fd.frame[b][be], n1);
                    }
                    sum += fit(fd.coframe[a][al], n1) * inner;
                }
                fd.spin[a][b][mu] = sum;
            }
        }
    }
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                fd.spin_frame[a][b][c] = fit(fd.frame[c][0], n1) * fd.spin[a][b][0]
                                         + fit(fd.frame[c][1], n1) * fd.spin[a][b][1];
            }
        }
    }

    // Curvature from R^r_{s m n}, contracted R_{s n} = R^r_{s r n}, R = g^{s n} R_{s n}.
    int const n2 = order - 2;
    auto const& G = fd.christoffel;
    Jet2 ricci = zero.truncated(n2);
    for (std::size_t sg = 0; sg < 2; ++sg) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
            Jet2 rsn = zero.truncated(n2);
            for (std::size_t r = 0; r < 2; ++r) {
                std::size_t const mu = r;
                Jet2 term = partial(G[r][nu][sg], kCoords[mu]) - partial(G[r][mu][sg], kCoords[nu]);
                for (std::size_t l = 0; l < 2; ++l) {
                    term += fit(G[r][mu][l], n2) * fit(G[l][nu][sg], n2);
                    term -= fit(G[r][nu][l], n2) * fit(G[l][mu][sg], n2);
                }
                rsn += term;
            }
            ricci += fit(fd.inverse_metric[sg][nu], n2) * rsn;
        }
    }
    fd.ricci = ricci;
    return fd;
}

std::array<Arr222<Jet2>, 2> riemann_frame(FramePointData const& fd)
{
    int const n2 = fd.order - 2;
    auto const& G = fd.christoffel;
    Jet2 const zero = fd.lambda.zero_like().truncated(n2);

    // Fully covariant coordinate components R_{r s m n}.
    Arr22<Arr22<Jet2>> coord;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t sg = 0; sg < 2; ++sg) {
            for (std::size_t mu = 0; mu < 2; ++mu) {
                for (std::size_t nu = 0; nu < 2; ++nu) {
                    Jet2 low = zero;
                    for (std::size_t k = 0; k < 2; ++k) {
                        Jet2 up = partial(G[k][nu][sg], kCoords[mu]) - partial(G[k][mu][sg], kCoords[nu]);
                        for (std::size_t l = 0; l < 2; ++l) {
                            up += fit(G[k][mu][l], n2) * fit(G[l][nu][sg], n2);
                            up -= fit(G[k][nu][l], n2) * fit(G[l][mu][sg], n2);
                        }
                        low += fit(fd.metric[r][k], n2) * up;
                    }
                    coord[r][sg][mu][nu] = low;
                }
            }
        }
    }
    std::array<Arr222<Jet2>, 2> out;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                for (std::size_t d = 0; d < 2; ++d) {
                    Jet2 sum = zero;
                    for (std::size_t r = 0; r < 2; ++r)
                        for (std::size_t sg = 0; sg < 2; ++sg)
                            for (std::size_t mu = 0; mu < 2; ++mu)
                                for (std::size_t nu = 0; nu < 2; ++nu)
                                    sum += fit(fd.frame[a][r], n2) * fit(fd.frame[b][sg], n2)
                                           * fit(fd.frame[c][mu], n2) * fit(fd.frame[d][nu], n2)
                                           * coord[r][sg][mu][nu];
                    out[a][b][c][d] = sum;
                }
            }
        }
    }
    return out;
}

Jet2 ricci_scalar(LiouvilleSurface const& s, Point p, int order)
{
    return frame_at(s, p, order + 2).ricci;
}

Jet2 ricci_scalar_conformal(LiouvilleSurface const& s, Point p, int order)
{
    Jet2 const lambda = s.conformal_factor(p, order + 2);
    Jet2 const ln = log(lambda);
    Jet2 const lap = partial(partial(ln, Variable::u), Variable::u)
                     + partial(partial(ln, Variable::v), Variable::v);
    return -lap / lambda.truncated(order);
}

Arr2<Jet2> frame_derivative_scalar(FramePointData const& fd, Jet2 const& f)
{
    return grad_impl(fd, f);
}
Arr22<Jet2> frame_derivative_vector(FramePointData const& fd, Arr2<Jet2> const& x)
{
    return vector_impl(fd, x);
}
Arr222<Jet2> frame_derivative_tensor(FramePointData const& fd, Arr22<Jet2> const& t)
{
    return tensor_impl(fd, t);
}
Arr2<ClJet> frame_derivative_scalar(FramePointData const& fd, ClJet const& f)
{
    return grad_impl(fd, f);
}
Arr22<ClJet> frame_derivative_vector(FramePointData const& fd, Arr2<ClJet> const& x)
{
    return vector_impl(fd, x);
}
Arr222<ClJet> frame_derivative_tensor(FramePointData const& fd, Arr22<ClJet> const& t)
{
    return tensor_impl(fd, t);
}

Arr22<Jet2> coordinate_derivative_covector(FramePointData const& fd, Arr2<Jet2> const& w)
{
    require_derivable(w[0].order());
    int const n = w[0].order() - 1;
    Arr22<Jet2> out;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t mu = 0; mu < 2; ++mu) {
            Jet2 x = partial(w[mu], kCoords[r]);
            for (std::size_t sg = 0; sg < 2; ++sg) {
                x -= fit(fd.christoffel[sg][r][mu], n) * fit(w[sg], n);
            }
            out[r][mu] = x;
        }
    }
    return out;
}

Arr222<Jet2> coordinate_derivative_covariant_tensor(FramePointData const& fd, Arr22<Jet2> const& t)
{
    require_derivable(t[0][0].order());
    int const n = t[0][0].order() - 1;
    Arr222<Jet2> out;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t mu = 0; mu < 2; ++mu) {
            for (std::size_t nu = 0; nu < 2; ++nu) {
                Jet2 x = partial(t[mu][nu], kCoords[r]);
                for (std::size_t sg = 0; sg < 2; ++sg) {
                    x -= fit(fd.christoffel[sg][r][mu], n) * fit(t[sg][nu], n);
                    x -= fit(fd.christoffel[sg][r][nu], n) * fit(t[mu][sg], n);
                }
                out[r][mu][nu] = x;
            }
        }
    }
    return out;
}

Arr2<Jet2> to_frame(FramePointData const& fd, Arr2<Jet2> const& x)
{
    int const n = x[0].order();
    Arr2<Jet2> out;
    for (std::size_t a = 0; a < 2; ++a) {
        out[a] = fit(fd.coframe[a][0], n) * x[0] + fit(fd.coframe[a][1], n) * x[1];
    }
    return out;
}

Arr22<Jet2> to_frame(FramePointData const& fd, Arr22<Jet2> const& t)
{
    int const n = t[0][0].order();
    Arr22<Jet2> out;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            Jet2 sum = t[0][0].zero_like();
            for (std::size_t mu = 0; mu < 2; ++mu) {
                for (std::size_t nu = 0; nu < 2; ++nu) {
                    sum += fit(fd.coframe[a][mu], n) * fit(fd.coframe[b][nu], n) * t[mu][nu];
                }
            }
            out[a][b] = sum;
        }
    }
    return out;
}

Arr2<Jet2> frame_to_covector(FramePointData const& fd, Arr2<Jet2> const& w)
{
    int const n = w[0].order();
    Arr2<Jet2> out;
    for (std::size_t mu = 0; mu < 2; ++mu) {
        out[mu] = fit(fd.coframe[0][mu], n) * w[0] + fit(fd.coframe[1][mu], n) * w[1];
    }
    return out;
}

Arr22<Jet2> lower_indices(FramePointData const& fd, Arr22<Jet2> const& t)
{
    int const n = t[0][0].order();
    Arr22<Jet2> out;
    for (std::size_t mu = 0; mu < 2; ++mu) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
            Jet2 sum = t[0][0].zero_like();
            for (std::size_t al = 0; al < 2; ++al) {
                for (std::size_t be = 0; be < 2; ++be) {
                    sum += fit(fd.metric[mu][al], n) * fit(fd.metric[nu][be], n) * t[al][be];
                }
            }
            out[mu][nu] = sum;
        }
    }
    return out;
}

Arr2<SpinorJet> spinor_covariant_derivative(FramePointData const& fd, Representation const& rep,
                                            SpinorJet const& psi)
{
    require_derivable(psi.order());
    int const n = psi.order() - 1;
    SpinorJet const low = psi.truncated(n);
    Arr2<SpinorJet> out{low, low};
    for (std::size_t mu = 0; mu < 2; ++mu) {
        Jet2 w = low.c[0].zero_like();
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                w += kEpsilon[a][b] * fit(fd.spin[a][b][mu], n);
            }
        }
        SpinorJet d{{partial(psi.c[0], kCoords[mu]), partial(psi.c[1], kCoords[mu])}};
        d += (0.25 * w) * act(rep, gamma_12(), low);
        out[mu] = d;
    }
    return out;
}

Arr2<SpinorJet> spinor_frame_derivative(FramePointData const& fd, Representation const& rep,
                                        SpinorJet const& psi)
{
    auto const d = spinor_covariant_derivative(fd, rep, psi);
    int const n = d[0].order();
    Arr2<SpinorJet> out{d[0], d[0]};
    for (std::size_t a = 0; a < 2; ++a) {
        out[a] = fit(fd.frame[a][0], n) * d[0] + fit(fd.frame[a][1], n) * d[1];
    }
    return out;
}

Arr22<SpinorJet> second_symmetrized_derivative(FramePointData const& fd, Representation const& rep,
                                               SpinorJet const& psi)
{
    auto const first = spinor_covariant_derivative(fd, rep, psi); // order n-1
    int const n = first[0].order() - 1;
    if (n < 0) {
        throw JetMismatch("second spinor derivative needs jet order >= 2");
    }
    // nabla_mu Phi_nu with Phi_nu = nabla_nu psi.
    Arr22<SpinorJet> coord{{{first[0], first[0]}, {first[0], first[0]}}};
    for (std::size_t nu = 0; nu < 2; ++nu) {
        auto const d = spinor_covariant_derivative(fd, rep, first[nu]);
        for (std::size_t mu = 0; mu < 2; ++mu) {
            SpinorJet x = d[mu];
            for (std::size_t l = 0; l < 2; ++l) {
                x -= fit(fd.christoffel[l][nu][mu], n) * first[l].truncated(n);
            }
            coord[mu][nu] = x;
        }
    }
    Arr22<SpinorJet> framed = coord;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            SpinorJet sum = zero_like(coord[0][0]);
            for (std::size_t mu = 0; mu < 2; ++mu) {
                for (std::size_t nu = 0; nu < 2; ++nu) {
                    sum += (fit(fd.frame[a][mu], n) * fit(fd.frame[b][nu], n)) * coord[mu][nu];
                }
            }
            framed[a][b] = sum;
        }
    }
    Arr22<SpinorJet> out = framed;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            out[a][b] = 0.5 * (framed[a][b] + framed[b][a]);
        }
    }
    return out;
}

TensorField killing_tensor_liouville(LiouvilleSurface const& s)
{
    // Captures by value: the surface is cheap to copy (shared profiles).
    return {
        [s](Point p, int n) { return s.b(p, n) / s.conformal_factor(p, n); },
        [](Point p, int n) { return Jet2(p, n); },
        [s](Point p, int n) { return -s.a(p, n) / s.conformal_factor(p, n); },
    };
}

KillingTensorComponents killing_tensor_liouville_at(LiouvilleSurface const& s,
                                                    FramePointData const& fd)
{
    KillingTensorComponents k;
    k.coordinate = evaluate(killing_tensor_liouville(s), fd.point, fd.order);
    k.frame = to_frame(fd, k.coordinate);
    return k;
}

} // namespace spinsym
