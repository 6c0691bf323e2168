#include <spinsym/separation.hpp>

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace spinsym {

namespace {

constexpr Complex kI{0.0, 1.0};

Jet2 v_jet(Point p, int n) { return Jet2::variable(p, n, Variable::v); }
Jet2 u_jet(Point p, int n) { return Jet2::variable(p, n, Variable::u); }

std::vector<Point> shrunk_grid(Domain const& d, int nu, int nv)
{
    double const mu = 0.02 * (d.u1 - d.u0);
    double const mv = 0.02 * (d.v1 - d.v0);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(nu * nv));
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            double const tu = nu == 1 ? 0.5 : double(i) / (nu - 1);
            double const tv = nv == 1 ? 0.5 : double(j) / (nv - 1);
            pts.push_back({d.u0 + mu + tu * (d.u1 - d.u0 - 2 * mu),
                           d.v0 + mv + tv * (d.v1 - d.v0 - 2 * mv)});
        }
    }
    return pts;
}

/// b-pair from the v-equations, integrated numerically.
class NumericB
{
public:
    NumericB(ProfilePtr beta, double m, Complex mu1, Complex mu2, Complex d1, Complex d2,
             double v_ref)
        : beta_(std::move(beta))
        , m_(m)
        , mu1_(mu1)
        , mu2_(mu2)
        , b1_ref_(d1)
        , b2_ref_(d2 / mu1)
        , v_ref_(v_ref)
    {}

    std::array<Jet2, 2> jets(Jet2 const& x) const
    {
        {
            std::lock_guard lock(mutex_);
            if (cached_ && cached_->first.order() == x.order() && cached_->first.base() == x.base()) {
                return {cached_->first, cached_->second};
            }
        }
        double const v = x.value().real();
        auto const [b1, b2] = values_at(v);
        int const n = x.order();
        Variable const var = Variable::v;

        Jet2 const xv = Jet2::variable(x.base(), n + 1, var);
        Jet2 const beta = beta_->eval(xv);
        Jet2 const half_log_derivative = 0.5 * partial(beta, var) / beta.truncated(n);
        Jet2 const mass_term = Complex(m_) / beta.truncated(n);

        Jet2 p1 = Jet2::constant(x.base(), n, b1);
        Jet2 p2 = Jet2::constant(x.base(), n, b2);
        for (int k = 0; k < n; ++k) {
            Jet2 const f1 = kI * mu1_ * p2 + half_log_derivative * p1 - kI * mass_term * p1;
            Jet2 const f2 = -kI * mu2_ * p1 + half_log_derivative * p2 + kI * mass_term * p2;
            p1 = b1 + antiderivative(f1, var).truncated(n);
            p2 = b2 + antiderivative(f2, var).truncated(n);
        }
        std::lock_guard lock(mutex_);
        cached_ = std::make_pair(p1, p2);
        return {p1, p2};
    }

private:
    using State = std::array<double, 4>;

    std::pair<Complex, Complex> values_at(double v) const
    {
        State x{b1_ref_.real(), b1_ref_.imag(), b2_ref_.real(), b2_ref_.imag()};
        if (v != v_ref_) {
            auto rhs = [this](State const& s, State& ds, double t) {
                Jet2 const beta = beta_->eval(Jet2::variable({0.0, t}, 1, Variable::v));
                Complex const b = beta.value();
                Complex const db = beta.coeff(0, 1);
                Complex const h = 0.5 * db / b;
                Complex const w = m_ / b;
                Complex const b1{s[0], s[1]}, b2{s[2], s[3]};
                Complex const d1 = kI * mu1_ * b2 + h * b1 - kI * w * b1;
                Complex const d2 = -kI * mu2_ * b1 + h * b2 + kI * w * b2;
                ds = {d1.real(), d1.imag(), d2.real(), d2.imag()};
            };
            namespace ode = boost::numeric::odeint;
            auto stepper = ode::make_controlled(1e-10, 1e-10, ode::runge_kutta_dopri5<State>());
            double const dt = v > v_ref_ ? 1e-3 : -1e-3;
            ode::integrate_adaptive(stepper, rhs, x, v_ref_, v, dt);
        }
        return {Complex(x[0], x[1]), Complex(x[2], x[3])};
    }

    ProfilePtr beta_;
    double m_;
    Complex mu1_, mu2_;
    Complex b1_ref_, b2_ref_;
    double v_ref_;
    mutable std::mutex mutex_;
    mutable std::optional<std::pair<Jet2, Jet2>> cached_;
};

} // namespace

SeparationScheme::SeparationScheme(ProfilePtr beta, double m, Complex mu, Complex mu1,
                                   Domain domain)
    : beta_(std::move(beta))
    , m_(m)
    , mu1_(mu1)
    , mu2_(mu1 == Complex{} ? Complex{} : mu / mu1)
    , domain_(domain)
{
    if (mu1_ == Complex{}) {
        throw Error("separation constant mu1 must be nonzero");
    }
    if (mu2_ == Complex{}) {
        throw Error("separation constant mu2 = mu / mu1 must be nonzero");
    }
}

SeparationScheme SeparationScheme::refactored(Complex mu1) const
{
    SeparationScheme s(beta_, m_, mu(), mu1, domain_);
    s.c1 = c1;
    s.c2 = c2;
    s.d1 = d1;
    s.d2 = d2;
    return s;
}

bool SeparationScheme::cartesian() const
{
    Complex first{};
    for (int i = 0; i < 5; ++i) {
        double const v = domain_.v0 + (domain_.v1 - domain_.v0) * i / 4.0;
        Jet2 const b = beta_->eval(v_jet({0.0, v}, 1));
        if (i == 0) {
            first = b.value();
        }
        if (b.coeff(0, 1) != Complex{} || b.value() != first) {
            return false;
        }
    }
    return true;
}

LiouvilleSurface SeparationScheme::surface() const
{
    return revolution_surface("separation", beta_, domain_);
}

FrameChoice d5_frame(ProfilePtr beta)
{
    return FrameChoice::antidiagonal(
        [beta = std::move(beta)](Point p, int n) { return beta->eval(v_jet(p, n)); });
}

Arr22<Jet2> d5_frame_at(ProfilePtr const& beta, Point p, int order)
{
    Jet2 const b = beta->eval(v_jet(p, order));
    if (b.value() == Complex{}) {
        throw DomainError("beta vanishes; the separation frame is undefined");
    }
    Jet2 const z = b.zero_like();
    return {{{z, -b}, {b, z}}};
}

SpinorJet dirac_matrix_form(ProfilePtr const& beta, double m, SpinorJet const& psi)
{
    int const n = psi.order();
    if (n < 1) {
        throw JetMismatch("matrix Dirac operator needs spinor jets of order >= 1");
    }
    Jet2 const b_full = beta->eval(v_jet(psi.base(), n));
    Jet2 const b = b_full.truncated(n - 1);
    Jet2 const db = partial(b_full, Variable::v);
    Jet2 const du1 = partial(psi.c[0], Variable::u), du2 = partial(psi.c[1], Variable::u);
    Jet2 const dv1 = partial(psi.c[0], Variable::v), dv2 = partial(psi.c[1], Variable::v);
    Jet2 const p1 = psi.c[0].truncated(n - 1), p2 = psi.c[1].truncated(n - 1);
    Complex const half_i{0.0, 0.5};
    return {{b * (-du2 + kI * dv1) - half_i * db * p1 - Complex(m) * p1,
             b * (du1 - kI * dv2) + half_i * db * p2 - Complex(m) * p2}};
}

FunctionPair a_solutions(Complex mu, Complex mu1, Complex mu2, Complex c1, Complex c2)
{
    if (mu2 == Complex{}) {
        throw Error("a-solutions need mu2 != 0");
    }
    (void)mu1;
    Complex const s = std::sqrt(mu);
    Complex const scale = s / mu2;
    return {
        [=](Jet2 const& u) { return c1 * sin(s * u) + c2 * cos(s * u); },
        [=](Jet2 const& u) { return scale * (c1 * cos(s * u) - c2 * sin(s * u)); },
    };
}

FunctionPair b_solutions_cartesian(double beta0, double m, Complex mu, Complex mu1, Complex d1,
                                   Complex d2)
{
    if (mu1 == Complex{}) {
        throw Error("b-solutions need mu1 != 0");
    }
    if (beta0 == 0.0) {
        throw DomainError("beta vanishes");
    }
    double const mt = m / beta0;
    Complex const big_m = std::sqrt(Complex(mt * mt) - mu);
    return {
        [=](Jet2 const& v) { return d1 * sin(big_m * v) + d2 * cos(big_m * v); },
        [=](Jet2 const& v) {
            return ((mt * d1 + kI * big_m * d2) * sin(big_m * v)
                    + (mt * d2 - kI * big_m * d1) * cos(big_m * v))
                   / mu1;
        },
    };
}

CoordinateFunction b2_printed(double m, Complex mu, Complex mu1, Complex d1, Complex d2)
{
    Complex const big_m = std::sqrt(Complex(m * m) - mu);
    return [=](Jet2 const& v) {
        return ((d1 + kI * big_m * d2) * sin(big_m * v) + (d2 - kI * big_m * d1) * cos(big_m * v))
               / mu1;
    };
}

FunctionPair b_solutions_numeric(ProfilePtr beta, double m, Complex mu1, Complex mu2, Complex d1,
                                 Complex d2, double v_ref)
{
    if (mu1 == Complex{}) {
        throw Error("b-solutions need mu1 != 0");
    }
    auto solver = std::make_shared<NumericB>(std::move(beta), m, mu1, mu2, d1, d2, v_ref);
    return {
        [solver](Jet2 const& v) { return solver->jets(v)[0]; },
        [solver](Jet2 const& v) { return solver->jets(v)[1]; },
    };
}

FunctionPair b_solutions(SeparationScheme const& s)
{
    if (s.cartesian()) {
        double const beta0 = s.beta()->eval(v_jet({0.0, s.domain().v0}, 0)).value().real();
        return b_solutions_cartesian(beta0, s.mass(), s.mu(), s.mu1(), s.d1, s.d2);
    }
    return b_solutions_numeric(s.beta(), s.mass(), s.mu1(), s.mu2(), s.d1, s.d2, s.domain().v0);
}

SeparatedResiduals separated_ode_residuals(SeparationScheme const& s, FunctionPair const& a,
                                           FunctionPair const& b, std::vector<Point> const& points)
{
    SeparatedResiduals r;
    Complex const mu = s.mu(), mu1 = s.mu1(), mu2 = s.mu2();
    double const m = s.mass();
    for (Point p : points) {
        Jet2 const u = u_jet(p, 2);
        Jet2 const a1 = a.first(u), a2 = a.second(u);
        Complex const a1v = a1.value(), a2v = a2.value();
        Complex const da1 = a1.coeff(1, 0), da2 = a2.coeff(1, 0);
        Complex const dda1 = 2.0 * a1.coeff(2, 0), dda2 = 2.0 * a2.coeff(2, 0);
        r.a_first = std::max({r.a_first, std::abs(da2 + mu1 * a1v), std::abs(da1 - mu2 * a2v)});
        r.a_second = std::max({r.a_second, std::abs(dda1 + mu * a1v), std::abs(dda2 + mu * a2v)});

        Jet2 const v = v_jet(p, 1);
        Jet2 const b1 = b.first(v), b2 = b.second(v);
        Jet2 const beta = s.beta()->eval(v_jet(p, 1));
        Complex const bv = beta.value(), h = 0.5 * beta.coeff(0, 1) / bv, w = m / bv;
        Complex const b1v = b1.value(), b2v = b2.value();
        Complex const db1 = b1.coeff(0, 1), db2 = b2.coeff(0, 1);
        Complex const e1 = -kI * db1 + kI * h * b1v + w * b1v - mu1 * b2v;
        Complex const e2 = kI * db2 - kI * h * b2v + w * b2v - mu2 * b1v;
        r.b = std::max({r.b, std::abs(e1), std::abs(e2)});
    }
    return r;
}

SpinorField assemble(FunctionPair const& a, FunctionPair const& b)
{
    return [a, b](Point p, int n) {
        Jet2 const u = u_jet(p, n), v = v_jet(p, n);
        return SpinorJet{{a.first(u) * b.first(v), a.second(u) * b.second(v)}};
    };
}

SeparationReport assemble_and_verify(SeparationScheme const& s, int nu, int nv)
{
    SeparationReport rep;
    rep.numeric = !s.cartesian();
    FunctionPair const a = a_solutions(s.mu(), s.mu1(), s.mu2(), s.c1, s.c2);
    FunctionPair const b = b_solutions(s);
    SpinorField const psi = assemble(a, b);

    SeparationScheme const other = s.refactored(2.0 * s.mu1());
    SpinorField const psi_other = assemble(
        a_solutions(other.mu(), other.mu1(), other.mu2(), other.c1, other.c2), b_solutions(other));

    OperatorContext const ctx{s.surface(), d5_frame(s.beta()), Representation::standard()};
    std::vector<Point> const pts = shrunk_grid(s.domain(), nu, nv);
    rep.points = pts.size();
    rep.odes = separated_ode_residuals(s, a, b, pts);
    for (Point p : pts) {
        SpinorJet const x = psi(p, 2);
        FramePointData const fd = frame_at(ctx.surface, p, 2, ctx.frame);
        SpinorJet const d = dirac_operator(fd, ctx.rep, s.mass()).apply(x);
        rep.dirac = std::max(rep.dirac, residual_norm(d)); // d = D psi - m psi
        rep.matrix_form = std::max(rep.matrix_form, residual_norm(d - dirac_matrix_form(s.beta(), s.mass(), x)));

        SpinorJet const uu{{partial(partial(x.c[0], Variable::u), Variable::u),
                            partial(partial(x.c[1], Variable::u), Variable::u)}};
        rep.eigen = std::max(rep.eigen, residual_norm(Complex(-1.0) * uu - s.mu() * x.truncated(0)));

        rep.mu_only = std::max(rep.mu_only, residual_norm(x.truncated(0) - psi_other(p, 0)));
    }
    return rep;
}

} // namespace spinsym
