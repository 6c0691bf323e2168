#include <spinsym/killing.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

namespace spinsym {

namespace {

Jet2 fit(Jet2 const& x, int n) { return x.order() == n ? x : x.truncated(n); }

double sym2_residual(Arr22<Jet2> const& d)
{
    double worst = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            worst = std::max(worst, std::abs(0.5 * (d[a][b].value() + d[b][a].value())));
        }
    }
    return worst;
}

double sym3_residual(Arr222<Jet2> const& d)
{
    double worst = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                std::array<std::size_t, 3> idx{a, b, c};
                std::sort(idx.begin(), idx.end());
                Complex sum{};
                int count = 0;
                do {
                    sum += d[idx[0]][idx[1]][idx[2]].value();
                    ++count;
                } while (std::next_permutation(idx.begin(), idx.end()));
                worst = std::max(worst, std::abs(sum) / count);
            }
        }
    }
    return worst;
}

Complex derivative(Jet2 const& x, int k)
{
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) {
        fact *= i;
    }
    return fact * x.coeff(k, 0);
}

Complex derivative_v(Jet2 const& x, int k)
{
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) {
        fact *= i;
    }
    return fact * x.coeff(0, k);
}

std::vector<Point> grid(Domain const& d, int nu, int nv)
{
    std::vector<Point> pts;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            double const u = d.u0 + (d.u1 - d.u0) * (nu == 1 ? 0.5 : double(i) / (nu - 1));
            double const v = d.v0 + (d.v1 - d.v0) * (nv == 1 ? 0.5 : double(j) / (nv - 1));
            pts.push_back({u, v});
        }
    }
    return pts;
}

double segment_integral(LiouvilleSurface const& s, TensorField const& k, Point from, double to,
                        Variable along)
{
    if ((along == Variable::u ? from.u : from.v) == to) {
        return 0.0;
    }
    auto f = [&](double t) {
        Point p = from;
        (along == Variable::u ? p.u : p.v) = t;
        auto const w = integrability_one_form(s, k, p, 0);
        return (along == Variable::u ? w[0] : w[1]).value().real();
    };
    double const a = along == Variable::u ? from.u : from.v;
    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    // Relative tolerances cannot be met on integrands that vanish up to
    // rounding (flat regions, Killing directions), so the acceptance test
    // is absolute, scaled by the L1 norm when that exceeds one.
    double error = 0.0;
    double l1 = 0.0;
    double const coarse = quad::integrate(f, a, to, 0, 0.0, &error, &l1);
    double const target = 1e-12 * std::max(1.0, l1);
    if (error <= target) {
        return coarse;
    }
    return quad::integrate(f, a, to, 8, target / std::max(l1, 1e-300));
}

class ValueCache
{
public:
    template <typename F>
    double get(Point p, F&& compute)
    {
        {
            std::lock_guard lock(mutex_);
            auto it = values_.find({p.u, p.v});
            if (it != values_.end()) {
                return it->second;
            }
        }
        double const x = compute();
        std::lock_guard lock(mutex_);
        values_.emplace(std::pair{p.u, p.v}, x);
        return x;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<double, double>, double> values_;
};

} // namespace

double killing_vector_residual(LiouvilleSurface const& s, VectorField const& zeta,
                               std::vector<Point> const& points)
{
    double worst = 0.0;
    for (Point p : points) {
        FramePointData const fd = frame_at(s, p, 2);
        auto const z = to_frame(fd, evaluate(zeta, p, 1));
        worst = std::max(worst, sym2_residual(frame_derivative_vector(fd, z)));
    }
    return worst;
}

double killing_tensor_residual(LiouvilleSurface const& s, TensorField const& k,
                               std::vector<Point> const& points)
{
    double worst = 0.0;
    for (Point p : points) {
        FramePointData const fd = frame_at(s, p, 2);
        auto const t = to_frame(fd, evaluate(k, p, 1));
        worst = std::max(worst, sym3_residual(frame_derivative_tensor(fd, t)));
    }
    return worst;
}

Arr2<Jet2> integrability_one_form(LiouvilleSurface const& s, TensorField const& k, Point p, int n)
{
    FramePointData const fd = frame_at(s, p, n + 3);
    Arr22<Jet2> const low = lower_indices(fd, evaluate(k, p, n + 1));
    Jet2 const r = fit(fd.ricci, n + 1);
    Arr22<Jet2> const t{{{r * low[0][0], r * low[0][1]}, {r * low[1][0], r * low[1][1]}}};
    auto const dt = coordinate_derivative_covariant_tensor(fd, t); // [rho][mu][nu]
    Arr2<Jet2> omega{Jet2(p, n), Jet2(p, n)};
    for (std::size_t mu = 0; mu < 2; ++mu) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
            for (std::size_t rho = 0; rho < 2; ++rho) {
                omega[mu] -= 0.25 * fit(fd.inverse_metric[nu][rho], n) * dt[rho][mu][nu];
            }
        }
    }
    return omega;
}

Jet2 curl(Arr2<Jet2> const& omega)
{
    return partial(omega[1], Variable::u) - partial(omega[0], Variable::v);
}

double integrability_condition_lhs(LiouvilleSurface const& s, Point p)
{
    Jet2 const a = s.a(p, 3);
    Jet2 const b = s.b(p, 3);
    Complex const lam = a.value() + b.value();
    Complex const a1 = derivative(a, 1), a2 = derivative(a, 2), a3 = derivative(a, 3);
    Complex const b1 = derivative_v(b, 1), b2 = derivative_v(b, 2), b3 = derivative_v(b, 3);
    Complex const lhs = lam * lam * (a1 * b3 + a3 * b1) + 6.0 * a1 * b1 * (a1 * a1 + b1 * b1)
                        - 6.0 * a1 * b1 * lam * (a2 + b2);
    return lhs.real();
}

double max_curl(LiouvilleSurface const& s, TensorField const& k, int nu, int nv)
{
    double worst = 0.0;
    for (Point p : grid(s.domain(), nu, nv)) {
        worst = std::max(worst, std::abs(curl(integrability_one_form(s, k, p, 1)).value()));
    }
    return worst;
}

double integrate_one_form(LiouvilleSurface const& s, TensorField const& k, Point base, Point p,
                          Staircase path, double g0)
{
    if (path == Staircase::u_then_v) {
        double const first = segment_integral(s, k, base, p.u, Variable::u);
        double const second = segment_integral(s, k, {p.u, base.v}, p.v, Variable::v);
        return g0 + first + second;
    }
    double const first = segment_integral(s, k, base, p.v, Variable::v);
    double const second = segment_integral(s, k, {base.u, p.v}, p.u, Variable::u);
    return g0 + first + second;
}

GSolution solve_g(LiouvilleSurface const& s, TensorField const& k, Point base, double g0,
                  Staircase path)
{
    double const c = max_curl(s, k);
    if (!(c <= kCurlTolerance)) {
        throw Rejection("integrability curl nonzero", c);
    }
    GSolution out;
    out.max_curl = c;
    // The line integral dominates the cost; operators re-evaluate g at the same points.
    auto cache = std::make_shared<ValueCache>();
    out.g = [s, k, base, g0, path, cache](Point p, int n) {
        Jet2 g(p, n);
        g.coeff(0, 0) = cache->get(p, [&] { return integrate_one_form(s, k, base, p, path, g0); });
        if (n == 0) {
            return g;
        }
        auto const w = integrability_one_form(s, k, p, n - 1);
        for (int i = 0; i <= n - 1; ++i) {
            for (int j = 0; i + j <= n - 1; ++j) {
                g.coeff(i + 1, j) = w[0].coeff(i, j) / double(i + 1);
            }
        }
        for (int j = 0; j <= n - 1; ++j) {
            g.coeff(0, j + 1) = w[1].coeff(0, j) / double(j + 1);
        }
        return g;
    };
    return out;
}

SpecialResiduals special_system_residual(LiouvilleSurface const& s, SpecialCaseParams const& q,
                                         std::vector<Point> const& points)
{
    SpecialResiduals r;
    for (Point p : points) {
        Jet2 const a = s.a(p, 1);
        Jet2 const b = s.b(p, 1);
        Complex const x = a.value(), y = b.value();
        Complex const da = a.coeff(1, 0), db = b.coeff(0, 1);
        Complex const pa = (((q.k * x + q.a3) * x + q.a2) * x + q.a1) * x + q.a0;
        Complex const pb = (((-q.k * y + q.a3) * y - q.a2) * y + q.a1) * y - q.a0;
        r.a = std::max(r.a, std::abs(da * da - pa));
        r.b = std::max(r.b, std::abs(db * db - pb));
    }
    return r;
}

Complex special_case_ricci(LiouvilleSurface const& s, SpecialCaseParams const& q, Point p)
{
    return (s.a(p, 0).value() - s.b(p, 0).value()) * q.k + 0.5 * q.a3;
}

double special_case_ricci_check(LiouvilleSurface const& s, SpecialCaseParams const& q,
                                std::vector<Point> const& points)
{
    double worst = 0.0;
    for (Point p : points) {
        Complex const r = -ricci_scalar(s, p, 0).value();
        worst = std::max(worst, std::abs(r - special_case_ricci(s, q, p)));
    }
    return worst;
}

SymmetryData assemble_symmetry_data(LiouvilleSurface const& s, FirstOrderInputs const& in,
                                    std::vector<Point> const& probes)
{
    double const res = killing_vector_residual(s, in.zeta, probes);
    if (!(res <= kKillingTolerance)) {
        throw Rejection("zeta is not a Killing vector", res);
    }
    SymmetryData d;
    d.zeta = in.zeta;
    d.a_const = in.a_const;
    d.g = constant_field(in.g);
    return d;
}

SymmetryData assemble_symmetry_data(LiouvilleSurface const& s, SecondOrderInputs const& in,
                                    std::vector<Point> const& probes)
{
    TensorField const k = in.k.value_or(killing_tensor_liouville(s));
    double const kres = killing_tensor_residual(s, k, probes);
    if (!(kres <= kKillingTolerance)) {
        throw Rejection("K is not a Killing tensor", kres);
    }
    double traceless = 0.0;
    for (Point p : probes) {
        FramePointData const fd = frame_at(s, p, 2);
        auto const kf = to_frame(fd, evaluate(k, p, 0));
        traceless = std::max({traceless, std::abs(kf[0][0].value() - kf[1][1].value()),
                              std::abs(kf[0][1].value())});
    }
    if (!(traceless > 1e-12)) {
        throw Rejection("Killing tensor proportional to the metric", traceless);
    }
    for (auto const* x : {&in.alpha, &in.zeta}) {
        if (*x) {
            double const r = killing_vector_residual(s, **x, probes);
            if (!(r <= kKillingTolerance)) {
                throw Rejection("vector part is not a Killing vector", r);
            }
        }
    }
    Domain const& dom = s.domain();
    Point const base = in.base.value_or(Point{0.5 * (dom.u0 + dom.u1), 0.5 * (dom.v0 + dom.v1)});
    GSolution const g = solve_g(s, k, base, in.g0);

    SymmetryData d;
    d.k = k;
    d.alpha = in.alpha;
    d.zeta = in.zeta;
    d.a_const = in.a_const;
    d.g = g.g;
    return d;
}

std::vector<Point> sample_points(LiouvilleSurface const& s, std::uint64_t seed, std::size_t count,
                                 double margin)
{
    Domain const& d = s.domain();
    double const du = margin * (d.u1 - d.u0);
    double const dv = margin * (d.v1 - d.v0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(d.u0 + du, d.u1 - du);
    std::uniform_real_distribution<double> v(d.v0 + dv, d.v1 - dv);
    std::vector<Point> pts(count);
    for (auto& p : pts) {
        p.u = u(rng);
        p.v = v(rng);
    }
    return pts;
}

} // namespace spinsym
