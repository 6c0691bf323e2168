#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here goes through the jet arithmetic.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace oracle {

using Complex = std::complex<double>;
using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

inline double d1(Fn1 const& f, double x, double h = 1e-4)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double d2(Fn1 const& f, double x, double h = 1e-3)
{
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double du(Fn2 const& f, double u, double v, double h = 1e-4)
{
    return (f(u + h, v) - f(u - h, v)) / (2.0 * h);
}

inline double dv(Fn2 const& f, double u, double v, double h = 1e-4)
{
    return (f(u, v + h) - f(u, v - h)) / (2.0 * h);
}

/// R = -lambda^{-1} (d_uu + d_vv) ln lambda by second differences; unit sphere R = +2.
inline double conformal_curvature(Fn2 const& lambda, double u, double v, double h = 1e-3)
{
    auto l = [&](double a, double b) { return std::log(lambda(a, b)); };
    double const lap = (l(u + h, v) + l(u - h, v) + l(u, v + h) + l(u, v - h) - 4.0 * l(u, v)) / (h * h);
    return -lap / lambda(u, v);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(Fn1 const& f, double a, double b, int n = 2000)
{
    double const h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

/// Classical RK4 for y'' = F(y), returning (y, y') at t1.
inline std::pair<double, double> rk4_second_order(std::function<double(double)> const& F, double y0,
                                                  double dy0, double t0, double t1, int steps)
{
    double y = y0, p = dy0;
    double const h = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        double const k1y = p, k1p = F(y);
        double const k2y = p + 0.5 * h * k1p, k2p = F(y + 0.5 * h * k1y);
        double const k3y = p + 0.5 * h * k2p, k3p = F(y + 0.5 * h * k2y);
        double const k4y = p + h * k3p, k4p = F(y + h * k3y);
        y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
        p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    }
    return {y, p};
}

} // namespace oracle
