#include <spinsym/jet.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace spinsym {

Jet2::Jet2()
    : Jet2(Point{}, 0)
{}

Jet2::Jet2(Point base, int order)
    : base_(base)
    , order_(order)
{
    if (order < 0) {
        throw JetMismatch("jet order must be nonnegative, got " + std::to_string(order));
    }
    coeffs_.assign(coefficient_count(order), Complex{});
}

Jet2 Jet2::constant(Point base, int order, Complex value)
{
    Jet2 j(base, order);
    j.coeffs_[0] = value;
    return j;
}

Jet2 Jet2::variable(Point base, int order, Variable which)
{
    Jet2 j(base, order);
    j.coeffs_[0] = which == Variable::u ? base.u : base.v;
    if (order >= 1) {
        j.coeff(which == Variable::u ? 1 : 0, which == Variable::u ? 0 : 1) = 1.0;
    }
    return j;
}

Complex Jet2::coeff(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw JetMismatch("coefficient (" + std::to_string(i) + "," + std::to_string(j)
                          + ") outside jet of order " + std::to_string(order_));
    }
    return coeffs_[index(i, j)];
}

Complex& Jet2::coeff(int i, int j)
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw JetMismatch("coefficient (" + std::to_string(i) + "," + std::to_string(j)
                          + ") outside jet of order " + std::to_string(order_));
    }
    return coeffs_[index(i, j)];
}

Jet2 Jet2::truncated(int n) const
{
    if (n > order_) {
        throw JetMismatch("cannot raise jet order from " + std::to_string(order_) + " to "
                          + std::to_string(n));
    }
    Jet2 r(base_, n);
    std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
    return r;
}

double Jet2::l1_norm() const
{
    double s = 0.0;
    for (auto const& c : coeffs_) {
        s += std::abs(c);
    }
    return s;
}

void Jet2::require_compatible(Jet2 const& o) const
{
    if (!(base_ == o.base_)) {
        std::ostringstream msg;
        msg << "jet base points differ: (" << base_.u << "," << base_.v << ") vs (" << o.base_.u
            << "," << o.base_.v << ")";
        throw JetMismatch(msg.str());
    }
    if (order_ != o.order_) {
        throw JetMismatch("jet orders differ: " + std::to_string(order_) + " vs "
                          + std::to_string(o.order_));
    }
}

Jet2& Jet2::operator+=(Jet2 const& o)
{
    require_compatible(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    return *this;
}

Jet2& Jet2::operator-=(Jet2 const& o)
{
    require_compatible(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    return *this;
}

Jet2& Jet2::operator*=(Jet2 const& o)
{
    *this = *this * o;
    return *this;
}

Jet2& Jet2::operator*=(Complex s)
{
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

Jet2& Jet2::operator+=(Complex s)
{
    coeffs_[0] += s;
    return *this;
}

Jet2& Jet2::operator-=(Complex s)
{
    coeffs_[0] -= s;
    return *this;
}

Jet2 Jet2::operator-() const
{
    Jet2 r = *this;
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

Jet2 operator*(Jet2 const& a, Jet2 const& b)
{
    a.require_compatible(b);
    int const n = a.order_;
    Jet2 r(a.base_, n);
    for (int da = 0; da <= n; ++da) {
        for (int ja = 0; ja <= da; ++ja) {
            Complex const ca = a.coeffs_[Jet2::index(da - ja, ja)];
            if (ca == Complex{}) {
                continue;
            }
            for (int db = 0; db <= n - da; ++db) {
                std::size_t const out = Jet2::index(da + db - ja, ja);
                std::size_t const in = Jet2::index(db, 0);
                for (int jb = 0; jb <= db; ++jb) {
                    // index(i, j) for fixed total degree is contiguous in j.
                    r.coeffs_[out + jb] += ca * b.coeffs_[in + jb];
                }
            }
        }
    }
    return r;
}

Jet2 operator/(Jet2 const& a, Jet2 const& b)
{
    return a * reciprocal(b);
}

Jet2 operator/(Complex s, Jet2 const& a)
{
    return reciprocal(a) * s;
}

namespace {

bool is_real(Complex z) { return z.imag() == 0.0; }

char const* name_of(UnaryFn f)
{
    switch (f) {
    case UnaryFn::sin: return "sin";
    case UnaryFn::cos: return "cos";
    case UnaryFn::sinh: return "sinh";
    case UnaryFn::cosh: return "cosh";
    case UnaryFn::exp: return "exp";
    case UnaryFn::ln: return "ln";
    case UnaryFn::sqrt: return "sqrt";
    case UnaryFn::reciprocal: return "reciprocal";
    }
    return "?";
}

// Binomial series coefficients of (x0 + h)^p.
std::vector<Complex> power_coefficients(Complex x0, double p, int n)
{
    std::vector<Complex> t(static_cast<std::size_t>(n + 1));
    Complex const lead = std::pow(x0, p);
    Complex binom = 1.0;
    Complex inv_pow = 1.0;
    for (int k = 0; k <= n; ++k) {
        t[static_cast<std::size_t>(k)] = lead * binom * inv_pow;
        binom *= (p - k) / static_cast<double>(k + 1);
        inv_pow /= x0;
    }
    return t;
}

Jet2 horner(std::vector<Complex> const& t, Jet2 const& a)
{
    Jet2 h = a;
    h -= a.value();
    Jet2 r = Jet2::constant(a.base(), a.order(), t.back());
    for (auto k = static_cast<std::ptrdiff_t>(t.size()) - 2; k >= 0; --k) {
        r = r * h;
        r += t[static_cast<std::size_t>(k)];
    }
    return r;
}

} // namespace

std::vector<Complex> taylor_coefficients(UnaryFn f, Complex x0, int n)
{
    std::vector<Complex> t(static_cast<std::size_t>(n + 1));
    double fact = 1.0;
    auto const cyc = [](int k, Complex s, Complex c) {
        // k-th derivative of sin at x0, given s = sin(x0), c = cos(x0)
        switch (k % 4) {
        case 0: return s;
        case 1: return c;
        case 2: return -s;
        default: return -c;
        }
    };
    switch (f) {
    case UnaryFn::sin:
    case UnaryFn::cos: {
        Complex const s = std::sin(x0);
        Complex const c = std::cos(x0);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            t[static_cast<std::size_t>(k)] = (f == UnaryFn::sin ? cyc(k, s, c) : cyc(k + 1, s, c)) / fact;
        }
        return t;
    }
    case UnaryFn::sinh:
    case UnaryFn::cosh: {
        Complex const s = std::sinh(x0);
        Complex const c = std::cosh(x0);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            bool const even = k % 2 == 0;
            bool const gives_sinh = (f == UnaryFn::sinh) == even;
            t[static_cast<std::size_t>(k)] = (gives_sinh ? s : c) / fact;
        }
        return t;
    }
    case UnaryFn::exp: {
        Complex const e = std::exp(x0);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            t[static_cast<std::size_t>(k)] = e / fact;
        }
        return t;
    }
    case UnaryFn::ln: {
        if (x0 == Complex{} || (is_real(x0) && x0.real() <= 0.0)) {
            throw DomainError("ln is singular or undefined at " + std::to_string(x0.real()));
        }
        t[0] = std::log(x0);
        Complex p = 1.0;
        for (int k = 1; k <= n; ++k) {
            p /= x0;
            t[static_cast<std::size_t>(k)] = (k % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(k);
        }
        return t;
    }
    case UnaryFn::sqrt:
        if (x0 == Complex{} || (is_real(x0) && x0.real() < 0.0)) {
            throw DomainError("sqrt is singular or undefined at " + std::to_string(x0.real()));
        }
        return power_coefficients(x0, 0.5, n);
    case UnaryFn::reciprocal:
        if (x0 == Complex{}) {
            throw DomainError("division by a jet with zero constant term");
        }
        return power_coefficients(x0, -1.0, n);
    }
    throw DomainError(std::string("unknown function ") + name_of(f));
}

Jet2 compose(UnaryFn f, Jet2 const& a)
{
    return horner(taylor_coefficients(f, a.value(), a.order()), a);
}

Jet2 pow(Jet2 const& a, double p)
{
    double const rounded = std::round(p);
    if (rounded == p && p >= 0.0) {
        Jet2 r = Jet2::constant(a.base(), a.order(), 1.0);
        Jet2 base = a;
        for (auto e = static_cast<long long>(p); e > 0; e >>= 1) {
            if (e & 1) r = r * base;
            if (e > 1) base = base * base;
        }
        return r;
    }
    Complex const x0 = a.value();
    if (x0 == Complex{}) {
        throw DomainError("negative or fractional power of a jet with zero constant term");
    }
    if (rounded != p && is_real(x0) && x0.real() < 0.0) {
        throw DomainError("fractional power of a negative value");
    }
    return horner(power_coefficients(x0, p, a.order()), a);
}

Jet2 partial(Jet2 const& a, Variable which)
{
    int const n = a.order();
    if (n < 1) {
        throw JetMismatch("cannot differentiate a jet of order 0");
    }
    Jet2 r(a.base(), n - 1);
    for (int d = 0; d <= n - 1; ++d) {
        for (int j = 0; j <= d; ++j) {
            int const i = d - j;
            r.coeff(i, j) = which == Variable::u ? a.coeff(i + 1, j) * static_cast<double>(i + 1)
                                                 : a.coeff(i, j + 1) * static_cast<double>(j + 1);
        }
    }
    return r;
}

Jet2 antiderivative(Jet2 const& a, Variable which)
{
    int const n = a.order();
    Jet2 r(a.base(), n + 1);
    for (int d = 0; d <= n; ++d) {
        for (int j = 0; j <= d; ++j) {
            int const i = d - j;
            if (which == Variable::u) {
                r.coeff(i + 1, j) = a.coeff(i, j) / static_cast<double>(i + 1);
            } else {
                r.coeff(i, j + 1) = a.coeff(i, j) / static_cast<double>(j + 1);
            }
        }
    }
    return r;
}

Complex evaluate(Jet2 const& a, Point at)
{
    double const du = at.u - a.base().u;
    double const dv = at.v - a.base().v;
    Complex s{};
    for (int d = 0; d <= a.order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            int const i = d - j;
            s += a.coeff(i, j) * std::pow(du, i) * std::pow(dv, j);
        }
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, Jet2 const& a)
{
    os << "Jet2@(" << a.base().u << "," << a.base().v << ")[N=" << a.order() << "]{";
    for (int d = 0; d <= a.order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            Complex const c = a.coeff(d - j, j);
            if (c != Complex{}) {
                os << " c" << d - j << j << "=" << c;
            }
        }
    }
    return os << " }";
}

} // namespace spinsym
