#include <spinsym/clifford.hpp>

#include <algorithm>
#include <cmath>

namespace spinsym {

ClJet truncated(ClJet const& x, int n)
{
    return {{x.c[0].truncated(n), x.c[1].truncated(n), x.c[2].truncated(n), x.c[3].truncated(n)}};
}

ClJet lift(Cl const& x, Jet2 const& like)
{
    ClJet r = ClJet::zero(like);
    for (std::size_t k = 0; k < 4; ++k) {
        r.c[k] += x.c[k];
    }
    return r;
}

double max_abs_value(ClJet const& x)
{
    double m = 0.0;
    for (auto const& j : x.c) {
        m = std::max(m, std::abs(j.value()));
    }
    return m;
}

double max_abs(Cl const& x)
{
    double m = 0.0;
    for (auto const& z : x.c) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

Mat2 operator*(Mat2 const& a, Mat2 const& b)
{
    Mat2 r{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

namespace {

constexpr Complex kI{0.0, 1.0};

Mat2 add(Mat2 const& a, Mat2 const& b, double sb = 1.0)
{
    Mat2 r{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            r[i][j] = a[i][j] + sb * b[i][j];
        }
    }
    return r;
}

Mat2 scaled(Mat2 const& a, Complex s)
{
    Mat2 r = a;
    for (auto& row : r) {
        for (auto& z : row) z *= s;
    }
    return r;
}

double max_entry(Mat2 const& a)
{
    double m = 0.0;
    for (auto const& row : a) {
        for (auto const& z : row) m = std::max(m, std::abs(z));
    }
    return m;
}

} // namespace

Representation::Representation(std::string name, Mat2 const& gamma1, Mat2 const& gamma2)
    : name_(std::move(name))
{
    images_[0] = Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
    images_[1] = gamma1;
    images_[2] = gamma2;
    images_[3] = gamma1 * gamma2;
}

Representation Representation::standard()
{
    return Representation("standard", Mat2{{{-1.0, 0.0}, {0.0, 1.0}}},
                          Mat2{{{0.0, kI}, {-kI, 0.0}}});
}

Representation Representation::pauli()
{
    return Representation("pauli", Mat2{{{0.0, 1.0}, {1.0, 0.0}}},
                          Mat2{{{0.0, -kI}, {kI, 0.0}}});
}

Mat2 Representation::image(Cl const& x) const
{
    Mat2 r{};
    for (std::size_t k = 0; k < 4; ++k) {
        r = add(r, scaled(images_[k], x.c[k]));
    }
    return r;
}

RepresentationCheck concrete_representation_check(Representation const& rep)
{
    RepresentationCheck out;
    Mat2 const id = rep.image(Basis::I);

    double anti = 0.0;
    for (std::size_t a = 1; a <= 2; ++a) {
        for (std::size_t b = 1; b <= 2; ++b) {
            Mat2 const ga = rep.image(static_cast<Basis>(a));
            Mat2 const gb = rep.image(static_cast<Basis>(b));
            Mat2 const lhs = add(ga * gb, gb * ga);
            Mat2 const rhs = scaled(id, a == b ? 2.0 : 0.0);
            anti = std::max(anti, max_entry(add(lhs, rhs, -1.0)));
        }
    }

    double table = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Mat2 const product = rep.image(static_cast<Basis>(i)) * rep.image(static_cast<Basis>(j));
            auto const [k, sign] = kStructureTable[i][j];
            Mat2 const expected = scaled(rep.image(static_cast<Basis>(k)), static_cast<double>(sign));
            table = std::max(table, max_entry(add(product, expected, -1.0)));
        }
    }

    Mat2 const vol = rep.image(Basis::g);
    double const trace = std::abs(vol[0][0] + vol[1][1]);

    out.anticommutation = anti == 0.0;
    out.table_matches = table == 0.0;
    out.traceless_volume = trace == 0.0;
    out.max_deviation = std::max({anti, table, trace});
    return out;
}

RepresentationCheck concrete_representation_check()
{
    return concrete_representation_check(Representation::standard());
}

} // namespace spinsym
