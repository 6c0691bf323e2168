#include <spinsym/spinor.hpp>

#include <algorithm>

namespace spinsym {

double residual_norm(SpinorJet const& s)
{
    return std::max(std::abs(s.c[0].value()), std::abs(s.c[1].value()));
}

SpinorJet act(Representation const& rep, ClJet const& x, SpinorJet const& psi)
{
    int const n = psi.order();
    SpinorJet out = zero_like(psi);
    for (std::size_t k = 0; k < 4; ++k) {
        Jet2 const coeff = x.c[k].order() == n ? x.c[k] : x.c[k].truncated(n);
        Mat2 const& m = rep.image(static_cast<Basis>(k));
        for (std::size_t i = 0; i < 2; ++i) {
            Jet2 row = m[i][0] * psi.c[0] + m[i][1] * psi.c[1];
            out.c[i] += coeff * row;
        }
    }
    return out;
}

SpinorJet act(Representation const& rep, Cl const& x, SpinorJet const& psi)
{
    Mat2 const m = rep.image(x);
    return {{m[0][0] * psi.c[0] + m[0][1] * psi.c[1], m[1][0] * psi.c[0] + m[1][1] * psi.c[1]}};
}

} // namespace spinsym
