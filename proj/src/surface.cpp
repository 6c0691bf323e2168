#include <spinsym/surface.hpp>

#include <cmath>
#include <sstream>

namespace spinsym {

namespace {

class ExpressionProfile final : public Profile
{
public:
    ExpressionProfile(ExprAst e, Bindings b)
        : expr_(std::move(e))
        , bindings_(std::move(b))
    {
        for (auto const& name : expr_.parameters()) {
            if (!bindings_.contains(name)) {
                throw Error("profile parameter '" + name + "' is not bound");
            }
        }
        expr_.variable(); // rejects expressions in both u and v
    }

    Jet2 eval(Jet2 const& x) const override { return eval_jet(expr_, x, bindings_); }

    std::string describe() const override
    {
        std::ostringstream os;
        os << to_string(expr_);
        for (auto const& [k, v] : bindings_) {
            os << " " << k << "=" << v;
        }
        return os.str();
    }

    std::optional<ExprAst> expression() const override { return expr_; }

private:
    ExprAst expr_;
    Bindings bindings_;
};

} // namespace

ProfilePtr expression_profile(ExprAst e, Bindings bindings)
{
    return std::make_shared<ExpressionProfile>(std::move(e), std::move(bindings));
}

ProfilePtr expression_profile(std::string_view text, Bindings bindings)
{
    std::set<std::string> names = default_parameter_names();
    for (auto const& [k, v] : bindings) {
        names.insert(k);
    }
    return expression_profile(parse(text, names), std::move(bindings));
}

ProfilePtr constant_profile(double value)
{
    return expression_profile(ExprAst::number(value), {});
}

LiouvilleSurface::LiouvilleSurface(std::string name, ProfilePtr a, ProfilePtr b, Domain domain)
    : name_(std::move(name))
    , a_(std::move(a))
    , b_(std::move(b))
    , domain_(domain)
{
    if (auto e = a_->expression(); e && e->variable() == Variable::v) {
        throw Error("A must depend on u only");
    }
    if (auto e = b_->expression(); e && e->variable() == Variable::u) {
        throw Error("B must depend on v only");
    }
}

Jet2 LiouvilleSurface::a(Point p, int order) const
{
    return a_->eval(Jet2::variable(p, order, Variable::u));
}

Jet2 LiouvilleSurface::b(Point p, int order) const
{
    return b_->eval(Jet2::variable(p, order, Variable::v));
}

Jet2 LiouvilleSurface::conformal_factor(Point p, int order) const
{
    Jet2 lambda = a(p, order) + b(p, order);
    Complex const l0 = lambda.value();
    if (!(l0.real() > 0.0) || std::abs(l0.imag()) > 1e-14 * std::abs(l0.real())) {
        std::ostringstream msg;
        msg << "conformal factor A+B = " << l0 << " is not positive at (" << p.u << ", " << p.v
            << ")";
        throw DomainError(msg.str());
    }
    return lambda;
}

} // namespace spinsym
