#include <spinsym/expr.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace spinsym {

namespace {

constexpr std::array<std::pair<std::string_view, UnaryFn>, 7> kFunctions{{
    {"sin", UnaryFn::sin},
    {"cos", UnaryFn::cos},
    {"sinh", UnaryFn::sinh},
    {"cosh", UnaryFn::cosh},
    {"exp", UnaryFn::exp},
    {"ln", UnaryFn::ln},
    {"sqrt", UnaryFn::sqrt},
}};

std::optional<UnaryFn> lookup_function(std::string_view name)
{
    for (auto const& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

ast::NodePtr make(auto&& data)
{
    return std::make_shared<ast::Node const>(ast::Node{std::forward<decltype(data)>(data)});
}

class Parser
{
public:
    Parser(std::string_view text, std::set<std::string> const& parameters)
        : text_(text)
        , parameters_(parameters)
    {}

    ast::NodePtr parse()
    {
        skip_space();
        if (eof()) fail("empty expression");
        auto e = expr();
        skip_space();
        if (!eof()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(std::string const& what) const { throw ParseError(what, pos_); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    void skip_space()
    {
        while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c)
    {
        skip_space();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    ast::NodePtr expr()
    {
        auto lhs = term();
        for (;;) {
            skip_space();
            char const c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make(ast::Binary{c, lhs, term()});
        }
    }

    ast::NodePtr term()
    {
        auto lhs = factor();
        for (;;) {
            skip_space();
            char const c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = make(ast::Binary{c, lhs, factor()});
        }
    }

    ast::NodePtr factor()
    {
        if (accept('-')) return make(ast::Negate{factor()});
        return power();
    }

    ast::NodePtr power()
    {
        auto base = atom();
        if (!accept('^')) return base;
        return make(ast::Power{base, exponent()});
    }

    double exponent()
    {
        bool const paren = accept('(');
        double sign = 1.0;
        if (accept('-')) {
            sign = -1.0;
        } else {
            accept('+');
        }
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek())) && peek() != '.') {
            fail("exponent must be a numeric literal");
        }
        double const p = sign * number();
        if (paren) expect(')');
        if (std::round(2.0 * p) != 2.0 * p) {
            fail("exponent must be an integer or half-integer");
        }
        return p;
    }

    double number()
    {
        std::size_t const start = pos_;
        auto digits = [&] {
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        };
        digits();
        if (peek() == '.') {
            ++pos_;
            digits();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t const mark = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = mark;
            } else {
                digits();
            }
        }
        std::string const lexeme(text_.substr(start, pos_ - start));
        if (lexeme == ".") {
            pos_ = start;
            fail("malformed number");
        }
        // std::from_chars for double is incomplete on some toolchains.
        char* end = nullptr;
        double const x = std::strtod(lexeme.c_str(), &end);
        if (end != lexeme.c_str() + lexeme.size()) {
            pos_ = start;
            fail("malformed number");
        }
        return x;
    }

    ast::NodePtr atom()
    {
        skip_space();
        char const c = peek();
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return make(ast::Number{number()});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t const start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto fn = lookup_function(name)) {
                skip_space();
                if (peek() != '(') fail("function '" + name + "' needs an argument");
                ++pos_;
                auto arg = expr();
                expect(')');
                return make(ast::Call{*fn, arg});
            }
            if (name == "u" || name == "v" || parameters_.contains(name)) {
                return make(ast::Identifier{std::move(name)});
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (eof()) fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::set<std::string> const& parameters_;
    std::size_t pos_ = 0;
};

void collect(ast::Node const& n, std::set<std::string>& names)
{
    std::visit(
        [&](auto const& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Identifier>) {
                names.insert(x.name);
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                collect(*x.operand, names);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                collect(*x.lhs, names);
                collect(*x.rhs, names);
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                collect(*x.base, names);
            } else if constexpr (std::is_same_v<T, ast::Call>) {
                collect(*x.arg, names);
            }
        },
        n.data);
}

double bound_value(std::string const& name, Bindings const& bindings)
{
    auto it = bindings.find(name);
    if (it == bindings.end()) {
        throw Error("parameter '" + name + "' is not bound");
    }
    return it->second;
}

Jet2 jet_of(ast::Node const& n, Jet2 const& var, Bindings const& b)
{
    return std::visit(
        [&](auto const& x) -> Jet2 {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Number>) {
                return Jet2::constant(var.base(), var.order(), x.value);
            } else if constexpr (std::is_same_v<T, ast::Identifier>) {
                if (x.name == "u" || x.name == "v") return var;
                return Jet2::constant(var.base(), var.order(), bound_value(x.name, b));
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return -jet_of(*x.operand, var, b);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                Jet2 const l = jet_of(*x.lhs, var, b);
                Jet2 const r = jet_of(*x.rhs, var, b);
                switch (x.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                default: return l / r;
                }
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                return pow(jet_of(*x.base, var, b), x.exponent);
            } else {
                return compose(x.fn, jet_of(*x.arg, var, b));
            }
        },
        n.data);
}

double scalar_call(UnaryFn f, double x)
{
    switch (f) {
    case UnaryFn::sin: return std::sin(x);
    case UnaryFn::cos: return std::cos(x);
    case UnaryFn::sinh: return std::sinh(x);
    case UnaryFn::cosh: return std::cosh(x);
    case UnaryFn::exp: return std::exp(x);
    case UnaryFn::ln:
        if (x <= 0.0) throw DomainError("ln is singular or undefined at " + std::to_string(x));
        return std::log(x);
    case UnaryFn::sqrt:
        if (x <= 0.0) throw DomainError("sqrt is singular or undefined at " + std::to_string(x));
        return std::sqrt(x);
    case UnaryFn::reciprocal:
        if (x == 0.0) throw DomainError("division by zero");
        return 1.0 / x;
    }
    return 0.0;
}

double scalar_of(ast::Node const& n, double var, Bindings const& b)
{
    return std::visit(
        [&](auto const& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Number>) {
                return x.value;
            } else if constexpr (std::is_same_v<T, ast::Identifier>) {
                if (x.name == "u" || x.name == "v") return var;
                return bound_value(x.name, b);
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return -scalar_of(*x.operand, var, b);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                double const l = scalar_of(*x.lhs, var, b);
                double const r = scalar_of(*x.rhs, var, b);
                switch (x.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                default:
                    if (r == 0.0) throw DomainError("division by zero");
                    return l / r;
                }
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                double const base = scalar_of(*x.base, var, b);
                bool const integral = std::round(x.exponent) == x.exponent;
                if (base == 0.0 && x.exponent < 0.0) {
                    throw DomainError("negative power of zero");
                }
                if (!integral && base < 0.0) {
                    throw DomainError("fractional power of a negative value");
                }
                if (!integral && base == 0.0) {
                    throw DomainError("fractional power of zero");
                }
                return std::pow(base, x.exponent);
            } else {
                return scalar_call(x.fn, scalar_of(*x.arg, var, b));
            }
        },
        n.data);
}

std::string format_number(double x)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

std::string print(ast::Node const& n)
{
    return std::visit(
        [&](auto const& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Number>) {
                // literals are nonnegative after parsing; negative ones come from builders
                return x.value < 0.0 ? "(-" + format_number(-x.value) + ")" : format_number(x.value);
            } else if constexpr (std::is_same_v<T, ast::Identifier>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return "(-" + print(*x.operand) + ")";
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                return "(" + print(*x.lhs) + " " + x.op + " " + print(*x.rhs) + ")";
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                return "(" + print(*x.base) + ")^(" + format_number(x.exponent) + ")";
            } else {
                return std::string(function_name(x.fn)) + "(" + print(*x.arg) + ")";
            }
        },
        n.data);
}

} // namespace

ExprAst::ExprAst(ast::NodePtr root)
    : root_(std::move(root))
{}

std::optional<Variable> ExprAst::variable() const
{
    std::set<std::string> names;
    collect(*root_, names);
    bool const has_u = names.contains("u");
    bool const has_v = names.contains("v");
    if (has_u && has_v) {
        throw Error("expression depends on both u and v");
    }
    if (has_u) return Variable::u;
    if (has_v) return Variable::v;
    return std::nullopt;
}

std::set<std::string> ExprAst::parameters() const
{
    std::set<std::string> names;
    collect(*root_, names);
    names.erase("u");
    names.erase("v");
    return names;
}

ExprAst ExprAst::number(double x)
{
    return ExprAst(make(ast::Number{x}));
}

ExprAst ExprAst::power(ExprAst const& base, double exponent)
{
    return ExprAst(make(ast::Power{base.root_, exponent}));
}

std::set<std::string> const& default_parameter_names()
{
    static std::set<std::string> const names{"a", "b", "c", "h", "k", "m"};
    return names;
}

std::string_view function_name(UnaryFn f)
{
    for (auto const& [n, g] : kFunctions) {
        if (g == f) return n;
    }
    return "inv";
}

ExprAst parse(std::string_view text)
{
    return parse(text, default_parameter_names());
}

ExprAst parse(std::string_view text, std::set<std::string> const& parameters)
{
    return ExprAst(Parser(text, parameters).parse());
}

Jet2 eval_jet(ExprAst const& e, Jet2 const& var, Bindings const& bindings)
{
    return jet_of(e.root(), var, bindings);
}

double eval(ExprAst const& e, double x, Bindings const& bindings)
{
    return scalar_of(e.root(), x, bindings);
}

std::string to_string(ExprAst const& e)
{
    return print(e.root());
}

} // namespace spinsym
