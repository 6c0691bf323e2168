#include <spinsym/cli.hpp>

#include <spinsym/killing.hpp>
#include <spinsym/presets.hpp>
#include <spinsym/separation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace spinsym::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto const e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string const& key, std::string const& text)
{
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (std::exception const&) {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "") {
        throw Error("config key '" + key + "': not a number: '" + text + "'");
    }
    return x;
}

std::string format(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << std::scientific << x;
    return os.str();
}

std::string format(Complex z)
{
    if (z.imag() == 0.0) {
        return format(z.real());
    }
    std::ostringstream os;
    os << std::setprecision(6) << std::scientific << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

Json to_json(Complex z)
{
    if (z.imag() == 0.0) {
        return z.real();
    }
    return Json::array({z.real(), z.imag()});
}

/// Key/value report mirrored into a JSON object (dotted keys become nested objects).
class Report
{
public:
    template <typename T>
    void put(std::string const& key, T const& value)
    {
        std::ostringstream os;
        if constexpr (std::is_same_v<T, double>) {
            os << format(value);
            json_[pointer(key)] = value;
        } else if constexpr (std::is_same_v<T, Complex>) {
            os << format(value);
            json_[pointer(key)] = to_json(value);
        } else if constexpr (std::is_same_v<T, bool>) {
            os << (value ? "true" : "false");
            json_[pointer(key)] = value;
        } else {
            os << value;
            json_[pointer(key)] = value;
        }
        lines_.push_back(key + ": " + os.str());
    }

    void table(std::string const& key, std::vector<std::string> const& header,
               std::vector<std::vector<double>> const& rows)
    {
        tables_.push_back({key, header, rows});
        Json arr = Json::array();
        for (auto const& r : rows) {
            Json row = Json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                row[header[i]] = r[i];
            }
            arr.push_back(row);
        }
        json_[pointer(key)] = arr;
    }

    void write(std::ostream& os) const
    {
        for (auto const& l : lines_) {
            os << l << '\n';
        }
        for (auto const& t : tables_) {
            os << '\n' << "[" << t.key << "]\n";
            for (auto const& h : t.header) {
                os << std::setw(15) << h;
            }
            os << '\n';
            for (auto const& r : t.rows) {
                for (double x : r) {
                    os << std::setw(15) << std::setprecision(6) << std::scientific << x;
                }
                os << '\n';
            }
        }
        os << "\n--- json ---\n" << json_.dump(2) << '\n';
    }

private:
    static Json::json_pointer pointer(std::string key)
    {
        std::replace(key.begin(), key.end(), '.', '/');
        return Json::json_pointer("/" + key);
    }

    struct Table
    {
        std::string key;
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
    };

    std::vector<std::string> lines_;
    std::vector<Table> tables_;
    Json json_ = Json::object();
};

int emit(RunConfig const& cfg, Report const& report, int code, std::ostream& out)
{
    if (auto path = cfg.get("report")) {
        std::ofstream f(*path);
        if (!f) {
            throw Error("cannot write report to '" + *path + "'");
        }
        report.write(f);
        out << "report written to " << *path << " (exit " << code << ")\n";
    } else {
        report.write(out);
    }
    return code;
}

struct NamedVector
{
    std::string name;
    VectorField field;
};

std::vector<NamedVector> killing_vector_candidates()
{
    auto const u = [](Point p, int n) { return Jet2::variable(p, n, Variable::u); };
    auto const v = [](Point p, int n) { return Jet2::variable(p, n, Variable::v); };
    return {
        {"d_u", {constant_field(1.0), constant_field(0.0)}},
        {"d_v", {constant_field(0.0), constant_field(1.0)}},
        {"u d_v - v d_u", {[v](Point p, int n) { return -v(p, n); }, u}},
    };
}

std::vector<std::string> killing_vectors_of(LiouvilleSurface const& s,
                                            std::vector<Point> const& points, double tol)
{
    std::vector<std::string> names;
    for (auto const& c : killing_vector_candidates()) {
        if (killing_vector_residual(s, c.field, points) <= tol) {
            names.push_back(c.name);
        }
    }
    return names;
}

void describe_surface(Report& r, LiouvilleSurface const& s, RunConfig const& cfg)
{
    r.put("surface.name", s.name());
    r.put("surface.A", s.a_profile()->describe());
    r.put("surface.B", s.b_profile()->describe());
    Domain const& d = s.domain();
    r.put("surface.domain.u0", d.u0);
    r.put("surface.domain.u1", d.u1);
    r.put("surface.domain.v0", d.v0);
    r.put("surface.domain.v1", d.v1);
    for (auto const& [k, v] : cfg.bindings()) {
        r.put("surface.bind." + k, v);
    }
}

std::uint64_t seed_of(RunConfig const& cfg)
{
    return static_cast<std::uint64_t>(cfg.integer("seed", 1));
}

std::size_t sample_count(RunConfig const& cfg, int fallback_side)
{
    int const nu = cfg.integer("grid.nu", fallback_side);
    int const nv = cfg.integer("grid.nv", fallback_side);
    if (nu < 1 || nv < 1) {
        throw Error("grid.nu and grid.nv must be positive");
    }
    return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
}

double tolerance_of(RunConfig const& cfg, double fallback)
{
    double const t = cfg.number("tol.residual", fallback);
    if (!(t > 0.0)) {
        throw Error("tol.residual must be positive");
    }
    return t;
}

} // namespace

// ---------------------------------------------------------------------------

RunConfig RunConfig::parse(std::string_view text)
{
    RunConfig cfg;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string const t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        auto const eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error("config line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(t.substr(0, eq));
        if (key.empty()) {
            throw Error("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.set(key, trim(t.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::load(std::string const& path)
{
    std::ifstream f(path);
    if (!f) {
        throw Error("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::optional<std::string> RunConfig::get(std::string const& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string RunConfig::text(std::string const& key, std::string const& fallback) const
{
    return get(key).value_or(fallback);
}

double RunConfig::number(std::string const& key, double fallback) const
{
    auto v = get(key);
    return v ? to_double(key, *v) : fallback;
}

double RunConfig::number(std::string const& key) const
{
    auto v = get(key);
    if (!v) {
        throw Error("missing required key '" + key + "'");
    }
    return to_double(key, *v);
}

int RunConfig::integer(std::string const& key, int fallback) const
{
    double const x = number(key, fallback);
    if (x != std::floor(x)) {
        throw Error("config key '" + key + "': not an integer");
    }
    return static_cast<int>(x);
}

Complex RunConfig::complex(std::string const& key, Complex fallback) const
{
    auto v = get(key);
    if (!v) {
        return fallback;
    }
    try {
        return parse_complex(*v);
    } catch (Error const& e) {
        throw Error("config key '" + key + "': " + e.what());
    }
}

Bindings RunConfig::bindings() const
{
    Bindings b;
    for (auto const& [k, v] : values_) {
        if (k.rfind("bind.", 0) == 0) {
            b[k.substr(5)] = to_double(k, v);
        }
    }
    return b;
}

void RunConfig::overlay(RunConfig const& other)
{
    for (auto const& [k, v] : other.values_) {
        values_[k] = v;
    }
}

Complex parse_complex(std::string const& text)
{
    std::string t = trim(text);
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
        t = t.substr(1, t.size() - 2);
    }
    auto const comma = t.find(',');
    if (comma == std::string::npos) {
        return {to_double("value", t), 0.0};
    }
    return {to_double("value", t.substr(0, comma)), to_double("value", t.substr(comma + 1))};
}

LiouvilleSurface build_surface(RunConfig const& cfg)
{
    bool const preset = cfg.has("surface.preset");
    bool const beta = cfg.has("surface.beta");
    bool const ab = cfg.has("surface.A") || cfg.has("surface.B");
    if (int(preset) + int(beta) + int(ab) != 1) {
        throw Error("give exactly one of surface.preset, surface.beta, or surface.A with surface.B");
    }
    if (ab && !(cfg.has("surface.A") && cfg.has("surface.B"))) {
        throw Error("surface.A and surface.B must be given together");
    }
    Bindings const b = cfg.bindings();

    std::optional<LiouvilleSurface> s;
    if (preset) {
        s = make_preset(*cfg.get("surface.preset"), b);
    } else if (beta) {
        s = revolution_surface("beta", expression_profile(*cfg.get("surface.beta"), b),
                               Domain{0.0, 1.0, 0.0, 1.0});
    } else {
        s = LiouvilleSurface("custom", expression_profile(*cfg.get("surface.A"), b),
                             expression_profile(*cfg.get("surface.B"), b),
                             Domain{0.0, 1.0, 0.0, 1.0});
    }
    Domain d = s->domain();
    d.u0 = cfg.number("grid.u0", d.u0);
    d.u1 = cfg.number("grid.u1", d.u1);
    d.v0 = cfg.number("grid.v0", d.v0);
    d.v1 = cfg.number("grid.v1", d.v1);
    if (!(d.u0 < d.u1 && d.v0 < d.v1)) {
        throw Error("grid bounds must satisfy u0 < u1 and v0 < v1");
    }
    return LiouvilleSurface(s->name(), s->a_profile(), s->b_profile(), d);
}

// ---------------------------------------------------------------------------

int cmd_verify(RunConfig const& cfg, std::ostream& out)
{
    LiouvilleSurface const s = build_surface(cfg);
    std::uint64_t const seed = seed_of(cfg);
    double const tol = tolerance_of(cfg, 1e-9);
    double const m = cfg.number("mass", 1.0);
    int const order = cfg.integer("jet.order", 4);
    if (order < 4) {
        throw Error("jet.order must be at least 4 for the commutator suites");
    }
    std::size_t const count = sample_count(cfg, 10);
    int const nfields = cfg.integer("fields", 3);

    Report r;
    r.put("command", std::string("verify"));
    describe_surface(r, s, cfg);
    r.put("seed", static_cast<long long>(seed));
    r.put("points", static_cast<long long>(count));
    r.put("fields", static_cast<long long>(nfields));
    r.put("mass", m);
    r.put("tol.residual", tol);

    auto const pts = sample_points(s, seed, count);
    Domain const& dom = s.domain();
    auto const fields = sample_spinor_fields(seed, static_cast<std::size_t>(nfields),
                                             {0.5 * (dom.u0 + dom.u1), 0.5 * (dom.v0 + dom.v1)});
    OperatorContext const ctx{s, FrameChoice::diagonal(), Representation::standard()};
    bool pass = true;

    // First order: the first Killing vector candidate that qualifies.
    auto const kv = killing_vectors_of(s, pts, kKillingTolerance);
    std::optional<OperatorCoefficients> first;
    if (kv.empty()) {
        r.put("first_order.status", std::string("skipped: no Killing vector among d_u, d_v, u d_v - v d_u"));
    } else {
        auto const cands = killing_vector_candidates();
        auto const it = std::find_if(cands.begin(), cands.end(),
                                     [&](NamedVector const& c) { return c.name == kv.front(); });
        FirstOrderInputs in{it->field, cfg.complex("a_const", 0.7), 0.3};
        first = build_coefficients(ctx, assemble_symmetry_data(s, in, pts));
        double worst = 0.0;
        for (Point p : pts) {
            for (auto const& f : fields) {
                worst = std::max(worst, commutator_residual(ctx, m, *first, f, p, order));
            }
        }
        r.put("first_order.killing_vector", kv.front());
        r.put("first_order.commutator_max", worst);
        pass = pass && worst <= tol;
    }

    // Second order with the Liouville tensor.
    TensorField const k = killing_tensor_liouville(s);
    double const kres = killing_tensor_residual(s, k, pts);
    r.put("second_order.killing_residual", kres);
    try {
        SecondOrderInputs in;
        in.g0 = cfg.number("g0", 0.0);
        SymmetryData const data = assemble_symmetry_data(s, in, pts);
        auto const coeffs = build_coefficients(ctx, data);
        DeterminingResiduals worst_eq;
        double worst_comm = 0.0;
        double gmin = INFINITY, gmax = -INFINITY;
        for (Point p : pts) {
            auto const res = determining_equations_residuals(ctx, coeffs, p);
            for (std::size_t i = 0; i < 4; ++i) {
                worst_eq.eq[i] = std::max(worst_eq.eq[i], res.eq[i]);
            }
            for (auto const& f : fields) {
                worst_comm = std::max(worst_comm, commutator_residual(ctx, m, coeffs, f, p, order));
            }
            double const g = data.g(p, 0).value().real();
            gmin = std::min(gmin, g);
            gmax = std::max(gmax, g);
        }
        r.put("second_order.status", std::string("assembled"));
        r.put("second_order.curl_max", max_curl(s, k));
        for (std::size_t i = 0; i < 4; ++i) {
            r.put("second_order.determining.eq" + std::to_string(i + 1), worst_eq.eq[i]);
        }
        r.put("second_order.commutator_max", worst_comm);
        r.put("second_order.g.min", gmin);
        r.put("second_order.g.max", gmax);
        r.put("second_order.g.constant", gmax - gmin <= 1e-9);
        pass = pass && worst_eq.max() <= tol && worst_comm <= tol;
    } catch (Rejection const& e) {
        r.put("second_order.status", std::string("rejected"));
        r.put("second_order.reason", e.reason());
        r.put("second_order.measure", e.measure());
        r.put("status", std::string("rejected"));
        r.put("reason", e.reason());
        return emit(cfg, r, ExitCode::rejected, out);
    }

    if (first) {
        double worst = 0.0;
        for (Point p : pts) {
            for (auto const& f : fields) {
                worst = std::max(worst, trivial_commutator_residual(ctx, m, *first, f, p, order));
            }
        }
        r.put("trivial.commutator_max", worst);
        pass = pass && worst <= tol;
    }

    r.put("status", std::string(pass ? "pass" : "tolerance failure"));
    return emit(cfg, r, pass ? ExitCode::ok : ExitCode::tolerance, out);
}

int cmd_separate(RunConfig const& cfg, std::ostream& out)
{
    if (cfg.has("surface.A") || cfg.has("surface.B")) {
        throw Error("separate needs a surface of revolution: use surface.beta or a revolution preset");
    }
    ProfilePtr beta;
    Domain dom{0.0, 1.0, 0.0, 1.0};
    std::string name = "beta";
    if (auto p = cfg.get("surface.preset")) {
        if (cfg.has("surface.beta")) {
            throw Error("give exactly one of surface.preset and surface.beta");
        }
        beta = preset_beta(*p, cfg.bindings());
        dom = make_preset(*p, cfg.bindings()).domain();
        name = *p;
    } else if (auto b = cfg.get("surface.beta")) {
        beta = expression_profile(*b, cfg.bindings());
    } else {
        throw Error("separate needs surface.beta or surface.preset");
    }
    dom.u0 = cfg.number("grid.u0", dom.u0);
    dom.u1 = cfg.number("grid.u1", dom.u1);
    dom.v0 = cfg.number("grid.v0", dom.v0);
    dom.v1 = cfg.number("grid.v1", dom.v1);
    if (!(dom.u0 < dom.u1 && dom.v0 < dom.v1)) {
        throw Error("grid bounds must satisfy u0 < u1 and v0 < v1");
    }
    if (!cfg.has("mu")) {
        throw Error("separate needs mu");
    }
    double const m = cfg.number("mass", 1.0);
    Complex const mu = cfg.complex("mu", 0.0);
    Complex const mu1 = cfg.complex("mu1", 1.0);
    int const nu = cfg.integer("grid.nu", 20);
    int const nv = cfg.integer("grid.nv", 20);
    if (nu < 1 || nv < 1) {
        throw Error("grid.nu and grid.nv must be positive");
    }

    SeparationScheme scheme(beta, m, mu, mu1, dom);
    scheme.c1 = cfg.complex("c1", scheme.c1);
    scheme.c2 = cfg.complex("c2", scheme.c2);
    scheme.d1 = cfg.complex("d1", scheme.d1);
    scheme.d2 = cfg.complex("d2", scheme.d2);
    bool const numeric = !scheme.cartesian();
    double const tol = tolerance_of(cfg, numeric ? 1e-7 : 1e-10);

    Report r;
    r.put("command", std::string("separate"));
    r.put("surface.name", name);
    r.put("surface.beta", beta->describe());
    r.put("surface.domain.u0", dom.u0);
    r.put("surface.domain.u1", dom.u1);
    r.put("surface.domain.v0", dom.v0);
    r.put("surface.domain.v1", dom.v1);
    r.put("seed", static_cast<long long>(seed_of(cfg)));
    r.put("mass", m);
    r.put("mu", mu);
    r.put("mu1", scheme.mu1());
    r.put("mu2", scheme.mu2());
    r.put("c1", scheme.c1);
    r.put("c2", scheme.c2);
    r.put("d1", scheme.d1);
    r.put("d2", scheme.d2);
    r.put("b_solution", std::string(numeric ? "numeric" : "closed form"));
    r.put("tol.residual", tol);

    SeparationReport const rep = assemble_and_verify(scheme, nu, nv);
    r.put("grid.points", static_cast<long long>(rep.points));
    r.put("residual.dirac", rep.dirac);
    r.put("residual.eigen", rep.eigen);
    r.put("residual.matrix_form", rep.matrix_form);
    r.put("residual.mu_only", rep.mu_only);
    r.put("residual.a_first", rep.odes.a_first);
    r.put("residual.a_second", rep.odes.a_second);
    r.put("residual.b", rep.odes.b);

    auto const psi = assemble(a_solutions(mu, scheme.mu1(), scheme.mu2(), scheme.c1, scheme.c2),
                              b_solutions(scheme));
    std::vector<std::vector<double>> rows;
    int const samples = 5;
    for (int i = 0; i < samples; ++i) {
        double const t = (i + 0.5) / samples;
        Point const p{dom.u0 + t * (dom.u1 - dom.u0), dom.v0 + t * (dom.v1 - dom.v0)};
        auto const s = psi(p, 0);
        rows.push_back({p.u, p.v, s.c[0].value().real(), s.c[0].value().imag(),
                        s.c[1].value().real(), s.c[1].value().imag()});
    }
    r.table("psi_samples", {"u", "v", "re_psi1", "im_psi1", "re_psi2", "im_psi2"}, rows);

    bool const pass = rep.dirac <= tol && rep.eigen <= tol && rep.mu_only <= tol
                      && rep.matrix_form <= tol && rep.odes.b <= tol;
    r.put("status", std::string(pass ? "pass" : "tolerance failure"));
    return emit(cfg, r, pass ? ExitCode::ok : ExitCode::tolerance, out);
}

int cmd_surface_info(RunConfig const& cfg, std::ostream& out)
{
    LiouvilleSurface const s = build_surface(cfg);
    std::uint64_t const seed = seed_of(cfg);
    double const tol = tolerance_of(cfg, 1e-10);
    auto const pts = sample_points(s, seed, sample_count(cfg, 10));

    Report r;
    r.put("command", std::string("surface-info"));
    describe_surface(r, s, cfg);
    r.put("seed", static_cast<long long>(seed));
    r.put("points", static_cast<long long>(pts.size()));
    r.put("tol.residual", tol);

    double rmin = INFINITY, rmax = -INFINITY, rsum = 0.0, ic = 0.0;
    for (Point p : pts) {
        double const R = ricci_scalar(s, p, 0).value().real();
        rmin = std::min(rmin, R);
        rmax = std::max(rmax, R);
        rsum += R;
        ic = std::max(ic, std::abs(integrability_condition_lhs(s, p)));
    }
    r.put("curvature.convention", std::string("unit sphere R = +2"));
    r.put("curvature.min", rmin);
    r.put("curvature.max", rmax);
    r.put("curvature.mean", rsum / double(pts.size()));
    r.put("curvature.constant", rmax - rmin <= 1e-8);
    r.put("killing_tensor.residual", killing_tensor_residual(s, killing_tensor_liouville(s), pts));
    r.put("intcond.max_abs", ic);
    r.put("intcond.zero", ic <= tol);

    auto const kv = killing_vectors_of(s, pts, kKillingTolerance);
    std::string joined;
    for (auto const& n : kv) {
        joined += (joined.empty() ? "" : ", ") + n;
    }
    r.put("killing_vectors", joined.empty() ? std::string("none") : joined);
    if (kv.empty()) {
        r.put("note", std::string("no Killing vector among d_u, d_v, u d_v - v d_u; "
                                  "the Liouville tensor is irreducible"));
    }

    bool const special = cfg.has("special.k") || cfg.has("special.a3") || cfg.has("special.a2")
                         || cfg.has("special.a1") || cfg.has("special.a0");
    if (special) {
        SpecialCaseParams q;
        q.k = cfg.number("special.k", 0.0);
        q.a3 = cfg.number("special.a3", 0.0);
        q.a2 = cfg.number("special.a2", 0.0);
        q.a1 = cfg.number("special.a1", 0.0);
        q.a0 = cfg.number("special.a0", 0.0);
        auto const res = special_system_residual(s, q, pts);
        r.put("special.residual_A", res.a);
        r.put("special.residual_B", res.b);
        r.put("special.curvature_deviation", special_case_ricci_check(s, q, pts));
        r.put("special.curvature_note",
              std::string("closed form uses the opposite sign; compared against -R"));
    }
    r.put("status", std::string("pass"));
    return emit(cfg, r, ExitCode::ok, out);
}

// ---------------------------------------------------------------------------

namespace {

struct FlagSpec
{
    char const* flag;
    char const* key;
    char const* help;
};

constexpr FlagSpec kFlags[] = {
    {"--preset", "surface.preset", "named surface"},
    {"--A", "surface.A", "A(u) expression"},
    {"--B", "surface.B", "B(v) expression"},
    {"--beta", "surface.beta", "beta(v) expression (B = beta^-2, A = 0)"},
    {"--order", "jet.order", "jet order"},
    {"--u0", "grid.u0", "domain"},
    {"--u1", "grid.u1", "domain"},
    {"--v0", "grid.v0", "domain"},
    {"--v1", "grid.v1", "domain"},
    {"--nu", "grid.nu", "grid size in u (sample count is nu*nv)"},
    {"--nv", "grid.nv", "grid size in v"},
    {"--tol", "tol.residual", "residual tolerance"},
    {"--seed", "seed", "random seed"},
    {"-m,--mass", "mass", "Dirac mass"},
    {"--mu", "mu", "separation constant mu"},
    {"--mu1", "mu1", "factor mu1 (mu2 = mu / mu1)"},
    {"--c1", "c1", "amplitude (re or re,im)"},
    {"--c2", "c2", "amplitude"},
    {"--d1", "d1", "amplitude"},
    {"--d2", "d2", "amplitude"},
    {"--fields", "fields", "number of sampled spinor fields"},
    {"--report", "report", "write the report to this file"},
    {"--special-k", "special.k", "special-case parameter k"},
    {"--special-a3", "special.a3", "special-case parameter a3"},
    {"--special-a2", "special.a2", "special-case parameter a2"},
    {"--special-a1", "special.a1", "special-case parameter a1"},
    {"--special-a0", "special.a0", "special-case parameter a0"},
};

struct CommandLine
{
    std::string config_path;
    std::vector<std::string> binds;
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
};

CLI::App* add_command(CLI::App& app, std::string const& name, std::string const& help,
                      CommandLine& cl)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", cl.config_path, "key=value config file; flags override it");
    sub->add_option("--bind", cl.binds, "parameter binding name=value (repeatable)");
    for (auto const& f : kFlags) {
        CLI::Option* o = sub->add_option(f.flag, cl.values[f.key], f.help);
        cl.options.emplace_back(f.key, o);
    }
    return sub;
}

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Symmetry operators of the Dirac operator on Liouville surfaces", "spinsym"};
    app.require_subcommand(1);
    CommandLine cl;
    CLI::App* verify = add_command(app, "verify", "build symmetry operators and check them", cl);
    CLI::App* separate = add_command(app, "separate", "separated Dirac solutions on A = 0 surfaces", cl);
    CLI::App* info = add_command(app, "surface-info", "curvature, Killing and integrability data", cl);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
        app.exit(e, out, err);
        return ExitCode::ok;
    } catch (CLI::CallForAllHelp const& e) {
        app.exit(e, out, err);
        return ExitCode::ok;
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return ExitCode::usage;
    }

    try {
        RunConfig cfg;
        if (!cl.config_path.empty()) {
            cfg = RunConfig::load(cl.config_path);
        }
        RunConfig flags;
        for (auto const& [key, opt] : cl.options) {
            if (opt->count() > 0) {
                flags.set(key, cl.values[key]);
            }
        }
        for (auto const& b : cl.binds) {
            auto const eq = b.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw Error("--bind expects name=value, got '" + b + "'");
            }
            flags.set("bind." + trim(b.substr(0, eq)), trim(b.substr(eq + 1)));
        }
        cfg.overlay(flags);

        if (verify->parsed()) {
            return cmd_verify(cfg, out);
        }
        if (separate->parsed()) {
            return cmd_separate(cfg, out);
        }
        if (info->parsed()) {
            return cmd_surface_info(cfg, out);
        }
        err << app.help();
        return ExitCode::usage;
    } catch (Rejection const& e) {
        err << "rejected: " << e.what() << '\n';
        return ExitCode::rejected;
    } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    }
}

int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace spinsym::cli
