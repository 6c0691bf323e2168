#include <doctest.h>

#include <spinsym/cli.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinsym;

namespace {

struct Outcome
{
    int code;
    std::string out;
    std::string err;

    nlohmann::json json() const
    {
        auto const at = out.find("--- json ---");
        REQUIRE(at != std::string::npos);
        return nlohmann::json::parse(out.substr(at + 12));
    }
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int const code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(std::string const& name)
{
    return std::filesystem::temp_directory_path() / ("spinsym_test_" + name);
}

} // namespace

TEST_CASE("config parsing")
{
    auto const cfg = cli::RunConfig::parse("# comment\n\nsurface.preset = torus\nbind.k = 3\nmu=0.5\n");
    CHECK(cfg.text("surface.preset", "") == "torus");
    CHECK(cfg.number("mu") == 0.5);
    CHECK(cfg.bindings().at("k") == 3.0);
    CHECK_THROWS_AS(cfg.number("missing"), Error);
    CHECK_THROWS_AS(cli::RunConfig::parse("no equals sign"), Error);

    CHECK(cli::parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(cli::parse_complex("1,-2") == Complex(1.0, -2.0));
    CHECK(cli::parse_complex("(0.5, 3)") == Complex(0.5, 3.0));
    CHECK_THROWS_AS(cli::parse_complex("x"), Error);

    cli::RunConfig a = cli::RunConfig::parse("mu = 1\nmass = 2\n");
    a.overlay(cli::RunConfig::parse("mu = 3\n"));
    CHECK(a.number("mu") == 3.0);
    CHECK(a.number("mass") == 2.0);
}

TEST_CASE("surface selection")
{
    CHECK(cli::build_surface(cli::RunConfig::parse("surface.preset = sphere")).name() == "sphere");
    auto const s = cli::build_surface(cli::RunConfig::parse("surface.A = 0\nsurface.B = 1\ngrid.u1 = 2"));
    CHECK(s.domain().u1 == 2.0);
    CHECK(s.domain().v1 == 1.0);
    CHECK_THROWS_AS(cli::build_surface(cli::RunConfig::parse("surface.preset = sphere\nsurface.beta = 1")), Error);
    CHECK_THROWS_AS(cli::build_surface(cli::RunConfig::parse("")), Error);
    CHECK_THROWS_AS(cli::build_surface(cli::RunConfig::parse("surface.A = 1")), Error);
}

TEST_CASE("verify")
{
    auto const sphere = run({"verify", "--preset", "sphere", "--nu", "4", "--nv", "4"});
    CHECK(sphere.code == cli::ok);
    auto const j = sphere.json();
    CHECK(j["status"] == "pass");
    CHECK(j["second_order"]["commutator_max"].get<double>() <= 1e-9);
    CHECK(j["points"] == 16);

    auto const flat = run({"verify", "--A", "0", "--B", "1", "--nu", "3", "--nv", "3"});
    CHECK(flat.code == cli::ok);

    auto const ell = run({"verify", "--preset", "ellipsoid", "--nu", "3", "--nv", "3"});
    CHECK(ell.code == cli::rejected);
    CHECK(ell.out.find("integrability curl nonzero") != std::string::npos);
    CHECK(ell.json()["status"] == "rejected");

    CHECK(run({"verify", "--preset", "sphere", "--order", "2"}).code == cli::usage);
    CHECK(run({"verify", "--preset", "nowhere"}).code == cli::usage);
    CHECK(run({"verify", "--bogus"}).code == cli::usage);
    CHECK(run({}).code == cli::usage);
    CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("verify reports are deterministic for a seed")
{
    std::vector<std::string> const args{"verify", "--preset", "torus", "--nu", "3", "--nv", "3", "--seed", "5"};
    auto const a = run(args);
    auto const b = run(args);
    CHECK(a.code == cli::ok);
    CHECK(a.out == b.out);
}

TEST_CASE("separate")
{
    auto const flat = run({"separate", "--beta", "1", "--mu", "0.25", "--c1", "1", "--d1", "0.5,0.5"});
    CHECK(flat.code == cli::ok);
    auto const j = flat.json();
    CHECK(j["residual"]["dirac"].get<double>() <= 1e-10);
    CHECK(j["psi_samples"].size() == 5);

    auto const numeric = run({"separate", "--beta", "sinh(v)", "--v0", "0.3", "--v1", "2", "--mu", "0.5",
                              "--nu", "8", "--nv", "8"});
    CHECK(numeric.code == cli::ok);
    CHECK(numeric.json()["residual"]["dirac"].get<double>() <= 1e-7);

    CHECK(run({"separate", "--beta", "1"}).code == cli::usage);
    CHECK(run({"separate", "--beta", "1", "--mu", "1", "--mu1", "0"}).code == cli::usage);
    CHECK(run({"separate", "--A", "0", "--B", "1", "--mu", "1"}).code == cli::usage);
}

TEST_CASE("surface-info")
{
    auto const par = run({"surface-info", "--preset", "plane-parabolic", "--special-a1", "4"});
    CHECK(par.code == cli::ok);
    auto const j = par.json();
    CHECK(j["intcond"]["zero"] == true);
    CHECK(j["special"]["residual_A"].get<double>() <= 1e-10);

    auto const ell = run({"surface-info", "--preset", "ellipsoid"});
    CHECK(ell.code == cli::ok);
    CHECK(ell.json()["intcond"]["zero"] == false);
    CHECK(ell.out.find("irreducible") != std::string::npos);

    auto const sph = run({"surface-info", "--preset", "pseudosphere"});
    auto const k = sph.json();
    CHECK(k["curvature"]["constant"] == true);
    CHECK(k["curvature"]["mean"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("config files, bindings and report files")
{
    auto const cfg = temp_file("run.cfg");
    {
        std::ofstream f(cfg);
        f << "surface.preset = torus\nbind.k = 3\ngrid.nu = 3\ngrid.nv = 3\n";
    }
    auto const report = temp_file("report.txt");
    std::filesystem::remove(report);
    auto const a = run({"verify", "--config", cfg.string(), "--report", report.string()});
    CHECK(a.code == cli::ok);
    REQUIRE(std::filesystem::exists(report));
    std::ifstream in(report);
    std::string const text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("points: 9") != std::string::npos);

    // a flag overrides the file
    auto const b = run({"verify", "--config", cfg.string(), "--nu", "2"});
    CHECK(b.json()["points"] == 6);
    // --bind overrides bind.k; k = 0.5 is not a torus
    CHECK(run({"verify", "--config", cfg.string(), "--bind", "k=0.5"}).code == cli::usage);
    CHECK(run({"verify", "--config", cfg.string(), "--bind", "k"}).code == cli::usage);
    CHECK(run({"verify", "--config", (cfg.string() + ".missing")}).code == cli::usage);
    std::filesystem::remove(cfg);
    std::filesystem::remove(report);
}
