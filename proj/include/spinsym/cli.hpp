#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: verify, separate, surface-info.
 *
 * Exit codes: 0 pass, 1 usage or configuration error, 2 mathematical
 * rejection, 3 tolerance failure.
 */

#include <spinsym/surface.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinsym::cli {

enum ExitCode : int { ok = 0, usage = 1, rejected = 2, tolerance = 3 };

/// Flat key=value configuration. Blank lines and lines starting with '#' are skipped.
class RunConfig
{
public:
    static RunConfig parse(std::string_view text);
    static RunConfig load(std::string const& path);

    void set(std::string const& key, std::string value) { values_[key] = std::move(value); }
    bool has(std::string const& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(std::string const& key) const;

    std::string text(std::string const& key, std::string const& fallback) const;
    double number(std::string const& key, double fallback) const;
    double number(std::string const& key) const; ///< throws Error when missing
    int integer(std::string const& key, int fallback) const;
    Complex complex(std::string const& key, Complex fallback) const;

    /// bind.<name> entries.
    Bindings bindings() const;

    /// Applies `other` on top of this config.
    void overlay(RunConfig const& other);

    std::map<std::string, std::string> const& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Parses "re", "re,im" or "(re,im)".
Complex parse_complex(std::string const& text);

/// The surface selected by surface.preset or surface.A / surface.B / surface.beta,
/// with grid.u0 .. grid.v1 overriding the domain.
LiouvilleSurface build_surface(RunConfig const& cfg);

int cmd_verify(RunConfig const& cfg, std::ostream& out);
int cmd_separate(RunConfig const& cfg, std::ostream& out);
int cmd_surface_info(RunConfig const& cfg, std::ostream& out);

/// Full entry point: argument parsing, config loading, dispatch and error mapping.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);
int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace spinsym::cli
