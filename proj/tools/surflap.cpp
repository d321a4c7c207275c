#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "surflap/errors.hpp"
#include "surflap/verify.hpp"

using namespace surflap;

namespace {

struct Flags {
    std::vector<std::string> surfaces, fields, extensions, identities;
    std::optional<int> points;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> engine, format;
    std::optional<double> tol;
    std::string config, out;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--surface", f.surfaces, "builtin (sphere, nsphere:<n>, ellipsoid:<a>, oval) or JSON file");
    cmd->add_option("--field", f.fields, "azimuthal:<g>, mixed, stream:<psi>, killing, conformal or JSON file");
    cmd->add_option("--extension", f.extensions, "homogeneous:<k>, normal-corrected:<k>, custom:<file> or divfree");
    cmd->add_option("--identity", f.identities, "catalog id or all");
    cmd->add_option("--points", f.points, "sample points per surface");
    cmd->add_option("--seed", f.seed, "sampling seed");
    cmd->add_option("--engine", f.engine, "jets, fd or both");
    cmd->add_option("--tol", f.tol, "base tolerance override");
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--out", f.out, "report path");
    cmd->add_option("--format", f.format, "json, csv or plot");
}

SuiteConfig build_config(const Flags& f, bool check) {
    SuiteConfig c;
    if (!f.config.empty()) c = load_config(f.config);
    const SuiteConfig d = default_config();
    auto pick = [](std::vector<std::string>& dst, const std::vector<std::string>& flag,
                   const std::vector<std::string>& fallback) {
        if (!flag.empty()) dst = flag;
        if (dst.empty()) dst = fallback;
    };
    if (check) {
        pick(c.surfaces, f.surfaces, {"sphere"});
        pick(c.fields, f.fields, {"azimuthal:1"});
        pick(c.extensions, f.extensions, {"homogeneous:1"});
        pick(c.identities, f.identities, {});
        if (c.identities.empty()) throw ConfigError("check needs --identity");
        c.strict = true;
    } else {
        pick(c.surfaces, f.surfaces, d.surfaces);
        pick(c.fields, f.fields, d.fields);
        pick(c.extensions, f.extensions, d.extensions);
        pick(c.identities, f.identities, d.identities);
    }
    if (f.points) c.points = *f.points;
    if (f.seed) c.seed = *f.seed;
    if (f.engine) c.engine = parse_engine(*f.engine);
    if (f.tol) c.tol = *f.tol;
    if (!f.out.empty()) c.out = f.out;
    if (f.format) {
        if (*f.format != "json" && *f.format != "csv" && *f.format != "plot")
            throw ConfigError("unknown format '" + *f.format + "' (expected json, csv or plot)");
        c.format = *f.format;
    }
    return c;
}

void print_summary(const ResidualReport& rep) {
    std::printf("%-16s %-16s %-6s %6s %12s %12s  %s\n", "identity", "surface", "engine", "points", "worst", "tol",
                "status");
    for (const auto& r : rep.summarize())
        std::printf("%-16s %-16s %-6s %6d %12.3e %12.3e  %s\n", r.id.c_str(), r.surface.c_str(), r.engine.c_str(),
                    r.count, r.worst, r.tol, r.pass ? "PASS" : "FAIL");
    std::size_t failed = 0, oracle_failed = 0;
    for (const auto& r : rep.results) failed += r.pass ? 0 : 1;
    for (const auto& r : rep.oracle) oracle_failed += r.pass ? 0 : 1;
    std::printf("%zu checks, %zu failed, %d skipped", rep.results.size(), failed, rep.skipped);
    if (!rep.oracle.empty()) std::printf("; %zu oracle rows, %zu failed", rep.oracle.size(), oracle_failed);
    std::printf("\n%s\n", rep.pass() ? "PASS" : "FAIL");
}

void write_report(const ResidualReport& rep, const SuiteConfig& c) {
    if (c.out.empty()) return;
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + c.out + "'");
    if (c.format == "csv")
        os << rep.summary_csv();
    else if (c.format == "plot")
        os << rep.plot_csv();
    else
        os << rep.to_json();
}

void list_identities(const std::string& kind, bool json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& i : identity_catalog()) {
        if (!kind.empty() && !i.admits(kind)) continue;
        if (json) {
            rows.push_back({{"id", i.id}, {"summary", i.summary}, {"kinds", i.kinds}, {"tol", i.tol}});
        } else {
            std::string kinds;
            for (const auto& k : i.kinds) kinds += (kinds.empty() ? "" : ",") + k;
            std::printf("%-16s %-38s %s\n", i.id.c_str(), kinds.c_str(), i.summary.c_str());
        }
    }
    if (json) std::cout << rows.dump(1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surflap: numerical checks of hypersurface Laplacian identities"};
    app.require_subcommand(1);

    Flags check_flags, suite_flags;
    auto* check = app.add_subcommand("check", "run identities on one combination; inadmissible input is an error");
    add_run_flags(check, check_flags);
    auto* suite = app.add_subcommand("suite", "run every admissible combination");
    add_run_flags(suite, suite_flags);

    std::string kind;
    bool as_json = false;
    auto* list = app.add_subcommand("list", "print the identity catalog");
    list->add_option("--surface-kind", kind, "revolution, sphere, ellipsoid or nsphere");
    list->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*list) {
            list_identities(kind, as_json);
            return 0;
        }
        const bool is_check = check->parsed();
        const SuiteConfig c = build_config(is_check ? check_flags : suite_flags, is_check);
        const ResidualReport rep = run_suite(c);
        print_summary(rep);
        write_report(rep, c);
        return rep.pass() ? 0 : 1;
    } catch (const ContextViolation& e) {
        std::cerr << "error: context violation: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
