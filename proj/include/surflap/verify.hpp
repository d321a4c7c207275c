#pragma once

// Identity catalog and residual harness.
//
// Each identity is evaluated at sample points and returns both sides plus
// the named terms that make up its right side. A check passes when
// |lhs - rhs| <= tol, with tol = base (1 + |lhs|) unless the identity pins an
// absolute tolerance.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surflap/fields.hpp"
#include "surflap/surface.hpp"

namespace surflap {

enum class Engine { Jets, Fd, Both };

Engine parse_engine(const std::string& s);
std::string to_string(Engine e);

struct IdentityInfo {
    std::string id;
    std::string summary;
    std::vector<std::string> kinds;  // surface kinds admitted
    bool divfree_both = false;       // field divergence free on the surface and in space
    bool surface_divfree = false;    // field divergence free on the surface
    bool homogeneous_only = false;   // needs a homogeneous extension
    bool unit_sphere = false;
    bool uses_field = true;
    bool uses_extension = true;
    bool fd_route = false;
    double tol = 1e-8;
    bool relative = true;  // scale by (1 + |lhs|)

    bool admits(const std::string& kind) const;
};

const std::vector<IdentityInfo>& identity_catalog();
/// Throws ConfigError("unknown identity ...").
const IdentityInfo& identity_info(const std::string& id);

/// A field on either kind of surface.
struct FieldSpec {
    std::string name;
    std::optional<TangentField> tangent;         // surfaces of revolution
    std::optional<SphereFieldKind> sphere_kind;  // n-spheres
};

/// Builtins: azimuthal:<g>, mixed, stream:<psi>, killing, conformal; or a JSON file.
FieldSpec resolve_field(const std::string& spec);
/// homogeneous:<k> or custom:<file>.
ExtensionStrategy resolve_extension(const std::string& spec);

struct SamplePoint {
    double t = 0.0;
    double theta = 0.0;
};

/// Shifted Halton points in (t, theta) inside the pole cutoff.
std::vector<SamplePoint> sample_points(const Surface& s, int count, std::uint64_t seed);

using Terms = std::vector<std::pair<std::string, std::vector<double>>>;

struct CheckResult {
    std::string id, surface, field, extension, engine;
    SamplePoint point;
    Terms terms;
    std::vector<double> lhs, rhs;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Euclidean norm of lhs - rhs, summed in index order.
double residual_norm(const std::vector<double>& lhs, const std::vector<double>& rhs);

struct SummaryRow {
    std::string id, surface, engine;
    double worst = 0.0;
    double tol = 0.0;  // tolerance at the worst point
    int count = 0;
    bool pass = true;
};

struct ResidualReport {
    std::uint64_t seed = 0;
    Engine engine = Engine::Jets;
    int points = 0;
    std::vector<CheckResult> results;
    std::vector<CheckResult> oracle;  // once-per-combination finite-difference cross-checks
    int skipped = 0;

    bool pass() const;
    void append(ResidualReport other);

    /// Worst case per (id, surface, engine), in order of first appearance.
    std::vector<SummaryRow> summarize() const;

    std::string to_json() const;
    /// One row per (id, surface) with the worst residual.
    std::string summary_csv() const;
    /// identity, t, residual
    std::string plot_csv() const;
};

struct CheckOptions {
    Engine engine = Engine::Jets;
    std::optional<double> tol;  // overrides the base tolerance
    std::uint64_t seed = 1;
};

/// Runs one identity on one surface/field/extension. Throws ContextViolation
/// when the combination is outside the identity's hypotheses.
ResidualReport run_check(const std::string& id, const Surface& surface, const FieldSpec& field,
                         const std::string& extension, const std::vector<SamplePoint>& points,
                         const CheckOptions& options = {});

struct SuiteConfig {
    std::vector<std::string> surfaces;
    std::vector<std::string> fields;
    std::vector<std::string> extensions;
    std::vector<std::string> identities;  // "all" expands to the catalog
    int points = 20;
    std::uint64_t seed = 1;
    Engine engine = Engine::Jets;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    bool strict = false;  // rethrow ContextViolation instead of skipping
};

/// key = value lines; list keys may repeat or hold comma-separated values.
/// Relative file references resolve against base_dir.
SuiteConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
SuiteConfig load_config(const std::filesystem::path& path);
SuiteConfig default_config();

/// Runs every admissible combination; inadmissible ones are counted as skipped.
ResidualReport run_suite(const SuiteConfig& config);

}  // namespace surflap
